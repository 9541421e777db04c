# -*- coding: utf-8 -*-

import os
import unittest

import numpy as np
from parameterized import parameterized
from pyfakefs import fake_filesystem_unittest

from vortexsphere.utils.json_reader import write_json, read_json, \
    write_csv, read_csv, format_value, create_file_handle


class TestJsonReader(fake_filesystem_unittest.TestCase):
    """Tests for reading and writing JSON and CSV files"""

    def setUp(self):
        self.setUpPyfakefs()

    def tearDown(self):
        pass

    def test_json(self):
        data = {"n": 3, "r": 0.5, "modes": [1, 2], "label": u"ν"}
        write_json('results/ring.json', data)
        self.assertTrue(os.path.exists('results/ring.json'))
        self.assertEqual(read_json('results/ring.json'), data)

    def test_create_folders(self):
        with create_file_handle(os.path.join('a', 'b', 'c.txt'), 'w') as f:
            f.write('x')
        self.assertTrue(os.path.isdir(os.path.join('a', 'b')))

    def test_csv(self):
        write_csv('trajectory.csv', ['t', 'x1'],
                  [[0.0, 0.1], [np.float64(0.5), 1.0 / 3.0]])
        header, rows = read_csv('trajectory.csv')
        self.assertEqual(header, ['t', 'x1'])
        self.assertEqual(rows, [[0.0, 0.1], [0.5, 1.0 / 3.0]])

    def test_missing_file(self):
        with self.assertRaises(IOError):
            read_json('missing.json')


class TestFormatValue(unittest.TestCase):
    """Tests for format_value"""

    @parameterized.expand([
        [0.1, '0.10000000000000001'],
        [1.0, '1'],
        [np.float64(2.5), '2.5'],
        [3, '3'],
        ['RotatingChart', 'RotatingChart'],
        [None, 'None'],
    ])
    def test_format(self, value, expected):
        self.assertEqual(format_value(value), expected)
