# -*- coding: utf-8 -*-

import unittest

import numpy as np
from parameterized import parameterized

from tests.common_test_functions import random_unit_vectors
from vortexsphere.geometry.sphere_geometry import stereo_project, \
    stereo_lift, conformal_weight, chordal_sq, SpherePoint, PlanePoint
from vortexsphere.utils.errors import ChartSingular, NumericalError


class TestSphereGeometry(unittest.TestCase):
    """Tests for the stereographic chart"""

    @parameterized.expand([
        [[0.0, 0.0, -1.0], [0.0, 0.0]],
        [[1.0, 0.0, 0.0], [1.0, 0.0]],
        [[0.0, 1.0, 0.0], [0.0, 1.0]],
        [[-1.0, 0.0, 0.0], [-1.0, 0.0]],
    ])
    def test_project_and_lift(self, v, q):
        np.testing.assert_allclose(stereo_project(v), q, atol=1e-15)
        np.testing.assert_allclose(stereo_lift(q), v, atol=1e-15)

    def test_north_pole_is_singular(self):
        with self.assertRaises(ChartSingular):
            stereo_project([0.0, 0.0, 1.0])
        with self.assertRaises(NumericalError):
            stereo_project([[0.0, 0.0, -1.0], [0.0, 1e-7, 1.0 - 1e-14]])

    def test_round_trip(self):
        vectors = random_unit_vectors(1000, seed=3, max_z=0.99)
        np.testing.assert_allclose(stereo_lift(stereo_project(vectors)),
                                   vectors, atol=1e-12)

    def test_lift_is_unit(self):
        q = np.random.RandomState(1).standard_normal((50, 2)) * 5.0
        np.testing.assert_allclose(
            np.linalg.norm(stereo_lift(q), axis=-1), 1.0, atol=1e-14)

    @parameterized.expand([
        [[0.0, 0.0], 4.0],
        [[1.0, 0.0], 1.0],
        [[0.0, -1.0], 1.0],
        [[3.0, 0.0], 4.0 / 100.0],
    ])
    def test_conformal_weight(self, q, expected):
        self.assertAlmostEqual(conformal_weight(q), expected, places=15)

    def test_conformal_weight_decreasing(self):
        radii = np.linspace(0.0, 10.0, 101)
        q = np.stack([radii, np.zeros_like(radii)], axis=-1)
        self.assertTrue(np.all(np.diff(conformal_weight(q)) < 0))

    @parameterized.expand([
        [[1.0, 0.0], [-1.0, 0.0], 4.0],
        [[0.0, 0.0], [0.0, 0.0], 0.0],
        [[0.0, 0.0], [1.0, 0.0], 2.0],
    ])
    def test_chordal_sq(self, q_i, q_j, expected):
        self.assertAlmostEqual(chordal_sq(q_i, q_j), expected, places=14)

    def test_chordal_sq_matches_lift(self):
        random = np.random.RandomState(7)
        q_i = 2.0 * random.standard_normal((100, 2))
        q_j = 2.0 * random.standard_normal((100, 2))
        diff = stereo_lift(q_i) - stereo_lift(q_j)
        np.testing.assert_allclose(chordal_sq(q_i, q_j),
                                   np.sum(diff * diff, axis=-1), atol=1e-12)


class TestPoints(unittest.TestCase):
    """Tests for the point classes"""

    def test_sphere_point_norm(self):
        with self.assertRaises(ValueError):
            SpherePoint([1.0, 1.0, 0.0])

    def test_plane_point_finite(self):
        with self.assertRaises(ValueError):
            PlanePoint([np.inf, 0.0])

    def test_conversions(self):
        point = PlanePoint.from_complex(1j)
        self.assertEqual(point.to_complex(), 1j)
        sphere = point.to_sphere()
        np.testing.assert_allclose(sphere.v, [0.0, 1.0, 0.0], atol=1e-15)
        np.testing.assert_allclose(sphere.to_plane().q, [0.0, 1.0],
                                   atol=1e-15)

    def test_equality(self):
        self.assertEqual(PlanePoint([1.0, 2.0]), PlanePoint([1.0, 2.0]))
        self.assertNotEqual(PlanePoint([1.0, 2.0]), PlanePoint([1.0, 3.0]))
        self.assertNotEqual(SpherePoint([0.0, 0.0, -1.0]),
                            PlanePoint([0.0, 0.0]))
