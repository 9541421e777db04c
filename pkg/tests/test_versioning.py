# -*- coding: utf-8 -*-

import unittest

from mock import patch, MagicMock

from vortexsphere.utils import versioning


class TestVersioning(unittest.TestCase):
    """Tests for the product version"""

    def test_release_versions(self):
        self.assertTrue(versioning.is_release_version(
            versioning.PACKAGE_VERSION))
        self.assertTrue(versioning.is_release_version('1.1.dev2'))
        self.assertFalse(versioning.is_release_version('1.0.0-local'))
        self.assertFalse(versioning.is_release_version(''))

    def test_installed_distribution(self):
        distribution = MagicMock(version='1.2.0')
        with patch('pkg_resources.get_distribution',
                   return_value=distribution) as mock_get:
            self.assertEqual(versioning.get_version(), '1.2.0')
        mock_get.assert_called_once_with('vortexsphere')
        with patch('pkg_resources.get_distribution',
                   return_value=MagicMock(version='1.2.0+local')):
            self.assertEqual(versioning.get_version(),
                             versioning.PACKAGE_VERSION)

    def test_fallback_version(self):
        with patch('pkg_resources.get_distribution',
                   side_effect=Exception('not installed')):
            self.assertEqual(versioning.get_version(),
                             versioning.PACKAGE_VERSION)
            self.assertEqual(versioning.get_version_string(),
                             "VortexSphere version " +
                             versioning.PACKAGE_VERSION)
        with patch.object(versioning, 'installed_version',
                          return_value=None):
            self.assertEqual(versioning.get_version(),
                             versioning.PACKAGE_VERSION)
