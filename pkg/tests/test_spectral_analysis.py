# -*- coding: utf-8 -*-

import unittest

import numpy as np
from parameterized import parameterized
from scipy.linalg import block_diag

from tests.common_test_functions import THIRD_RING_RADIUS, third_ring
from vortexsphere.equilibrium.ring_equilibrium import RingParams, \
    ring_positions, hessian_V, minors_to_matrix, finite_difference_hessian, \
    theta_to_radius
from vortexsphere.equilibrium.spectral_analysis import IsotypicBasis, \
    SpectralBlock, hessian_minor, hessian_A, hessian_full, block_B, \
    block_trace, block_m, det_d, frequency_condition, critical_frequency, \
    critical_frequency_bisection, morse_index, morse_jump, \
    stability_verdict, resonance_check, bifurcation_radii, resonant_radius, \
    reduced_hessian_min_singular, is_hyperbolic, spectrum_report
from vortexsphere.utils.errors import DegenerateAt, NoBifurcation
from vortexsphere.utils.utilities import apply_j

RADII = [0.4, 0.8, 1.5]


class TestHessian(unittest.TestCase):
    """Tests for the Hessian at the polygonal equilibrium"""

    def test_minor_examples(self):
        np.testing.assert_allclose(hessian_minor(2, RingParams(4, 1.0)),
                                   np.diag([-0.25, 0.25]), atol=1e-15)
        params = RingParams(3, 1.0)
        zeta = 2.0 * np.pi / 3.0
        turn = np.array([[np.cos(zeta), -np.sin(zeta)],
                         [np.sin(zeta), np.cos(zeta)]])
        np.testing.assert_allclose(hessian_minor(1, params),
                                   np.dot(turn, np.diag([1.0, -1.0])) / 3.0,
                                   atol=1e-15)

    def test_minor_trace_free(self):
        for n in range(3, 8):
            params = RingParams(n, 0.7)
            for j in range(1, n):
                self.assertAlmostEqual(np.trace(hessian_minor(j, params)),
                                       0.0, delta=1e-14)

    def test_minor_range(self):
        with self.assertRaises(ValueError):
            hessian_minor(0, RingParams(3, 1.0))
        with self.assertRaises(ValueError):
            hessian_minor(3, RingParams(3, 1.0))

    @parameterized.expand([
        [3, 1.0, [0.0, 1.0]],
        [5, 1.0, [0.0, 2.0]],
        [3, THIRD_RING_RADIUS, [0.75, 3.0]],
    ])
    def test_hessian_A(self, n, r, diagonal):
        np.testing.assert_allclose(hessian_A(RingParams(n, r)),
                                   np.diag(diagonal), atol=1e-14)

    @parameterized.expand([
        [4, 0.8],
        [3, THIRD_RING_RADIUS],
        [6, 1.5],
    ])
    def test_hessian_finite_differences(self, n, r):
        params = RingParams(n, r)
        hessian = hessian_full(params)
        np.testing.assert_allclose(hessian, hessian.T, atol=1e-12)
        ring = ring_positions(params)
        np.testing.assert_allclose(
            hessian, finite_difference_hessian(ring, params), atol=1e-6)
        np.testing.assert_allclose(
            hessian, minors_to_matrix(hessian_V(ring, params)), atol=1e-10)

    def test_rotation_generator_in_kernel(self):
        for n in range(3, 10):
            for r in RADII:
                params = RingParams(n, r)
                generator = apply_j(ring_positions(params).x).reshape(2 * n)
                self.assertLess(
                    np.max(np.abs(np.dot(hessian_full(params), generator))),
                    1e-10)


class TestIsotypicBlocks(unittest.TestCase):
    """Tests for the isotypic decomposition"""

    def test_unitary(self):
        for n in range(3, 10):
            basis = IsotypicBasis(n)
            np.testing.assert_allclose(np.dot(basis.P.conj().T, basis.P),
                                       np.eye(2 * n), atol=1e-12)

    def test_apply(self):
        basis = IsotypicBasis(4)
        w = np.array([1.0, 2j])
        self.assertEqual(basis.apply(2, w).shape, (4, 2))
        np.testing.assert_allclose(basis.apply(2, w).reshape(8),
                                   np.dot(basis.transform(2), w))

    def test_block_diagonalisation(self):
        for n in range(3, 10):
            basis = IsotypicBasis(n)
            for r in RADII:
                params = RingParams(n, r)
                hessian = hessian_full(params)
                expected = block_diag(*[block_B(k, params)
                                        for k in range(1, n + 1)])
                self.assertLess(
                    np.max(np.abs(basis.conjugate(hessian) - expected)), 1e-9)
                for k in range(1, n + 1):
                    np.testing.assert_allclose(basis.block(hessian, k),
                                               block_B(k, params), atol=1e-10)

    def test_block_examples(self):
        params = third_ring()
        np.testing.assert_allclose(block_B(1, params), np.diag([0.75, 3.0]),
                                   atol=1e-14)
        for n in range(3, 9):
            params = RingParams(n, 0.6)
            self.assertEqual(block_B(n, params)[1, 1], 0.0)
            for k in range(1, n):
                np.testing.assert_array_equal(block_B(k, params),
                                              block_B(n - k, params))
                block = block_B(k, params)
                np.testing.assert_array_equal(block, block.conj().T)
                self.assertAlmostEqual(np.trace(block).real,
                                       block_trace(params), places=12)

    def test_block_m(self):
        params = RingParams(5, 0.7)
        for k in range(1, 5):
            np.testing.assert_array_equal(block_m(k, 0.0, params),
                                          block_B(k, params))
            for nu in [0.3, 1.7]:
                block = block_m(k, nu, params)
                np.testing.assert_allclose(block, block.conj().T, atol=1e-15)
                np.testing.assert_allclose(block_m(5 - k, nu, params),
                                           np.conj(block_m(k, -nu, params)),
                                           atol=1e-15)
                self.assertAlmostEqual(np.linalg.det(block).real,
                                       det_d(k, nu, params), delta=1e-12)

    def test_spectral_block(self):
        block = SpectralBlock(1, third_ring())
        self.assertAlmostEqual(block.nu_crit, 2.0 / 3.0, delta=1e-12)
        self.assertEqual(block.morse_jump, -1)
        self.assertAlmostEqual(block.det_at(block.nu_crit), 0.0, delta=1e-10)
        np.testing.assert_array_equal(block.pencil(0.0), block.B)
        self.assertIsNone(SpectralBlock(3, RingParams(3, 0.5)).nu_crit)
        self.assertEqual(SpectralBlock(3, RingParams(3, 0.5)).morse_jump, 0)
        self.assertEqual(SpectralBlock(3, RingParams(7, 0.8)).morse_jump, 0)


class TestCriticalFrequencies(unittest.TestCase):
    """Tests for critical frequencies and Morse indices"""

    def test_third_ring(self):
        params = third_ring()
        self.assertAlmostEqual(critical_frequency(1, params), 2.0 / 3.0,
                               delta=1e-12)
        self.assertAlmostEqual(critical_frequency(2, params), 2.0 / 3.0,
                               delta=1e-12)
        self.assertAlmostEqual(det_d(1, 2.0 / 3.0, params), 0.0, delta=1e-12)

    def test_no_frequency(self):
        for r in [0.2, 0.8, 1.0, 2.5]:
            self.assertIsNone(critical_frequency(3, RingParams(7, r)))
            self.assertFalse(frequency_condition(3, RingParams(7, r)))
        self.assertIsNone(critical_frequency(1, RingParams(3, 1.0)))

    def test_mode_range(self):
        with self.assertRaises(ValueError):
            critical_frequency(3, RingParams(3, 0.5))

    def test_bisection_third_ring(self):
        self.assertAlmostEqual(critical_frequency_bisection(1, third_ring()),
                               2.0 / 3.0, delta=1e-12)
        self.assertIsNone(critical_frequency_bisection(3, RingParams(7, 0.8)))

    def test_bisection(self):
        for n in range(3, 10):
            for r in RADII:
                params = RingParams(n, r)
                for k in range(1, n):
                    nu_k = critical_frequency(k, params)
                    if nu_k is None:
                        continue
                    self.assertGreater(det_d(k, 0.0, params), 0.0)
                    self.assertAlmostEqual(
                        critical_frequency_bisection(k, params), nu_k,
                        delta=1e-10)

    def test_morse_index(self):
        params = third_ring()
        self.assertEqual(morse_index(1, 0.0, params), 0)
        self.assertEqual(morse_index(1, 0.6, params), 0)
        self.assertEqual(morse_index(1, 0.7, params), 1)
        self.assertEqual(morse_index(1, 1e6, params), 1)
        with self.assertRaises(DegenerateAt):
            morse_index(1, 2.0 / 3.0, params)

    def test_morse_jump(self):
        for n in range(3, 8):
            for r in RADII:
                params = RingParams(n, r)
                for k in range(1, n):
                    expected = -1 if critical_frequency(k, params) else 0
                    self.assertEqual(morse_jump(k, params), expected)


class TestStability(unittest.TestCase):
    """Tests for the linear stability verdict"""

    def test_stable_third_ring(self):
        verdict = stability_verdict(3, 2.0 * np.pi / 3.0)
        self.assertTrue(verdict)
        self.assertEqual(verdict.label, 'stable')
        self.assertEqual(verdict.failing_modes, [])

    def test_seven_always_unstable(self):
        for theta in np.linspace(0.01, np.pi - 0.01, 50):
            verdict = stability_verdict(7, theta)
            self.assertFalse(verdict)
            self.assertIn(3, verdict.failing_modes)
            self.assertIn(4, verdict.failing_modes)

    def test_equator_boundary(self):
        verdict = stability_verdict(3, np.pi / 2.0)
        self.assertFalse(verdict.stable)
        self.assertEqual(verdict.label, 'boundary')
        self.assertEqual(stability_verdict(7, np.pi / 2.0).label, 'unstable')

    @parameterized.expand([[0.0], [np.pi]])
    def test_range(self, theta):
        with self.assertRaises(ValueError):
            stability_verdict(3, theta)

    def test_consistent_with_frequencies(self):
        for n in range(3, 8):
            for theta in [0.3, 1.0, 2.0, 2.8]:
                params = RingParams(n, theta_to_radius(theta))
                real = all(critical_frequency(k, params) is not None
                           for k in range(1, n))
                self.assertEqual(bool(stability_verdict(n, theta)), real)


class TestResonances(unittest.TestCase):
    """Tests for resonance detection"""

    def test_third_ring_not_resonant(self):
        self.assertEqual(resonance_check(1, third_ring(), 10), [])

    def test_resonant_radius(self):
        radius = resonant_radius(3, 1, 2, 6)
        self.assertIsNotNone(radius)
        r_sq = radius ** 2
        self.assertAlmostEqual(4.0 * r_sq / (1.0 + r_sq) ** 2, 2.75 / 38.75,
                               places=14)
        params = RingParams(6, radius)
        resonances = resonance_check(3, params, 4)
        self.assertIn((2, 1), resonances)
        self.assertIn((2, 5), resonances)
        self.assertAlmostEqual(2.0 * critical_frequency(3, params),
                               critical_frequency(1, params), delta=1e-9)

    def test_resonance_needs_frequency(self):
        with self.assertRaises(NoBifurcation):
            resonance_check(3, RingParams(7, 0.8), 4)

    def test_no_resonant_radius(self):
        self.assertIsNone(resonant_radius(1, 2, 1, 4))


class TestHyperbolicity(unittest.TestCase):
    """Tests for the bifurcation radii of the equilibrium"""

    def test_bifurcation_radii(self):
        self.assertEqual(bifurcation_radii(3, 7), [])
        radii = bifurcation_radii(2, 7)
        self.assertEqual(len(radii), 2)
        self.assertAlmostEqual(radii[0] * radii[1], 1.0, places=12)
        for radius in radii:
            r_sq = radius ** 2
            self.assertAlmostEqual(4.0 * r_sq / (1.0 + r_sq) ** 2,
                                   2.0 - 5.0 / 3.0, places=12)

    def test_sign_change(self):
        small = bifurcation_radii(2, 7)[0]
        below = np.linalg.det(block_B(2, RingParams(7, small * 0.99))).real
        above = np.linalg.det(block_B(2, RingParams(7, small * 1.01))).real
        self.assertLess(below * above, 0.0)

    def test_hyperbolic(self):
        self.assertTrue(is_hyperbolic(third_ring()))
        self.assertTrue(is_hyperbolic(RingParams(5, 0.5)))
        small = bifurcation_radii(2, 7)[0]
        self.assertLess(reduced_hessian_min_singular(RingParams(7, small)),
                        1e-8)
        self.assertFalse(is_hyperbolic(RingParams(7, small)))


class TestSpectrumReport(unittest.TestCase):
    """Tests for the per-mode report"""

    def test_third_ring(self):
        rows = spectrum_report(third_ring(), 6)
        self.assertEqual([row.k for row in rows], [1, 2, 3])
        self.assertAlmostEqual(rows[0].nu_crit, 2.0 / 3.0, delta=1e-12)
        self.assertAlmostEqual(rows[1].nu_crit, 2.0 / 3.0, delta=1e-12)
        self.assertIsNone(rows[2].nu_crit)
        values = rows[0].to_dict()
        self.assertEqual(values["k"], 1)
        self.assertAlmostEqual(values["b11"], 0.75, places=14)
        self.assertAlmostEqual(values["b22"], 3.0, places=14)
        self.assertEqual(values["resonances"], [])
        self.assertEqual(values["morse_jump"], -1)
        self.assertEqual(rows[2].morse_jump, 0)

    def test_equator(self):
        rows = spectrum_report(RingParams(3, 1.0), 6)
        self.assertEqual([row.nu_crit for row in rows], [0.0, 0.0, None])

    def test_blank_modes(self):
        rows = spectrum_report(RingParams(7, 0.8), 4)
        self.assertIsNone(rows[2].nu_crit)
        self.assertIsNone(rows[3].nu_crit)
