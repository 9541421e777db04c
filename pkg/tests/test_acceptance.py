# -*- coding: utf-8 -*-

import unittest

import numpy as np
from parameterized import parameterized

from tests.common_test_functions import third_ring, random_sphere_state
from vortexsphere.dynamics.dynamics_oracle import SimulationMode, SimState, \
    integrate, ring_sphere_state, chart_to_sphere_trajectory
from vortexsphere.equilibrium.ring_equilibrium import RingParams, \
    ring_positions
from vortexsphere.periodic.choreography import ChoreographyCert, \
    admissible_ratios, certify_choreography, scan_branch_for_choreographies
from vortexsphere.periodic.continuation import BranchPoint, Termination, \
    FrozenFrequency, branch_seed, continue_branch, newton_correct, \
    extrapolate_seed_frequency, branch_symmetry_defect, period_map_check
from vortexsphere.periodic.loop_space import galerkin_residual

_BRANCH = []


def full_branch():
    """The 50-point branch of mode 1 of the three-vortex ring at
    r = 1/sqrt(3) with p = 32, computed once"""
    if not _BRANCH:
        seed, report = branch_seed(1, third_ring(), 1e-3, p=32)
        _BRANCH.append(continue_branch(seed, 50, 1e-2,
                                       resonant=report.resonant))
    return _BRANCH[0]


class TestBranchAcceptance(unittest.TestCase):
    """Long continuation run of the three-vortex ring"""

    def test_branch_quality(self):
        branch = full_branch()
        self.assertEqual(branch.termination, Termination.MAX_STEPS)
        self.assertEqual(len(branch.points), 50)
        for point in branch.points:
            self.assertLess(point.residual, 1e-10)
            self.assertLess(np.max(np.abs(galerkin_residual(
                point.cfg, point.multipliers))), 1e-10)
            self.assertLess(np.max(np.abs(point.multipliers)), 1e-8)
        self.assertLess(branch_symmetry_defect(branch), 1e-10)

    def test_seed_frequency(self):
        self.assertAlmostEqual(extrapolate_seed_frequency(full_branch()),
                               2.0 / 3.0, delta=1e-6)

    def test_amplitude_increases(self):
        amplitudes = full_branch().amplitudes()[:10]
        self.assertTrue(np.all(np.diff(amplitudes) > 0))

    def test_period_map_refinement(self):
        middle = full_branch().points[25]
        self.assertLess(period_map_check(middle), 1e-6)
        defects = []
        for p in [16, 32, 64]:
            guess = middle.cfg.with_loop(middle.cfg.loop.resized(p))
            point = newton_correct(guess, constraint=FrozenFrequency(
                middle.nu))
            defects.append(period_map_check(point))
        self.assertLessEqual(defects[1], defects[0] + 1e-9)
        self.assertLessEqual(defects[2], defects[1] + 1e-9)

    def test_choreographies(self):
        branch = full_branch()
        frequencies = branch.frequencies()
        low, high = np.min(frequencies), np.max(frequencies)
        omega = branch.omega
        crossing = any(low <= omega * m / ell <= high
                       for ell, m in admissible_ratios(1, 3, 12))
        certs = scan_branch_for_choreographies(branch, 12)
        if crossing:
            self.assertTrue(any(cert.accepted for cert in certs))
        for cert in certs:
            if cert.accepted:
                self.assertLess(cert.alignment_residual, 1e-8)
                self.assertLess(cert.rotation_residual, 1e-8)
                self.assertLess(cert.periodicity_residual, 1e-10)

    def test_detuned_control(self):
        point = full_branch().points[25]
        omega = point.cfg.params.omega
        cert = ChoreographyCert(3, 1, 1, 1, omega)
        detuned_cfg = point.cfg.with_loop(point.cfg.loop, 1.01 * omega)
        detuned = BranchPoint(detuned_cfg, point.residual, point.multipliers)
        certify_choreography(detuned, cert)
        self.assertGreater(cert.alignment_residual, 1e-3)
        self.assertFalse(cert.accepted)


class TestDynamicsAcceptance(unittest.TestCase):
    """Long integrations of the vortex equations"""

    @parameterized.expand([[4, 0], [6, 1]])
    def test_long_conservation(self, n, seed):
        v = random_sphere_state(n, seed=seed, min_separation=0.5)
        trajectory = integrate(SimState(SimulationMode.SPHERE, v), 100.0,
                               tolerance=1e-12, dt_out=10.0)
        self.assertLess(trajectory.hamiltonian_drift(), 1e-8)
        self.assertLess(trajectory.moment_drift(), 1e-8)

    def test_rigid_rotation(self):
        params = RingParams(5, 0.6)
        trajectory = integrate(SimState(SimulationMode.SPHERE,
                                        ring_sphere_state(params)), 1.0,
                               tolerance=1e-12)
        expected = chart_to_sphere_trajectory(
            trajectory.times,
            np.repeat(ring_positions(params).x[np.newaxis], 2, axis=0),
            params.omega)
        np.testing.assert_allclose(trajectory.states, expected, atol=1e-10)

    def test_perturbed_stable_ring(self):
        params = RingParams.from_theta(3, 2.0 * np.pi / 3.0)
        random = np.random.RandomState(0)
        x = ring_positions(params).x + 1e-3 * random.standard_normal((3, 2))
        trajectory = integrate(SimState(SimulationMode.ROTATING_CHART, x,
                                        params=params), 20.0, dt_out=1.0)
        self.assertLess(trajectory.hamiltonian_drift(), 1e-8)
        self.assertLess(np.max(np.abs(trajectory.states -
                                      ring_positions(params).x)), 0.1)

    def test_long_conservation_in_chart(self):
        params = third_ring()
        x = ring_positions(params).x + np.array([[0.01, 0.0], [0.0, -0.02],
                                                 [0.015, 0.005]])
        trajectory = integrate(SimState(SimulationMode.ROTATING_CHART, x,
                                        params=params), 100.0,
                               tolerance=1e-12, dt_out=10.0)
        self.assertEqual(len(trajectory.times), 11)
        self.assertLess(trajectory.hamiltonian_drift(), 1e-8)
        self.assertLess(trajectory.moment_drift(), 1e-8)
