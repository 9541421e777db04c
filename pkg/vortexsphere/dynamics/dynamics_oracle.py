# coding=utf-8
"""
Direct time integration of the vortex equations

Two formulations are provided: the intrinsic equations for unit vectors on
the sphere, and the equations of the stereographic positions in the frame
rotating with the ring. Both are integrated with the adaptive Verner pair
and monitored through the Hamiltonian and the moment map.

"""

from __future__ import division

import logging

import numpy as np
from scipy.integrate import solve_ivp

from vortexsphere.dynamics.runge_kutta import AdaptiveIntegrator
from vortexsphere.equilibrium.ring_equilibrium import gradient_V, \
    hamiltonian_H, moment_G, ring_positions, COLLISION_THRESHOLD
from vortexsphere.geometry.sphere_geometry import stereo_lift
from vortexsphere.utils.errors import CollisionError, CollisionApproach, \
    StepUnderflow
from vortexsphere.utils.utilities import apply_j, rotate

logger = logging.getLogger(__name__)

APPROACH_THRESHOLD = 1e-6
DEFAULT_TOLERANCE = 1e-10


class SimulationMode(object):
    """Formulations of the vortex equations"""
    SPHERE = 'Sphere'
    ROTATING_CHART = 'RotatingChart'

    ALL = [SPHERE, ROTATING_CHART]


class SimState(object):
    """Initial data of a simulation.

    state holds n unit 3-vectors in Sphere mode and n chart positions in
    RotatingChart mode; params (the ring fixing the frame rotation) and the
    time rescaling nu are only used in RotatingChart mode.
    """

    def __init__(self, mode, state, t=0.0, params=None, nu=1.0):
        if mode not in SimulationMode.ALL:
            raise ValueError('Unknown simulation mode ' + str(mode))
        if mode == SimulationMode.ROTATING_CHART and params is None:
            raise ValueError('Rotating chart simulations need the ring')
        self.mode = mode
        self.state = np.array(state, dtype=float)
        self.t = t
        self.params = params
        self.nu = nu

    @property
    def n(self):
        """Number of vortices"""
        return self.state.shape[0]


class Trajectory(object):
    """States and monitored invariants at the output times"""

    def __init__(self, mode, times, states, hamiltonian, moment):
        self.mode = mode
        self.times = times
        self.states = states
        self.hamiltonian = hamiltonian
        self.moment = moment

    def header(self):
        """Column names of the trajectory CSV"""
        n = self.states.shape[1]
        if self.mode == SimulationMode.SPHERE:
            labels = ['x', 'y', 'z']
        else:
            labels = ['re', 'im']
        columns = ['t']
        for j in range(1, n + 1):
            columns += ['{}{}'.format(label, j) for label in labels]
        return columns + ['H', 'G']

    def rows(self):
        """Rows of the trajectory CSV"""
        flat = self.states.reshape(len(self.times), -1)
        return [[t] + list(values) + [h, g] for t, values, h, g in
                zip(self.times, flat, self.hamiltonian, self.moment)]

    def hamiltonian_drift(self):
        """Largest deviation of H from its initial value"""
        return float(np.max(np.abs(self.hamiltonian - self.hamiltonian[0])))

    def moment_drift(self):
        """Largest deviation of the moment from its initial value"""
        return float(np.max(np.abs(self.moment - self.moment[0])))


def _check_separation(distance_sq, threshold, error_class):
    n = distance_sq.shape[-1]
    off_diagonal = distance_sq[~np.eye(n, dtype=bool)]
    closest = np.sqrt(np.min(off_diagonal))
    if not closest > threshold:
        raise error_class('Vortices approach each other: separation ' +
                          str(closest))


def rhs_sphere(v, collision_threshold=COLLISION_THRESHOLD):
    """Velocities v_j' = sum_{i != j} (v_j x v_i) / |v_j - v_i|^2 of unit
    vectors on the sphere, oriented like the rotating-chart equations"""

    v = np.asarray(v, dtype=float)
    diff = v[:, np.newaxis, :] - v[np.newaxis, :, :]
    distance_sq = np.sum(diff * diff, axis=-1)
    _check_separation(distance_sq, collision_threshold, CollisionError)
    np.fill_diagonal(distance_sq, np.inf)
    cross = np.cross(v[:, np.newaxis, :], v[np.newaxis, :, :])
    return np.sum(cross / distance_sq[..., np.newaxis], axis=1)


def rhs_rotating_chart(x, params, nu=1.0,
                       collision_threshold=COLLISION_THRESHOLD):
    """Velocities x_j' = -(1/nu) (1+|x_j|^2)^2/4 J grad_j V in the rotating
    chart, with time rescaled by nu"""

    x = np.asarray(x, dtype=float)
    gradient = gradient_V(x, params, collision_threshold)
    inverse_weight = (1.0 + np.sum(x * x, axis=-1)) ** 2 / 4.0
    return -inverse_weight[..., np.newaxis] * apply_j(gradient) / nu


def sphere_hamiltonian(v):
    """Hamiltonian -1/2 sum_{i<j} ln(|v_i - v_j|^2 / 4), equal to the chart
    Hamiltonian of the projected state"""

    v = np.asarray(v, dtype=float)
    upper_i, upper_j = np.triu_indices(v.shape[-2], 1)
    diff = v[..., upper_i, :] - v[..., upper_j, :]
    return -0.5 * np.sum(np.log(np.sum(diff * diff, axis=-1) / 4.0),
                         axis=-1)


def sphere_moment(v):
    """The moment n + sum z_j, equal to the chart moment map G"""
    v = np.asarray(v, dtype=float)
    return v.shape[-2] + np.sum(v[..., 2], axis=-1)


def normalise_rows(v):
    """Scales each 3-vector to unit length"""
    return v / np.linalg.norm(v, axis=-1)[..., np.newaxis]


def ring_sphere_state(params):
    """The equilibrium ring lifted to the sphere"""
    return stereo_lift(ring_positions(params).x)


def chart_to_sphere_trajectory(times, chart_states, omega, nu=1.0):
    """Undoes the frame rotation of a rotating-chart trajectory and lifts it
    to the sphere"""

    times = np.asarray(times, dtype=float)
    angles = (omega * times / nu)[:, np.newaxis]
    return stereo_lift(rotate(chart_states, angles))


def _approach_monitor(dimension, threshold):
    def monitor(t, flat_state):
        points = flat_state.reshape(-1, dimension)
        diff = points[:, np.newaxis, :] - points[np.newaxis, :, :]
        try:
            _check_separation(np.sum(diff * diff, axis=-1), threshold,
                              CollisionApproach)
        except CollisionApproach:
            logger.info('Collision approach at t = %r', t)
            raise
    return monitor


def integrate(sim_state, t_end, tolerance=DEFAULT_TOLERANCE, dt_out=None,
              approach_threshold=APPROACH_THRESHOLD):
    """Integrates from sim_state.t to t_end and samples the trajectory
    every dt_out (only the end point when dt_out is None)"""

    mode = sim_state.mode
    shape = sim_state.state.shape
    dimension = shape[-1]
    if mode == SimulationMode.SPHERE:
        def rhs(_, flat):
            return rhs_sphere(flat.reshape(shape)).ravel()

        def projection(flat):
            return normalise_rows(flat.reshape(shape)).ravel()
    else:
        def rhs(_, flat):
            return rhs_rotating_chart(flat.reshape(shape), sim_state.params,
                                      sim_state.nu).ravel()
        projection = None

    if dt_out is None:
        times = np.array([sim_state.t, t_end])
    else:
        count = int(np.floor(abs(t_end - sim_state.t) / dt_out + 1e-9))
        times = sim_state.t + np.sign(t_end - sim_state.t) * dt_out * \
            np.arange(count + 1)
        if not np.isclose(times[-1], t_end):
            times = np.append(times, t_end)

    monitor = _approach_monitor(dimension, approach_threshold)
    monitor(sim_state.t, sim_state.state.ravel())
    integrator = AdaptiveIntegrator(rhs, tolerance, projection=projection,
                                    monitor=monitor)
    states = integrator.integrate(sim_state.state.ravel(), sim_state.t,
                                  times).reshape((len(times),) + shape)

    if mode == SimulationMode.SPHERE:
        hamiltonian = sphere_hamiltonian(states)
        moment = sphere_moment(states)
    else:
        hamiltonian = hamiltonian_H(states)
        moment = moment_G(states)
    logger.debug('Integrated %d vortices to t = %r', shape[0], t_end)
    return Trajectory(mode, times, states, hamiltonian, moment)


def period_map_defect(start, params, nu, tolerance=DEFAULT_TOLERANCE):
    """Integrates the rescaled rotating-chart equations over 2 pi with the
    DOP853 scheme of scipy and returns max |x(2 pi) - x(0)|"""

    start = np.asarray(start, dtype=float)
    shape = start.shape

    def rhs(_, flat):
        return rhs_rotating_chart(flat.reshape(shape), params, nu).ravel()

    solution = solve_ivp(rhs, (0.0, 2.0 * np.pi), start.ravel(),
                         method='DOP853', rtol=tolerance, atol=tolerance)
    if not solution.success:
        raise StepUnderflow('Period map integration failed: ' +
                             solution.message)
    return float(np.max(np.abs(solution.y[:, -1] - start.ravel())))
