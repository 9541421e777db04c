# coding=utf-8
"""
Choreographies on the relative periodic branches

In the inertial frame the vortices follow Q_j(t) = exp(t omega/nu J) x_j(t).
When nu = omega m / ell for coprime (ell, m) with k ell - m divisible by n,
all vortices trace one closed curve: Q_j(t) = Q_n(t + j k_tilde zeta), with
Q_n of period 2 pi m and invariant under rotations by 2 pi / m.

"""

from __future__ import division

import logging
from fractions import Fraction

try:
    from math import gcd
except ImportError:
    from fractions import gcd

import numpy as np

from vortexsphere.geometry.sphere_geometry import stereo_lift
from vortexsphere.periodic.continuation import newton_correct, \
    FrozenFrequency
from vortexsphere.periodic.loop_space import FourierLoop, extended_samples
from vortexsphere.utils.errors import NotCoprime, FrequencyMismatch, \
    ZeroRotation, NumericalError, CollisionError
from vortexsphere.utils.utilities import rotate

logger = logging.getLogger(__name__)

ACCEPTANCE_TOLERANCE = 1e-8
FREQUENCY_MATCH_TOLERANCE = 1e-12
DEFAULT_DENOMINATOR = 12
SAMPLES_PER_MODE = 8
CHOREOGRAPHY_CSV_HEADER = ['t', 're_Q', 'im_Q', 'x', 'y', 'z']


class ChoreographyCert(object):
    """Rational frequency data of a choreography and its residuals"""

    def __init__(self, n, k, ell, m, omega, point_index=None,
                 amplitude=None):
        self.n = n
        self.k = k
        self.ell = ell
        self.m = m
        self.ell_star = modular_inverse(ell, m)
        self.k_tilde = k_tilde(k, ell, m, n)
        self.nu_target = omega * m / ell
        self.alignment_residual = None
        self.rotation_residual = None
        self.periodicity_residual = None
        self.point_index = point_index
        self.amplitude = amplitude

    @property
    def k_tilde_mod_n(self):
        """The shift index reduced modulo n"""
        return self.k_tilde % self.n

    @property
    def accepted(self):
        """True when both certified residuals are below tolerance"""
        return self.alignment_residual is not None and \
            self.alignment_residual < ACCEPTANCE_TOLERANCE and \
            self.rotation_residual < ACCEPTANCE_TOLERANCE

    def to_dict(self):
        """Dictionary in the choreography report layout"""
        return {"ell": self.ell, "m": self.m, "ell_star": self.ell_star,
                "k_tilde": self.k_tilde,
                "k_tilde_mod_n": self.k_tilde_mod_n,
                "nu": self.nu_target,
                "alignment_residual": self.alignment_residual,
                "rotation_residual": self.rotation_residual,
                "periodicity_residual": self.periodicity_residual,
                "point_index": self.point_index,
                "amplitude": self.amplitude,
                "accepted": self.accepted}


class InertialOrbit(object):
    """Samples of Q_n on [0, 2 pi m)"""

    def __init__(self, times, positions):
        self.times = times
        self.positions = positions


def modular_inverse(ell, m):
    """The inverse of ell modulo m in [0, m); 0 when m = 1"""

    if m < 1:
        raise ValueError('Modulus must be positive, got ' + str(m))
    if abs(gcd(ell, m)) != 1:
        raise NotCoprime(str(ell) + ' and ' + str(m) +
                         ' are not relatively prime')
    if m == 1:
        return 0
    return next(s for s in range(1, m) if (ell * s) % m == 1)


def admissible_ratios(k, n, denom_max, sign=1):
    """Coprime (ell, m) with 1 <= |ell|, m <= denom_max and k ell - m in nZ,
    sorted by m / ell. sign = -1 gives negative ell, for rings with
    negative rotation frequency"""

    pairs = []
    for m in range(1, denom_max + 1):
        for size in range(1, denom_max + 1):
            ell = sign * size
            if (k * ell - m) % n == 0 and abs(gcd(ell, m)) == 1:
                pairs.append((ell, m))
    return sorted(pairs, key=lambda pair: Fraction(pair[1], pair[0]))


def k_tilde(k, ell, m, n):
    """The shift index k - (k ell - m) ell_star"""
    if (k * ell - m) % n != 0:
        raise ValueError('k ell - m must be divisible by n')
    return k - (k * ell - m) * modular_inverse(ell, m)


def inertial_positions(cfg, times, omega):
    """Q_j(t) = exp(t omega/nu J) x_j(t) for all vortices, shape (T, n, 2)"""
    times = np.asarray(times, dtype=float)
    positions = extended_samples(cfg, times)
    return rotate(positions, (times * omega / cfg.nu)[:, np.newaxis])


def _grid(cfg, m, num_points):
    if num_points is None:
        num_points = SAMPLES_PER_MODE * cfg.p
    count = num_points * m
    return 2.0 * np.pi * m * np.arange(count) / count


def inertial_orbit(point, ell, m, num_points=None,
                   tolerance=FREQUENCY_MATCH_TOLERANCE):
    """Q_n sampled on [0, 2 pi m) at num_points * m times, for a point
    converged at exactly nu = omega m / ell"""

    cfg = point.cfg
    target = cfg.params.omega * m / ell
    if abs(cfg.nu - target) > tolerance:
        raise FrequencyMismatch('Point at nu = ' + str(cfg.nu) +
                                ' is not at the choreography frequency ' +
                                str(target))
    times = _grid(cfg, m, num_points)
    return InertialOrbit(times, inertial_positions(
        cfg, times, cfg.params.omega)[:, -1, :])


def reconverge_at(point, nu_target, guess_loop=None):
    """Solves the bordered system again with the frequency frozen"""
    loop = point.cfg.loop if guess_loop is None else guess_loop
    guess = point.cfg.with_loop(loop, nu_target)
    return newton_correct(guess, constraint=FrozenFrequency(nu_target))


def certify_choreography(point, cert, num_points=None):
    """Fills in the alignment, rotation and periodicity residuals of cert
    on a grid of num_points * m times"""

    cfg = point.cfg
    omega = cfg.params.omega
    n = cfg.params.n
    zeta = cfg.params.zeta
    times = _grid(cfg, cert.m, num_points)
    orbit = inertial_positions(cfg, times, omega)

    indices = np.arange(1, n + 1)
    shifted = times[:, np.newaxis] + indices * cert.k_tilde * zeta
    leader = np.stack([inertial_positions(cfg, shifted[:, j], omega)[:, -1]
                       for j in range(n)], axis=1)
    cert.alignment_residual = float(np.max(np.abs(orbit - leader)))

    current = orbit[:, -1]
    earlier = inertial_positions(cfg, times - 2.0 * np.pi, omega)[:, -1]
    rotated = rotate(current, -2.0 * np.pi * cert.ell / cert.m)
    cert.rotation_residual = float(np.max(np.abs(earlier - rotated)))

    later = inertial_positions(cfg, times + 2.0 * np.pi * cert.m,
                               omega)[:, -1]
    cert.periodicity_residual = float(np.max(np.abs(later - current)))
    return cert


def _interpolated_loop(first, second, target):
    weight = (target - first.nu) / (second.nu - first.nu)
    vector = (1.0 - weight) * first.cfg.loop.to_vector() + \
        weight * second.cfg.loop.to_vector()
    return FourierLoop.from_vector(vector)


def _crossings(frequencies, target):
    offsets = frequencies - target
    for index in range(len(offsets) - 1):
        if offsets[index] == 0 or offsets[index] * offsets[index + 1] < 0:
            yield index
    if len(offsets) and offsets[-1] == 0:
        yield len(offsets) - 1


def scan_branch_for_choreographies(branch, denom_max=DEFAULT_DENOMINATOR,
                                   num_points=None):
    """Certifies a choreography at every crossing of the branch frequency
    with an admissible omega m / ell"""

    omega = branch.omega
    if omega == 0:
        raise ZeroRotation('The ring at r = ' + str(branch.r) +
                           ' does not rotate; frequency ratios are undefined')
    if not branch.points:
        return []

    frequencies = branch.frequencies()
    sign = 1 if omega > 0 else -1
    certs = []
    for ell, m in admissible_ratios(branch.k, branch.n, denom_max, sign):
        target = omega * m / ell
        for index in _crossings(frequencies, target):
            first = branch.points[index]
            second = branch.points[min(index + 1, len(branch.points) - 1)]
            guess = first.cfg.loop if first.nu == second.nu else \
                _interpolated_loop(first, second, target)
            try:
                point = reconverge_at(first, target, guess)
            except (NumericalError, CollisionError) as error:
                logger.warning('Re-convergence at nu = %r for (%d, %d) '
                               'failed: %s', target, ell, m, error)
                continue
            cert = certify_choreography(
                point, ChoreographyCert(branch.n, branch.k, ell, m, omega,
                                        index, point.amplitude),
                num_points)
            if cert.accepted:
                logger.info('Choreography (ell, m) = (%d, %d) certified at '
                            'nu = %r', ell, m, target)
            else:
                logger.warning('Choreography (%d, %d) rejected: alignment '
                               '%g, rotation %g', ell, m,
                               cert.alignment_residual,
                               cert.rotation_residual)
            certs.append(cert)
    return certs


def choreography_trajectory_rows(point, cert, num_points=None):
    """Rows t, Re Q_n, Im Q_n, x, y, z of the choreography curve"""

    orbit = inertial_orbit(point, cert.ell, cert.m, num_points)
    lifted = stereo_lift(orbit.positions)
    return [[t, q[0], q[1], v[0], v[1], v[2]]
            for t, q, v in zip(orbit.times, orbit.positions, lifted)]

