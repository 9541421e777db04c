# coding=utf-8
"""
Polygonal relative equilibrium of n equal vortices on the sphere

Positions live in the stereographic chart and are stored as arrays whose
last two axes are (vortex, coordinate), i.e. shape (..., n, 2); leading
axes (for example time samples along a loop) are broadcast by every
function in this module.

"""

from __future__ import division

import numpy as np

from vortexsphere.utils.errors import CollisionError

COLLISION_THRESHOLD = 1e-8
FINITE_DIFFERENCE_STEP = 1e-5


class RingParams(object):
    """Data of the polygonal equilibrium a_j = r exp(i j zeta).

    The rotation frequency is always derived from (n, r) and cannot be set
    independently.
    """

    def __init__(self, n, r):
        if int(n) != n or n < 3:
            raise ValueError('The ring needs at least 3 vortices, got ' +
                             str(n))
        if not r > 0:
            raise ValueError('The ring radius must be positive, got ' +
                             str(r))
        self.n = int(n)
        self.r = float(r)
        self.zeta = 2.0 * np.pi / self.n
        self.omega = ring_omega(self.n, self.r)
        self.s = np.array([s_sum(k, self.n) for k in range(1, self.n + 1)])

    @classmethod
    def from_theta(cls, n, theta):
        """Create from the polar angle of the ring on the sphere"""
        return cls(n, theta_to_radius(theta))

    @property
    def s1(self):
        """The sum s_1 = (n - 1) / 2"""
        return self.s[0]

    @property
    def theta(self):
        """Polar angle of the ring, measured from the north pole"""
        return radius_to_theta(self.r)

    def s_k(self, k):
        """Returns s_k = k (n - k) / 2 for 1 <= k <= n"""
        return self.s[k - 1]

    def to_dict(self):
        """Dictionary of the defining data of this ring"""
        return {"n": self.n, "r": self.r, "omega": self.omega}

    def __eq__(self, other):
        if isinstance(other, self.__class__):
            return self.n == other.n and self.r == other.r
        return False

    def __ne__(self, other):
        return not self.__eq__(other)

    def __repr__(self):
        return 'RingParams(n={}, r={!r})'.format(self.n, self.r)


class PlaneConfig(object):
    """Positions of all n vortices in the chart"""

    def __init__(self, x):
        self.x = np.asarray(x, dtype=float)
        if self.x.ndim != 2 or self.x.shape[1] != 2:
            raise ValueError('Configuration must have shape (n, 2)')
        check_collision_free(self.x, threshold=0.0)

    @property
    def n(self):
        """Number of vortices"""
        return self.x.shape[0]

    def to_complex(self):
        """Positions as complex numbers"""
        return self.x[:, 0] + 1j * self.x[:, 1]


def _positions(x):
    if isinstance(x, PlaneConfig):
        return x.x
    return np.asarray(x, dtype=float)


def _omega(params_or_omega):
    return getattr(params_or_omega, 'omega', params_or_omega)


def theta_to_radius(theta):
    """Chart radius r of the ring at polar angle theta:
    r^2 = (1 + cos theta) / (1 - cos theta)"""
    if not 0.0 < theta < np.pi:
        raise ValueError('Polar angle must lie in (0, pi), got ' +
                         str(theta))
    cos_t = np.cos(theta)
    return float(np.sqrt((1.0 + cos_t) / (1.0 - cos_t)))


def radius_to_theta(r):
    """Polar angle of the ring of chart radius r"""
    r_sq = r * r
    return float(np.arccos((r_sq - 1.0) / (r_sq + 1.0)))


def ring_positions(params):
    """Positions x_j = r exp(i j zeta), j = 1..n (vortex n sits at (r, 0))"""

    angles = params.zeta * np.arange(1, params.n + 1)
    return PlaneConfig(params.r * np.stack([np.cos(angles), np.sin(angles)],
                                           axis=-1))


def s_sum(k, n):
    """The sum s_k = k (n - k) / 2"""
    if not 1 <= k <= n:
        raise ValueError('Mode must satisfy 1 <= k <= n')
    return k * (n - k) / 2.0


def s_sum_trigonometric(k, n):
    """Trigonometric form of s_k, summing sin^2(j k zeta/2)/sin^2(j zeta/2)"""
    half_angles = np.pi * np.arange(1, n) / n
    return 0.5 * float(np.sum(np.sin(k * half_angles) ** 2 /
                              np.sin(half_angles) ** 2))


def ring_omega_forms(n, r):
    """Both closed forms of the rotation frequency:
    (n-1)(1-r^4)/(8r^2) and s_1 (1-r^4)/(4r^2)"""
    s1 = (n - 1) / 2.0
    r_sq = r * r
    direct = (n - 1) * (1.0 - r_sq * r_sq) / (8.0 * r_sq)
    from_s1 = s1 * (1.0 - r_sq * r_sq) / (4.0 * r_sq)
    return direct, from_s1


def ring_omega(n, r):
    """Rotation frequency of the ring of radius r"""
    if not r > 0:
        raise ValueError('The ring radius must be positive')
    direct, from_s1 = ring_omega_forms(n, r)
    if not np.isclose(direct, from_s1, rtol=1e-14, atol=1e-300):
        raise ArithmeticError('Rotation frequency forms disagree: ' +
                              str(direct) + ' ' + str(from_s1))
    return from_s1


def pair_differences(x):
    """Returns d_ji = x_j - x_i and |d_ji|^2, with inf on the diagonal so
    that reciprocal powers vanish there"""

    x = _positions(x)
    diff = x[..., :, np.newaxis, :] - x[..., np.newaxis, :, :]
    dist_sq = np.sum(diff * diff, axis=-1)
    n = x.shape[-2]
    dist_sq = np.where(np.eye(n, dtype=bool), np.inf, dist_sq)
    return diff, dist_sq


def minimum_separation(x):
    """Smallest pairwise distance (per leading index)"""
    dist_sq = pair_differences(x)[1]
    return np.sqrt(np.min(dist_sq, axis=(-2, -1)))


def check_collision_free(x, threshold=COLLISION_THRESHOLD):
    """Raises CollisionError if any two vortices are closer than threshold"""
    separation = np.min(minimum_separation(x))
    if not separation > threshold:
        raise CollisionError('Vortices collide: minimum separation ' +
                             str(separation))


def hamiltonian_H(x, collision_threshold=COLLISION_THRESHOLD):
    """Hamiltonian -1/2 sum_{i<j} ln(|q_j-q_i|^2/((1+|q_j|^2)(1+|q_i|^2)))"""

    x = _positions(x)
    check_collision_free(x, collision_threshold)
    n = x.shape[-2]
    upper_i, upper_j = np.triu_indices(n, 1)
    diff = x[..., upper_j, :] - x[..., upper_i, :]
    weight = 1.0 + np.sum(x * x, axis=-1)
    ratio = np.sum(diff * diff, axis=-1) / (weight[..., upper_j] *
                                            weight[..., upper_i])
    return -0.5 * np.sum(np.log(ratio), axis=-1)


def moment_G(x):
    """Moment map G = 2 sum |q_j|^2 / (1 + |q_j|^2)"""
    x = _positions(x)
    norm_sq = np.sum(x * x, axis=-1)
    return 2.0 * np.sum(norm_sq / (1.0 + norm_sq), axis=-1)


def amended_potential(x, omega, collision_threshold=COLLISION_THRESHOLD):
    """Amended potential V = omega G + H"""
    x = _positions(x)
    return _omega(omega) * moment_G(x) + hamiltonian_H(x, collision_threshold)


def gradient_V(x, params, collision_threshold=COLLISION_THRESHOLD):
    """Gradient of the amended potential with respect to every x_j.

    params is a RingParams or the rotation frequency itself.
    """

    x = _positions(x)
    check_collision_free(x, collision_threshold)
    omega = _omega(params)
    n = x.shape[-2]
    norm_sq = np.sum(x * x, axis=-1)[..., np.newaxis]
    diff, dist_sq = pair_differences(x)
    interaction = np.sum(diff / dist_sq[..., np.newaxis], axis=-2)
    return (4.0 * omega / (1.0 + norm_sq) ** 2 * x - interaction +
            (n - 1) * x / (1.0 + norm_sq))


def hessian_V(x, params, collision_threshold=COLLISION_THRESHOLD):
    """Hessian of V as 2x2 minors, shape (..., n, n, 2, 2); minor (j, i) is
    the derivative of grad_{x_j} V with respect to x_i"""

    x = _positions(x)
    check_collision_free(x, collision_threshold)
    omega = _omega(params)
    n = x.shape[-2]
    identity = np.eye(2)

    diff, dist_sq = pair_differences(x)
    outer = diff[..., :, np.newaxis] * diff[..., np.newaxis, :]
    minors = (identity / dist_sq[..., np.newaxis, np.newaxis] -
              2.0 * outer / (dist_sq ** 2)[..., np.newaxis, np.newaxis])

    norm_sq = np.sum(x * x, axis=-1)[..., np.newaxis, np.newaxis]
    x_outer = x[..., :, np.newaxis] * x[..., np.newaxis, :]
    self_terms = (omega * (4.0 * identity / (1.0 + norm_sq) ** 2 -
                           16.0 * x_outer / (1.0 + norm_sq) ** 3) +
                  (n - 1) * (identity / (1.0 + norm_sq) -
                             2.0 * x_outer / (1.0 + norm_sq) ** 2))

    diagonal = self_terms - np.sum(minors, axis=-3)
    index = np.arange(n)
    minors[..., index, index, :, :] = diagonal
    return minors


def minors_to_matrix(minors):
    """Assembles (..., n, n, 2, 2) minors into (..., 2n, 2n) matrices"""
    minors = np.asarray(minors)
    n = minors.shape[-3]
    swapped = np.swapaxes(minors, -3, -2)
    return swapped.reshape(minors.shape[:-4] + (2 * n, 2 * n))


def finite_difference_gradient(x, omega, step=FINITE_DIFFERENCE_STEP):
    """Central finite differences of amended_potential in every coordinate"""

    x = np.array(_positions(x), dtype=float)
    gradient = np.zeros_like(x)
    for j in range(x.shape[0]):
        for a in range(2):
            forward = x.copy()
            backward = x.copy()
            forward[j, a] += step
            backward[j, a] -= step
            gradient[j, a] = (amended_potential(forward, omega) -
                              amended_potential(backward, omega)) / (2 * step)
    return gradient


def finite_difference_hessian(x, omega, step=FINITE_DIFFERENCE_STEP):
    """Central finite differences of gradient_V, returned as a 2n x 2n
    matrix"""

    x = np.array(_positions(x), dtype=float)
    n = x.shape[0]
    hessian = np.zeros((2 * n, 2 * n))
    for i in range(n):
        for a in range(2):
            forward = x.copy()
            backward = x.copy()
            forward[i, a] += step
            backward[i, a] -= step
            column = (gradient_V(forward, omega) -
                      gradient_V(backward, omega)) / (2 * step)
            hessian[:, 2 * i + a] = column.reshape(2 * n)
    return hessian
