# coding=utf-8
"""
Isotypic decomposition of the Hessian of the amended potential at the
polygonal equilibrium

The Hessian D^2V(a) commutes with the cyclic symmetry of the ring, so the
unitary matrix P assembled from the maps T_k splits it into 2x2 blocks B_k.
Adding the gyroscopic term of the rescaled equation turns each block into
the pencil m_k(nu), whose determinant changes sign at the critical
frequency nu_k.

"""

from __future__ import division

import numpy as np
from scipy.linalg import svdvals
from scipy.optimize import bisect

from vortexsphere.equilibrium.ring_equilibrium import s_sum
from vortexsphere.utils.errors import DegenerateAt, NoBifurcation
from vortexsphere.utils.utilities import J, R, rotation

RESONANCE_TOLERANCE = 1e-9
DEGENERACY_TOLERANCE = 1e-12
STABILITY_TOLERANCE = 1e-12
HYPERBOLICITY_TOLERANCE = 1e-8
BISECTION_TOLERANCE = 1e-14


class IsotypicBasis(object):
    """The maps T_k(w)_j = n^(-1/2) exp(i j k zeta) exp(j zeta J) w and the
    unitary P whose column pairs are T_1, ..., T_n"""

    def __init__(self, n):
        self.n = n
        self.zeta = 2.0 * np.pi / n
        self.columns = [self._transform(k) for k in range(1, n + 1)]
        self.P = np.concatenate(self.columns, axis=1)

    def _transform(self, k):
        blocks = [np.exp(1j * j * k * self.zeta) * rotation(j * self.zeta)
                  for j in range(1, self.n + 1)]
        return np.concatenate(blocks, axis=0) / np.sqrt(self.n)

    def transform(self, k):
        """The 2n x 2 matrix of T_k"""
        return self.columns[k - 1]

    def apply(self, k, w):
        """Returns T_k(w) as n complex 2-vectors"""
        return np.dot(self.transform(k), w).reshape(self.n, 2)

    def conjugate(self, matrix):
        """Returns P* matrix P"""
        return np.dot(self.P.conj().T, np.dot(matrix, self.P))

    def block(self, matrix, k):
        """Returns T_k* matrix T_k"""
        t_k = self.transform(k)
        return np.dot(t_k.conj().T, np.dot(matrix, t_k))


class SpectralBlock(object):
    """Per-mode spectral data of the equilibrium"""

    def __init__(self, k, params):
        self.k = k
        self.params = params
        self.B = block_B(k, params)
        self.trace = block_trace(params)
        self.nu_crit = critical_frequency(k, params) if k < params.n \
            else None
        self.morse_jump = morse_jump(k, params) if k < params.n else 0

    def pencil(self, nu):
        """The block m_k(nu)"""
        return block_m(self.k, nu, self.params)

    def det_at(self, nu):
        """The determinant d_k(nu)"""
        return det_d(self.k, nu, self.params)


class StabilityVerdict(object):
    """Linear stability of the ring at a given polar angle"""

    def __init__(self, n, theta, margins):
        self.n = n
        self.theta = theta
        self.margins = margins
        self.failing_modes = [k for k, margin in sorted(margins.items())
                              if not margin > STABILITY_TOLERANCE]
        self.stable = not self.failing_modes

    @property
    def label(self):
        """'stable', 'unstable', or 'boundary' when every failing margin is
        zero within tolerance"""
        if self.stable:
            return 'stable'
        if all(abs(self.margins[k]) <= STABILITY_TOLERANCE
               for k in self.failing_modes):
            return 'boundary'
        return 'unstable'

    def __bool__(self):
        return self.stable

    __nonzero__ = __bool__


class SpectrumRow(object):
    """One mode of the spectrum report"""

    def __init__(self, k, s_k, block, nu_crit, resonances, jump=0):
        self.k = k
        self.s_k = s_k
        self.block = block
        self.nu_crit = nu_crit
        self.resonances = resonances
        self.morse_jump = jump

    def to_dict(self):
        """Dictionary suitable for JSON output"""
        return {"k": self.k,
                "s_k": self.s_k,
                "b11": float(self.block[0, 0].real),
                "b22": float(self.block[1, 1].real),
                "nu": self.nu_crit,
                "morse_jump": self.morse_jump,
                "resonances": [list(pair) for pair in self.resonances]}


def _gyroscopic_weight(params):
    return 4.0 / (1.0 + params.r ** 2) ** 2


def hessian_minor(j, params):
    """Minor A_nj = (2 r sin(j zeta / 2))^(-2) exp(j zeta J) R"""

    if not 1 <= j <= params.n - 1:
        raise ValueError('Minor index must satisfy 1 <= j <= n-1')
    chord = 2.0 * params.r * np.sin(j * params.zeta / 2.0)
    return np.dot(rotation(j * params.zeta), R) / chord ** 2


def hessian_A(params):
    """Self-interaction matrix A = s_1/r^2 I - 4 s_1 (1+r^2)^(-2) diag(1,0)"""

    s1 = params.s1
    r_sq = params.r ** 2
    return (s1 / r_sq) * np.eye(2) - 4.0 * s1 / (1.0 + r_sq) ** 2 * \
        np.diag([1.0, 0.0])


def _row_minors(params):
    # minors[m] = A_{n, m}, with A_{n, 0} the diagonal minor A_nn
    minors = [None] + [hessian_minor(j, params)
                       for j in range(1, params.n)]
    minors[0] = hessian_A(params) - sum(minors[1:])
    return minors


def hessian_full(params):
    """D^2V(a) assembled from row n by the cyclic equivariance
    minor(i, j) = exp(i zeta J) A_{n, (j - i) mod n} exp(-i zeta J)"""

    n = params.n
    row = _row_minors(params)
    hessian = np.zeros((2 * n, 2 * n))
    for i in range(1, n + 1):
        turn = rotation(i * params.zeta)
        for j in range(1, n + 1):
            minor = np.dot(turn, np.dot(row[(j - i) % n], turn.T))
            hessian[2 * (i - 1):2 * i, 2 * (j - 1):2 * j] = minor
    return hessian


def block_B(k, params):
    """Closed form of the block B_k = T_k* D^2V(a) T_k"""

    if not 1 <= k <= params.n:
        raise ValueError('Mode must satisfy 1 <= k <= n')
    s1 = params.s1
    r_sq = params.r ** 2
    block = hessian_A(params) + (s1 - params.s_k(k)) / r_sq * R
    return block.astype(complex)


def block_trace(params):
    """Trace of B_k, which does not depend on k"""
    r_sq = params.r ** 2
    return 2.0 * params.s1 / r_sq - 4.0 * params.s1 / (1.0 + r_sq) ** 2


def block_m(k, nu, params):
    """The Hermitian block m_k(nu) = -nu 4(1+r^2)^(-2) (iJ) + B_k"""
    return -nu * _gyroscopic_weight(params) * (1j * J) + block_B(k, params)


def det_d(k, nu, params):
    """Closed form of det m_k(nu)"""
    s1 = params.s1
    s_k = params.s_k(k)
    r_sq = params.r ** 2
    return (-nu ** 2 * 16.0 / (1.0 + r_sq) ** 4 +
            s_k * (2.0 * s1 - s_k - 4.0 * s1 * r_sq / (1.0 + r_sq) ** 2) /
            r_sq ** 2)


def _frequency_discriminant(k, params):
    s1 = params.s1
    s_k = params.s_k(k)
    r_sq = params.r ** 2
    return s_k * (2.0 * s1 - s_k - 4.0 * s1 * r_sq / (1.0 + r_sq) ** 2)


def frequency_condition(k, params):
    """True when 4r^2 (1+r^2)^(-2) < 2 - s_k/s_1"""
    r_sq = params.r ** 2
    return 4.0 * r_sq / (1.0 + r_sq) ** 2 < 2.0 - params.s_k(k) / params.s1


def critical_frequency(k, params):
    """The frequency nu_k at which det m_k changes sign, or None when the
    frequency condition fails"""

    if not 1 <= k <= params.n - 1:
        raise ValueError('Mode must satisfy 1 <= k <= n-1')
    if not frequency_condition(k, params):
        return None
    r_sq = params.r ** 2
    nu = (1.0 + r_sq) ** 2 / (4.0 * r_sq) * \
        np.sqrt(_frequency_discriminant(k, params))
    if not nu > 0:
        return None
    return float(nu)


def frequency_upper_bound(params):
    """A frequency beyond which every d_k is negative"""
    r_sq = params.r ** 2
    return (1.0 + r_sq) ** 2 / (4.0 * r_sq) * (2.0 * params.s1 + 1.0)


def critical_frequency_bisection(k, params, xtol=BISECTION_TOLERANCE):
    """Root of d_k found by bisection on [0, frequency_upper_bound]"""

    if not det_d(k, 0.0, params) > 0:
        return None
    return bisect(lambda nu: det_d(k, nu, params), 0.0,
                  frequency_upper_bound(params), xtol=xtol)


def morse_index(k, nu, params, tolerance=DEGENERACY_TOLERANCE):
    """Number of negative eigenvalues of m_k(nu)"""

    if abs(det_d(k, nu, params)) <= tolerance:
        raise DegenerateAt('Block m_' + str(k) + ' is singular at nu = ' +
                           str(nu))
    eigenvalues = np.linalg.eigvalsh(block_m(k, nu, params))
    return int(np.sum(eigenvalues < 0))


def morse_jump(k, params, relative_offset=1e-4):
    """Change n_k(nu_k - eps) - n_k(nu_k + eps) of the Morse index"""

    nu_k = critical_frequency(k, params)
    if nu_k is None:
        return 0
    eps = relative_offset * nu_k
    return morse_index(k, nu_k - eps, params) - \
        morse_index(k, nu_k + eps, params)


def stability_verdict(n, theta):
    """Linear stability of the ring of n vortices at polar angle theta:
    stable when k(n-k)/(n-1) - 1 < cos^2 theta for every k = 1..n-1"""

    if not 0.0 < theta < np.pi:
        raise ValueError('Polar angle must lie in (0, pi), got ' +
                         str(theta))
    cos_sq = np.cos(theta) ** 2
    margins = dict((k, float(cos_sq - (k * (n - k) / (n - 1) - 1.0)))
                   for k in range(1, n))
    return StabilityVerdict(n, theta, margins)


def resonance_check(k, params, l_max, tolerance=RESONANCE_TOLERANCE):
    """Returns every (l, j) with 2 <= l <= l_max, j != k and
    |l nu_k - nu_j| below tolerance"""

    nu_k = critical_frequency(k, params)
    if nu_k is None:
        raise NoBifurcation('Mode ' + str(k) + ' has no critical frequency')
    frequencies = dict((j, critical_frequency(j, params))
                       for j in range(1, params.n) if j != k)
    resonances = []
    for l in range(2, l_max + 1):
        for j, nu_j in sorted(frequencies.items()):
            if nu_j is not None and abs(l * nu_k - nu_j) < tolerance:
                resonances.append((l, j))
    return resonances


def _radii_from_sine_squared(sigma):
    # Roots r^2 of 4 r^2 = sigma (1 + r^2)^2, the smaller one first
    root = np.sqrt(max(1.0 - sigma, 0.0))
    small = ((2.0 - sigma) - 2.0 * root) / sigma
    large = ((2.0 - sigma) + 2.0 * root) / sigma
    return np.sqrt(small), np.sqrt(large)


def bifurcation_radii(k, n):
    """Radii where 4r^2 (1+r^2)^(-2) = 2 - s_k/s_1, at which det B_k changes
    sign and the equilibrium orbit stops being hyperbolic"""

    sigma = 2.0 - s_sum(k, n) / s_sum(1, n)
    if not 0.0 < sigma <= 1.0:
        return []
    small, large = _radii_from_sine_squared(sigma)
    if small == large:
        return [float(small)]
    return [float(small), float(large)]


def resonant_radius(k, j, l, n):
    """Radius r < 1 at which l nu_k = nu_j, or None"""

    s1 = s_sum(1, n)
    s_k = s_sum(k, n)
    s_j = s_sum(j, n)
    denominator = s1 * s_j - l ** 2 * s1 * s_k
    if denominator == 0:
        return None
    sigma = -(s_j * (s_j - 2.0 * s1) - l ** 2 * s_k * (s_k - 2.0 * s1)) / \
        denominator
    if not 0.0 < sigma < 1.0:
        return None
    return float(_radii_from_sine_squared(sigma)[0])


def _rotation_generator(params):
    angles = params.zeta * np.arange(1, params.n + 1)
    positions = params.r * np.stack([np.cos(angles), np.sin(angles)], axis=-1)
    return np.dot(positions, J.T).reshape(2 * params.n)


def reduced_hessian_min_singular(params):
    """Smallest singular value of D^2V(a) on the orthogonal complement of
    the rotation generator J a"""

    generator = _rotation_generator(params)
    generator /= np.linalg.norm(generator)
    # Orthonormal basis of the complement from a full QR factorisation
    basis = np.linalg.qr(generator[:, np.newaxis], mode='complete')[0][:, 1:]
    reduced = np.dot(basis.T, np.dot(hessian_full(params), basis))
    return float(np.min(svdvals(reduced)))


def is_hyperbolic(params, tolerance=HYPERBOLICITY_TOLERANCE):
    """True when D^2V(a) is invertible off the rotation generator"""
    return reduced_hessian_min_singular(params) > tolerance


def spectrum_report(params, l_max):
    """Per-mode rows: s_k, B_k, nu_k and resonances up to l_max. Modes whose
    critical frequency degenerates to zero report nu_k = 0"""

    rows = []
    for k in range(1, params.n + 1):
        block = SpectralBlock(k, params)
        nu_k = block.nu_crit
        if k < params.n and nu_k is None and \
                abs(_frequency_discriminant(k, params)) < DEGENERACY_TOLERANCE:
            nu_k = 0.0
        resonances = resonance_check(k, params, l_max) if nu_k else []
        rows.append(SpectrumRow(k, params.s_k(k), block.B, nu_k, resonances,
                                block.morse_jump))
    return rows
