# coding=utf-8
"""
Symmetry-reduced periodic loops and the bifurcation operator

A relative periodic solution with the cyclic symmetry of mode k is fully
described by the path x_n(t) of a single vortex; the others follow from
x_j(t) = exp(j zeta J) x_n(t + j k zeta). The path is stored as a truncated
real Fourier series x_n(t) = c_0 + 2 Re sum_{l=1..p} c_l exp(i l t) and the
Galerkin system keeps the harmonics 0..p of the residual f_n.

Real coefficient vectors are laid out as [Re c_0, then Re c_l, Im c_l for
l = 1..p], each entry being a 2-vector, so a loop of order p has 2 + 4p
real unknowns.

"""

from __future__ import division

import numpy as np

from vortexsphere.equilibrium.ring_equilibrium import PlaneConfig, \
    gradient_V, hessian_V, minimum_separation, COLLISION_THRESHOLD
from vortexsphere.equilibrium.spectral_analysis import hessian_full
from vortexsphere.utils.utilities import J, R, rotate, apply_j

DEFAULT_ORDER = 32
CHART_ESCAPE_RADIUS = 1e3


class FourierLoop(object):
    """Truncated Fourier series of a real closed curve in the plane.

    coeffs holds the complex 2-vectors c_0..c_p; negative modes are the
    complex conjugates.
    """

    def __init__(self, coeffs):
        coeffs = np.array(coeffs, dtype=complex)
        if coeffs.ndim != 2 or coeffs.shape[1] != 2 or coeffs.shape[0] < 2:
            raise ValueError('Loop coefficients must have shape (p+1, 2) '
                             'with p >= 1')
        coeffs[0] = coeffs[0].real
        self.coeffs = coeffs

    @property
    def p(self):
        """Truncation order"""
        return self.coeffs.shape[0] - 1

    @classmethod
    def constant(cls, point, p):
        """The loop which stays at point"""
        coeffs = np.zeros((p + 1, 2), dtype=complex)
        coeffs[0] = point
        return cls(coeffs)

    @classmethod
    def from_vector(cls, vector):
        """Create from the real coefficient vector"""
        vector = np.asarray(vector, dtype=float)
        p = (vector.size - 2) // 4
        if vector.size != 2 + 4 * p:
            raise ValueError('Coefficient vector has invalid length ' +
                             str(vector.size))
        coeffs = np.zeros((p + 1, 2), dtype=complex)
        coeffs[0] = vector[0:2]
        pairs = vector[2:].reshape(p, 2, 2)
        coeffs[1:] = pairs[:, 0, :] + 1j * pairs[:, 1, :]
        return cls(coeffs)

    @classmethod
    def from_samples(cls, samples, p):
        """Projects samples at t_m = 2 pi m / N onto the harmonics 0..p"""
        samples = np.asarray(samples, dtype=float)
        spectrum = np.fft.rfft(samples, axis=0) / samples.shape[0]
        return cls(spectrum[:p + 1])

    def to_vector(self):
        """The real coefficient vector"""
        return encode_coefficients(self.coeffs)

    def evaluate(self, t):
        """Position x_n(t); t may be an array"""
        t = np.asarray(t, dtype=float)
        modes = np.arange(1, self.p + 1)
        phases = np.exp(1j * t[..., np.newaxis] * modes)
        oscillation = np.dot(phases, self.coeffs[1:])
        return self.coeffs[0].real + 2.0 * oscillation.real

    def derivative(self, t):
        """Velocity of the loop at time t"""
        return self.differentiate().evaluate(t)

    def differentiate(self):
        """The loop of derivative coefficients i l c_l"""
        modes = np.arange(self.p + 1)[:, np.newaxis]
        return FourierLoop(1j * modes * self.coeffs)

    def rotated(self, theta):
        """The loop exp(theta J) x(t)"""
        return FourierLoop(rotate(self.coeffs.real, theta) +
                           1j * rotate(self.coeffs.imag, theta))

    def shifted(self, tau):
        """The loop x(t + tau)"""
        modes = np.arange(self.p + 1)[:, np.newaxis]
        return FourierLoop(self.coeffs * np.exp(1j * modes * tau))

    def resized(self, p):
        """The same curve truncated or zero-padded to order p"""
        coeffs = np.zeros((p + 1, 2), dtype=complex)
        keep = min(p, self.p) + 1
        coeffs[:keep] = self.coeffs[:keep]
        return FourierLoop(coeffs)

    def l2_norm(self):
        """sqrt of the time average of |x(t)|^2"""
        return float(np.sqrt(np.sum(np.abs(self.coeffs[0]) ** 2) + 2.0 *
                             np.sum(np.abs(self.coeffs[1:]) ** 2)))

    def __eq__(self, other):
        if isinstance(other, self.__class__):
            return np.array_equal(self.coeffs, other.coeffs)
        return False

    def __ne__(self, other):
        return not self.__eq__(other)


class LoopConfig(object):
    """A reduced loop together with its symmetry mode, ring and frequency"""

    def __init__(self, loop, k, params, nu):
        if not 1 <= k <= params.n:
            raise ValueError('Mode must satisfy 1 <= k <= n')
        self.loop = loop
        self.k = k
        self.params = params
        self.nu = float(nu)

    @property
    def p(self):
        """Truncation order of the loop"""
        return self.loop.p

    def with_loop(self, loop, nu=None):
        """Copy with another loop and optionally another frequency"""
        return LoopConfig(loop, self.k, self.params,
                          self.nu if nu is None else nu)


def coefficient_weights(p):
    """Weights turning the dot product of coefficient vectors into the time
    average of the pointwise product"""
    return np.concatenate([np.ones(2), 2.0 * np.ones(4 * p)])


def loop_inner(first, second):
    """Time-averaged L2 inner product of two real coefficient vectors"""
    weights = coefficient_weights((np.size(first) - 2) // 4)
    return float(np.dot(first * weights, second))


def encode_coefficients(coeffs):
    """Complex coefficients (..., p+1, 2) to real vectors (..., 2+4p)"""
    coeffs = np.asarray(coeffs)
    leading = coeffs.shape[:-2]
    p = coeffs.shape[-2] - 1
    oscillating = np.stack([coeffs[..., 1:, :].real,
                            coeffs[..., 1:, :].imag], axis=-2)
    return np.concatenate([coeffs[..., 0, :].real,
                           oscillating.reshape(leading + (4 * p,))], axis=-1)


def collocation_times(p, num_points=None):
    """Equispaced grid of N = 4p + 1 times on [0, 2 pi) unless N is given"""
    if num_points is None:
        num_points = 4 * p + 1
    return 2.0 * np.pi * np.arange(num_points) / num_points


def _extend_loop(loop, cfg, times):
    # Positions of all vortices, shape (..., n, 2)
    n = cfg.params.n
    indices = np.arange(1, n + 1)
    shifted = np.asarray(times)[..., np.newaxis] + \
        indices * cfg.k * cfg.params.zeta
    return rotate(loop.evaluate(shifted), indices * cfg.params.zeta)


def extended_samples(cfg, times):
    """Positions x_j(t) of all vortices at the given times, shape
    (len(times), n, 2)"""
    return _extend_loop(cfg.loop, cfg, times)


def extended_velocities(cfg, times):
    """Velocities of all vortices at the given times"""
    return _extend_loop(cfg.loop.differentiate(), cfg, times)


def symmetry_extend(cfg, t):
    """All n positions at time t, x_j(t) = exp(j zeta J) x_n(t + j k zeta)"""
    return PlaneConfig(extended_samples(cfg, float(t)))


def _gyroscopic_weight(x):
    return 4.0 / (1.0 + np.sum(x * x, axis=-1)) ** 2


def residual_f(cfg, num_points=None,
               collision_threshold=COLLISION_THRESHOLD):
    """Samples of f_j = -nu 4(1+|x_j|^2)^(-2) J x_j' + grad_j V on the
    collocation grid, shape (N, n, 2)"""

    times = collocation_times(cfg.p, num_points)
    positions = extended_samples(cfg, times)
    velocities = extended_velocities(cfg, times)
    weight = _gyroscopic_weight(positions)[..., np.newaxis]
    return (-cfg.nu * weight * apply_j(velocities) +
            gradient_V(positions, cfg.params, collision_threshold))


def orthogonality_defect(cfg, num_points=None):
    """Trapezoidal L2 products of f with the time and rotation generators"""

    times = collocation_times(cfg.p, num_points)
    residual = residual_f(cfg, num_points)
    positions = extended_samples(cfg, times)
    velocities = extended_velocities(cfg, times)
    step = 2.0 * np.pi / times.size
    return (float(step * np.sum(residual * velocities)),
            float(step * np.sum(residual * apply_j(positions))))


def linearized_block_matrix(l, nu, params):
    """The complex 2n x 2n matrix M(l nu) of the l-th harmonic of the
    linearisation at the equilibrium"""

    generator = np.kron(np.eye(params.n), J)
    weight = 4.0 / (1.0 + params.r ** 2) ** 2
    return -weight * l * nu * (1j * generator) + hessian_full(params)


def collision_margin(cfg, num_points=None):
    """Minimum pairwise distance over the grid, and the largest distance of
    any vortex from the origin of the chart"""

    positions = extended_samples(cfg, collocation_times(cfg.p, num_points))
    separation = float(np.min(minimum_separation(positions)))
    modulus = float(np.max(np.sqrt(np.sum(positions * positions, axis=-1))))
    return separation, modulus


def escapes_chart(cfg, radius=CHART_ESCAPE_RADIUS):
    """True when some vortex leaves the disc of the given radius"""
    return collision_margin(cfg)[1] > radius


def symmetry_defect(cfg, num_points=None):
    """max |x_{j+1}(t) - exp(zeta J) x_j(t + k zeta)| over the grid, both
    sides evaluated from the coefficients"""

    times = collocation_times(cfg.p, num_points)
    now = extended_samples(cfg, times)
    later = extended_samples(cfg, times + cfg.k * cfg.params.zeta)
    predicted = rotate(np.roll(later, 1, axis=-2), cfg.params.zeta)
    return float(np.max(np.abs(now - predicted)))


def h1_norm(loop):
    """Sobolev norm sqrt(sum_l (1 + l^2) |c_l|^2) over l = -p..p"""
    modes = np.arange(loop.p + 1)
    terms = (1.0 + modes ** 2) * np.sum(np.abs(loop.coeffs) ** 2, axis=-1)
    return float(np.sqrt(terms[0] + 2.0 * np.sum(terms[1:])))


def kappa_image(cfg):
    """The reflected loop y_n(t) = conj x_n(-t), with the same mode k"""
    reflected = np.dot(np.conj(cfg.loop.coeffs), R.T)
    return cfg.with_loop(FourierLoop(reflected))


def project_samples(samples, p):
    """Real coefficient vectors of the harmonics 0..p of samples taken on
    the collocation grid (time is the first axis)"""
    spectrum = np.fft.rfft(samples, axis=0) / samples.shape[0]
    coeffs = np.moveaxis(spectrum[:p + 1], 0, -2)
    return encode_coefficients(coeffs)


def generator_vectors(loop):
    """Coefficient vectors of the time generator x' and the rotation
    generator J x"""
    return (loop.differentiate().to_vector(),
            encode_coefficients(np.dot(loop.coeffs, J.T)))


def galerkin_residual(cfg, multipliers=(0.0, 0.0), num_points=None):
    """Harmonics 0..p of f_n plus the multiplier terms
    lambda_t x' + lambda_r J x, as a real vector of length 2 + 4p"""

    reduced = residual_f(cfg, num_points)[:, -1, :]
    time_generator, rotation_generator = generator_vectors(cfg.loop)
    return (project_samples(reduced, cfg.p) +
            multipliers[0] * time_generator +
            multipliers[1] * rotation_generator)


def _basis_functions(p, times):
    # Values of the loop basis functions at times (...), shape (..., D, 2),
    # together with their time derivatives
    size = 2 + 4 * p
    times = np.asarray(times, dtype=float)
    values = np.zeros(times.shape + (size, 2))
    rates = np.zeros(times.shape + (size, 2))
    for axis in range(2):
        values[..., axis, axis] = 1.0
    for l in range(1, p + 1):
        cos_lt = np.cos(l * times)
        sin_lt = np.sin(l * times)
        for axis in range(2):
            real_index = 2 + 4 * (l - 1) + axis
            imag_index = real_index + 2
            values[..., real_index, axis] = 2.0 * cos_lt
            rates[..., real_index, axis] = -2.0 * l * sin_lt
            values[..., imag_index, axis] = -2.0 * sin_lt
            rates[..., imag_index, axis] = -2.0 * l * cos_lt
    return values, rates


def galerkin_jacobian(cfg, multipliers=(0.0, 0.0), num_points=None):
    """Analytic derivatives of galerkin_residual.

    Returns (D, d/dnu, [x', J x]) where D is the (2+4p) x (2+4p) matrix of
    derivatives in the loop coefficients, d/dnu the derivative in the
    frequency and the last two columns the derivatives in the multipliers.
    """

    p = cfg.p
    params = cfg.params
    n = params.n
    times = collocation_times(p, num_points)
    indices = np.arange(1, n + 1)

    positions = extended_samples(cfg, times)
    x_n = positions[:, -1, :]
    velocity_n = cfg.loop.derivative(times)
    norm_sq = np.sum(x_n * x_n, axis=-1)
    weight = 4.0 / (1.0 + norm_sq) ** 2
    weight_gradient = -16.0 * x_n / ((1.0 + norm_sq) ** 3)[:, np.newaxis]

    # Perturbation of every vortex for each basis function, (N, n, D, 2)
    shifted = times[:, np.newaxis] + indices * cfg.k * params.zeta
    basis, _ = _basis_functions(p, shifted)
    angles = (indices * params.zeta)[np.newaxis, :, np.newaxis]
    moved = rotate(basis, angles)
    basis_n, rates_n = _basis_functions(p, times)

    hessian_row = hessian_V(positions, params)[:, -1]
    response = np.einsum('tjab,tjdb->tda', hessian_row, moved)

    j_velocity = apply_j(velocity_n)
    gyroscopic = -cfg.nu * (
        np.einsum('ta,tda->td', weight_gradient, basis_n)[..., np.newaxis] *
        j_velocity[:, np.newaxis, :] +
        weight[:, np.newaxis, np.newaxis] * apply_j(rates_n))

    derivative = project_samples(response + gyroscopic, p).T

    time_generator, rotation_generator = generator_vectors(cfg.loop)
    size = 2 + 4 * p
    identity = np.eye(size)
    derivative += multipliers[0] * np.stack(
        [FourierLoop.from_vector(column).differentiate().to_vector()
         for column in identity], axis=1)
    derivative += multipliers[1] * np.stack(
        [generator_vectors(FourierLoop.from_vector(column))[1]
         for column in identity], axis=1)

    frequency_column = project_samples(
        -weight[:, np.newaxis] * j_velocity, p)
    return derivative, frequency_column, \
        np.stack([time_generator, rotation_generator], axis=1)
