# coding=utf-8
"""
Seeding and pseudo-arclength continuation of the relative periodic
branches emanating from the polygonal equilibrium

Each branch point solves the bordered Galerkin system

    G(x, nu) + lambda_t x' + lambda_r J x = 0
    <x - x_ref, x_ref'> = 0
    <x - x_ref, J x_ref> = 0
    <z - z_i, t_i> - ds = 0      (or nu frozen, or nothing)

for the loop coefficients, the frequency and the two multipliers. The
multipliers unfold the time-shift and rotation symmetries and vanish at
every genuine solution.

"""

from __future__ import division

import logging

import numpy as np
from scipy.linalg import svdvals

from vortexsphere.dynamics.dynamics_oracle import period_map_defect
from vortexsphere.equilibrium.ring_equilibrium import RingParams
from vortexsphere.equilibrium.spectral_analysis import critical_frequency, \
    block_B, frequency_condition, resonance_check
from vortexsphere.periodic.loop_space import FourierLoop, LoopConfig, \
    galerkin_residual, galerkin_jacobian, generator_vectors, \
    coefficient_weights, collision_margin, extended_samples, h1_norm, \
    symmetry_defect, kappa_image, CHART_ESCAPE_RADIUS, DEFAULT_ORDER
from vortexsphere.utils.errors import Degenerate, NoBifurcation, \
    NoConvergence, ChartEscape, CollisionError

logger = logging.getLogger(__name__)

NEWTON_TOLERANCE = 1e-10
MAX_NEWTON_ITERATIONS = 25
MULTIPLIER_BOUND = 1e-8
BASIN_RESIDUAL = 1e-2
MIN_STEP = 1e-5
MAX_STEP = 1e-1
STEP_GROWTH = 1.3
SUCCESSES_BEFORE_GROWTH = 3
NORM_BLOWUP = 1e2
RETURN_FRACTION = 0.5
SEED_STEP = 2e-3
SEED_POINTS = 5
DEGENERATE_RADIUS_TOLERANCE = 1e-12
DEGENERATE_DISCRIMINANT = 1e-14
KERNEL_THRESHOLD = 1e-8


class Termination(object):
    """Reasons for a branch to stop"""
    MAX_STEPS = 'MaxSteps'
    COLLISION_APPROACH = 'CollisionApproach'
    CHART_ESCAPE = 'ChartEscape'
    NORM_BLOWUP = 'NormBlowup'
    RETURNED_TO_EQUILIBRIUM = 'ReturnedToEquilibrium'
    STEP_SIZE_UNDERFLOW = 'StepSizeUnderflow'

    ALL = [MAX_STEPS, COLLISION_APPROACH, CHART_ESCAPE, NORM_BLOWUP,
           RETURNED_TO_EQUILIBRIUM, STEP_SIZE_UNDERFLOW]


class ArclengthConstraint(object):
    """The equation <z - base, tangent> = ds on state vectors z = (x, nu)"""

    def __init__(self, base, tangent, ds):
        self.base = np.asarray(base, dtype=float)
        self.tangent = np.asarray(tangent, dtype=float)
        self.ds = ds

    def value(self, state):
        """Residual of the constraint"""
        return state_inner(state - self.base, self.tangent) - self.ds

    def gradient(self):
        """Derivative of the constraint with respect to the state"""
        return state_weights(self.tangent.size - 1) * self.tangent


class FrozenFrequency(object):
    """The equation nu = target"""

    def __init__(self, target):
        self.target = target

    def value(self, state):
        """Residual of the constraint"""
        return state[-1] - self.target

    def gradient(self):
        """Derivative of the constraint with respect to the state"""
        return None


class BranchPoint(object):
    """A converged relative periodic solution"""

    def __init__(self, cfg, residual, multipliers, arclength=0.0):
        self.cfg = cfg
        self.amplitude = amplitude(cfg.loop, cfg.params)
        self.residual = residual
        self.multipliers = tuple(float(value) for value in multipliers)
        self.arclength = arclength
        self.h1_norm = h1_norm(cfg.loop)

    @property
    def nu(self):
        """Frequency of the solution"""
        return self.cfg.nu

    def state(self):
        """State vector (loop coefficients, nu)"""
        return state_vector(self.cfg)

    def to_dict(self):
        """Dictionary in the branch file layout"""
        coeffs = self.cfg.loop.coeffs
        return {"nu": self.nu,
                "amplitude": self.amplitude,
                "residual": self.residual,
                "arclength": self.arclength,
                "multipliers": list(self.multipliers),
                "h1_norm": self.h1_norm,
                "coeffs_re": coeffs.real.tolist(),
                "coeffs_im": coeffs.imag.tolist()}

    @classmethod
    def from_dict(cls, values, k, params):
        """Create from the branch file layout"""
        coeffs = np.array(values["coeffs_re"]) + \
            1j * np.array(values["coeffs_im"])
        cfg = LoopConfig(FourierLoop(coeffs), k, params, values["nu"])
        return cls(cfg, values["residual"],
                   values.get("multipliers", (0.0, 0.0)),
                   values["arclength"])


class Branch(object):
    """Ordered points of one continued branch and the reason it ended"""

    def __init__(self, params, k, nu_seed, p, points=None, termination=None,
                 direction=1, resonant=False, kappa=None):
        self.params = params
        self.k = k
        self.nu_seed = nu_seed
        self.p = p
        self.points = points if points is not None else []
        self.termination = termination
        self.direction = direction
        self.resonant = resonant
        self.kappa = kappa

    @property
    def n(self):
        """Number of vortices"""
        return self.params.n

    @property
    def r(self):
        """Radius of the ring"""
        return self.params.r

    @property
    def omega(self):
        """Rotation frequency of the ring"""
        return self.params.omega

    def frequencies(self):
        """Frequencies of all points"""
        return np.array([point.nu for point in self.points])

    def amplitudes(self):
        """Amplitudes of all points"""
        return np.array([point.amplitude for point in self.points])

    def to_dict(self):
        """Dictionary in the branch file layout"""
        values = {"n": self.n, "r": self.r, "k": self.k,
                  "omega": self.omega, "nu_seed": self.nu_seed, "p": self.p,
                  "termination": self.termination,
                  "direction": self.direction, "resonant": self.resonant,
                  "points": [point.to_dict() for point in self.points]}
        if self.kappa is not None:
            values["kappa"] = self.kappa
        return values

    @classmethod
    def from_dict(cls, values):
        """Create from the branch file layout"""
        params = RingParams(values["n"], values["r"])
        k = values["k"]
        points = [BranchPoint.from_dict(point, k, params)
                  for point in values["points"]]
        return cls(params, k, values["nu_seed"], values["p"], points,
                   values["termination"], values.get("direction", 1),
                   values.get("resonant", False), values.get("kappa"))


class SeedReport(object):
    """What branch_seed found out about the bifurcation point"""

    def __init__(self, k, nu_k, kernel_vector, resonances):
        self.k = k
        self.nu_k = nu_k
        self.kernel_vector = kernel_vector
        self.resonances = resonances

    @property
    def resonant(self):
        """True when some harmonic of nu_k hits another critical frequency"""
        return bool(self.resonances)


def state_weights(size_of_loop):
    """Weights of the state inner product for a loop vector of this size"""
    return np.append(coefficient_weights((size_of_loop - 2) // 4), 1.0)


def state_inner(first, second):
    """Inner product of state vectors: L2 on the loop plus nu * nu"""
    return float(np.dot(first * state_weights(first.size - 1), second))


def state_vector(cfg):
    """The state (loop coefficients, nu) of a loop configuration"""
    return np.append(cfg.loop.to_vector(), cfg.nu)


def config_from_state(state, template):
    """Loop configuration with the loop and frequency of a state vector"""
    return template.with_loop(FourierLoop.from_vector(state[:-1]), state[-1])


def amplitude(loop, params):
    """L2 distance of the loop from the equilibrium orbit"""
    constant = np.abs(np.linalg.norm(loop.coeffs[0].real) - params.r)
    return float(np.sqrt(constant ** 2 +
                         2.0 * np.sum(np.abs(loop.coeffs[1:]) ** 2)))


def kernel_vector(k, params):
    """Unit kernel vector of m_k(nu_k)"""
    block = block_B(k, params).real
    vector = np.array([-1j * np.sqrt(block[1, 1]), np.sqrt(block[0, 0])])
    return vector / np.linalg.norm(vector)


def branch_seed(k, params, eps, p=DEFAULT_ORDER, l_max=None, direction=1):
    """Equilibrium plus eps times the kernel mode of m_k(nu_k) in the first
    harmonic. Returns the seed configuration and a SeedReport"""

    if abs(params.r - 1.0) < DEGENERATE_RADIUS_TOLERANCE:
        raise Degenerate('The equatorial ring (r = 1) does not rotate and '
                         'has vanishing critical frequencies')
    r_sq = params.r ** 2
    discriminant = params.s_k(k) * (
        2.0 * params.s1 - params.s_k(k) -
        4.0 * params.s1 * r_sq / (1.0 + r_sq) ** 2)
    if abs(discriminant) < DEGENERATE_DISCRIMINANT:
        raise Degenerate('Critical frequency of mode ' + str(k) +
                         ' vanishes at r = ' + str(params.r))
    if not frequency_condition(k, params):
        raise NoBifurcation('Mode ' + str(k) + ' of the ' + str(params.n) +
                            '-ring at r = ' + str(params.r) +
                            ' has no critical frequency')

    nu_k = critical_frequency(k, params)
    resonances = resonance_check(k, params,
                                 2 * p if l_max is None else l_max)
    if resonances:
        logger.info('Critical frequency %r of mode %d is resonant: %s',
                    nu_k, k, resonances)

    vector = kernel_vector(k, params)
    coeffs = np.zeros((p + 1, 2), dtype=complex)
    coeffs[0] = [params.r, 0.0]
    coeffs[1] = direction * eps * vector
    seed = LoopConfig(FourierLoop(coeffs), k, params, nu_k)
    return seed, SeedReport(k, nu_k, vector, resonances)


def _bordered_system(cfg, multipliers, reference, constraint):
    residual = galerkin_residual(cfg, multipliers)
    derivative, frequency_column, multiplier_columns = \
        galerkin_jacobian(cfg, multipliers)

    weights = coefficient_weights(cfg.p)
    difference = cfg.loop.to_vector() - reference.to_vector()
    time_reference, rotation_reference = generator_vectors(reference)

    size = residual.size
    rows = [np.hstack([derivative, frequency_column[:, np.newaxis],
                       multiplier_columns])]
    values = [residual]
    for generator in [time_reference, rotation_reference]:
        rows.append(np.append(weights * generator, np.zeros(3))[np.newaxis])
        values.append([np.dot(weights * difference, generator)])

    if constraint is not None:
        state = state_vector(cfg)
        gradient = constraint.gradient()
        row = np.zeros(size + 3)
        if gradient is None:
            row[size] = 1.0
        else:
            row[:size + 1] = gradient
        rows.append(row[np.newaxis])
        values.append([constraint.value(state)])

    return np.concatenate(values), np.vstack(rows)


def bordered_jacobian_singular_values(point, reference=None,
                                      constraint=None):
    """Singular values of the bordered Jacobian at a branch point"""

    reference = point.cfg.loop if reference is None else reference
    jacobian = _bordered_system(point.cfg, point.multipliers, reference,
                                constraint)[1]
    return svdvals(jacobian)


def equilibrium_kernel_dimension(k, params, p, threshold=KERNEL_THRESHOLD):
    """Dimension of the kernel of the Galerkin Jacobian at the equilibrium
    and nu = nu_k, counted by singular values below threshold"""

    nu_k = critical_frequency(k, params)
    cfg = LoopConfig(FourierLoop.constant([params.r, 0.0], p), k, params,
                     nu_k)
    derivative = galerkin_jacobian(cfg)[0]
    return int(np.sum(svdvals(derivative) < threshold))


def newton_correct(guess, reference=None, constraint=None,
                   tolerance=NEWTON_TOLERANCE,
                   max_iterations=MAX_NEWTON_ITERATIONS,
                   chart_escape_radius=CHART_ESCAPE_RADIUS, arclength=0.0):
    """Newton iteration on the bordered Galerkin system.

    reference is the loop defining the phase conditions (the guess itself
    when omitted); constraint is an ArclengthConstraint, a FrozenFrequency
    or None. Each linear step is solved in the least-squares sense, so
    underdetermined systems take the minimum-norm update.
    """

    reference = guess.loop if reference is None else reference
    cfg = guess
    multipliers = np.zeros(2)

    initial = np.max(np.abs(galerkin_residual(cfg)))
    if initial > BASIN_RESIDUAL:
        logger.warning('Newton guess has residual %g outside the expected '
                       'basin', initial)

    for iteration in range(max_iterations + 1):
        values, jacobian = _bordered_system(cfg, multipliers, reference,
                                            constraint)
        error = np.max(np.abs(values))
        logger.debug('Newton iteration %d: residual %g', iteration, error)
        if error < tolerance:
            break
        if iteration == max_iterations:
            raise NoConvergence('Newton did not converge in ' +
                                str(max_iterations) + ' iterations, '
                                'residual ' + str(error))
        update = np.linalg.lstsq(jacobian, -values, rcond=None)[0]
        state = state_vector(cfg) + update[:-2]
        multipliers = multipliers + update[-2:]
        cfg = config_from_state(state, cfg)
        if collision_margin(cfg)[1] > chart_escape_radius:
            raise ChartEscape('A vortex left the chart during Newton '
                              'iteration ' + str(iteration))

    if np.max(np.abs(multipliers)) > MULTIPLIER_BOUND:
        logger.warning('Multipliers %s exceed %g at nu = %r',
                       multipliers, MULTIPLIER_BOUND, cfg.nu)
    residual = float(np.max(np.abs(galerkin_residual(cfg, multipliers))))
    return BranchPoint(cfg, residual, multipliers, arclength)


def _unit(state_difference):
    return state_difference / np.sqrt(state_inner(state_difference,
                                                  state_difference))


def _termination_of(error):
    if isinstance(error, CollisionError):
        return Termination.COLLISION_APPROACH
    return Termination.CHART_ESCAPE


def continue_branch(seed, steps, ds, tolerance=NEWTON_TOLERANCE,
                    min_step=MIN_STEP, max_step=MAX_STEP,
                    norm_blowup=NORM_BLOWUP, direction=1, resonant=False):
    """Secant predictor and bordered Newton corrector from a seed.

    The first point fixes the amplitude of the seed along its kernel
    direction. The next SEED_POINTS points take steps of at most
    SEED_STEP so the small-amplitude end of the branch is sampled densely;
    later points follow the branch with adaptive arclength steps. Returns
    a Branch of at most steps points.
    """

    params = seed.params
    equilibrium = LoopConfig(FourierLoop.constant([params.r, 0.0], seed.p),
                             seed.k, params, seed.nu)
    seed_state = state_vector(seed)
    tangent = _unit(seed_state - state_vector(equilibrium))
    first = newton_correct(seed, constraint=ArclengthConstraint(
        seed_state, tangent, 0.0), tolerance=tolerance)

    branch = Branch(params, seed.k, seed.nu, seed.p, [first],
                    direction=direction, resonant=resonant)
    seed_amplitude = first.amplitude
    successes = 0
    ds = min(max(ds, min_step), max_step)

    while len(branch.points) < steps:
        current = branch.points[-1]
        base = current.state()
        near_seed = len(branch.points) < SEED_POINTS
        step = min(ds, SEED_STEP) if near_seed else ds
        candidate = base + step * tangent
        guess = config_from_state(candidate, current.cfg)
        try:
            point = newton_correct(
                guess, reference=current.cfg.loop,
                constraint=ArclengthConstraint(base, tangent, step),
                tolerance=tolerance, arclength=current.arclength + step)
        except (NoConvergence, np.linalg.LinAlgError) as error:
            ds = step / 2.0
            successes = 0
            logger.warning('Step failed (%s); halving step to %g', error, ds)
            if ds < min_step:
                branch.termination = Termination.STEP_SIZE_UNDERFLOW
                break
            continue
        except (CollisionError, ChartEscape) as error:
            logger.info('Branch stopped: %s', error)
            branch.termination = _termination_of(error)
            break

        tangent = _unit(point.state() - base)
        branch.points.append(point)
        successes += 1
        if not near_seed and successes >= SUCCESSES_BEFORE_GROWTH:
            ds = min(ds * STEP_GROWTH, max_step)
            successes = 0
            logger.debug('Step size increased to %g', ds)

        if point.h1_norm > norm_blowup:
            branch.termination = Termination.NORM_BLOWUP
            break
        if point.amplitude < RETURN_FRACTION * seed_amplitude:
            branch.termination = Termination.RETURNED_TO_EQUILIBRIUM
            break

    if branch.termination is None:
        branch.termination = Termination.MAX_STEPS
    logger.info('Branch of mode %d ended after %d points: %s', branch.k,
                len(branch.points), branch.termination)
    return branch


def extrapolate_seed_frequency(branch, count=5):
    """Frequency at zero amplitude, fitted as a polynomial in amplitude^2
    over the smallest-amplitude points"""

    amplitudes = branch.amplitudes()
    order = np.argsort(amplitudes)[:count]
    degree = min(2, len(order) - 1)
    coefficients = np.polyfit(amplitudes[order] ** 2,
                              branch.frequencies()[order], degree)
    return float(coefficients[-1])


def branch_symmetry_defect(branch):
    """Largest symmetry defect over the stored points"""
    return max(symmetry_defect(point.cfg) for point in branch.points)


class KappaComparison(object):
    """How the reflection kappa relates a branch of mode k to a branch of
    mode n-k continued independently"""

    def __init__(self, k, partner_k, image_residual, profile_gap, overlap):
        self.k = k
        self.partner_k = partner_k
        self.image_residual = image_residual
        self.profile_gap = profile_gap
        self.overlap = overlap

    def to_dict(self):
        """Dictionary stored under "kappa" in the branch file"""
        return {"k": self.k, "partner_k": self.partner_k,
                "image_residual": self.image_residual,
                "profile_gap": self.profile_gap, "overlap": self.overlap}


def harmonic_profile(loop):
    """Norms |c_l| of the harmonics 0..p, unchanged by time shifts,
    rotations and the reflection kappa"""
    return np.sqrt(np.sum(np.abs(loop.coeffs) ** 2, axis=-1))


def kappa_comparison(branch, partner):
    """Residual of the kappa images of the branch points, and the largest
    gap between the harmonic profiles of the two branches at equal
    frequency over their common frequency range"""

    if partner.n != branch.n or partner.k != branch.n - branch.k:
        raise ValueError('Partner of mode ' + str(branch.k) + ' must be a '
                         'branch of mode ' + str(branch.n - branch.k) +
                         ' of the same ring')
    if not branch.points or not partner.points:
        raise ValueError('Both branches need at least one point')

    image_residual = max(
        float(np.max(np.abs(galerkin_residual(kappa_image(point.cfg)))))
        for point in branch.points)

    order = np.argsort(partner.frequencies())
    frequencies = partner.frequencies()[order]
    size = min(branch.p, partner.p) + 1
    profiles = np.array([harmonic_profile(partner.points[index].cfg.loop)
                         for index in order])[:, :size]
    gaps = []
    for point in branch.points:
        if not frequencies[0] <= point.nu <= frequencies[-1]:
            continue
        expected = [np.interp(point.nu, frequencies, profiles[:, l])
                    for l in range(size)]
        gaps.append(np.max(np.abs(
            harmonic_profile(point.cfg.loop)[:size] - expected)))

    profile_gap = float(max(gaps)) if gaps else None
    logger.info('kappa comparison of modes %d and %d: image residual %g, '
                'profile gap %s over %d points', branch.k, partner.k,
                image_residual, profile_gap, len(gaps))
    return KappaComparison(branch.k, partner.k, image_residual, profile_gap,
                           len(gaps))


def period_map_check(point, tolerance=1e-10):
    """Return defect of a direct integration of the rotating-frame equation
    over one period, started from the Galerkin solution"""

    start = extended_samples(point.cfg, np.zeros(1))[0]
    return period_map_defect(start, point.cfg.params, point.nu, tolerance)
