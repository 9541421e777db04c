# coding=utf-8
"""
Adaptive embedded Runge-Kutta integration with the Verner 6(5) pair

The stepper accepts a post-step projection so that constrained states (unit
vectors on the sphere) can be pulled back onto their manifold after every
accepted step.

"""

from __future__ import division

import logging

import numpy as np

from vortexsphere.utils.errors import StepUnderflow

logger = logging.getLogger(__name__)

SAFETY = 0.9
MIN_FACTOR = 0.2
MAX_FACTOR = 5.0
MIN_RELATIVE_STEP = 1e-14
MAX_STEPS = 1000000


class VernerTableau(object):
    """Butcher tableau of the 9-stage Verner 6(5) "most robust" pair"""

    order = 6
    nodes = [0.0, 9 / 50, 1 / 6, 1 / 4, 53 / 100, 3 / 5, 4 / 5, 1.0, 1.0]
    rows = [
        [9 / 50],
        [29 / 324, 25 / 324],
        [1 / 16, 0, 3 / 16],
        [79129 / 250000, 0, -261237 / 250000, 19663 / 15625],
        [1336883 / 4909125, 0, -25476 / 30875, 194159 / 185250,
         8225 / 78546],
        [-2459386 / 14727375, 0, 19504 / 30875, 2377474 / 13615875,
         -6157250 / 5773131, 902 / 735],
        [2699 / 7410, 0, -252 / 1235, -1393253 / 3993990, 236875 / 72618,
         -135 / 49, 15 / 22],
        [11 / 144, 0, 0, 256 / 693, 0, 125 / 504, 125 / 528, 5 / 72]]
    weights = [11 / 144, 0, 0, 256 / 693, 0, 125 / 504, 125 / 528, 5 / 72, 0]
    embedded = [28 / 477, 0, 0, 212 / 441, -312500 / 366177, 2125 / 1764, 0,
                -2105 / 35532, 2995 / 17766]
    error_weights = [a - b for a, b in zip(weights, embedded)]


class StepResult(object):
    """Outcome of one attempted step"""

    def __init__(self, state, error_norm):
        self.state = state
        self.error_norm = error_norm


def verner_step(rhs, t, state, h, tolerance, tableau=VernerTableau):
    """One step of size h; returns the 6th order state and the scaled RMS
    norm of the embedded error estimate"""

    stages = [rhs(t, state)]
    for node, row in zip(tableau.nodes[1:], tableau.rows):
        increment = sum(coefficient * stage
                        for coefficient, stage in zip(row, stages)
                        if coefficient != 0)
        stages.append(rhs(t + node * h, state + h * increment))

    new_state = state + h * sum(weight * stage for weight, stage
                                in zip(tableau.weights, stages)
                                if weight != 0)
    error = h * sum(weight * stage for weight, stage
                    in zip(tableau.error_weights, stages) if weight != 0)
    scale = tolerance * (1.0 + np.maximum(np.abs(state), np.abs(new_state)))
    return StepResult(new_state, float(np.sqrt(np.mean((error / scale) ** 2))))


class AdaptiveIntegrator(object):
    """Integrates state' = rhs(t, state) with local error control.

    projection, when given, maps every accepted state back onto the
    constraint manifold; monitor, when given, is called on every accepted
    state and may raise to abort the integration.
    """

    def __init__(self, rhs, tolerance, projection=None, monitor=None,
                 initial_step=None):
        self.rhs = rhs
        self.tolerance = tolerance
        self.projection = projection
        self.monitor = monitor
        self.initial_step = initial_step

    def _first_step(self, t, state, t_end):
        if self.initial_step is not None:
            return self.initial_step
        rate = np.max(np.abs(self.rhs(t, state)))
        span = abs(t_end - t)
        if rate == 0:
            return span
        return min(span, 0.01 * self.tolerance ** (1 / VernerTableau.order) /
                   rate * (1.0 + np.max(np.abs(state))))

    def integrate(self, state, t_start, output_times):
        """Returns the states at each of output_times (monotone, on the same
        side of t_start)"""

        state = np.array(state, dtype=float)
        output_times = np.asarray(output_times, dtype=float)
        direction = 1.0 if output_times[-1] >= t_start else -1.0
        t = t_start
        h = self._first_step(t, state, output_times[-1])
        outputs = []
        steps = 0
        for target in output_times:
            while direction * (target - t) > 0:
                clamped = h >= abs(target - t)
                step = min(h, abs(target - t))
                result = verner_step(self.rhs, t, state, direction * step,
                                     self.tolerance)
                steps += 1
                factor = SAFETY * max(result.error_norm, 1e-16) ** (
                    -1 / VernerTableau.order)
                factor = min(MAX_FACTOR, max(MIN_FACTOR, factor))
                if result.error_norm <= 1.0:
                    t = target if clamped else t + direction * step
                    state = result.state
                    if self.projection is not None:
                        state = self.projection(state)
                    if self.monitor is not None:
                        self.monitor(t, state)
                    h = max(h, step * factor) if step < h else step * factor
                else:
                    logger.debug('Step %g rejected at t = %g (error %g)',
                                 step, t, result.error_norm)
                    h = step * factor
                    if h < MIN_RELATIVE_STEP * max(1.0, abs(t)):
                        raise StepUnderflow('Step size underflow at t = ' +
                                            str(t))
                if steps > MAX_STEPS:
                    raise StepUnderflow('Too many steps before t = ' +
                                        str(target))
            outputs.append(state.copy())
        return np.array(outputs)
