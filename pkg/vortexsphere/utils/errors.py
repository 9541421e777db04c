# coding=utf-8
"""
Exceptions raised by VortexSphere

Each exception carries the process exit code the command-line frontend
returns when the exception escapes a command.

"""


class VortexSphereError(Exception):
    """Base class for all errors raised by this package"""
    exit_code = 1


class UsageError(VortexSphereError, ValueError):
    """Invalid or inconsistent command-line parameters"""
    exit_code = 2


class PreconditionError(VortexSphereError):
    """A mathematical precondition of an operation does not hold"""
    exit_code = 3


class NumericalError(VortexSphereError):
    """A numerical procedure failed to produce a trustworthy result"""
    exit_code = 4


class ChartSingular(NumericalError):
    """The point is too close to the north pole for the stereographic chart"""


class CollisionError(VortexSphereError):
    """Two vortices coincide (the configuration lies in the collision set)"""
    exit_code = 5


class CollisionApproach(CollisionError):
    """Two vortices came closer than the integrator's collision threshold"""


class NoBifurcation(PreconditionError):
    """The frequency inequality fails, so no branch emanates from this mode"""


class Degenerate(PreconditionError):
    """The critical frequency vanishes (for example the equatorial ring)"""


class DegenerateAt(PreconditionError):
    """The 2x2 block is singular at the requested frequency"""


class NotCoprime(PreconditionError):
    """The rational frequency data are not relatively prime"""


class FrequencyMismatch(PreconditionError):
    """A branch point is not at the choreography frequency"""


class ZeroRotation(PreconditionError):
    """The ring does not rotate, so frequency ratios are undefined"""


class NoConvergence(NumericalError):
    """Newton's method did not reach the requested tolerance"""


class ChartEscape(NumericalError):
    """A vortex left the bounded part of the chart (approached the pole)"""


class StepUnderflow(NumericalError):
    """The adaptive integrator could not satisfy the tolerance"""
