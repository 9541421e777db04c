# coding=utf-8
"""
Stereographic chart between the unit sphere and the complex plane

The chart projects from the north pole, q = (x + iy) / (1 - z), so the
south pole maps to the origin and the equator to the unit circle. All
functions accept arrays whose trailing axis holds the coordinates (3 for
sphere points, 2 for plane points) and broadcast over leading axes.

"""

import numpy as np

from vortexsphere.utils.errors import ChartSingular

POLE_THRESHOLD = 1.0 - 1e-12
UNIT_NORM_TOLERANCE = 1e-12


class SpherePoint(object):
    """A point on the unit sphere"""

    def __init__(self, v):
        self.v = np.asarray(v, dtype=float).reshape(3)
        if abs(np.linalg.norm(self.v) - 1.0) > UNIT_NORM_TOLERANCE:
            raise ValueError('Sphere point must have unit norm, got ' +
                             str(np.linalg.norm(self.v)))

    def to_plane(self):
        """Returns the stereographic projection of this point"""
        return PlanePoint(stereo_project(self.v))

    def __eq__(self, other):
        if isinstance(other, self.__class__):
            return np.array_equal(self.v, other.v)
        return False

    def __ne__(self, other):
        return not self.__eq__(other)


class PlanePoint(object):
    """A point of the plane chart, stored as a pair of reals"""

    def __init__(self, q):
        self.q = np.asarray(q, dtype=float).reshape(2)
        if not np.all(np.isfinite(self.q)):
            raise ValueError('Plane point must be finite')

    @classmethod
    def from_complex(cls, value):
        """Create from a complex number"""
        return cls([np.real(value), np.imag(value)])

    def to_complex(self):
        """Returns this point as a complex number"""
        return complex(self.q[0], self.q[1])

    def to_sphere(self):
        """Returns the point of the sphere projecting onto this point"""
        return SpherePoint(stereo_lift(self.q))

    def __eq__(self, other):
        if isinstance(other, self.__class__):
            return np.array_equal(self.q, other.q)
        return False

    def __ne__(self, other):
        return not self.__eq__(other)


def stereo_project(v):
    """Projects unit vectors from the north pole onto the plane chart"""

    v = np.asarray(v, dtype=float)
    z = v[..., 2]
    if np.any(z >= POLE_THRESHOLD):
        raise ChartSingular('Point too close to the north pole for the '
                            'chart: z = ' + str(np.max(z)))
    denominator = 1.0 - z
    return np.stack([v[..., 0] / denominator, v[..., 1] / denominator],
                    axis=-1)


def stereo_lift(q):
    """Inverse of stereo_project: maps chart points back to the sphere"""

    q = np.asarray(q, dtype=float)
    norm_sq = np.sum(q * q, axis=-1)
    scale = 1.0 / (1.0 + norm_sq)
    return np.stack([2.0 * q[..., 0] * scale,
                     2.0 * q[..., 1] * scale,
                     (norm_sq - 1.0) * scale], axis=-1)


def conformal_weight(q):
    """Factor 4 / (1 + |q|^2)^2 of the area form in the chart"""

    q = np.asarray(q, dtype=float)
    return 4.0 / (1.0 + np.sum(q * q, axis=-1)) ** 2


def chordal_sq(q_i, q_j):
    """Squared chordal distance on the sphere between two chart points"""

    q_i = np.asarray(q_i, dtype=float)
    q_j = np.asarray(q_j, dtype=float)
    diff = q_j - q_i
    return 4.0 * np.sum(diff * diff, axis=-1) / (
        (1.0 + np.sum(q_j * q_j, axis=-1)) *
        (1.0 + np.sum(q_i * q_i, axis=-1)))
