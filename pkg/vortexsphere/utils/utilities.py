# coding=utf-8
"""
Planar rotation helpers shared by the vortex modules

Points in the plane chart are stored as trailing pairs of reals; the
matrix J = [[0, -1], [1, 0]] realises multiplication by i.

"""

import numpy as np

J = np.array([[0.0, -1.0], [1.0, 0.0]])
R = np.array([[1.0, 0.0], [0.0, -1.0]])


def rotation(theta):
    """Returns the 2x2 matrix exp(theta J)"""
    cos_t = np.cos(theta)
    sin_t = np.sin(theta)
    return np.array([[cos_t, -sin_t], [sin_t, cos_t]])


def rotate(points, theta):
    """Rotates points (trailing axis of length 2) by the angle theta.
    theta may be an array broadcasting against the leading axes"""

    points = np.asarray(points, dtype=float)
    cos_t = np.cos(theta)
    sin_t = np.sin(theta)
    return np.stack([cos_t * points[..., 0] - sin_t * points[..., 1],
                     sin_t * points[..., 0] + cos_t * points[..., 1]],
                    axis=-1)


def apply_j(points):
    """Multiplies points (trailing axis of length 2) by J"""
    points = np.asarray(points)
    return np.stack([-points[..., 1], points[..., 0]], axis=-1)


def to_complex(points):
    """Converts pairs of reals to complex numbers"""
    points = np.asarray(points, dtype=float)
    return points[..., 0] + 1j * points[..., 1]


def to_pairs(values):
    """Converts complex numbers to pairs of reals"""
    values = np.asarray(values, dtype=complex)
    return np.stack([values.real, values.imag], axis=-1)


def sup_norm(values):
    """Maximum absolute entry, zero for empty input"""
    values = np.asarray(values)
    if values.size == 0:
        return 0.0
    return float(np.max(np.abs(values)))
