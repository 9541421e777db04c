# coding=utf-8
"""Shared fixtures for the vortex tests"""

import numpy as np

from vortexsphere.equilibrium.ring_equilibrium import RingParams, \
    minimum_separation
from vortexsphere.periodic.continuation import branch_seed, continue_branch

THIRD_RING_RADIUS = 1.0 / np.sqrt(3.0)

_BRANCH_CACHE = {}


def random_unit_vectors(count, seed=0, max_z=None):
    """Seeded random points on the unit sphere, optionally below max_z"""
    random = np.random.RandomState(seed)
    vectors = random.standard_normal((count, 3))
    vectors /= np.linalg.norm(vectors, axis=-1)[:, np.newaxis]
    if max_z is not None:
        vectors = vectors[vectors[:, 2] < max_z]
    return vectors


def random_plane_config(n, seed=0, scale=1.0, min_separation=0.1):
    """Seeded random collision-free chart configuration of n vortices"""
    random = np.random.RandomState(seed)
    while True:
        x = scale * random.standard_normal((n, 2))
        if minimum_separation(x) > min_separation:
            return x


def random_sphere_state(n, seed=0, min_separation=0.3):
    """Seeded random unit vectors with pairwise distances above
    min_separation"""
    random = np.random.RandomState(seed)
    while True:
        v = random.standard_normal((n, 3))
        v /= np.linalg.norm(v, axis=-1)[:, np.newaxis]
        if minimum_separation(v) > min_separation:
            return v


def third_ring(n=3):
    """The ring at r = 1/sqrt(3), where nu_1 = 2/3 for n = 3"""
    return RingParams(n, THIRD_RING_RADIUS)


def ring_branch(params, k, steps, p, ds=1e-2, eps=1e-3):
    """A converged branch of mode k, computed once per parameter set"""
    key = (params.n, params.r, k, steps, p, ds, eps)
    if key not in _BRANCH_CACHE:
        seed, report = branch_seed(k, params, eps, p)
        _BRANCH_CACHE[key] = continue_branch(seed, steps, ds,
                                             resonant=report.resonant)
    return _BRANCH_CACHE[key]


def short_branch(steps=6, p=8, k=1, ds=1e-2, eps=1e-3):
    """A short converged branch of the three-vortex ring at r = 1/sqrt(3)"""
    return ring_branch(third_ring(), k, steps, p, ds, eps)


def square_branch(steps=12, eps=5e-4):
    """Mode 2 branch of the four-vortex ring at r = 0.5, where the critical
    frequency differs from the rotation frequency and the frequency moves
    with the amplitude"""
    return ring_branch(RingParams(4, 0.5), 2, steps, 16, eps=eps)
