"""Shared construction helpers for the test suite."""

import numpy as np

from gcomplexity import (
    GaussianState,
    GaussianTransformation,
    StateKind,
    algebra_basis,
    algebra_of_kind,
    apply_transformation,
    matrix_exp,
    reference_state,
)


def random_algebra_matrix(kind: StateKind, n_modes: int, rng, scale: float = 0.5):
    basis = algebra_basis(algebra_of_kind(kind), n_modes)
    coeff = rng.normal(scale=scale, size=len(basis))
    return sum(c * b.v for c, b in zip(coeff, basis))


def random_transformation(kind: StateKind, n_modes: int, rng, scale: float = 0.5):
    m = matrix_exp(random_algebra_matrix(kind, n_modes, rng, scale))
    return GaussianTransformation(None, m, kind)


def random_target(kind: StateKind, n_modes: int, rng, scale: float = 0.5):
    ref = reference_state(kind, n_modes)
    return apply_transformation(ref, random_transformation(kind, n_modes, rng, scale))


def displaced_target(n_modes: int, rng, scale: float = 0.5):
    t = random_target(StateKind.BOSON, n_modes, rng, scale)
    return GaussianState(t.j, rng.normal(scale=1.0, size=2 * n_modes))
