import numpy as np
import pytest

from gcomplexity import (
    GroupPath,
    LieAlgebra,
    LieAlgebraElement,
    StateKind,
    ValidationError,
    check_stabilizer_geodesic,
    coherent_complexity,
    coherent_geodesic,
    group_path_length,
    minimize_to_target,
    reference_state,
    stabilizer_basis,
    state_complexity,
)
from helpers import displaced_target, random_target


def test_path_length_hand_value():
    inc = np.tile(np.diag([0.5, -0.5]), (4, 1, 1))
    path = GroupPath(inc, StateKind.BOSON)
    assert group_path_length(path) == pytest.approx(2.0, abs=1e-14)
    u = np.tile([1.0, 0.0], (4, 1))
    displaced = GroupPath(inc, StateKind.BOSON, displacement_increments=u)
    assert group_path_length(displaced) == pytest.approx(
        4.0 * np.sqrt(1.25), abs=1e-14
    )


def test_group_path_validation():
    with pytest.raises(ValidationError):
        GroupPath(np.zeros((4, 2, 3)), StateKind.BOSON)
    with pytest.raises(ValidationError):
        GroupPath(np.zeros((3, 2, 2)), StateKind.BOSON)
    with pytest.raises(ValidationError):
        GroupPath(
            np.zeros((4, 2, 2)),
            StateKind.BOSON,
            displacement_increments=np.zeros((4, 3)),
        )
    path = GroupPath(np.zeros((6, 2, 2)), StateKind.BOSON)
    assert path.segments == 6


def test_identity_target_gives_zero_path():
    ref = reference_state(StateKind.BOSON, 1)
    path, length = minimize_to_target(ref, ref, segments=4, restarts=1)
    assert path.converged
    assert length <= 1e-8


def test_oracle_matches_closed_form_boson():
    rng = np.random.default_rng(50)
    ref = reference_state(StateKind.BOSON, 1)
    for _ in range(3):
        target = random_target(StateKind.BOSON, 1, rng)
        closed = state_complexity(ref, target)
        path, length = minimize_to_target(ref, target, segments=8, restarts=1)
        assert path.converged
        assert path.constraint_residual < 1e-6
        assert abs(length - closed) <= 1e-6 * max(closed, 1.0)
        # feasible discrete paths can never undercut the geodesic
        assert length >= closed - 1e-9


def test_oracle_matches_closed_form_fermion_two_modes():
    rng = np.random.default_rng(51)
    ref = reference_state(StateKind.FERMION, 2)
    target = random_target(StateKind.FERMION, 2, rng)
    closed = state_complexity(ref, target)
    path, length = minimize_to_target(ref, target, segments=8, restarts=1)
    assert path.converged
    assert abs(length - closed) <= 1e-6 * max(closed, 1.0)
    assert length >= closed - 1e-9


def test_oracle_displaced_target_within_one_percent():
    rng = np.random.default_rng(52)
    ref = reference_state(StateKind.BOSON, 1)
    target = displaced_target(1, rng)
    closed = coherent_complexity(coherent_geodesic(ref, target))
    path, length = minimize_to_target(ref, target, segments=8, restarts=1)
    assert path.converged
    assert path.displacement_increments is not None
    assert abs(length - closed) <= 1e-2 * closed


def test_oracle_validation():
    bref = reference_state(StateKind.BOSON, 1)
    fref = reference_state(StateKind.FERMION, 1)
    with pytest.raises(ValidationError):
        minimize_to_target(bref, fref)
    big = reference_state(StateKind.BOSON, 3)
    with pytest.raises(ValidationError):
        minimize_to_target(big, big)
    with pytest.raises(ValidationError):
        minimize_to_target(bref, bref, segments=3)
    with pytest.raises(ValidationError):
        minimize_to_target(bref, bref, restarts=0)


def test_oracle_is_deterministic():
    rng = np.random.default_rng(53)
    ref = reference_state(StateKind.BOSON, 1)
    target = random_target(StateKind.BOSON, 1, rng)
    path_a, len_a = minimize_to_target(ref, target, segments=8, restarts=2, seed=7)
    path_b, len_b = minimize_to_target(ref, target, segments=8, restarts=2, seed=7)
    assert len_a == len_b
    assert np.array_equal(path_a.increments, path_b.increments)


def test_refining_segments_does_not_lengthen():
    rng = np.random.default_rng(54)
    ref = reference_state(StateKind.BOSON, 1)
    target = random_target(StateKind.BOSON, 1, rng)
    _, len8 = minimize_to_target(ref, target, segments=8, restarts=1)
    _, len16 = minimize_to_target(ref, target, segments=16, restarts=1)
    assert len16 <= len8 + 1e-8


def test_stationarity_of_normal_directions():
    # symmetric sp generator: the one-parameter subgroup is the geodesic
    v = LieAlgebraElement(np.diag([0.6, -0.6]), LieAlgebra.SP)
    report = check_stabilizer_geodesic(v, perturbation_count=20, seed=1)
    assert report.passed
    assert report.derivatives.shape == (20,)
    assert report.max_abs < 1e-6


def test_stationarity_of_fermion_complement():
    basis = stabilizer_basis(reference_state(StateKind.FERMION, 2).j)
    v = LieAlgebraElement(0.8 * basis.complement[0].v, LieAlgebra.SO)
    report = check_stabilizer_geodesic(v, perturbation_count=20, seed=2)
    assert report.passed


def test_stationarity_negative_control():
    # a non-normal generator is not a geodesic: the derivative is O(1)
    v = LieAlgebraElement(0.5 * np.array([[1.0, 1.0], [-1.0, -1.0]]), LieAlgebra.SP)
    report = check_stabilizer_geodesic(v, perturbation_count=20, seed=3)
    assert not report.passed
    assert report.max_abs > 0.1
