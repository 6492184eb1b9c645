import numpy as np
import pytest
from scipy.integrate import solve_ivp

from gcomplexity import (
    DisplacementPresent,
    GaussianState,
    GaussianTransformation,
    KindMismatch,
    SingularN,
    StateKind,
    apply_transformation,
    coherent_complexity,
    coherent_geodesic,
    coherent_geodesic_point,
    hamiltonian_coefficients,
    reference_state,
    single_mode_squeezing,
    standard_symplectic_form,
    state_complexity,
)
from helpers import displaced_target, random_target


def test_pure_displacement_345():
    ref = reference_state(StateKind.BOSON, 1)
    target = GaussianState(ref.j, np.array([3.0, 4.0]))
    geo = coherent_geodesic(ref, target)
    assert np.array_equal(geo.n_matrix, 2.0 * np.eye(2))
    assert np.allclose(geo.g_form, 4.0 * np.eye(2))
    assert coherent_complexity(geo) == pytest.approx(5.0, abs=1e-12)


def test_zero_displacement_reduces_to_state_complexity():
    rng = np.random.default_rng(30)
    for n in (1, 2):
        for _ in range(25):
            target = random_target(StateKind.BOSON, n, rng)
            ref = reference_state(StateKind.BOSON, n)
            geo = coherent_geodesic(ref, target)
            assert coherent_complexity(geo) == pytest.approx(
                state_complexity(ref, target), abs=1e-12
            )


def test_n_matrix_closed_form_single_mode():
    r = 0.7
    ref = reference_state(StateKind.BOSON, 1)
    target = apply_transformation(ref, single_mode_squeezing(r, 0.0))
    geo = coherent_geodesic(ref, GaussianState(target.j, np.array([1.0, -2.0])))
    want = np.diag(
        [2 * r / (np.exp(r) - 1.0), -2 * r / (np.exp(-r) - 1.0)]
    )
    assert np.allclose(geo.n_matrix, want, atol=1e-12)


def test_endpoint_exactness():
    rng = np.random.default_rng(31)
    for n in (1, 2):
        for _ in range(10):
            target = displaced_target(n, rng)
            ref = reference_state(StateKind.BOSON, n)
            geo = coherent_geodesic(ref, target)
            out = apply_transformation(ref, coherent_geodesic_point(geo, 1.0))
            assert np.linalg.norm(out.j.j - target.j.j) <= 1e-10
            assert np.linalg.norm(out.z - target.z) <= 1e-10
            at0 = coherent_geodesic_point(geo, 0.0)
            assert np.allclose(at0.m, np.eye(2 * n), atol=1e-14)
            assert np.allclose(at0.v, np.zeros(2 * n), atol=1e-14)


def test_displacement_flow_matches_hamiltonian_integration():
    # the circuit must solve x' = Omega (F x + alpha) starting from the
    # phase-space origin; integrating that flow is an independent oracle
    # for N, G and the z(tau) profile together
    rng = np.random.default_rng(32)
    for n in (1, 2):
        target = displaced_target(n, rng)
        ref = reference_state(StateKind.BOSON, n)
        geo = coherent_geodesic(ref, target)
        om = standard_symplectic_form(n)
        f, alpha = hamiltonian_coefficients(geo, om)
        rhs = lambda t, x: om.omega @ (f @ x + alpha)
        sol = solve_ivp(
            rhs,
            (0.0, 1.0),
            np.zeros(2 * n),
            method="DOP853",
            rtol=1e-12,
            atol=1e-13,
            t_eval=[0.25, 0.5, 0.75, 1.0],
        )
        for tau, x in zip(sol.t, sol.y.T):
            z = coherent_geodesic_point(geo, tau).v
            assert np.linalg.norm(z - x) <= 1e-8
        assert np.linalg.norm(sol.y[:, -1] - target.z) <= 1e-8


def test_displacement_sign_symmetry():
    rng = np.random.default_rng(33)
    target = displaced_target(1, rng)
    ref = reference_state(StateKind.BOSON, 1)
    plus = coherent_complexity(coherent_geodesic(ref, target))
    minus = coherent_complexity(
        coherent_geodesic(ref, GaussianState(target.j, -target.z))
    )
    assert plus == pytest.approx(minus, abs=1e-14)


def test_complexity_is_quadratic_in_displacement():
    rng = np.random.default_rng(34)
    target = displaced_target(1, rng)
    ref = reference_state(StateKind.BOSON, 1)
    c0 = coherent_complexity(coherent_geodesic(ref, GaussianState(target.j)))
    c1 = coherent_complexity(coherent_geodesic(ref, target))
    c2 = coherent_complexity(
        coherent_geodesic(ref, GaussianState(target.j, 2.0 * target.z))
    )
    assert c2**2 - c0**2 == pytest.approx(4.0 * (c1**2 - c0**2), rel=1e-10)


def test_singular_n_raises():
    # one squeezed and one untouched mode: a log-eigenvalue pair sits at
    # zero while Delta != 1, so N has no preferred value
    ref = reference_state(StateKind.BOSON, 2)
    m = np.eye(4)
    m[:2, :2] = single_mode_squeezing(1.0, 0.0).m
    squeezed = apply_transformation(ref, GaussianTransformation(None, m, StateKind.BOSON))
    target = GaussianState(squeezed.j, np.array([0.5, 0.0, 0.2, 0.0]))
    with pytest.raises(SingularN):
        coherent_geodesic(ref, target)


def test_identity_delta_straight_line():
    ref = reference_state(StateKind.BOSON, 1)
    target = GaussianState(ref.j, np.array([1.0, 2.0]))
    geo = coherent_geodesic(ref, target)
    assert geo.is_identity
    assert coherent_complexity(geo) == pytest.approx(np.linalg.norm(target.z))
    mid = coherent_geodesic_point(geo, 0.5)
    assert np.allclose(mid.v, 0.5 * target.z)
    assert np.allclose(mid.m, np.eye(2))


def test_validation():
    ref = reference_state(StateKind.FERMION, 1)
    with pytest.raises(KindMismatch):
        coherent_geodesic(ref, ref)
    bref = reference_state(StateKind.BOSON, 1)
    displaced_ref = GaussianState(bref.j, np.array([0.1, 0.0]))
    with pytest.raises(DisplacementPresent):
        coherent_geodesic(displaced_ref, bref)


def test_explicit_canonical_sigma_matches_default():
    rng = np.random.default_rng(35)
    target = displaced_target(1, rng)
    ref = reference_state(StateKind.BOSON, 1)
    a = coherent_complexity(coherent_geodesic(ref, target))
    b = coherent_complexity(coherent_geodesic(ref, target, sigma_R=np.eye(2)))
    assert a == b
