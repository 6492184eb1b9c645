import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings, strategies as st

from gcomplexity import (
    BranchCut,
    GroupViolation,
    LieAlgebra,
    LieAlgebraElement,
    NumericDomainError,
    Singular,
    StateKind,
    algebra_basis,
    algebra_of_kind,
    inner_product_identity,
    log_spd_pencil,
    log_special_orthogonal,
    matrix_exp,
    matrix_exp_batch,
    matrix_log_principal,
    matrix_sqrt_principal,
    project_onto_complement,
    reference_state,
    sqrt_spd_pencil,
    stabilizer_basis,
    standard_symplectic_form,
)
from helpers import random_algebra_matrix


def rotation(theta):
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def test_algebra_membership_checks():
    om = standard_symplectic_form(1).omega
    LieAlgebraElement(om, LieAlgebra.SP)
    LieAlgebraElement(om, LieAlgebra.SO)
    LieAlgebraElement(np.diag([1.0, -1.0]), LieAlgebra.SP)
    with pytest.raises(GroupViolation):
        LieAlgebraElement(np.diag([1.0, -1.0]), LieAlgebra.SO)
    with pytest.raises(GroupViolation):
        LieAlgebraElement(np.eye(2), LieAlgebra.SP)


def test_algebra_of_kind():
    assert algebra_of_kind(StateKind.BOSON) is LieAlgebra.SP
    assert algebra_of_kind(StateKind.FERMION) is LieAlgebra.SO


def test_log_exp_roundtrip_norm_two():
    rng = np.random.default_rng(10)
    for algebra in LieAlgebra:
        kind = StateKind.BOSON if algebra is LieAlgebra.SP else StateKind.FERMION
        for n in (1, 2):
            for _ in range(25):
                v = random_algebra_matrix(kind, n, rng, scale=0.8)
                nrm = np.linalg.norm(v)
                if nrm > 2.0:
                    v = v * (2.0 / nrm)
                back = matrix_log_principal(matrix_exp(v))
                assert np.linalg.norm(back - v) <= 1e-8


def test_log_principal_known_value():
    assert np.allclose(
        matrix_log_principal(np.diag([np.e, 1.0 / np.e])), np.diag([1.0, -1.0]),
        atol=1e-13,
    )


def test_log_principal_branch_cut_and_singular():
    with pytest.raises(BranchCut):
        matrix_log_principal(-np.eye(2))
    with pytest.raises(Singular):
        matrix_log_principal(np.diag([1.0, 0.0]))


def test_sqrt_principal_known_value():
    assert np.allclose(matrix_sqrt_principal(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]))
    m = matrix_sqrt_principal(rotation(1.0))
    assert np.allclose(m @ m, rotation(1.0), atol=1e-12)


def test_matrix_exp_batch_matches_scipy():
    rng = np.random.default_rng(11)
    vs = rng.normal(scale=0.7, size=(12, 4, 4))
    batch = matrix_exp_batch(vs)
    for k in range(12):
        ref = scipy.linalg.expm(vs[k])
        assert np.linalg.norm(batch[k] - ref) <= 1e-12 * np.linalg.norm(ref)


def test_log_spd_pencil_single_mode():
    r = 0.8
    sig = np.diag([np.exp(2 * r), np.exp(-2 * r)])
    log_delta, exps = log_spd_pencil(sig)
    assert np.allclose(log_delta, np.diag([2 * r, -2 * r]), atol=1e-13)
    assert exps.shape == (1,)
    assert abs(exps[0] - 2 * r) <= 1e-13


def test_log_spd_pencil_precision_at_strong_squeezing():
    # the symmetric-pencil route keeps full relative precision at r = 5
    r = 5.0
    sig = np.diag([np.exp(2 * r), np.exp(-2 * r)])
    _, exps = log_spd_pencil(sig)
    assert abs(exps[0] - 10.0) <= 1e-12


def test_log_spd_pencil_sorted_descending():
    sig = np.diag([np.exp(0.4), np.exp(-0.4), np.exp(3.0), np.exp(-3.0)])
    _, exps = log_spd_pencil(sig)
    assert np.allclose(exps, [3.0, 0.4], atol=1e-13)


def test_log_spd_pencil_general_reference():
    rng = np.random.default_rng(12)
    a = rng.normal(size=(4, 4))
    sigma_R = a @ a.T + 4.0 * np.eye(4)
    b = rng.normal(scale=0.3, size=(4, 4))
    sigma_T = scipy.linalg.expm(b) @ sigma_R @ scipy.linalg.expm(b).T
    log_delta, _ = log_spd_pencil(sigma_T, sigma_R)
    direct = scipy.linalg.logm(sigma_T @ np.linalg.inv(sigma_R))
    assert np.linalg.norm(log_delta - direct) <= 1e-9


def test_log_spd_pencil_rejects_indefinite():
    with pytest.raises(NumericDomainError):
        log_spd_pencil(np.diag([1.0, -1.0]))


def test_sqrt_spd_pencil():
    sig = np.diag([4.0, 0.25])
    assert np.allclose(sqrt_spd_pencil(sig), np.diag([2.0, 0.5]), atol=1e-14)
    rng = np.random.default_rng(13)
    a = rng.normal(size=(4, 4))
    sigma_R = a @ a.T + 4.0 * np.eye(4)
    b = rng.normal(scale=0.3, size=(4, 4))
    sigma_T = scipy.linalg.expm(b) @ sigma_R @ scipy.linalg.expm(b).T
    root = sqrt_spd_pencil(sigma_T, sigma_R)
    delta = sigma_T @ np.linalg.inv(sigma_R)
    assert np.linalg.norm(root @ root - delta) <= 1e-10 * np.linalg.norm(delta)


def test_log_special_orthogonal_single_block():
    theta = 1.1
    log_delta, angles = log_special_orthogonal(rotation(theta))
    assert np.allclose(log_delta, np.array([[0.0, -theta], [theta, 0.0]]), atol=1e-12)
    assert np.allclose(angles, [theta])


def test_log_special_orthogonal_padding_and_sorting():
    delta = scipy.linalg.block_diag(rotation(0.3), np.eye(2))
    _, angles = log_special_orthogonal(delta)
    assert np.allclose(angles, [0.3, 0.0], atol=1e-12)


def test_log_special_orthogonal_branch_cut():
    with pytest.raises(BranchCut):
        log_special_orthogonal(rotation(np.pi - 1e-9))
    with pytest.raises(BranchCut):
        log_special_orthogonal(-np.eye(2))


def test_inner_product_identity_canonical():
    v = np.array([[1.0, 2.0], [3.0, -1.0]])
    assert inner_product_identity(v, v) == pytest.approx(0.5 * 15.0, abs=1e-14)
    w = np.array([[0.0, 1.0], [1.0, 0.0]])
    assert inner_product_identity(v, w) == pytest.approx(0.5 * 5.0, abs=1e-14)


def test_inner_product_identity_general_sigma():
    rng = np.random.default_rng(14)
    a = rng.normal(size=(2, 2))
    sig = a @ a.T + 2.0 * np.eye(2)
    v = rng.normal(size=(2, 2))
    w = rng.normal(size=(2, 2))
    direct = 0.5 * np.trace(v @ sig @ w.T @ np.linalg.inv(sig))
    assert inner_product_identity(v, w, sig) == pytest.approx(direct, abs=1e-12)


def test_algebra_basis_dimensions():
    assert len(algebra_basis(LieAlgebra.SP, 1)) == 3
    assert len(algebra_basis(LieAlgebra.SP, 2)) == 10
    assert len(algebra_basis(LieAlgebra.SO, 1)) == 1
    assert len(algebra_basis(LieAlgebra.SO, 2)) == 6


@pytest.mark.parametrize(
    "kind, n, dim_sta, dim_comp",
    [
        (StateKind.BOSON, 1, 1, 2),
        (StateKind.BOSON, 2, 4, 6),
        (StateKind.FERMION, 1, 1, 0),
        (StateKind.FERMION, 2, 4, 2),
    ],
)
def test_stabilizer_dimensions(kind, n, dim_sta, dim_comp):
    # sta(N) = u(N) inside either algebra, so dim sta = N^2 for both kinds
    basis = stabilizer_basis(reference_state(kind, n).j)
    assert basis.dim_stabilizer == dim_sta == n * n
    assert basis.dim_complement == dim_comp


@pytest.mark.parametrize("kind", list(StateKind))
@pytest.mark.parametrize("n", [1, 2])
def test_stabilizer_basis_properties(kind, n):
    j_R = reference_state(kind, n).j
    basis = stabilizer_basis(j_R)
    jr = j_R.j
    all_elems = list(basis.elements) + list(basis.complement)
    for b in basis.elements:
        assert np.linalg.norm(b.v @ jr - jr @ b.v) <= 1e-10
    for c in basis.complement:
        assert np.linalg.norm(c.v @ jr - jr @ c.v) > 1e-3
    for i, a in enumerate(all_elems):
        for k, b in enumerate(all_elems):
            want = 1.0 if i == k else 0.0
            assert inner_product_identity(a, b) == pytest.approx(want, abs=1e-9)


def test_project_onto_complement():
    j_R = reference_state(StateKind.BOSON, 1).j
    basis = stabilizer_basis(j_R)
    comp = basis.complement[0].v
    out = project_onto_complement(comp, basis)
    assert np.allclose(out.v, comp, atol=1e-12)
    sta = basis.elements[0].v
    out = project_onto_complement(sta, basis)
    assert np.linalg.norm(out.v) <= 1e-12


@settings(deadline=None, max_examples=60)
@given(st.lists(st.floats(-0.4, 0.4), min_size=3, max_size=3))
def test_sp_exponential_is_symplectic(coeffs):
    basis = algebra_basis(LieAlgebra.SP, 1)
    v = sum(c * b.v for c, b in zip(coeffs, basis))
    m = matrix_exp(v)
    om = standard_symplectic_form(1).omega
    assert np.linalg.norm(m @ om @ m.T - om) <= 1e-12 * np.linalg.norm(m) ** 2


@settings(deadline=None, max_examples=60)
@given(st.lists(st.floats(-0.4, 0.4), min_size=6, max_size=6))
def test_so_exponential_is_orthogonal(coeffs):
    basis = algebra_basis(LieAlgebra.SO, 2)
    v = sum(c * b.v for c, b in zip(coeffs, basis))
    m = matrix_exp(v)
    assert np.linalg.norm(m @ m.T - np.eye(4)) <= 1e-12
    assert np.linalg.det(m) > 0.0
