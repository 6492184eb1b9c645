r"""Matrix-function kernels and Lie-algebra machinery.

Provides exp, principal log and principal square root with residual
contracts, the inner product at the identity

    g_1(V, W) = 1/2 Tr(V sigma_R W^T sigma_R^{-1}),

membership checks for sp(2N, R) and so(2N), and the splitting of the
algebra into the stabilizer subalgebra sta = {V : [V, J_R] = 0} and its
g_1-orthogonal complement.

Structured logarithm routes are used where the input is known to be
similar to a symmetric positive-definite matrix (bosonic relative
complex structures) or special orthogonal (fermionic ones); these keep
full relative precision on strongly squeezed states where a generic
dense logarithm loses digits.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import (
    BranchCut,
    DimensionMismatch,
    GroupViolation,
    NonFinite,
    NumericDomainError,
    Singular,
)
from .phase_space import (
    DEFAULT_TOL,
    ComplexStructure,
    CovarianceMatrix,
    StateKind,
    standard_symplectic_form,
)

BRANCH_CUT_MARGIN = 1e-6


class LieAlgebra(enum.Enum):
    SP = "sp"
    SO = "so"


def algebra_of_kind(kind: StateKind) -> LieAlgebra:
    return LieAlgebra.SP if kind is StateKind.BOSON else LieAlgebra.SO


@dataclass(frozen=True)
class LieAlgebraElement:
    """Real 2N x 2N matrix tagged with its algebra membership."""

    v: np.ndarray
    algebra: LieAlgebra
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        m = np.asarray(self.v, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2 != 0:
            raise DimensionMismatch(f"algebra element must be 2N x 2N, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise NonFinite("algebra element contains non-finite entries")
        scale = 1.0 + np.linalg.norm(m)
        if self.algebra is LieAlgebra.SP:
            om = standard_symplectic_form(m.shape[0] // 2).omega
            resid = np.linalg.norm(m @ om + om @ m.T) / scale
            if resid > self.tol:
                raise GroupViolation(
                    f"not in sp(2N, R): V Omega + Omega V^T residual {resid:.3e}"
                )
        else:
            resid = np.linalg.norm(m + m.T) / scale
            if resid > self.tol:
                raise GroupViolation(f"not in so(2N): V + V^T residual {resid:.3e}")
        m = np.ascontiguousarray(m)
        m.setflags(write=False)
        object.__setattr__(self, "v", m)

    @property
    def n_modes(self) -> int:
        return self.v.shape[0] // 2


@dataclass(frozen=True)
class StabilizerBasis:
    """g_1-orthonormal bases of sta(N) and of its orthogonal complement."""

    elements: tuple
    complement: tuple

    @property
    def dim_stabilizer(self) -> int:
        return len(self.elements)

    @property
    def dim_complement(self) -> int:
        return len(self.complement)


def _mat(x) -> np.ndarray:
    if isinstance(x, LieAlgebraElement):
        return x.v
    return np.asarray(x, dtype=float)


def _sigma(sigma_R, dim) -> np.ndarray:
    if sigma_R is None:
        return np.eye(dim)
    if isinstance(sigma_R, CovarianceMatrix):
        sigma_R = sigma_R.sigma
    s = np.asarray(sigma_R, dtype=float)
    if s.shape != (dim, dim):
        raise DimensionMismatch(f"sigma_R must be {dim} x {dim}, got {s.shape}")
    return s


def matrix_exp(v: np.ndarray) -> np.ndarray:
    """Matrix exponential e^V."""
    v = np.asarray(v, dtype=float)
    if not np.all(np.isfinite(v)):
        raise NonFinite("matrix_exp input contains non-finite entries")
    return scipy.linalg.expm(v)


def _eig_checked(m, tol, what):
    m = np.asarray(m, dtype=float)
    if not np.all(np.isfinite(m)):
        raise NonFinite(f"{what} input contains non-finite entries")
    w, vecs = np.linalg.eig(m)
    scale = np.abs(w).max() if w.size else 0.0
    if scale == 0.0 or np.abs(w).min() < 1e-14 * scale:
        raise Singular(f"{what}: input is numerically singular")
    bad = np.abs(np.angle(w)) > np.pi - BRANCH_CUT_MARGIN
    if np.any(bad):
        raise BranchCut(
            f"{what}: eigenvalue {w[bad][0]:.6g} within the branch-cut margin "
            "of the negative real axis"
        )
    return m, w, vecs


def matrix_log_principal(m: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Real principal logarithm via complex eigendecomposition.

    Raises BranchCut when an eigenvalue lies within the angular margin
    of the negative real axis, Singular for non-invertible input, and a
    NumericDomainError when the residual ||e^L - m|| indicates the
    eigenvector basis was too ill-conditioned.
    """
    m, w, vecs = _eig_checked(m, tol, "matrix_log_principal")
    L = (vecs * np.log(w)) @ np.linalg.inv(vecs)
    L = L.real
    resid = np.linalg.norm(scipy.linalg.expm(L) - m) / (1.0 + np.linalg.norm(m))
    if resid > max(tol, 1e-9):
        raise NumericDomainError(
            f"matrix_log_principal: residual {resid:.3e} exceeds tolerance; "
            "input is too ill-conditioned"
        )
    return L


def matrix_sqrt_principal(m: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Principal square root with spectrum in the right half-plane."""
    m, w, vecs = _eig_checked(m, tol, "matrix_sqrt_principal")
    S = (vecs * np.sqrt(w.astype(complex))) @ np.linalg.inv(vecs)
    S = S.real
    resid = np.linalg.norm(S @ S - m) / (1.0 + np.linalg.norm(m))
    if resid > max(tol, 1e-9):
        raise NumericDomainError(
            f"matrix_sqrt_principal: residual {resid:.3e} exceeds tolerance; "
            "input is too ill-conditioned"
        )
    return S


def matrix_exp_batch(vs: np.ndarray) -> np.ndarray:
    """Exponentials of a stack of small matrices, shape (..., d, d).

    Scaling-and-squaring with a degree-12 Taylor polynomial; accurate to
    machine precision for the moderate norms the oracle produces.
    """
    vs = np.asarray(vs, dtype=float)
    lead = vs.shape[:-2]
    d = vs.shape[-1]
    flat = vs.reshape(-1, d, d)
    norms = np.abs(flat).sum(axis=-1).max(axis=-1)
    s = np.ceil(np.log2(np.maximum(norms, 1e-300) / 0.5))
    s = np.maximum(s, 0.0).astype(int)
    x = flat * (0.5 ** s)[:, None, None]
    eye = np.broadcast_to(np.eye(d), flat.shape)
    out = eye.copy()
    term = eye.copy()
    for k in range(1, 13):
        term = term @ x / k
        out = out + term
    for _ in range(int(s.max()) if s.size else 0):
        active = s > 0
        out[active] = out[active] @ out[active]
        s = np.maximum(s - 1, 0)
    return out.reshape(*lead, d, d)


def log_spd_pencil(sigma_T: np.ndarray, sigma_R: np.ndarray = None):
    """Principal log of Delta = sigma_T sigma_R^{-1} through the SPD pencil.

    Returns (log_delta, radial_exponents) where radial_exponents are the
    N nonnegative members of the reciprocal-paired log-spectrum, sorted
    descending.  The large eigenvalues of a symmetric matrix carry full
    relative precision, so this route stays accurate at strong squeezing
    where a dense logarithm does not.
    """
    sigma_T = 0.5 * (sigma_T + sigma_T.T)
    d = sigma_T.shape[0]
    if sigma_R is None or np.array_equal(sigma_R, np.eye(d)):
        half = inv_half = None
        w_mid = sigma_T
    else:
        wr, ur = np.linalg.eigh(0.5 * (sigma_R + sigma_R.T))
        if wr.min() <= 0.0:
            raise NumericDomainError("sigma_R is not positive-definite")
        half = (ur * np.sqrt(wr)) @ ur.T
        inv_half = (ur / np.sqrt(wr)) @ ur.T
        w_mid = inv_half @ sigma_T @ inv_half
        w_mid = 0.5 * (w_mid + w_mid.T)
    w, u = np.linalg.eigh(w_mid)
    if w.min() <= 0.0:
        raise NumericDomainError(
            "relative covariance is not positive-definite; states are not a "
            "valid pure pair"
        )
    logs = np.log(w)
    log_mid = (u * logs) @ u.T
    log_delta = log_mid if half is None else half @ log_mid @ inv_half
    exponents = np.sort(logs)[::-1][: d // 2].copy()
    return log_delta, exponents


def sqrt_spd_pencil(sigma_T: np.ndarray, sigma_R: np.ndarray = None) -> np.ndarray:
    """Principal square root of Delta = sigma_T sigma_R^{-1}, same route."""
    sigma_T = 0.5 * (sigma_T + sigma_T.T)
    d = sigma_T.shape[0]
    if sigma_R is None or np.array_equal(sigma_R, np.eye(d)):
        w, u = np.linalg.eigh(sigma_T)
        if w.min() <= 0.0:
            raise NumericDomainError("sigma_T is not positive-definite")
        return (u * np.sqrt(w)) @ u.T
    wr, ur = np.linalg.eigh(0.5 * (sigma_R + sigma_R.T))
    if wr.min() <= 0.0:
        raise NumericDomainError("sigma_R is not positive-definite")
    half = (ur * np.sqrt(wr)) @ ur.T
    inv_half = (ur / np.sqrt(wr)) @ ur.T
    w_mid = inv_half @ sigma_T @ inv_half
    w, u = np.linalg.eigh(0.5 * (w_mid + w_mid.T))
    if w.min() <= 0.0:
        raise NumericDomainError("relative covariance is not positive-definite")
    return half @ ((u * np.sqrt(w)) @ u.T) @ inv_half


def log_special_orthogonal(delta: np.ndarray, margin: float = BRANCH_CUT_MARGIN):
    """Principal log of a rotation through its real Schur form.

    Returns (log_delta, angles) with angles the absolute block rotation
    angles padded with zeros to length N, sorted descending.  Raises
    BranchCut when a rotation angle reaches pi within the margin.
    """
    d = delta.shape[0]
    t, q = scipy.linalg.schur(delta, output="real")
    lschur = np.zeros_like(delta)
    angles = []
    i = 0
    while i < d:
        if i + 1 < d and abs(t[i + 1, i]) > 1e-12:
            theta = np.arctan2(t[i + 1, i], t[i, i])
            if abs(theta) > np.pi - margin:
                raise BranchCut(
                    f"rotation angle {theta:.6g} within the branch-cut margin of pi"
                )
            lschur[i, i + 1] = -theta
            lschur[i + 1, i] = theta
            angles.append(abs(theta))
            i += 2
        else:
            if t[i, i] < 0.0:
                raise BranchCut(
                    "eigenvalue -1 encountered; target lies on the branch cut"
                )
            i += 1
    angles += [0.0] * (d // 2 - len(angles))
    log_delta = q @ lschur @ q.T
    log_delta = 0.5 * (log_delta - log_delta.T)
    return log_delta, np.sort(np.asarray(angles))[::-1]


def inner_product_identity(v, w, sigma_R=None) -> float:
    r"""Right-invariant metric at the identity: 1/2 Tr(V sigma_R W^T sigma_R^{-1})."""
    vm = _mat(v)
    wm = _mat(w)
    if vm.shape != wm.shape:
        raise DimensionMismatch(f"shapes differ: {vm.shape} vs {wm.shape}")
    sig = _sigma(sigma_R, vm.shape[0])
    if np.array_equal(sig, np.eye(vm.shape[0])):
        return 0.5 * float(np.tensordot(vm, wm, axes=2))
    return 0.5 * float(np.trace(vm @ sig @ wm.T @ np.linalg.inv(sig)))


def algebra_basis(algebra: LieAlgebra, n_modes: int) -> tuple:
    """Canonical basis of sp(2N, R) (V = Omega S, S symmetric elementary)
    or so(2N) (elementary antisymmetric), in a fixed reproducible order."""
    d = 2 * n_modes
    out = []
    if algebra is LieAlgebra.SP:
        om = standard_symplectic_form(n_modes).omega
        for i in range(d):
            for j in range(i, d):
                s = np.zeros((d, d))
                s[i, j] += 1.0
                s[j, i] += 1.0
                out.append(LieAlgebraElement(om @ s, algebra))
    else:
        for i in range(d):
            for j in range(i + 1, d):
                a = np.zeros((d, d))
                a[i, j] = 1.0
                a[j, i] = -1.0
                out.append(LieAlgebraElement(a, algebra))
    return tuple(out)


def _gram_schmidt(mats, sig, against=(), tol=1e-9):
    """Modified Gram-Schmidt under g_1 with one re-orthogonalization pass."""
    ortho = []
    for m in mats:
        v = m.copy()
        for _ in range(2):
            for b in against:
                v = v - inner_product_identity(v, b, sig) * b
            for b in ortho:
                v = v - inner_product_identity(v, b, sig) * b
        nrm = np.sqrt(inner_product_identity(v, v, sig))
        if nrm > tol:
            ortho.append(v / nrm)
    return ortho


def stabilizer_basis(j_R: ComplexStructure, sigma_R=None) -> StabilizerBasis:
    """Split the algebra into sta = {V : [V, J_R] = 0} and its complement.

    The splitting solves the commutator condition as a dense linear
    system over the canonical basis; the complement is then
    g_1-orthonormalized against the stabilizer part.
    """
    kind = j_R.kind
    algebra = algebra_of_kind(kind)
    n = j_R.n_modes
    d = 2 * n
    sig = _sigma(sigma_R, d)
    basis = algebra_basis(algebra, n)
    mats = [b.v for b in basis]
    jr = j_R.j
    comm = np.stack([(m @ jr - jr @ m).ravel() for m in mats], axis=1)
    _, svals, vt = np.linalg.svd(comm)
    cutoff = max(comm.shape) * np.finfo(float).eps * (svals[0] if svals.size else 0.0)
    rank = int(np.sum(svals > max(cutoff, 1e-12)))
    coeff_sta = vt[rank:]
    coeff_comp = vt[:rank]
    sta_raw = [np.einsum("d,dij->ij", c, mats) for c in coeff_sta]
    comp_raw = [np.einsum("d,dij->ij", c, mats) for c in coeff_comp]
    sta = _gram_schmidt(sta_raw, sig)
    comp = _gram_schmidt(comp_raw, sig, against=sta)
    elements = tuple(LieAlgebraElement(m, algebra) for m in sta)
    complement = tuple(LieAlgebraElement(m, algebra) for m in comp)
    return StabilizerBasis(elements, complement)


def project_onto_complement(v, basis: StabilizerBasis, sigma_R=None) -> LieAlgebraElement:
    """Remove the g_1-orthogonal projection onto span(stabilizer)."""
    vm = _mat(v).copy()
    if basis.elements:
        sig = _sigma(sigma_R, vm.shape[0])
        for b in basis.elements:
            vm = vm - (
                inner_product_identity(vm, b, sig)
                / inner_product_identity(b, b, sig)
            ) * b.v
    algebra = basis.elements[0].algebra if basis.elements else basis.complement[0].algebra
    return LieAlgebraElement(vm, algebra)
