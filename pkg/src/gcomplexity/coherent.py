r"""Complexity and optimal circuits for displaced bosonic targets.

For a target (J_T, z_T) the optimal circuit is

    M(tau) = e^{tau log(Delta)/2},
    z(tau) = (M(tau) - 1)(M(1) - 1)^{-1} z_T,

and with N = log(Delta)(sqrt(Delta) - 1)^{-1} and G = N^T sigma_R^{-1} N
the state complexity is

    C = 1/2 sqrt(Tr|log Delta|^2 / 2 + z_T^T G z_T).

When Delta = 1 the limit is N = 2.1 and the displacement path is the
straight line z(tau) = tau z_T.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complexity_core import RelativeComplexStructure, relative_complex_structure
from .errors import (
    DisplacementPresent,
    KindMismatch,
    SingularEndpoint,
    SingularN,
)
from .lie_numerics import matrix_exp, sqrt_spd_pencil
from .phase_space import (
    GaussianState,
    GaussianTransformation,
    StateKind,
    SymplecticForm,
    covariance_of,
)

IDENTITY_DELTA_CUTOFF = 1e-8


@dataclass(frozen=True)
class CoherentGeodesic:
    """Geodesic data for a displaced bosonic target."""

    delta: RelativeComplexStructure
    n_matrix: np.ndarray
    z_target: np.ndarray
    g_form: np.ndarray
    sqrt_delta: np.ndarray
    sigma_R: np.ndarray

    @property
    def is_identity(self) -> bool:
        return self.delta.is_identity


def coherent_geodesic(
    reference: GaussianState, target: GaussianState, sigma_R=None
) -> CoherentGeodesic:
    """Build Delta, N and G for a (possibly displaced) bosonic target.

    Raises SingularN when sqrt(Delta) - 1 is singular although Delta is
    not the identity: some eigenvalue pair of Delta degenerates to 1 and
    the displacement formula has no preferred value there.
    """
    if reference.kind is not StateKind.BOSON or target.kind is not StateKind.BOSON:
        raise KindMismatch("coherent geodesics are defined for bosons only")
    if np.any(reference.z != 0.0):
        raise DisplacementPresent("reference displacement must be zero")
    rel = relative_complex_structure(reference, target)
    d = rel.delta.shape[0]
    if sigma_R is None:
        sig = covariance_of(reference)
    else:
        sig = sigma_R.sigma if hasattr(sigma_R, "sigma") else np.asarray(sigma_R, float)
    sig_inv = np.linalg.inv(sig)
    z_t = np.asarray(target.z, dtype=float)
    if rel.is_identity:
        n_matrix = 2.0 * np.eye(d)
        sqrt_delta = np.eye(d)
    else:
        small = np.abs(rel.radial_exponents) < IDENTITY_DELTA_CUTOFF
        if np.any(small):
            raise SingularN(
                "sqrt(Delta) - 1 is singular while Delta != identity: the "
                f"log-eigenvalue pair(s) {rel.radial_exponents[small]} degenerate "
                "to zero"
            )
        sigma_t = covariance_of(target)
        sigma_r = covariance_of(reference)
        if np.allclose(sigma_r, np.eye(d), atol=1e-13):
            sqrt_delta = sqrt_spd_pencil(sigma_t)
        else:
            sqrt_delta = sqrt_spd_pencil(sigma_t, sigma_r)
        n_matrix = np.linalg.solve((sqrt_delta - np.eye(d)).T, rel.log_delta.T).T
    g_form = n_matrix.T @ sig_inv @ n_matrix
    g_form = 0.5 * (g_form + g_form.T)
    return CoherentGeodesic(rel, n_matrix, z_t, g_form, sqrt_delta, sig)


def coherent_complexity(geo: CoherentGeodesic) -> float:
    r"""C = 1/2 sqrt(Tr|log Delta|^2 / 2 + G(z_T, z_T))."""
    s = geo.delta.radial_exponents
    quad = float(geo.z_target @ geo.g_form @ geo.z_target)
    return 0.5 * float(np.sqrt(np.sum(s * s) + max(quad, 0.0)))


def coherent_geodesic_point(geo: CoherentGeodesic, tau: float) -> GaussianTransformation:
    """Optimal circuit point (z(tau), M(tau))."""
    m = matrix_exp(0.5 * tau * geo.delta.log_delta)
    d = m.shape[0]
    if geo.is_identity:
        z = tau * geo.z_target
    else:
        e = geo.sqrt_delta - np.eye(d)
        try:
            w = np.linalg.solve(e, geo.z_target)
        except np.linalg.LinAlgError as exc:
            raise SingularEndpoint("M(1) - 1 is singular") from exc
        z = (m - np.eye(d)) @ w
    return GaussianTransformation(z, m, StateKind.BOSON)


def hamiltonian_coefficients(geo: CoherentGeodesic, omega: SymplecticForm):
    r"""Quadratic Hamiltonian coefficients of the optimal circuit.

    Returns (F, alpha) with F = 1/2 Omega^{-1} log Delta (symmetric) and
    alpha = 1/2 Omega^{-1} N z_T.  The generated affine flow
    x' = Omega(F x + alpha) = (log Delta / 2) x + N z_T / 2 reproduces
    the geodesic (M(tau), z(tau)).
    """
    om_inv = omega.inverse
    f = 0.5 * om_inv @ geo.delta.log_delta
    f = 0.5 * (f + f.T)
    alpha = 0.5 * om_inv @ geo.n_matrix @ geo.z_target
    return f, alpha
