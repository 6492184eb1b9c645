"""Geometric circuit complexity of pure Gaussian states.

Closed-form complexity and geodesics from the relative complex
structure, coherent (displaced) targets, Weyl-deformed metrics,
non-reversible vector-potential costs, and a variational oracle for
independent verification.
"""

from .coherent import (
    CoherentGeodesic,
    coherent_complexity,
    coherent_geodesic,
    coherent_geodesic_point,
    hamiltonian_coefficients,
)
from .complexity_core import (
    COMPLEXITY_PREFACTOR,
    CostFunctionSpec,
    RelativeComplexStructure,
    complexity_from_relative,
    evaluate_cost_function,
    geodesic_point,
    relative_complex_structure,
    state_complexity,
)
from .errors import (
    BranchCut,
    ChartBoundary,
    DimensionMismatch,
    DisplacementPresent,
    GaussianComplexityError,
    GroupViolation,
    KindMismatch,
    LengthMismatch,
    NoConvergence,
    NonFinite,
    NonFiniteFactor,
    NotPure,
    NumericDomainError,
    PotentialTooLarge,
    SchemaError,
    Singular,
    SingularEndpoint,
    SingularInput,
    SingularN,
    StepTooCoarse,
    ValidationError,
)
from .lie_numerics import (
    LieAlgebra,
    LieAlgebraElement,
    StabilizerBasis,
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
    sqrt_spd_pencil,
    stabilizer_basis,
)
from .modified_metrics import (
    ChartMetric,
    DiscretizedPath,
    SingleModeChart,
    VectorPotential,
    WeylFactor,
    lorentz_geodesic,
    metric_phiphi,
    nonreversible_cost,
    nonreversible_cost_profile,
    single_mode_metric,
    weyl_affine_reparametrization,
    weyl_complexity,
)
from .phase_space import (
    DEFAULT_TOL,
    ComplexStructure,
    CovarianceMatrix,
    GaussianState,
    GaussianTransformation,
    StateKind,
    SymplecticForm,
    apply_transformation,
    compose,
    complex_structure_from_covariance,
    covariance_of,
    reference_state,
    single_mode_squeezing,
    standard_symplectic_form,
    state_from_dict,
    state_to_dict,
)
from .variational_oracle import (
    GroupPath,
    StationarityReport,
    check_stabilizer_geodesic,
    minimize_to_target,
)
from .variational_oracle import path_length as group_path_length
from .modified_metrics import path_length as chart_path_length

__all__ = [
    "COMPLEXITY_PREFACTOR",
    "DEFAULT_TOL",
    "BranchCut",
    "ChartBoundary",
    "ChartMetric",
    "CoherentGeodesic",
    "ComplexStructure",
    "CostFunctionSpec",
    "CovarianceMatrix",
    "DimensionMismatch",
    "DiscretizedPath",
    "DisplacementPresent",
    "GaussianComplexityError",
    "GaussianState",
    "GaussianTransformation",
    "GroupPath",
    "GroupViolation",
    "KindMismatch",
    "LengthMismatch",
    "LieAlgebra",
    "LieAlgebraElement",
    "NoConvergence",
    "NonFinite",
    "NonFiniteFactor",
    "NotPure",
    "NumericDomainError",
    "PotentialTooLarge",
    "RelativeComplexStructure",
    "SchemaError",
    "SingleModeChart",
    "Singular",
    "SingularEndpoint",
    "SingularInput",
    "SingularN",
    "StabilizerBasis",
    "StateKind",
    "StationarityReport",
    "StepTooCoarse",
    "SymplecticForm",
    "ValidationError",
    "VectorPotential",
    "WeylFactor",
    "algebra_basis",
    "algebra_of_kind",
    "apply_transformation",
    "chart_path_length",
    "check_stabilizer_geodesic",
    "coherent_complexity",
    "coherent_geodesic",
    "coherent_geodesic_point",
    "complex_structure_from_covariance",
    "complexity_from_relative",
    "compose",
    "covariance_of",
    "evaluate_cost_function",
    "geodesic_point",
    "group_path_length",
    "hamiltonian_coefficients",
    "inner_product_identity",
    "log_spd_pencil",
    "log_special_orthogonal",
    "lorentz_geodesic",
    "matrix_exp",
    "matrix_exp_batch",
    "matrix_log_principal",
    "matrix_sqrt_principal",
    "metric_phiphi",
    "minimize_to_target",
    "nonreversible_cost",
    "nonreversible_cost_profile",
    "project_onto_complement",
    "reference_state",
    "relative_complex_structure",
    "single_mode_metric",
    "single_mode_squeezing",
    "sqrt_spd_pencil",
    "stabilizer_basis",
    "standard_symplectic_form",
    "state_complexity",
    "state_from_dict",
    "state_to_dict",
    "weyl_affine_reparametrization",
    "weyl_complexity",
]
