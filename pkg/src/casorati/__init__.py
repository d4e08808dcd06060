"""Casorati curvature bounds for Riemannian maps and submersions.

Numeric toolkit for the normalized delta-Casorati inequalities: charts and
curvature tensors, fundamental-form coefficients, hyperplane-restricted
Casorati extrema, space-form models with complex/contact structures, a
theorem registry with verification on catalog geometries and synthetic data,
and a command-line front end.
"""

from .catalog import CatalogEntry, get, list_entries, load_geometry_file
from .curvature import ChartMetric, CurvatureTensor, christoffel, riemann_at, scalar_on_subspace
from .errors import (
    BranchUndetermined,
    CasoratiError,
    DegenerateInput,
    DimensionMismatch,
    GaussResidualExceeded,
    HypothesisViolated,
    IndefiniteRestriction,
    NearSingularMetric,
    NotASubmersion,
    OutOfDomain,
    ProvisoViolated,
    RankDrop,
    ValidationFailed,
)
from .extremum import ExtremumProblem, solve_closed_form, solve_oracle
from .framecore import (
    Frame,
    Hyperplane,
    InnerProduct,
    StructureOperator,
    gram_schmidt,
    structure_norm_squared,
)
from .measures import (
    ROLE_A,
    ROLE_B,
    ROLE_T,
    CasoratiReport,
    EqualityDiagnosis,
    FormCoefficients,
    casorati_C,
    delta_casorati,
    diagnose_equality,
    gauss_scal_gap,
    grid_extrema,
    make_equality_shape,
    proof_polynomial_P,
    proof_polynomial_Q,
)
from .rmaps import (
    MapAtPoint,
    ScalarCurvaturePair,
    SmoothMap,
    gauss_map_scalars,
    gauss_submersion_horizontal,
    gauss_submersion_vertical,
    map_at_point,
    oneill_A,
    oneill_T,
    second_fundamental_form,
)
from .spaceforms import (
    CONTACT_FAMILIES,
    FAMILY_NAMES,
    NamedFamily,
    SpaceFormSpec,
    family_constants,
    model_curvature,
    model_tensor,
    trace_two_scal,
    validate_against_chart,
)
from .verify import (
    REGISTRY,
    THEOREM_IDS,
    InequalityReport,
    InvarianceClass,
    TheoremInfo,
    XiPosition,
    classify_invariance,
    rhs_for,
    specialization_deviation,
    verify_geometry,
    verify_synthetic,
    xi_position,
)

__version__ = "0.1.0"

__all__ = [
    "BranchUndetermined",
    "CasoratiError",
    "CasoratiReport",
    "CatalogEntry",
    "ChartMetric",
    "CONTACT_FAMILIES",
    "CurvatureTensor",
    "DegenerateInput",
    "DimensionMismatch",
    "EqualityDiagnosis",
    "ExtremumProblem",
    "FAMILY_NAMES",
    "FormCoefficients",
    "Frame",
    "GaussResidualExceeded",
    "Hyperplane",
    "HypothesisViolated",
    "IndefiniteRestriction",
    "InequalityReport",
    "InnerProduct",
    "InvarianceClass",
    "MapAtPoint",
    "NamedFamily",
    "NearSingularMetric",
    "NotASubmersion",
    "OutOfDomain",
    "ProvisoViolated",
    "ROLE_A",
    "ROLE_B",
    "ROLE_T",
    "RankDrop",
    "REGISTRY",
    "ScalarCurvaturePair",
    "SmoothMap",
    "SpaceFormSpec",
    "StructureOperator",
    "THEOREM_IDS",
    "TheoremInfo",
    "ValidationFailed",
    "XiPosition",
    "casorati_C",
    "christoffel",
    "classify_invariance",
    "delta_casorati",
    "diagnose_equality",
    "family_constants",
    "gauss_map_scalars",
    "gauss_scal_gap",
    "gauss_submersion_horizontal",
    "gauss_submersion_vertical",
    "get",
    "gram_schmidt",
    "grid_extrema",
    "list_entries",
    "load_geometry_file",
    "make_equality_shape",
    "map_at_point",
    "model_curvature",
    "model_tensor",
    "oneill_A",
    "oneill_T",
    "proof_polynomial_P",
    "proof_polynomial_Q",
    "rhs_for",
    "riemann_at",
    "scalar_on_subspace",
    "second_fundamental_form",
    "solve_closed_form",
    "solve_oracle",
    "specialization_deviation",
    "structure_norm_squared",
    "trace_two_scal",
    "validate_against_chart",
    "verify_geometry",
    "verify_synthetic",
    "xi_position",
]
