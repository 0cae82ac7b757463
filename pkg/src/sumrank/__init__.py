"""Exact toolkit for linear codes in the sum-rank metric.

Everything is built over one ambient finite field GF(p^m) with a list of
blocks, each carrying a subfield GF(p^d) with d | m and an ordered basis.
Vectors get blockwise matrix representations over the subfields; ranks of
those matrices add up to the sum-rank weight.  On top sit the support
lattice, support spaces, restriction and shortening, generalized weight
hierarchies with their duality and bounds, MSRD ranks, effective lengths,
and the skew-polynomial side of the same geometry.

All arithmetic is exact; every enumeration is deterministic and guarded
by an explicit budget.  The linear algebra kernels run compiled when the
extension built, with a bit-identical pure Python fallback (see
``sumrank.kernels.BACKEND``; set SUMRANK_BACKEND=python to force the
fallback).
"""

from .errors import (
    BadDimension,
    BadIndex,
    BudgetExceeded,
    DivisionByZero,
    IdentityViolated,
    NotAPBasis,
    NotASubspace,
    NotNested,
    NotPIndependent,
    SchemaError,
    SingularMatrix,
    StructureMismatch,
    SumRankError,
    TowerMismatch,
    ZeroBeta,
)
from .field import FieldTower, FiniteField
from .kernels import BACKEND
from .lattice import (
    DEFAULT_BUDGET,
    SupportList,
    Subspace,
    count_supports,
    enumerate_supports,
    gaussian_binomial,
)
from .metric import (
    BlockVector,
    NotASupportSpace,
    in_support_space,
    subspace_support,
    sum_rank_distance,
    sum_rank_weight,
    support_space_generators,
    support_space_of,
    vector_support,
    weight_via_hamming_minimum,
)
from .codes import DimensionIdentities, LinearCode, dimension_identities, pairing_matrix
from .weights import (
    BoundCheck,
    EffectiveLength,
    WeiDuality,
    WeightReport,
    check_bounds,
    effective_length,
    full_K_profile,
    generalized_weight,
    is_msrd,
    K_profile,
    min_distance,
    msrd_rank,
    msrd_support_characterization,
    refined_partition_weight,
    wei_duality_check,
    weight_hierarchy,
    weight_report,
)
from .skew import (
    ConjugacyDecomposition,
    FunctionTable,
    PClosedSet,
    SkewPoly,
    centralizer_degree,
    conjugate,
    interpolate,
    minimal_skew_poly,
    p_basis_decompose,
    phi_B,
    phi_B_inverse,
    skew_evaluation_code,
    skew_support,
    skew_support_space_check,
    skew_weight,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BadDimension",
    "BadIndex",
    "BlockVector",
    "BoundCheck",
    "BudgetExceeded",
    "ConjugacyDecomposition",
    "DEFAULT_BUDGET",
    "DimensionIdentities",
    "DivisionByZero",
    "EffectiveLength",
    "FieldTower",
    "FiniteField",
    "FunctionTable",
    "IdentityViolated",
    "K_profile",
    "LinearCode",
    "NotAPBasis",
    "NotASubspace",
    "NotASupportSpace",
    "NotNested",
    "NotPIndependent",
    "PClosedSet",
    "SchemaError",
    "SingularMatrix",
    "SkewPoly",
    "StructureMismatch",
    "Subspace",
    "SumRankError",
    "SupportList",
    "TowerMismatch",
    "WeiDuality",
    "WeightReport",
    "ZeroBeta",
    "centralizer_degree",
    "check_bounds",
    "conjugate",
    "count_supports",
    "dimension_identities",
    "effective_length",
    "enumerate_supports",
    "full_K_profile",
    "gaussian_binomial",
    "generalized_weight",
    "in_support_space",
    "interpolate",
    "is_msrd",
    "min_distance",
    "minimal_skew_poly",
    "msrd_rank",
    "msrd_support_characterization",
    "p_basis_decompose",
    "pairing_matrix",
    "phi_B",
    "phi_B_inverse",
    "refined_partition_weight",
    "skew_evaluation_code",
    "skew_support",
    "skew_support_space_check",
    "skew_weight",
    "subspace_support",
    "sum_rank_distance",
    "sum_rank_weight",
    "support_space_generators",
    "support_space_of",
    "vector_support",
    "wei_duality_check",
    "weight_hierarchy",
    "weight_report",
    "weight_via_hamming_minimum",
]
