"""Matrix models of B(G) and the numeric checks run on them."""

from .checks import (
    GRAM_RTOL,
    NotUnitaryError,
    PreconditionError,
    RelationReport,
    TensorGap,
    all_word_operators,
    center_dimension,
    commutant_dimension,
    full_report,
    min_generator_distance,
    span_dimension,
    state_vanishing_check,
    tensor_gap_bound,
    verify_relations,
    word_to_operator,
)
from .models import (
    DEFAULT_TOLERANCE,
    LAZY_DIM_CAP,
    RelationError,
    Representation,
    canonical_generators,
    rep_bipartite,
    rep_canonical,
    rep_pairs,
)
from .operators import (
    DIM_CAP,
    NORM_RTOL,
    PAULI_I,
    PAULI_X,
    PAULI_Z,
    CapExceededError,
    ConvergenceError,
    TensorOperator,
    as_operator,
    difference,
    operator_norm,
    spectral_norms,
)

__all__ = [
    "CapExceededError",
    "ConvergenceError",
    "DEFAULT_TOLERANCE",
    "DIM_CAP",
    "GRAM_RTOL",
    "LAZY_DIM_CAP",
    "NORM_RTOL",
    "NotUnitaryError",
    "PAULI_I",
    "PAULI_X",
    "PAULI_Z",
    "PreconditionError",
    "RelationError",
    "RelationReport",
    "Representation",
    "TensorGap",
    "TensorOperator",
    "all_word_operators",
    "as_operator",
    "canonical_generators",
    "center_dimension",
    "commutant_dimension",
    "difference",
    "full_report",
    "min_generator_distance",
    "operator_norm",
    "rep_bipartite",
    "rep_canonical",
    "rep_pairs",
    "span_dimension",
    "spectral_norms",
    "state_vanishing_check",
    "tensor_gap_bound",
    "verify_relations",
    "word_to_operator",
]
