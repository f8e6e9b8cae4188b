"""Graphs, switch moves, and the classification of B(G)."""

from .enumerate import ClassTable, enumerate_classes, isomorphism_types
from .graph import (
    Graph,
    GraphFormatError,
    bits,
    format_graph,
    parse_graph,
    popcount,
    random_graph,
    read_graph,
    vertex_set,
)
from .iso import SizeLimitError, g_infinity, graphs_isomorphic, subset_order
from .switch import (
    AlgebraClass,
    CanonicalForm,
    CanonicalizationError,
    SwitchMove,
    algebra_label,
    apply_switch,
    canonical_graph,
    canonicalize,
    classify,
    equivalent,
    is_simple,
    replay,
)
from .words import (
    UNIT,
    GeneratorWord,
    PatternError,
    cocycle,
    commutes,
    is_self_adjoint,
    normalize_pairing,
    self_adjoint_phase,
    self_adjoint_word,
    word_adjoint,
    word_mul,
    word_power_sign,
)

__all__ = [
    "AlgebraClass",
    "CanonicalForm",
    "CanonicalizationError",
    "ClassTable",
    "GeneratorWord",
    "Graph",
    "GraphFormatError",
    "PatternError",
    "SizeLimitError",
    "SwitchMove",
    "UNIT",
    "algebra_label",
    "apply_switch",
    "bits",
    "canonical_graph",
    "canonicalize",
    "classify",
    "cocycle",
    "commutes",
    "enumerate_classes",
    "equivalent",
    "format_graph",
    "g_infinity",
    "graphs_isomorphic",
    "is_self_adjoint",
    "is_simple",
    "isomorphism_types",
    "normalize_pairing",
    "parse_graph",
    "popcount",
    "random_graph",
    "read_graph",
    "replay",
    "self_adjoint_phase",
    "self_adjoint_word",
    "subset_order",
    "vertex_set",
    "word_adjoint",
    "word_mul",
    "word_power_sign",
]
