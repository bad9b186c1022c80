"""Exact-arithmetic calculus on weighted dual graphs of surface-singularity
resolutions: contraction and Du Val recognition, codiscrepancy solving,
fundamental cycles, numerical pullbacks, weighted-projective pairings, and a
golden catalog of verified configurations."""

from .contract import (
    ADEType,
    ContractionOutcome,
    CurveFiber,
    DuValPoint,
    NotContractible,
    RationalPoint,
    SmoothPoint,
    blow_down_once,
    classify,
    classify_components,
    contract_minus_ones,
    recognize_duval,
)
from .discrepancy import (
    CodiscrepancyResult,
    chain_codiscrepancy_check,
    codiscrepancies,
    denominator_filter,
    fork_codiscrepancy_check,
    fundamental_cycle,
    implied_tail_start,
    mumford_pullback,
    numerically_trivial,
    pinned_codiscrepancies,
    pinned_consistent,
)
from .graph import (
    Cycle,
    DualGraph,
    Vertex,
    VertexKind,
    ade_graph,
    arithmetic_genus,
    cycle_dot,
    parse,
    serialize,
)
from .linalg import (
    Definiteness,
    Rational,
    SymMatrix,
    definiteness,
    format_rational,
    rational,
    solve,
)
from .catalog import (
    CatalogEntry,
    CheckRecord,
    load_catalog,
    verify_catalog,
    verify_entry,
)
from .wps import (
    CICurve,
    WeightedProjectiveSpace,
    cdisc_from_blowup,
    pair,
    subadjunction_genus,
    wblowup_discrepancy,
)

__version__ = "0.1.0"

__all__ = [
    "ADEType",
    "CatalogEntry",
    "CheckRecord",
    "CICurve",
    "CodiscrepancyResult",
    "ContractionOutcome",
    "CurveFiber",
    "Cycle",
    "Definiteness",
    "DualGraph",
    "DuValPoint",
    "NotContractible",
    "Rational",
    "RationalPoint",
    "SmoothPoint",
    "SymMatrix",
    "Vertex",
    "VertexKind",
    "WeightedProjectiveSpace",
    "ade_graph",
    "arithmetic_genus",
    "blow_down_once",
    "cdisc_from_blowup",
    "chain_codiscrepancy_check",
    "classify",
    "classify_components",
    "codiscrepancies",
    "contract_minus_ones",
    "cycle_dot",
    "definiteness",
    "denominator_filter",
    "fork_codiscrepancy_check",
    "format_rational",
    "fundamental_cycle",
    "implied_tail_start",
    "load_catalog",
    "mumford_pullback",
    "numerically_trivial",
    "pair",
    "parse",
    "pinned_codiscrepancies",
    "pinned_consistent",
    "rational",
    "recognize_duval",
    "serialize",
    "solve",
    "subadjunction_genus",
    "verify_catalog",
    "verify_entry",
    "wblowup_discrepancy",
]
