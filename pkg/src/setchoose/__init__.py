"""setchoose: exact set-list-coloring engine and gadget verification harness."""

from .model import (
    MAX_COLOR,
    ColorSet,
    Gadget,
    Graph,
    ListAssignment,
    SetColoring,
    StructuralError,
    half_list_valid,
    is_proper,
    respects_lists,
)
from .solver import (
    DomainConstraint,
    SolveResult,
    SolverTimeout,
    all_colorings,
    count_colorings,
    find_coloring,
    forced_value_check,
)
from .choosability import (
    CapacityError,
    ChoosabilityStats,
    ListConstraint,
    RelaxedVerdict,
    canonical_form,
    check_relaxed_at,
    enumerate_half_lists,
    sample_half_lists,
    verify_relaxed,
    verify_universal_colorability,
)
from .gadgets import (
    CATALOG,
    FinalConstruction,
    build,
    build_amplified,
    build_final,
    build_g1,
    build_g2,
    build_g3,
    build_g4,
    build_g5,
    build_pentagon,
)
from .harness import ClaimReport, emit_report, exit_code, run_all

__version__ = "0.1.0"

__all__ = [
    "MAX_COLOR",
    "ColorSet",
    "Gadget",
    "Graph",
    "ListAssignment",
    "SetColoring",
    "StructuralError",
    "half_list_valid",
    "is_proper",
    "respects_lists",
    "DomainConstraint",
    "SolveResult",
    "SolverTimeout",
    "all_colorings",
    "count_colorings",
    "find_coloring",
    "forced_value_check",
    "CapacityError",
    "ChoosabilityStats",
    "ListConstraint",
    "RelaxedVerdict",
    "canonical_form",
    "check_relaxed_at",
    "enumerate_half_lists",
    "sample_half_lists",
    "verify_relaxed",
    "verify_universal_colorability",
    "CATALOG",
    "FinalConstruction",
    "build",
    "build_amplified",
    "build_final",
    "build_g1",
    "build_g2",
    "build_g3",
    "build_g4",
    "build_g5",
    "build_pentagon",
    "ClaimReport",
    "emit_report",
    "exit_code",
    "run_all",
    "__version__",
]
