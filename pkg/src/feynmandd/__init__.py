"""Exact circuit amplitudes from multi-terminal decision diagrams of path-sum polynomials."""

from .circuit import GATE_SETS, Circuit, CircuitError, Gate, GateSet, parse_circuit, serialize_circuit
from .mtbdd import (
    CountVector,
    Mtbdd,
    amplitude,
    build_by_apply,
    build_level_by_level,
    count_solutions,
    diagram_stats,
    evaluate,
)
from .ordering import (
    LinearOrdering,
    VariableGraph,
    exhaustive_lrw,
    greedy_ordering,
    ordering_width,
    variable_graph,
)
from .sop import AmplitudeTask, SopPolynomial, evaluate_sop, extract_sop, substitute_externals

__all__ = [
    "GATE_SETS", "Circuit", "CircuitError", "Gate", "GateSet", "parse_circuit", "serialize_circuit",
    "CountVector", "Mtbdd", "amplitude", "build_by_apply", "build_level_by_level", "count_solutions",
    "diagram_stats", "evaluate", "LinearOrdering", "VariableGraph", "exhaustive_lrw", "greedy_ordering",
    "ordering_width", "variable_graph", "AmplitudeTask", "SopPolynomial", "evaluate_sop", "extract_sop",
    "substitute_externals",
]
