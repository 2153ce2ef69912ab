"""Command-line front end.

Exit codes: 0 ok, 1 parse error, 2 capability error, 3 verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass

from .circuit import Circuit, CircuitError, parse_circuit, serialize_circuit
from .families import FAMILIES, FamilySpec
from .mtbdd import (
    CapacityError,
    build,
    count_solutions,
    counts_to_complex,
    diagram_stats,
    level_bounds,
    max_nodes_from_env,
)
from .oracle import brute_force_counts, statevector_amplitude
from .ordering import (
    TooLargeError,
    VariableGraph,
    exhaustive_lrw,
    greedy_ordering,
    natural_ordering,
    ordering_width,
    read_permutation,
    variable_graph,
)
from .sop import DegreeTooHighError, SopPolynomial, extract_sop, parse_polynomial, substitute_externals

VERIFY_TOL = 1e-9
SOP_CHECK_CAP = 20


class ParseError(Exception):
    pass


class CapabilityError(Exception):
    pass


@dataclass
class Loaded:
    kind: str  # circuit | polynomial | graph
    circuit: Circuit | None = None
    polynomial: SopPolynomial | None = None
    graph: VariableGraph | None = None


def parse_graph(text: str) -> VariableGraph:
    """``graph <n>`` followed by one ``i j`` edge per line."""
    lines = [ln.split("#", 1)[0].split() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or lines[0][0] != "graph" or len(lines[0]) != 2:
        raise ValueError("expected 'graph <n>' header")
    n = int(lines[0][1])
    edges = []
    for ln in lines[1:]:
        if len(ln) != 2:
            raise ValueError(f"bad edge line {' '.join(ln)!r}")
        i, j = int(ln[0]), int(ln[1])
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"edge ({i}, {j}) out of range")
        edges.append((i, j))
    return VariableGraph.from_edges(n, edges)


def load_input(path: str) -> Loaded:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(str(exc)) from None
    first = next(
        (ln.split("#", 1)[0].split() for ln in text.splitlines() if ln.split("#", 1)[0].strip()),
        None,
    )
    try:
        if first and first[0] == "gateset":
            return Loaded("circuit", circuit=parse_circuit(text))
        if first and first[0] == "graph":
            return Loaded("graph", graph=parse_graph(text))
        return Loaded("polynomial", polynomial=parse_polynomial(text))
    except (CircuitError, ValueError) as exc:
        raise ParseError(f"{path}: {exc}") from None


def _task_polynomial(loaded: Loaded, in_bits=None, out_bits=None) -> SopPolynomial:
    if loaded.kind == "circuit":
        p = extract_sop(loaded.circuit)
        try:
            return substitute_externals(p, in_bits, out_bits).polynomial
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    if loaded.kind == "polynomial":
        if in_bits or out_bits:
            raise CapabilityError("--in/--out apply to circuit files only")
        return loaded.polynomial
    raise CapabilityError("a graph file has no amplitude; use 'order'")


def resolve_order(p: SopPolynomial, flag: str):
    """Return ``(perm, LinearOrdering | None, method)`` for an ``--order`` value."""
    if flag.startswith("explicit:"):
        try:
            perm = read_permutation(flag.split(":", 1)[1])
        except (OSError, ValueError) as exc:
            raise ParseError(f"cannot read ordering file: {exc}") from None
        if sorted(perm) != list(range(p.n_vars)):
            raise ParseError(f"ordering file is not a permutation of 0..{p.n_vars - 1}")
        if p.cubic:
            return perm, None, "explicit"
        return perm, ordering_width(variable_graph(p), perm, "explicit"), "explicit"
    if flag not in ("natural", "greedy", "exhaustive"):
        raise ParseError(f"unknown --order value {flag!r}")
    if p.cubic:
        if flag != "natural":
            print("note: degree-3 polynomial has no variable graph; using natural order", file=sys.stderr)
        return tuple(range(p.n_vars)), None, "natural"
    g = variable_graph(p)
    lo = {"natural": natural_ordering, "greedy": greedy_ordering, "exhaustive": exhaustive_lrw}[flag](g)
    return lo.perm, lo, flag


def _ordering_json(perm, lo, method):
    return {
        "method": method,
        "perm": list(perm),
        "width": None if lo is None else lo.width,
        "profile": None if lo is None else list(lo.profile),
    }


def run_pipeline(p: SopPolynomial, order_flag: str, builder: str = "auto", timing: dict | None = None):
    timing = {} if timing is None else timing
    t0 = time.perf_counter()
    perm, lo, method = resolve_order(p, order_flag)
    t1 = time.perf_counter()
    if builder == "level" and p.cubic:
        raise CapabilityError("level-by-level builder requires a degree <= 2 polynomial")
    d = build(p, perm, builder, max_nodes_from_env())
    t2 = time.perf_counter()
    counts = count_solutions(d)
    t3 = time.perf_counter()
    timing.update(order_ms=1e3 * (t1 - t0), build_ms=1e3 * (t2 - t1), count_ms=1e3 * (t3 - t2))
    return perm, lo, method, d, counts


def simulate_report(loaded: Loaded, order_flag="natural", in_bits=None, out_bits=None, builder="auto") -> dict:
    timing = {}
    t0 = time.perf_counter()
    p = _task_polynomial(loaded, in_bits, out_bits)
    timing["extract_ms"] = 1e3 * (time.perf_counter() - t0)
    perm, lo, method, d, counts = run_pipeline(p, order_flag, builder, timing)
    value = counts_to_complex(counts.counts, p.modulus, p.half_log2_R)
    stats = diagram_stats(d)
    return {
        "amplitude": {"re": value.real, "im": value.imag},
        "counts": [str(c) for c in counts.counts],
        "modulus": p.modulus,
        "e": p.half_log2_R,
        "n_internal": p.n_vars,
        "dd": {
            "total_nodes": stats.total_nodes,
            "per_level": list(stats.per_level),
            "terminals": list(stats.terminals),
        },
        "ordering": _ordering_json(perm, lo, method),
        "timing": {k: round(v, 3) for k, v in sorted(timing.items())},
    }


def _num(x: float) -> str:
    s = repr(x + 0.0)
    return s[:-2] if s.endswith(".0") else s


def format_complex(z: complex) -> str:
    sign = "-" if z.imag < 0 else "+"
    return f"{_num(z.real)} {sign} {_num(abs(z.imag))}i"


def _emit(report: dict, as_json: bool, human):
    if as_json:
        print(json.dumps(report, sort_keys=True))
    else:
        human(report)


def cmd_simulate(args) -> int:
    loaded = load_input(args.file)
    report = simulate_report(loaded, args.order, args.in_bits, args.out_bits, args.builder)

    def human(rep):
        amp = complex(rep["amplitude"]["re"], rep["amplitude"]["im"])
        print(f"amplitude {format_complex(amp)}")
        print(f"modulus {rep['modulus']}  e {rep['e']}  internal variables {rep['n_internal']}")
        print("counts " + " ".join(rep["counts"]))
        o = rep["ordering"]
        print(f"ordering {o['method']} width {o['width']}")
        print(f"diagram {rep['dd']['total_nodes']} nodes, terminals {rep['dd']['terminals']}")

    _emit(report, args.json, human)
    return 0


def cmd_stats(args) -> int:
    loaded = load_input(args.file)
    p = _task_polynomial(loaded)
    perm, lo, method, d, counts = run_pipeline(p, args.order, args.builder)
    stats = diagram_stats(d)
    levels = []
    ok = True
    bounds = level_bounds(d, lo) if lo is not None else [None] * d.n_vars
    for i, (cnt, bound) in enumerate(zip(stats.per_level, bounds), start=1):
        holds = None if bound is None else cnt <= bound
        ok = ok and holds is not False
        levels.append({"level": i, "nodes": cnt, "rank": None if lo is None else lo.profile[i - 1],
                       "bound": bound, "holds": holds})
    total_bound = None if lo is None else p.n_vars * (p.modulus << lo.width)
    if total_bound is not None:
        ok = ok and stats.total_nodes <= total_bound
    report = {
        "total_nodes": stats.total_nodes,
        "total_bound": total_bound,
        "terminals": list(stats.terminals),
        "levels": levels,
        "ordering": _ordering_json(perm, lo, method),
        "within_bounds": ok,
    }

    def human(rep):
        print(f"ordering {method} width {rep['ordering']['width']}")
        print("level  nodes  rank  bound  ok")
        for lv in rep["levels"]:
            print(f"{lv['level']:5d}  {lv['nodes']:5d}  {lv['rank']!s:>4}  {lv['bound']!s:>5}  {lv['holds']}")
        print(f"total {rep['total_nodes']} (bound {rep['total_bound']}), terminals {rep['terminals']}")
        print("all levels within bound" if rep["within_bounds"] else "BOUND VIOLATED")

    _emit(report, args.json, human)
    return 0


def cmd_order(args) -> int:
    loaded = load_input(args.file)
    if loaded.kind == "graph":
        g = loaded.graph
    else:
        p = _task_polynomial(loaded)
        if p.cubic:
            raise CapabilityError("degree-3 polynomial has no variable graph")
        g = variable_graph(p)
    if args.method == "exhaustive":
        lo = exhaustive_lrw(g, cap=args.cap)
    elif args.method == "greedy":
        lo = greedy_ordering(g)
    else:
        lo = natural_ordering(g)
    if args.save:
        with open(args.save, "w", encoding="utf-8") as fh:
            fh.write(" ".join(map(str, lo.perm)) + "\n")
    report = _ordering_json(lo.perm, lo, lo.method)

    def human(rep):
        print(f"method {rep['method']}")
        print(f"width {rep['width']}")
        print("perm " + " ".join(map(str, rep["perm"])))
        print("profile " + " ".join(map(str, rep["profile"])))

    _emit(report, args.json, human)
    return 0


def cmd_gen(args) -> int:
    spec = FamilySpec(args.family, args.n, args.k, args.seed, args.gateset, args.m)
    try:
        c = spec.generate()
    except ValueError as exc:
        raise CapabilityError(str(exc)) from None
    text = serialize_circuit(c)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    loaded = load_input(args.file)
    if loaded.kind != "circuit":
        raise CapabilityError("verify needs a circuit file")
    report = simulate_report(loaded, args.order, args.in_bits, args.out_bits, args.builder)
    amp = complex(report["amplitude"]["re"], report["amplitude"]["im"])
    ref = statevector_amplitude(loaded.circuit, _bits(args.in_bits), _bits(args.out_bits))
    delta = abs(amp - ref)
    result = {
        "amplitude": report["amplitude"],
        "oracle": {"re": ref.real, "im": ref.imag},
        "delta": delta,
        "tolerance": VERIFY_TOL,
        "counts_checked": False,
        "counts_match": None,
    }
    ok = delta <= VERIFY_TOL
    if report["n_internal"] <= SOP_CHECK_CAP:
        p = _task_polynomial(loaded, args.in_bits, args.out_bits)
        brute = [str(c) for c in brute_force_counts(p, threads=args.threads).counts]
        result["counts_checked"] = True
        result["counts_match"] = brute == report["counts"]
        ok = ok and result["counts_match"]
    result["ok"] = ok

    def human(rep):
        print(f"feynmandd {format_complex(amp)}")
        print(f"oracle    {format_complex(ref)}")
        print(f"|delta| {delta:.3e} (tol {VERIFY_TOL:g})")
        if rep["counts_checked"]:
            print(f"counts vs enumeration: {'match' if rep['counts_match'] else 'MISMATCH'}")
        print("PASS" if ok else "FAIL")

    _emit(result, args.json, human)
    return 0 if ok else 3


def _bits(s):
    return None if s is None else [int(ch) for ch in s]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="feynmandd", description="Decision-diagram path-sum circuit simulator")
    ap.add_argument("--threads", type=int, default=1, help="worker threads for parallel internals")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_order(p, default="natural"):
        p.add_argument("--order", default=default,
                       help="natural | greedy | exhaustive | explicit:<path>")
        p.add_argument("--builder", default="auto", choices=["auto", "level", "apply"])

    def add_bits(p):
        p.add_argument("--in", dest="in_bits", default=None, help="input bitstring, qubit 0 first")
        p.add_argument("--out", dest="out_bits", default=None, help="output bitstring, qubit 0 first")

    p = sub.add_parser("simulate", help="compute <out|C|in>")
    p.add_argument("file")
    add_order(p)
    add_bits(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("stats", help="diagram size per level against the rank bound")
    p.add_argument("file")
    add_order(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("order", help="find a variable ordering and its width")
    p.add_argument("file")
    p.add_argument("--method", default="greedy", choices=["natural", "greedy", "exhaustive"])
    p.add_argument("--cap", type=int, default=12, help="vertex cap for exhaustive search")
    p.add_argument("--save", help="write the permutation to this path")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("gen", help="generate a benchmark circuit")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--gateset", default="T", choices=["T", "G", "Z"])
    p.add_argument("--m", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="compare against the statevector oracle")
    p.add_argument("file")
    add_order(p)
    add_bits(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (CapabilityError, DegreeTooHighError, TooLargeError, CapacityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
