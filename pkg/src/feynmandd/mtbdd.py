"""Multi-terminal decision diagrams over Z_r and FeynmanDD amplitude evaluation.

Node references are plain ints: ``ref >= 0`` indexes the internal-node arena,
``ref < 0`` is the terminal labelled ``-ref - 1``. Levels are 1-based positions
in the variable order; terminals sit at level ``n + 1``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .gf2 import RrefBasis, advance_boundary, mask_from, pivot_mask
from .ordering import LinearOrdering, check_permutation, ordering_width, variable_graph
from .sop import AmplitudeTask, DegreeTooHighError, SopPolynomial

DEFAULT_MAX_NODES = 1 << 28


class CapacityError(RuntimeError):
    """Diagram would exceed the configured node budget."""


def max_nodes_from_env() -> int:
    raw = os.environ.get("FEYNMANDD_MAX_NODES")
    return int(raw) if raw else DEFAULT_MAX_NODES


def terminal(gamma: int) -> int:
    return -gamma - 1


def terminal_value(ref: int) -> int:
    return -ref - 1


def is_terminal(ref: int) -> bool:
    return ref < 0


class NodeKey(NamedTuple):
    """Unique-table key: constant plus coordinates of the linear part in the level basis."""

    level: int
    gamma: int
    coeffs: int  # bit j is c_{j+1}


class NodeState(NamedTuple):
    """Pending linear coefficients ``g`` (bit t = alpha at position t) and constant."""

    g: int
    gamma: int


@dataclass(frozen=True)
class Mtbdd:
    n_vars: int
    modulus: int
    order: tuple[int, ...]
    level: tuple[int, ...]
    lo: tuple[int, ...]
    hi: tuple[int, ...]
    root: int

    def __len__(self):
        return len(self.level)

    def node_level(self, ref: int) -> int:
        return self.n_vars + 1 if ref < 0 else self.level[ref]

    @property
    def terminals(self) -> tuple[int, ...]:
        labels = {terminal_value(c) for c in (*self.lo, *self.hi) if c < 0}
        if self.root < 0:
            labels.add(terminal_value(self.root))
        return tuple(sorted(labels))


@dataclass(frozen=True)
class CountVector:
    counts: tuple[int, ...]
    n_internal: int

    def __getitem__(self, j: int) -> int:
        return self.counts[j]

    def total(self) -> int:
        return sum(self.counts)


@dataclass(frozen=True)
class DiagramStats:
    per_level: tuple[int, ...]
    total_nodes: int
    terminals: tuple[int, ...]


class Amplitude(NamedTuple):
    value: complex
    counts: CountVector
    e: int


def _resolve_perm(n: int, ordering) -> tuple[int, ...]:
    if ordering is None:
        return tuple(range(n))
    if isinstance(ordering, LinearOrdering):
        return check_permutation(ordering.perm, n)
    return check_permutation(ordering, n)


def _compact(n, r, order, level, lo, hi, root) -> Mtbdd:
    """Copy the nodes reachable from ``root`` into a fresh arena, in creation order."""
    if root < 0:
        return Mtbdd(n, r, order, (), (), (), root)
    seen = {root}
    stack = [root]
    while stack:
        u = stack.pop()
        for c in (lo[u], hi[u]):
            if c >= 0 and c not in seen:
                seen.add(c)
                stack.append(c)
    keep = sorted(seen)
    remap = {u: i for i, u in enumerate(keep)}

    def m(c):
        return c if c < 0 else remap[c]

    return Mtbdd(
        n, r, order,
        tuple(level[u] for u in keep),
        tuple(m(lo[u]) for u in keep),
        tuple(m(hi[u]) for u in keep),
        remap[root],
    )


def build_level_by_level(
    p: SopPolynomial, ordering=None, max_nodes: int | None = None
) -> Mtbdd:
    """Top-down construction keyed by GF(2) boundary coordinates.

    Works for any degree-2 polynomial whose quadratic coefficient is ``r/2``.
    Every node at level ``s`` stores the linear coefficients pushed onto the
    unassigned variables by its assigned prefix; these lie in the row space of
    the level's boundary matrix, so the node is identified by the constant and
    the pivot bits of those coefficients.
    """
    if p.cubic:
        raise DegreeTooHighError("level-by-level construction needs a degree <= 2 polynomial")
    if max_nodes is None:
        max_nodes = max_nodes_from_env()
    n, r = p.n_vars, p.modulus
    half = r // 2
    perm = _resolve_perm(n, ordering)
    if p.is_constant():
        return Mtbdd(n, r, perm, (), (), (), terminal(p.constant))

    pos = [0] * n
    for t, v in enumerate(perm):
        pos[v] = t
    # position-space adjacency and linear coefficients
    adj = [0] * n
    for i, j in p.quadratic:
        a, b = pos[i], pos[j]
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    lin = [p.linear[v] for v in perm]
    upper = [adj[t] & ~mask_from(0, t + 1) for t in range(n)]

    # bases[s] spans A[[0..s-1], cols >= s]; built incrementally
    bases: list[RrefBasis] = [RrefBasis.empty(n)]
    for s in range(1, n):
        bases.append(advance_boundary(bases[-1], s - 1, upper[s - 1]))

    def settle(g: int, gamma: int, s: int) -> int:
        # first level >= s whose variable the subfunction depends on
        while s < n and not upper[s] and (half * ((g >> s) & 1) + lin[s]) % r == 0:
            s += 1
        return s

    level: list[int] = []
    lo: list[int] = []
    hi: list[int] = []
    states: list[NodeState] = []
    tables: list[dict] = [dict() for _ in range(n)]
    queues: list[list[int]] = [[] for _ in range(n)]

    def lookup_or_insert(g: int, gamma: int, s: int) -> int:
        if s == n:
            return terminal(gamma)
        key = NodeKey(s + 1, gamma, pivot_mask(bases[s], g))
        table = tables[s]
        ref = table.get(key)
        if ref is None:
            ref = len(level)
            if ref >= max_nodes:
                raise CapacityError(f"diagram exceeds {max_nodes} nodes")
            table[key] = ref
            level.append(s + 1)
            lo.append(0)
            hi.append(0)
            states.append(NodeState(g, gamma))
            queues[s].append(ref)
        return ref

    root = lookup_or_insert(0, p.constant, settle(0, p.constant, 0))
    for i in range(n):
        row, b_i = upper[i], lin[i]
        for u in queues[i]:
            g, gamma = states[u]
            lo[u] = lookup_or_insert(g, gamma, settle(g, gamma, i + 1))
            g1 = g ^ row
            gamma1 = (gamma + half * ((g >> i) & 1) + b_i) % r
            hi[u] = lookup_or_insert(g1, gamma1, settle(g1, gamma1, i + 1))
        queues[i] = []
    return Mtbdd(n, r, perm, tuple(level), tuple(lo), tuple(hi), root)


class _ApplyArena:
    """Shared unique table for apply-based construction."""

    def __init__(self, n: int, r: int, max_nodes: int):
        self.n, self.r, self.max_nodes = n, r, max_nodes
        self.level: list[int] = []
        self.lo: list[int] = []
        self.hi: list[int] = []
        self.unique: dict[tuple[int, int, int], int] = {}

    def lev(self, ref: int) -> int:
        return self.n + 1 if ref < 0 else self.level[ref]

    def mk(self, lvl: int, lo: int, hi: int) -> int:
        if lo == hi:
            return lo
        key = (lvl, lo, hi)
        ref = self.unique.get(key)
        if ref is None:
            ref = len(self.level)
            if ref >= self.max_nodes:
                raise CapacityError(f"diagram exceeds {self.max_nodes} nodes")
            self.unique[key] = ref
            self.level.append(lvl)
            self.lo.append(lo)
            self.hi.append(hi)
        return ref

    def monomial(self, levels: Sequence[int], coeff: int) -> int:
        """Diagram of ``coeff * prod x`` over the given (distinct) levels."""
        coeff %= self.r
        if coeff == 0:
            return terminal(0)
        ref = terminal(coeff)
        for lvl in sorted(levels, reverse=True):
            ref = self.mk(lvl, terminal(0), ref)
        return ref

    def shift(self, u: int, c: int, memo: dict) -> int:
        """Add the constant ``c`` to every terminal below ``u``."""
        if c == 0:
            return u
        if u < 0:
            return terminal((terminal_value(u) + c) % self.r)
        got = memo.get(u)
        if got is None:
            got = self.mk(self.level[u], self.shift(self.lo[u], c, memo), self.shift(self.hi[u], c, memo))
            memo[u] = got
        return got

    def add(self, u: int, v: int) -> int:
        """Pointwise sum mod r."""
        memo: dict[tuple[int, int], int] = {}
        shift_memo: dict[int, dict] = {}
        level, lo, hi, r, n = self.level, self.lo, self.hi, self.r, self.n

        def go(u: int, v: int) -> int:
            if u < 0 and v < 0:
                return terminal((terminal_value(u) + terminal_value(v)) % r)
            if u < 0:
                u, v = v, u
            if v < 0:
                c = terminal_value(v)
                return self.shift(u, c, shift_memo.setdefault(c, {}))
            if u > v:
                u, v = v, u
            key = (u, v)
            got = memo.get(key)
            if got is not None:
                return got
            lu, lv = level[u], level[v]
            if lu == lv:
                got = self.mk(lu, go(lo[u], lo[v]), go(hi[u], hi[v]))
            elif lu < lv:
                got = self.mk(lu, go(lo[u], v), go(hi[u], v))
            else:
                got = self.mk(lv, go(u, lo[v]), go(u, hi[v]))
            memo[key] = got
            return got

        return go(u, v)


def build_by_apply(p: SopPolynomial, ordering=None, max_nodes: int | None = None) -> Mtbdd:
    """Sum of per-monomial diagrams folded pairwise with a memoized add-mod-r.

    Monomials are sorted by the position of their first variable and combined
    as a balanced binary tree.
    """
    if max_nodes is None:
        max_nodes = max_nodes_from_env()
    n, r = p.n_vars, p.modulus
    perm = _resolve_perm(n, ordering)
    pos = [0] * n
    for t, v in enumerate(perm):
        pos[v] = t
    arena = _ApplyArena(n, r, max_nodes)

    terms: list[tuple[tuple[int, ...], int]] = []
    for v, b in enumerate(p.linear):
        if b:
            terms.append(((pos[v] + 1,), b))
    for mono in (*p.quadratic, *p.cubic):
        terms.append((tuple(sorted(pos[v] + 1 for v in mono)), p.half))
    terms.sort()

    parts = [arena.monomial(lv, c) for lv, c in terms]
    if not parts:
        parts = [terminal(0)]
    while len(parts) > 1:
        nxt = [arena.add(parts[k], parts[k + 1]) for k in range(0, len(parts) - 1, 2)]
        if len(parts) % 2:
            nxt.append(parts[-1])
        parts = nxt
    root = arena.shift(parts[0], p.constant, {})
    return _compact(n, r, perm, arena.level, arena.lo, arena.hi, root)


def evaluate(d: Mtbdd, x: Sequence[int]) -> int:
    if len(x) != d.n_vars:
        raise ValueError(f"assignment has length {len(x)}, expected {d.n_vars}")
    ref = d.root
    while ref >= 0:
        ref = d.hi[ref] if x[d.order[d.level[ref] - 1]] else d.lo[ref]
    return terminal_value(ref)


def count_solutions(d: Mtbdd) -> CountVector:
    """``N_j = #{x : f(x) = j}`` in one bottom-up pass; a long edge over ``s`` levels weighs ``2^s``."""
    n, r = d.n_vars, d.modulus

    def unit(gamma):
        v = [0] * r
        v[gamma] = 1
        return v

    if d.root < 0:
        counts = unit(terminal_value(d.root))
        return CountVector(tuple(c << n for c in counts), n)

    memo: dict[int, list[int]] = {}
    order = sorted(range(len(d)), key=lambda u: -d.level[u])
    for u in order:
        lvl = d.level[u]
        acc = [0] * r
        for c in (d.lo[u], d.hi[u]):
            if c < 0:
                sub, skip = unit(terminal_value(c)), n - lvl
            else:
                sub, skip = memo[c], d.level[c] - lvl - 1
            for j in range(r):
                acc[j] += sub[j] << skip
        memo[u] = acc
    skip = d.level[d.root] - 1
    return CountVector(tuple(c << skip for c in memo[d.root]), n)


def diagram_stats(d: Mtbdd) -> DiagramStats:
    per_level = [0] * d.n_vars
    for lvl in d.level:
        per_level[lvl - 1] += 1
    return DiagramStats(tuple(per_level), len(d), d.terminals)


def level_bounds(d: Mtbdd, ordering: LinearOrdering) -> list[int]:
    """Per-level node bound ``r * 2^{r_i}`` (``2^{r_i+3}`` for r = 8)."""
    return [d.modulus << ordering.profile[i] for i in range(d.n_vars)]


def counts_to_complex(counts: Sequence[int], modulus: int, e: int) -> complex:
    """``sum_j N_j omega_r^j / 2^{e/2}``.

    ``omega^{j + r/2} = -omega^j`` is applied on exact integers first, so the
    float sum only sees the differences.
    """
    half = modulus // 2
    diffs = [counts[j] - counts[j + half] for j in range(half)]
    re_parts, im_parts = [], []
    for j, dj in enumerate(diffs):
        if not dj:
            continue
        angle = 2 * math.pi * j / modulus
        scaled = math.ldexp(float(dj), -(e // 2))
        re_parts.append(scaled * _cos_exact(j, modulus, angle))
        im_parts.append(scaled * _sin_exact(j, modulus, angle))
    value = complex(math.fsum(re_parts), math.fsum(im_parts))
    if e % 2:
        value *= math.sqrt(0.5)
    return value


def _cos_exact(j: int, r: int, angle: float) -> float:
    if 4 * j == r:
        return 0.0
    if j == 0:
        return 1.0
    return math.cos(angle)


def _sin_exact(j: int, r: int, angle: float) -> float:
    if j == 0:
        return 0.0
    if 4 * j == r:
        return 1.0
    return math.sin(angle)


def build(p: SopPolynomial, ordering=None, builder: str = "auto", max_nodes: int | None = None) -> Mtbdd:
    if builder == "auto":
        builder = "apply" if p.cubic else "level"
    if builder == "level":
        return build_level_by_level(p, ordering, max_nodes)
    if builder == "apply":
        return build_by_apply(p, ordering, max_nodes)
    raise ValueError(f"unknown builder {builder!r}")


def amplitude(t: AmplitudeTask, ordering=None, builder: str = "auto") -> Amplitude:
    p = t.polynomial
    d = build(p, ordering, builder)
    counts = count_solutions(d)
    return Amplitude(counts_to_complex(counts.counts, p.modulus, p.half_log2_R), counts, p.half_log2_R)


def default_ordering(p: SopPolynomial) -> LinearOrdering | None:
    """Natural order with its profile when a variable graph exists."""
    if p.cubic:
        return None
    return ordering_width(variable_graph(p), range(p.n_vars), "natural")


def canonical_dump(d: Mtbdd) -> str:
    """Deterministic text form; equal for structurally identical diagrams.

    Nodes are numbered by level, ties broken by depth-first discovery from the
    root (zero edge first). One line per node: ``id level zero one``; a
    terminal child is written ``t<gamma>``.
    """
    head = [f"order {' '.join(map(str, d.order))}", f"modulus {d.modulus}"]
    if d.root < 0:
        return "\n".join(head + [f"root t{terminal_value(d.root)}"]) + "\n"
    discovery: dict[int, int] = {}
    stack = [d.root]
    while stack:
        u = stack.pop()
        if u in discovery:
            continue
        discovery[u] = len(discovery)
        for c in (d.hi[u], d.lo[u]):
            if c >= 0 and c not in discovery:
                stack.append(c)
    ranked = sorted(discovery, key=lambda u: (d.level[u], discovery[u]))
    ids = {u: k for k, u in enumerate(ranked)}

    def name(c):
        return f"t{terminal_value(c)}" if c < 0 else str(ids[c])

    lines = head + [f"root {name(d.root)}"]
    lines += [f"{ids[u]} {d.level[u]} {name(d.lo[u])} {name(d.hi[u])}" for u in ranked]
    return "\n".join(lines) + "\n"
