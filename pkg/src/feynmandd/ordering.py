"""Variable graphs, cut-rank profiles and linear-ordering search."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .gf2 import F2Matrix, RrefBasis, advance_boundary, bits_of, rref_rows
from .sop import DegreeTooHighError, SopPolynomial

EXHAUSTIVE_CAP = 12
_DP_LIMIT = 12


class TooLargeError(ValueError):
    """Input exceeds the size cap of an exponential-time routine."""


@dataclass(frozen=True)
class VariableGraph:
    n: int
    adj: F2Matrix

    def __post_init__(self):
        if self.adj.rows != self.n or self.adj.cols != self.n:
            raise ValueError("adjacency matrix must be n x n")
        for i, row in enumerate(self.adj.data):
            if (row >> i) & 1:
                raise ValueError("adjacency diagonal must be zero")
            for j in bits_of(row):
                if not (self.adj.data[j] >> i) & 1:
                    raise ValueError("adjacency must be symmetric")

    @classmethod
    def from_edges(cls, n: int, edges) -> VariableGraph:
        rows = [0] * n
        for i, j in edges:
            if i == j:
                raise ValueError("self loops are not allowed")
            rows[i] ^= 1 << j
            rows[j] ^= 1 << i
        return cls(n, F2Matrix(n, n, tuple(rows)))

    @property
    def rows(self) -> tuple[int, ...]:
        return self.adj.data

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in bits_of(self.rows[i]) if i < j]

    def has_edge(self, i: int, j: int) -> bool:
        return bool((self.rows[i] >> j) & 1)

    def cut_rank(self, subset) -> int:
        """``rank(A[X, V \\ X])``."""
        x = 0
        for v in subset:
            x |= 1 << v
        rest = ((1 << self.n) - 1) & ~x
        return rref_rows(self.rows[v] & rest for v in bits_of(x)).rank

    def relabel(self, perm: Sequence[int]) -> VariableGraph:
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        return VariableGraph.from_edges(self.n, [(perm[i], perm[j]) for i, j in self.edges()])


@dataclass(frozen=True)
class LinearOrdering:
    """Permutation with its cut-rank profile.

    ``profile[t]`` is the cut-rank of the first ``t`` vertices for
    ``t = 0..n``; both ends are 0. The decision diagram level ``i`` (1-based)
    has ``r_i = profile[i - 1]``.
    """

    perm: tuple[int, ...]
    width: int
    profile: tuple[int, ...]
    method: str = "explicit"


def variable_graph(p: SopPolynomial) -> VariableGraph:
    if p.cubic:
        raise DegreeTooHighError("variable graph is defined for degree <= 2 polynomials only")
    return VariableGraph.from_edges(p.n_vars, p.quadratic)


def check_permutation(perm: Sequence[int], n: int) -> tuple[int, ...]:
    perm = tuple(int(v) for v in perm)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"not a permutation of 0..{n - 1}: {perm}")
    return perm


def cut_profile(rows: Sequence[int], perm: Sequence[int]) -> list[RrefBasis]:
    """RREF bases of every prefix boundary matrix, columns in vertex ids.

    Entry ``t`` spans ``A[{perm[:t]}, rest]``.
    """
    n = len(rows)
    remaining = (1 << n) - 1
    basis = RrefBasis.empty(max(n, 1))
    out = [basis]
    for v in perm:
        remaining &= ~(1 << v)
        basis = advance_boundary(basis, v, rows[v] & remaining)
        out.append(basis)
    return out


def ordering_width(g: VariableGraph, perm: Sequence[int], method: str = "explicit") -> LinearOrdering:
    perm = check_permutation(perm, g.n)
    profile = tuple(b.rank for b in cut_profile(g.rows, perm))
    return LinearOrdering(perm, max(profile, default=0), profile, method)


def natural_ordering(g: VariableGraph) -> LinearOrdering:
    return ordering_width(g, range(g.n), "natural")


def _subset_ranks(g: VariableGraph) -> list[int]:
    """Cut-rank of every vertex subset, indexed by bitmask."""
    n = g.n
    full = (1 << n) - 1
    ranks = [0] * (1 << n)
    for s in range(1, 1 << n):
        rest = full & ~s
        ranks[s] = rref_rows(g.rows[v] & rest for v in bits_of(s)).rank
    return ranks


def _exhaustive_dp(g: VariableGraph) -> tuple[int, ...]:
    n = g.n
    full = (1 << n) - 1
    ranks = _subset_ranks(g)
    # best[s]: least achievable max cut-rank over orderings that start with the set s
    best = [0] * (1 << n)
    for s in range(1, 1 << n):
        m = min(best[s & ~(1 << v)] for v in bits_of(s))
        best[s] = max(m, ranks[s])
    width = best[full]
    # ok[s]: prefix set s can be completed keeping every cut-rank <= width
    ok = [False] * (1 << n)
    ok[full] = True
    for s in range(full - 1, -1, -1):
        if ranks[s] <= width:
            ok[s] = any(ok[s | (1 << v)] for v in bits_of(full & ~s))
    perm, s = [], 0
    while s != full:
        v = next(v for v in bits_of(full & ~s) if ok[s | (1 << v)])
        perm.append(v)
        s |= 1 << v
    return tuple(perm)


def _exhaustive_bnb(g: VariableGraph) -> tuple[int, ...]:
    """Depth-first search over prefixes in lexicographic order.

    A prefix set reached again with a prefix width no smaller than before is
    pruned: the earlier, lexicographically smaller prefix dominates it.
    """
    n = g.n
    full = (1 << n) - 1
    rank_cache: dict[int, int] = {}

    def rank(s: int) -> int:
        if s not in rank_cache:
            rest = full & ~s
            rank_cache[s] = rref_rows(g.rows[v] & rest for v in bits_of(s)).rank
        return rank_cache[s]

    best_perm = tuple(range(n))
    best_w = max(rank(sum(1 << v for v in range(t))) for t in range(n + 1))
    seen: dict[int, int] = {}
    prefix: list[int] = []

    def dfs(s: int, cur: int):
        nonlocal best_perm, best_w
        if s == full:
            if cur < best_w:
                best_w, best_perm = cur, tuple(prefix)
            return
        if seen.get(s, n + 1) <= cur:
            return
        seen[s] = cur
        for v in bits_of(full & ~s):
            t = s | (1 << v)
            w = max(cur, rank(t))
            if w >= best_w:
                continue
            prefix.append(v)
            dfs(t, w)
            prefix.pop()

    dfs(0, 0)
    return best_perm


def exhaustive_lrw(g: VariableGraph, cap: int = EXHAUSTIVE_CAP) -> LinearOrdering:
    """Ordering of minimum width; the lexicographically least among the optima."""
    if g.n > cap:
        raise TooLargeError(f"exhaustive search capped at {cap} vertices, graph has {g.n}")
    if g.n <= _DP_LIMIT:
        perm = _exhaustive_dp(g)
    else:
        perm = _exhaustive_bnb(g)
    return ordering_width(g, perm, "exhaustive")


def greedy_ordering(g: VariableGraph) -> LinearOrdering:
    """Append the vertex that minimizes the next prefix cut-rank; ties to the smallest id."""
    n = g.n
    remaining = (1 << n) - 1
    basis = RrefBasis.empty(max(n, 1))
    perm = []
    for _ in range(n):
        choice = None
        for v in bits_of(remaining):
            rest = remaining & ~(1 << v)
            cand = advance_boundary(basis, v, g.rows[v] & rest)
            if choice is None or cand.rank < choice[1].rank:
                choice = (v, cand)
                if cand.rank == 0:
                    break
        v, basis = choice
        remaining &= ~(1 << v)
        perm.append(v)
    return ordering_width(g, perm, "greedy")


def subdivide_edge(g: VariableGraph, wire: tuple[int, int], chain_len: int) -> VariableGraph:
    """Replace edge ``i-j`` by the path ``i - u_1 - ... - u_L - j``.

    New vertices get ids ``n .. n+L-1`` in path order from ``i``.
    """
    i, j = wire
    if not g.has_edge(i, j):
        raise ValueError(f"({i}, {j}) is not an edge")
    if chain_len < 1:
        raise ValueError("chain length must be >= 1")
    edges = [e for e in g.edges() if set(e) != {i, j}]
    path = [i, *range(g.n, g.n + chain_len), j]
    edges += list(zip(path, path[1:]))
    return VariableGraph.from_edges(g.n + chain_len, edges)


def insertion_width_bound_check(
    g: VariableGraph, base_perm: Sequence[int], wire: tuple[int, int], chain_len: int
) -> tuple[int, int]:
    """Widths before and after expanding one wire into an H/T chain.

    The chain vertices are placed right after whichever endpoint comes first
    in ``base_perm``, with the chain oriented away from that endpoint.
    """
    base_perm = check_permutation(base_perm, g.n)
    i, j = wire
    pos = {v: t for t, v in enumerate(base_perm)}
    first, second = (i, j) if pos[i] < pos[j] else (j, i)
    g2 = subdivide_edge(g, (first, second), chain_len)
    chain = list(range(g.n, g.n + chain_len))
    t = pos[first] + 1
    new_perm = list(base_perm[:t]) + chain + list(base_perm[t:])
    return ordering_width(g, base_perm).width, ordering_width(g2, new_perm).width


def read_permutation(path) -> tuple[int, ...]:
    with open(path, encoding="utf-8") as fh:
        text = " ".join(line.split("#", 1)[0] for line in fh)
    return tuple(int(tok) for tok in text.split())


def format_permutation(perm: Sequence[int]) -> str:
    return " ".join(map(str, perm)) + "\n"
