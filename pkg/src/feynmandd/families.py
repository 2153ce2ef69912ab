"""Seeded generators for the benchmark circuit families.

All randomness comes from numpy's PCG64 bit generator seeded with the given
integer, so instances are identical across runs and platforms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .circuit import ARITY, GATE_SETS, Circuit, Gate

CUBIC_PROBABILITY = 0.5
FAMILIES = ("linear-network", "lrw", "random")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    n: int
    k: int = 1
    seed: int = 0
    gate_set: str = "T"
    m: int = 0

    def generate(self) -> Circuit:
        if self.family == "linear-network":
            return gen_linear_network(self.n, self.k, self.seed)
        if self.family == "lrw":
            return gen_lrw_family(self.n, self.k, self.seed)
        if self.family == "random":
            return gen_random_circuit(self.gate_set, self.n, self.m, self.seed)
        raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")


def _rng(seed: int) -> np.random.Generator:
    if seed < 0 or seed >= 1 << 64:
        raise ValueError("seed must be a 64-bit unsigned integer")
    return np.random.Generator(np.random.PCG64(seed))


def _bits(v) -> str:
    return "".join(str(int(b)) for b in v)


def _iqp(n: int, gate_set: str, diagonal: list[Gate], header: list[str]) -> Circuit:
    hs = [Gate("H", (q,)) for q in range(n)]
    return Circuit(n, GATE_SETS[gate_set], (*hs, *diagonal, *hs), tuple(header))


def gen_linear_network(n: int, k: int, seed: int) -> Circuit:
    """IQP circuit whose phase polynomial is ``A(x) * sum_i x_i + sum of cubic windows`` over GF(2).

    ``A(x) * sum x_i`` expands to ``sum_{alpha_i=1} x_i + sum_{i<j, alpha_i != alpha_j} x_i x_j``.
    Each window of ``k`` consecutive qubits draws every cubic monomial with
    probability 1/2; monomials shared between windows cancel in pairs, and only
    the surviving ones are emitted as CCZ gates.
    """
    if not 3 <= k <= n:
        raise ValueError(f"linear-network family needs 3 <= k <= n, got n={n}, k={k}")
    rng = _rng(seed)
    alpha = rng.integers(0, 2, size=n)
    parity: dict[tuple[int, int, int], int] = {}
    for start in range(n - k + 1):
        triples = list(itertools.combinations(range(start, start + k), 3))
        draws = rng.random(len(triples)) < CUBIC_PROBABILITY
        for t, hit in zip(triples, draws):
            if hit:
                parity[t] = parity.get(t, 0) ^ 1
    cubic = sorted(t for t, on in parity.items() if on)

    diag = [Gate("Z", (i,)) for i in range(n) if alpha[i]]
    diag += [Gate("CZ", (i, j)) for i, j in itertools.combinations(range(n), 2) if alpha[i] != alpha[j]]
    diag += [Gate("CCZ", t) for t in cubic]
    header = [
        f"family linear-network n={n} k={k} seed={seed}",
        f"cubic_probability {CUBIC_PROBABILITY}",
        f"alpha {_bits(alpha)}",
        f"cubic_terms {len(cubic)}",
    ]
    return _iqp(n, "Z", diag, header)


def lrw_matrix(n: int, k: int, seed: int):
    """Draw ``(a, vs, b, A)`` with ``A = a*J + sum v v^T`` over F2, diagonal zeroed."""
    rng = _rng(seed)
    a = int(rng.integers(0, 2))
    vs = rng.integers(0, 2, size=(k, n))
    b = rng.integers(0, 8, size=n)
    mat = a * np.ones((n, n), dtype=np.int64)
    for v in vs:
        mat = mat + np.outer(v, v)
    mat %= 2
    np.fill_diagonal(mat, 0)
    return a, vs, b, mat


def gen_lrw_family(n: int, k: int, seed: int) -> Circuit:
    """IQP circuit ``H^n D H^n`` with ``D = prod CZ_ij^{A_ij} prod T_i^{b_i}``; rank(A) <= k + 1."""
    if not 1 <= k < n:
        raise ValueError(f"lrw family needs 1 <= k < n, got n={n}, k={k}")
    a, vs, b, mat = lrw_matrix(n, k, seed)
    diag = [Gate("CZ", (i, j)) for i, j in itertools.combinations(range(n), 2) if mat[i, j]]
    for i in range(n):
        diag += [Gate("T", (i,))] * int(b[i])
    header = [f"family lrw n={n} k={k} seed={seed}", f"a {a}"]
    header += [f"v{i + 1} {_bits(v)}" for i, v in enumerate(vs)]
    header.append("b " + " ".join(str(int(x)) for x in b))
    return _iqp(n, "T", diag, header)


def gen_random_circuit(gate_set: str, n: int, m: int, seed: int) -> Circuit:
    """``m`` gates, each a uniform gate kind on a uniform ordered tuple of distinct qubits."""
    gs = GATE_SETS[gate_set]
    kinds = sorted(gs.kinds)
    widest = max(ARITY[k] for k in kinds)
    if n < widest:
        raise ValueError(f"gate set {gate_set} needs at least {widest} qubits")
    if m < 0:
        raise ValueError("gate count must be nonnegative")
    rng = _rng(seed)
    gates = []
    for _ in range(m):
        kind = kinds[int(rng.integers(len(kinds)))]
        qubits = rng.choice(n, size=ARITY[kind], replace=False)
        gates.append(Gate(kind, tuple(int(q) for q in qubits)))
    header = [f"family random gateset={gate_set} n={n} m={m} seed={seed}"]
    return Circuit(n, gs, tuple(gates), tuple(header))
