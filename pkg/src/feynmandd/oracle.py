"""Brute-force reference implementations.

Nothing here touches the decision-diagram or GF(2) code paths, so results can
be compared against them directly.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .circuit import Circuit
from .mtbdd import CountVector
from .ordering import TooLargeError, VariableGraph
from .sop import SopPolynomial

STATEVECTOR_CAP = 20
COUNTS_CAP = 24
LRW_CAP = 9

_S = 1 / np.sqrt(2)
_W24 = np.exp(2j * np.pi / 24)


def _google_1q(cin: int, cout: int) -> np.ndarray:
    # M[out, in] = omega_24^(cin*in + cout*out + 12*in*out) / sqrt(2)
    m = np.empty((2, 2), dtype=complex)
    for x_out in (0, 1):
        for x_in in (0, 1):
            m[x_out, x_in] = _W24 ** (cin * x_in + cout * x_out + 12 * x_in * x_out)
    return m * _S


def _iswap_table() -> np.ndarray:
    m = np.zeros((4, 4), dtype=complex)
    for x0, x1 in itertools.product((0, 1), repeat=2):
        # input (x0, x1) leaves as (x1, x0)
        m[2 * x1 + x0, 2 * x0 + x1] = _W24 ** (18 * x0 + 18 * x1 + 12 * x0 * x1)
    return m


GATE_MATRICES = {
    "H": np.array([[1, 1], [1, -1]], dtype=complex) * _S,
    "T": np.diag([1, np.exp(1j * np.pi / 4)]).astype(complex),
    "Z": np.diag([1, -1]).astype(complex),
    "CZ": np.diag([1, 1, 1, -1]).astype(complex),
    "CCZ": np.diag([1, 1, 1, 1, 1, 1, 1, -1]).astype(complex),
    "SX": _google_1q(18, 18),
    "SY": _google_1q(12, 0),
    "SW": _google_1q(15, 21),
    "ISWAP": _iswap_table(),
}

# Reference definitions for the global-phase comparison. iSWAP follows the
# Google supremacy convention fSim(pi/2, 0), which has -i off the diagonal.
TEXTBOOK = {
    "SX": 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]]),
    "SY": 0.5 * np.array([[1 + 1j, -1 - 1j], [1 + 1j, 1 + 1j]]),
    "SW": _S * np.array([[1, -np.sqrt(1j)], [np.sqrt(-1j), 1]]),
    "ISWAP": np.array([[1, 0, 0, 0], [0, 0, -1j, 0], [0, -1j, 0, 0], [0, 0, 0, 1]]),
}


def equal_up_to_phase(a: np.ndarray, b: np.ndarray, atol: float = 1e-12) -> bool:
    a, b = np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)
    k = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    if abs(a[k]) < atol:
        return False
    phase = a[k] / b[k]
    if abs(abs(phase) - 1) > atol:
        return False
    return bool(np.allclose(a, phase * b, atol=atol, rtol=0))


def simulate_statevector(c: Circuit, in_bits=None, check_norm: bool = True) -> np.ndarray:
    """Dense simulation; the result has shape ``(2,)*n`` with axis ``q`` = qubit ``q``."""
    n = c.n_qubits
    if n > STATEVECTOR_CAP:
        raise TooLargeError(f"statevector oracle capped at {STATEVECTOR_CAP} qubits")
    bits = [0] * n if in_bits is None else [int(b) for b in in_bits]
    if len(bits) != n:
        raise ValueError("input bitstring length mismatch")
    psi = np.zeros((2,) * n, dtype=complex)
    psi[tuple(bits)] = 1.0
    for g in c.gates:
        k = len(g.qubits)
        u = GATE_MATRICES[g.kind].reshape((2,) * (2 * k))
        psi = np.tensordot(u, psi, axes=(list(range(k, 2 * k)), list(g.qubits)))
        psi = np.moveaxis(psi, list(range(k)), list(g.qubits))
        if check_norm:
            norm = np.linalg.norm(psi)
            if abs(norm - 1) > 1e-10:
                raise AssertionError(f"norm drifted to {norm!r} after {g}")
    return psi


def statevector_amplitude(c: Circuit, in_bits=None, out_bits=None) -> complex:
    psi = simulate_statevector(c, in_bits)
    out = [0] * c.n_qubits if out_bits is None else [int(b) for b in out_bits]
    return complex(psi[tuple(out)])


def _eval_block(p: SopPolynomial, start: int, stop: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    x = [((idx >> v) & 1).astype(np.int64) for v in range(p.n_vars)]
    f = np.full(stop - start, p.constant, dtype=np.int64)
    for v, b in enumerate(p.linear):
        if b:
            f += b * x[v]
    hits = np.zeros(stop - start, dtype=np.int64)
    for i, j in p.quadratic:
        hits += x[i] & x[j]
    for i, j, k in p.cubic:
        hits += x[i] & x[j] & x[k]
    f += hits * (p.modulus // 2)
    return np.bincount(f % p.modulus, minlength=p.modulus)


def brute_force_counts(p: SopPolynomial, threads: int = 1, block: int = 1 << 16) -> CountVector:
    """Histogram of ``f`` over all ``2^n`` assignments."""
    n = p.n_vars
    if n > COUNTS_CAP:
        raise TooLargeError(f"enumeration capped at {COUNTS_CAP} variables")
    total = 1 << n
    spans = [(s, min(s + block, total)) for s in range(0, total, block)]
    if threads > 1 and len(spans) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda st: _eval_block(p, *st), spans))
    else:
        parts = [_eval_block(p, *st) for st in spans]
    hist = np.sum(parts, axis=0)
    return CountVector(tuple(int(h) for h in hist), n)


def brute_force_amplitude(p: SopPolynomial, threads: int = 1) -> complex:
    counts = brute_force_counts(p, threads).counts
    omega = np.exp(2j * np.pi * np.arange(p.modulus) / p.modulus)
    return complex(np.dot(np.array(counts, dtype=float), omega) / 2 ** (p.half_log2_R / 2))


def _dense_rank(m: np.ndarray) -> int:
    m = m.copy() % 2
    rank = 0
    rows, cols = m.shape
    for col in range(cols):
        hit = np.nonzero(m[rank:, col])[0]
        if hit.size == 0:
            continue
        piv = rank + hit[0]
        m[[rank, piv]] = m[[piv, rank]]
        below = np.nonzero(m[:, col])[0]
        for r in below:
            if r != rank:
                m[r] ^= m[rank]
        rank += 1
        if rank == rows:
            break
    return rank


def brute_force_lrw(g: VariableGraph) -> int:
    """Minimum width over all ``n!`` orderings, scanned exhaustively."""
    n = g.n
    if n > LRW_CAP:
        raise TooLargeError(f"permutation scan capped at {LRW_CAP} vertices")
    if n <= 1:
        return 0
    a = np.array(g.adj.to_dense(), dtype=np.uint8)
    # cut-rank of every subset by plain dense elimination
    ranks = np.zeros(1 << n, dtype=np.int64)
    for s in range(1, (1 << n) - 1):
        inside = [v for v in range(n) if (s >> v) & 1]
        outside = [v for v in range(n) if not (s >> v) & 1]
        ranks[s] = _dense_rank(a[np.ix_(inside, outside)])
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    prefix = np.bitwise_or.accumulate(np.left_shift(1, perms), axis=1)
    widths = ranks[prefix[:, :-1]].max(axis=1)
    return int(widths.min())
