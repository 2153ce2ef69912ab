"""Sum-of-powers (path-sum) polynomials extracted from circuits.

An amplitude is written as ``2^{-e/2} * sum_x omega_r^{f(x)}`` where ``f`` is
a polynomial over Z_r in Boolean variables. Every quadratic and cubic term
carries the coefficient ``r/2``, so a term is stored only by its index set
and repeated terms cancel in pairs.
"""

from __future__ import annotations

import cmath
import itertools
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .circuit import GATE_SETS, ARITY, Circuit, Gate

# (input coefficient, output coefficient) of the single-qubit Google gates,
# all of which also carry 12*x_in*x_out and a factor 1/sqrt(2).
GOOGLE_LINEAR = {
    "SX": (18, 18),
    "SY": (12, 0),
    "SW": (15, 21),
}
ISWAP_LINEAR = 18


class DegreeTooHighError(ValueError):
    """Raised when a degree-2 only routine receives cubic terms."""


@dataclass(frozen=True)
class SopPolynomial:
    """``f(x) = (r/2)*(sum of quadratic and cubic monomials) + b.x + constant (mod r)``.

    ``half_log2_R`` is ``e`` with normalization ``R = 2^{e/2}``. ``external``
    maps qubit ``q`` to its (input variable, output variable).
    """

    modulus: int
    n_vars: int
    quadratic: frozenset = frozenset()
    cubic: frozenset = frozenset()
    linear: tuple[int, ...] = ()
    constant: int = 0
    half_log2_R: int = 0
    external: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        r = self.modulus
        if r < 2 or r % 2:
            raise ValueError("modulus must be even and >= 2")
        if not self.linear:
            object.__setattr__(self, "linear", (0,) * self.n_vars)
        if len(self.linear) != self.n_vars:
            raise ValueError("linear coefficient vector has wrong length")
        object.__setattr__(self, "linear", tuple(b % r for b in self.linear))
        object.__setattr__(self, "constant", self.constant % r)
        for term in itertools.chain(self.quadratic, self.cubic):
            if list(term) != sorted(set(term)) or term[-1] >= self.n_vars or term[0] < 0:
                raise ValueError(f"bad monomial {term}")
        if any(len(t) != 2 for t in self.quadratic) or any(len(t) != 3 for t in self.cubic):
            raise ValueError("monomial arity mismatch")
        if self.cubic and r != 2:
            raise ValueError("cubic terms are only supported for modulus 2")

    @property
    def degree(self) -> int:
        if self.cubic:
            return 3
        if self.quadratic:
            return 2
        return 1 if any(self.linear) else 0

    @property
    def half(self) -> int:
        return self.modulus // 2

    def is_constant(self) -> bool:
        return self.degree == 0

    def __str__(self):
        return format_polynomial(self)


@dataclass(frozen=True)
class AmplitudeTask:
    """A polynomial with all boundary variables fixed; every variable is summed."""

    polynomial: SopPolynomial
    in_bits: tuple[int, ...] = ()
    out_bits: tuple[int, ...] = ()

    @property
    def n_internal(self) -> int:
        return self.polynomial.n_vars


@dataclass
class _Terms:
    """Mutable accumulator that keeps monomials normalized."""

    modulus: int
    n_vars: int = 0
    linear: list[int] = field(default_factory=list)
    constant: int = 0
    parity: Counter = field(default_factory=Counter)

    def new_var(self) -> int:
        self.linear.append(0)
        self.n_vars += 1
        return self.n_vars - 1

    def add_linear(self, v: int, c: int):
        self.linear[v] = (self.linear[v] + c) % self.modulus

    def add_monomial(self, vars_: Iterable[int]):
        """Add ``(r/2) * prod(vars_)``; x*x = x collapses repeated indices."""
        term = tuple(sorted(set(vars_)))
        if not term:
            self.constant = (self.constant + self.modulus // 2) % self.modulus
        elif len(term) == 1:
            self.add_linear(term[0], self.modulus // 2)
        else:
            self.parity[term] ^= 1

    def freeze(self, half_log2_R: int = 0, external=()) -> SopPolynomial:
        quad = frozenset(t for t, on in self.parity.items() if on and len(t) == 2)
        cub = frozenset(t for t, on in self.parity.items() if on and len(t) == 3)
        return SopPolynomial(
            self.modulus,
            self.n_vars,
            quad,
            cub,
            tuple(self.linear),
            self.constant,
            half_log2_R,
            tuple(external),
        )


def make_polynomial(
    modulus: int,
    n_vars: int,
    quadratic: Iterable[Sequence[int]] = (),
    cubic: Iterable[Sequence[int]] = (),
    linear: Sequence[int] | None = None,
    constant: int = 0,
    half_log2_R: int = 0,
) -> SopPolynomial:
    """Build a polynomial from possibly repeated or unsorted monomials."""
    acc = _Terms(modulus, n_vars, list(linear) if linear is not None else [0] * n_vars, constant)
    for t in itertools.chain(quadratic, cubic):
        acc.add_monomial(t)
    return acc.freeze(half_log2_R)


def extract_sop(c: Circuit) -> SopPolynomial:
    """Path-sum polynomial of ``<out|C|in>`` with boundary variables still open.

    Variables are numbered in creation order: the inputs of qubits 0..n-1
    first, then one new variable per non-diagonal single-qubit gate. Diagonal
    gates reuse the wire's current variable, and ISWAP exchanges the wires'
    variables, so no explicit identification step is needed afterwards.
    """
    r = c.modulus
    acc = _Terms(r)
    wire = [acc.new_var() for _ in range(c.n_qubits)]
    inputs = list(wire)
    e = 0
    for g in c.gates:
        k, qs = g.kind, g.qubits
        if k == "H":
            v = acc.new_var()
            acc.add_monomial((wire[qs[0]], v))
            wire[qs[0]] = v
            e += 1
        elif k in GOOGLE_LINEAR:
            u = wire[qs[0]]
            v = acc.new_var()
            cin, cout = GOOGLE_LINEAR[k]
            acc.add_linear(u, cin)
            acc.add_linear(v, cout)
            acc.add_monomial((u, v))
            wire[qs[0]] = v
            e += 1
        elif k in ("T", "Z"):
            acc.add_linear(wire[qs[0]], 1)
        elif k in ("CZ", "CCZ"):
            acc.add_monomial(wire[q] for q in qs)
        elif k == "ISWAP":
            a, b = qs
            acc.add_linear(wire[a], ISWAP_LINEAR)
            acc.add_linear(wire[b], ISWAP_LINEAR)
            acc.add_monomial((wire[a], wire[b]))
            wire[a], wire[b] = wire[b], wire[a]
        else:  # pragma: no cover - Circuit validation rejects this
            raise ValueError(f"no SOP rule for {k}")
    return acc.freeze(e, zip(inputs, wire))


def _as_bits(bits, n: int, what: str) -> tuple[int, ...]:
    if bits is None:
        return (0,) * n
    if isinstance(bits, str):
        if set(bits) - {"0", "1"}:
            raise ValueError(f"{what} bitstring must contain only 0/1")
        out = tuple(int(ch) for ch in bits)
    else:
        out = tuple(int(b) for b in bits)
        if set(out) - {0, 1}:
            raise ValueError(f"{what} bits must be 0/1")
    if len(out) != n:
        raise ValueError(f"{what} bitstring has length {len(out)}, expected {n}")
    return out


def substitute_externals(p: SopPolynomial, in_bits=None, out_bits=None) -> AmplitudeTask:
    """Fix the boundary variables to ``in_bits``/``out_bits`` (default all zeros).

    A wire whose input and output share one variable but receive different
    bits makes the amplitude vanish. That case is encoded inside the SOP by an
    extra summed variable ``y`` with linear coefficient ``r/2`` and two more
    factors of 1/sqrt(2): ``(1 + omega^{r/2})/2 = 0``.
    """
    n_q = len(p.external)
    xin = _as_bits(in_bits, n_q, "input")
    xout = _as_bits(out_bits, n_q, "output")

    fixed: dict[int, int] = {}
    conflict = False
    for q, (vin, vout) in enumerate(p.external):
        for v, bit in ((vin, xin[q]), (vout, xout[q])):
            if fixed.setdefault(v, bit) != bit:
                conflict = True

    renumber = {}
    for v in range(p.n_vars):
        if v not in fixed:
            renumber[v] = len(renumber)

    r = p.modulus
    acc = _Terms(r, len(renumber), [0] * len(renumber), p.constant)
    for v, b in enumerate(p.linear):
        if not b:
            continue
        if v in fixed:
            acc.constant = (acc.constant + b * fixed[v]) % r
        else:
            acc.add_linear(renumber[v], b)
    for term in itertools.chain(sorted(p.quadratic), sorted(p.cubic)):
        if any(fixed.get(v) == 0 for v in term):
            continue
        acc.add_monomial(renumber[v] for v in term if v not in fixed)

    e = p.half_log2_R
    if conflict:
        y = acc.new_var()
        acc.add_linear(y, r // 2)
        e += 2
    return AmplitudeTask(acc.freeze(e), xin, xout)


def evaluate_sop(p: SopPolynomial, x: Sequence[int]) -> int:
    if len(x) != p.n_vars:
        raise ValueError(f"assignment has length {len(x)}, expected {p.n_vars}")
    r = p.modulus
    total = p.constant + sum(b for b, xi in zip(p.linear, x) if xi)
    hits = sum(1 for i, j in p.quadratic if x[i] and x[j])
    hits += sum(1 for i, j, k in p.cubic if x[i] and x[j] and x[k])
    return (total + hits * (r // 2)) % r


def sop_sum(p: SopPolynomial) -> complex:
    """Direct ``2^{-e/2} sum_x omega^{f(x)}`` by enumeration; tiny ``n_vars`` only."""
    omega = cmath.exp(2j * cmath.pi / p.modulus)
    total = sum(omega ** evaluate_sop(p, x) for x in itertools.product((0, 1), repeat=p.n_vars))
    return total / 2 ** (p.half_log2_R / 2)


def gate_matrix_from_sop(kind: str, gate_set: str | None = None):
    """Matrix ``M[out, in]`` of one gate rebuilt from its SOP factor.

    Rows and columns index basis states with qubit 0 as the most significant
    bit. Returns a nested list of complex numbers.
    """
    kind = kind.upper()
    if gate_set is None:
        gate_set = next(name for name in "TZG" if kind in GATE_SETS[name].kinds)
    arity = ARITY[kind]
    c = Circuit(arity, GATE_SETS[gate_set], (Gate(kind, tuple(range(arity))),))
    p = extract_sop(c)
    basis = list(itertools.product((0, 1), repeat=arity))
    return [[sop_sum(substitute_externals(p, xin, xout).polynomial) for xin in basis] for xout in basis]


_TERM_RE = re.compile(r"^(\d+)((?:\*x\d+)*)$")


def format_polynomial(p: SopPolynomial) -> str:
    h = p.half
    terms = [f"{h}*" + "*".join(f"x{v}" for v in t) for t in sorted(p.cubic)]
    terms += [f"{h}*x{i}*x{j}" for i, j in sorted(p.quadratic)]
    terms += [f"{b}*x{v}" for v, b in enumerate(p.linear) if b]
    if p.constant or not terms:
        terms.append(str(p.constant))
    return f"{' + '.join(terms)} (mod {p.modulus}), n={p.n_vars}, e={p.half_log2_R}"


def parse_polynomial(text: str) -> SopPolynomial:
    """Inverse of :func:`format_polynomial` (``n=`` optional, ``#`` comments allowed)."""
    body = " ".join(line.split("#", 1)[0] for line in text.splitlines()).strip()
    m = re.match(r"^(.*)\(mod\s+(\d+)\)\s*(.*)$", body)
    if not m:
        raise ValueError("polynomial text must end with '(mod r)'")
    expr, r, tail = m.group(1), int(m.group(2)), m.group(3)
    opts = dict(re.findall(r"(\w+)\s*=\s*(\d+)", tail))
    monos: list[tuple[int, tuple[int, ...]]] = []
    for raw in expr.split("+"):
        tok = raw.replace(" ", "")
        if not tok:
            continue
        mm = _TERM_RE.match(tok) or re.match(r"^()((?:x\d+)(?:\*x\d+)*)$", tok)
        if not mm:
            raise ValueError(f"cannot parse term {raw.strip()!r}")
        coeff = int(mm.group(1)) if mm.group(1) else 1
        vs = tuple(int(v) for v in re.findall(r"x(\d+)", mm.group(2)))
        monos.append((coeff, vs))
    n = max((v + 1 for _, vs in monos for v in vs), default=0)
    n = int(opts.get("n", n))
    linear = [0] * n
    constant = 0
    higher = []
    for coeff, vs in monos:
        if len(set(vs)) >= 2:
            if coeff % r != r // 2:
                raise ValueError(f"monomial coefficient must be r/2 = {r // 2}, got {coeff}")
            higher.append(vs)
        elif vs:
            linear[vs[0]] += coeff
        else:
            constant += coeff
    return make_polynomial(r, n, quadratic=higher, linear=linear, constant=constant,
                           half_log2_R=int(opts.get("e", 0)))
