"""Circuit data model, gate sets and the line-oriented circuit file format.

File grammar::

    # comments anywhere, after '#'
    gateset T|G|Z
    qubits <n>
    h 0
    cz 0 1
    ...
"""

from __future__ import annotations

from dataclasses import dataclass, field

ARITY = {
    "H": 1,
    "T": 1,
    "Z": 1,
    "CZ": 2,
    "CCZ": 3,
    "SX": 1,
    "SY": 1,
    "SW": 1,
    "ISWAP": 2,
}


@dataclass(frozen=True)
class GateSet:
    name: str
    modulus: int
    kinds: frozenset[str]

    def __repr__(self):
        return f"GateSet({self.name!r})"


GATE_SETS = {
    "T": GateSet("T", 8, frozenset({"H", "T", "CZ"})),
    "G": GateSet("G", 24, frozenset({"SX", "SY", "SW", "ISWAP"})),
    "Z": GateSet("Z", 2, frozenset({"H", "Z", "CZ", "CCZ"})),
}


class CircuitError(ValueError):
    """Malformed circuit or circuit file. ``lineno`` is 1-based when known."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in ARITY:
            raise CircuitError(f"unknown gate {self.kind!r}")
        if len(self.qubits) != ARITY[self.kind]:
            raise CircuitError(
                f"{self.kind.lower()} takes {ARITY[self.kind]} qubit(s), got {len(self.qubits)}"
            )
        if len(set(self.qubits)) != len(self.qubits):
            raise CircuitError(f"duplicate qubit in {self.kind.lower()} {self.qubits}")

    def __str__(self):
        return " ".join([self.kind.lower(), *map(str, self.qubits)])


def gate(kind: str, *qubits: int) -> Gate:
    return Gate(kind.upper(), tuple(qubits))


@dataclass(frozen=True)
class Circuit:
    """Gates in application order U_1 ... U_m.

    ``header`` carries free-form comment lines (generator provenance) and does
    not take part in equality.
    """

    n_qubits: int
    gate_set: GateSet
    gates: tuple[Gate, ...] = ()
    header: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.n_qubits < 1:
            raise CircuitError("circuit needs at least one qubit")
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            _check_gate(g, self.n_qubits, self.gate_set)

    @property
    def modulus(self) -> int:
        return self.gate_set.modulus

    def __len__(self):
        return len(self.gates)


def _check_gate(g: Gate, n_qubits: int, gate_set: GateSet, lineno: int | None = None):
    if g.kind not in gate_set.kinds:
        raise CircuitError(f"gate {g.kind.lower()} not in gate set {gate_set.name}", lineno)
    for q in g.qubits:
        if not 0 <= q < n_qubits:
            raise CircuitError(f"qubit {q} out of range for {n_qubits} qubits", lineno)


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_circuit(text: str) -> Circuit:
    header = []
    for raw in text.splitlines():
        s = raw.strip()
        if not s:
            continue
        if not s.startswith("#"):
            break
        header.append(s[1:].strip())

    lines = _content_lines(text)
    try:
        lineno, line = next(lines)
    except StopIteration:
        raise CircuitError("empty circuit file") from None
    parts = line.split()
    if parts[0] != "gateset" or len(parts) != 2:
        raise CircuitError("expected 'gateset <T|G|Z>'", lineno)
    if parts[1] not in GATE_SETS:
        raise CircuitError(f"unknown gate set {parts[1]!r}", lineno)
    gate_set = GATE_SETS[parts[1]]

    try:
        lineno, line = next(lines)
    except StopIteration:
        raise CircuitError("missing 'qubits <n>' line") from None
    parts = line.split()
    if parts[0] != "qubits" or len(parts) != 2:
        raise CircuitError("expected 'qubits <n>'", lineno)
    try:
        n_qubits = int(parts[1])
    except ValueError:
        raise CircuitError(f"bad qubit count {parts[1]!r}", lineno) from None
    if n_qubits < 1:
        raise CircuitError("qubit count must be positive", lineno)

    gates = []
    for lineno, line in lines:
        mnemonic, *args = line.split()
        kind = mnemonic.upper()
        if mnemonic != mnemonic.lower() or kind not in ARITY:
            raise CircuitError(f"unknown gate {mnemonic!r}", lineno)
        try:
            qubits = tuple(int(a) for a in args)
        except ValueError:
            raise CircuitError(f"bad qubit index in {line!r}", lineno) from None
        try:
            g = Gate(kind, qubits)
        except CircuitError as exc:
            raise CircuitError(str(exc), lineno) from None
        _check_gate(g, n_qubits, gate_set, lineno)
        gates.append(g)
    return Circuit(n_qubits, gate_set, tuple(gates), tuple(header))


def serialize_circuit(c: Circuit) -> str:
    out = [f"# {h}" if h else "#" for h in c.header]
    out.append(f"gateset {c.gate_set.name}")
    out.append(f"qubits {c.n_qubits}")
    out.extend(str(g) for g in c.gates)
    return "\n".join(out) + "\n"


def read_circuit(path) -> Circuit:
    with open(path, encoding="utf-8") as fh:
        return parse_circuit(fh.read())
