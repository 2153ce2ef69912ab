import pytest

from feynmandd.circuit import GATE_SETS, Circuit, CircuitError, Gate, parse_circuit, serialize_circuit
from feynmandd.families import gen_linear_network, gen_lrw_family, gen_random_circuit


def test_parse_single_h():
    c = parse_circuit("gateset T\nqubits 1\nh 0")
    assert c == Circuit(1, GATE_SETS["T"], (Gate("H", (0,)),))
    assert c.modulus == 8


def test_parse_ccz():
    c = parse_circuit("gateset Z\nqubits 3\nccz 0 1 2")
    assert c.gates == (Gate("CCZ", (0, 1, 2)),)
    assert c.n_qubits == 3


def test_comments_and_blank_lines():
    text = "# provenance\n\ngateset T  # header\nqubits 2\n\nh 0 # first\ncz 0 1\n"
    c = parse_circuit(text)
    assert [g.kind for g in c.gates] == ["H", "CZ"]
    assert c.header == ("provenance",)


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("gateset T\nqubits 2\ncz 0 0", "duplicate qubit"),
        ("gateset T\nqubits 1\nccz 0 1 2", "not in gate set"),
        ("gateset T\nqubits 1\nfoo 0", "unknown gate"),
        ("gateset T\nqubits 1\nh 1", "out of range"),
        ("gateset Q\nqubits 1", "unknown gate set"),
        ("qubits 1\ngateset T", "expected 'gateset"),
        ("gateset T\nh 0", "expected 'qubits"),
        ("gateset T\nqubits 2\ncz 0", "takes 2 qubit"),
        ("gateset T\nqubits 2\nh x", "bad qubit index"),
        ("", "empty"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(CircuitError, match=fragment):
        parse_circuit(text)


def test_error_carries_line_number():
    with pytest.raises(CircuitError) as info:
        parse_circuit("gateset T\nqubits 2\nh 0\n\ncz 1 1\n")
    assert info.value.lineno == 5
    assert str(info.value).startswith("line 5:")


def test_gateset_mismatch_both_directions():
    with pytest.raises(CircuitError):
        parse_circuit("gateset G\nqubits 1\nh 0")
    with pytest.raises(CircuitError):
        parse_circuit("gateset Z\nqubits 1\nt 0")
    with pytest.raises(CircuitError):
        Circuit(2, GATE_SETS["T"], (Gate("ISWAP", (0, 1)),))


def test_serialize_single_h():
    c = Circuit(1, GATE_SETS["T"], (Gate("H", (0,)),))
    assert serialize_circuit(c) == "gateset T\nqubits 1\nh 0\n"


def test_serialize_empty():
    c = Circuit(3, GATE_SETS["Z"])
    assert serialize_circuit(c) == "gateset Z\nqubits 3\n"
    assert parse_circuit(serialize_circuit(c)) == c


@pytest.mark.parametrize(
    "c",
    [
        gen_linear_network(20, 5, 0),
        gen_linear_network(9, 3, 4),
        gen_lrw_family(12, 3, 2),
        gen_random_circuit("G", 4, 25, 7),
        gen_random_circuit("Z", 5, 30, 1),
        gen_random_circuit("T", 6, 30, 1),
    ],
)
def test_round_trip_generators(c):
    back = parse_circuit(serialize_circuit(c))
    assert back == c
    assert back.header == c.header
