import numpy as np
import pytest

from feynmandd.circuit import serialize_circuit
from feynmandd.families import FamilySpec, gen_linear_network, gen_lrw_family, gen_random_circuit, lrw_matrix
from feynmandd.mtbdd import amplitude, build, diagram_stats
from feynmandd.oracle import brute_force_amplitude, statevector_amplitude
from feynmandd.ordering import exhaustive_lrw, greedy_ordering, natural_ordering, ordering_width, variable_graph
from feynmandd.sop import extract_sop, substitute_externals


def dd_amplitude(c):
    return amplitude(substitute_externals(extract_sop(c))).value


def test_determinism():
    for make in (lambda: gen_linear_network(12, 4, 3), lambda: gen_lrw_family(12, 3, 3),
                 lambda: gen_random_circuit("G", 5, 20, 3)):
        assert serialize_circuit(make()) == serialize_circuit(make())
    assert serialize_circuit(gen_lrw_family(12, 3, 3)) != serialize_circuit(gen_lrw_family(12, 3, 4))


def test_linear_network_small_matches_enumeration():
    c = gen_linear_network(5, 3, 11)
    p = substitute_externals(extract_sop(c)).polynomial
    assert abs(dd_amplitude(c) - brute_force_amplitude(p)) < 1e-9
    assert abs(dd_amplitude(c) - statevector_amplitude(c)) < 1e-9


def test_linear_network_gate_layer():
    c = gen_linear_network(8, 4, 0)
    kinds = {g.kind for g in c.gates}
    assert kinds <= {"H", "Z", "CZ", "CCZ"}
    assert c.gates[:8] == c.gates[-8:]
    alpha = next(h for h in c.header if h.startswith("alpha")).split()[1]
    zs = sorted(g.qubits[0] for g in c.gates if g.kind == "Z")
    assert zs == [i for i, ch in enumerate(alpha) if ch == "1"]


def test_identity_layer_gives_unit_amplitude():
    # H^n H^n with nothing between: amplitude 1
    c = gen_random_circuit("T", 4, 0, 0)
    assert dd_amplitude(c) == pytest.approx(1)


@pytest.mark.parametrize("seed", range(10))
def test_linear_network_size_bound(seed):
    n, k = 20, 4
    c = gen_linear_network(n, k, seed)
    p = substitute_externals(extract_sop(c)).polynomial
    d = build(p)
    assert len(d) <= (n + 1) * 2 ** (2 * k + 4)


def test_lrw_matrix_rank():
    _, _, _, a = lrw_matrix(40, 5, 0)
    assert np.array_equal(a, a.T)
    assert not a.diagonal().any()


def test_lrw_small_matches_oracle():
    c = gen_lrw_family(8, 2, 5)
    assert abs(dd_amplitude(c) - statevector_amplitude(c)) < 1e-9


@pytest.mark.parametrize("seed", range(10))
def test_lrw_width_and_size(seed):
    n, k = 40, 5
    c = gen_lrw_family(n, k, seed)
    p = substitute_externals(extract_sop(c)).polynomial
    g = variable_graph(p)
    for o in (natural_ordering(g), greedy_ordering(g), ordering_width(g, range(n - 1, -1, -1))):
        assert o.width <= k + 1
        assert len(build(p, o)) <= n * 2 ** (k + 4)


@pytest.mark.parametrize("gs, n, m, seed", [("T", 6, 30, 1), ("G", 4, 12, 7), ("Z", 5, 25, 2)])
def test_random_circuit_matches_oracle(gs, n, m, seed):
    c = gen_random_circuit(gs, n, m, seed)
    assert len(c.gates) == m
    assert abs(dd_amplitude(c) - statevector_amplitude(c)) < 1e-9


@pytest.mark.parametrize(
    "spec",
    [FamilySpec("linear-network", 5, 2), FamilySpec("linear-network", 3, 4), FamilySpec("lrw", 4, 4),
     FamilySpec("lrw", 4, 0), FamilySpec("random", 1, gate_set="T", m=3), FamilySpec("nope", 3),
     FamilySpec("lrw", 4, 1, seed=-1)],
)
def test_parameter_errors(spec):
    with pytest.raises(ValueError):
        spec.generate()


def test_small_lrw_exhaustive_width():
    c = gen_lrw_family(10, 2, 0)
    g = variable_graph(substitute_externals(extract_sop(c)).polynomial)
    assert exhaustive_lrw(g).width <= 3
