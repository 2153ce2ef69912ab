import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from feynmandd.oracle import brute_force_lrw
from feynmandd.ordering import (
    TooLargeError,
    VariableGraph,
    cut_profile,
    exhaustive_lrw,
    format_permutation,
    greedy_ordering,
    insertion_width_bound_check,
    natural_ordering,
    ordering_width,
    subdivide_edge,
    variable_graph,
)
from feynmandd.sop import DegreeTooHighError, make_polynomial


def cycle(n):
    return VariableGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    return VariableGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete(n):
    return VariableGraph.from_edges(n, itertools.combinations(range(n), 2))


def random_graph(rng, n, p=0.4):
    return VariableGraph.from_edges(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


graphs = st.builds(
    lambda n, rng, p: random_graph(rng, n, p),
    st.integers(0, 8),
    st.randoms(use_true_random=False),
    st.floats(0.1, 0.9),
)


def test_known_widths():
    assert exhaustive_lrw(path(4)).width == 1
    assert exhaustive_lrw(cycle(5)).width == 2
    assert exhaustive_lrw(cycle(6)).width == 2
    for n in range(2, 9):
        assert exhaustive_lrw(complete(n)).width == 1
    assert exhaustive_lrw(VariableGraph.from_edges(5, [])).width == 0


def test_profile_shape():
    o = natural_ordering(path(5))
    assert o.profile == (0, 1, 1, 1, 1, 0)
    assert o.width == 1
    assert o.method == "natural"


def test_ordering_width_rejects_non_permutation():
    with pytest.raises(ValueError):
        ordering_width(path(3), [0, 0, 1])


def test_variable_graph_from_polynomial():
    p = make_polynomial(8, 3, quadratic=[(0, 2)], linear=[1, 0, 0])
    g = variable_graph(p)
    assert g.edges() == [(0, 2)]
    cub = make_polynomial(2, 3, cubic=[(0, 1, 2)])
    with pytest.raises(DegreeTooHighError):
        variable_graph(cub)


def test_graph_validation():
    from feynmandd.gf2 import F2Matrix
    with pytest.raises(ValueError):
        VariableGraph(2, F2Matrix(2, 2, (0b10, 0)))
    with pytest.raises(ValueError):
        VariableGraph.from_edges(2, [(1, 1)])


def test_exhaustive_cap():
    with pytest.raises(TooLargeError):
        exhaustive_lrw(path(13))
    assert exhaustive_lrw(path(13), cap=13).width == 1


def test_branch_and_bound_agrees_with_dp():
    from feynmandd.ordering import _exhaustive_bnb, _exhaustive_dp
    rng = random.Random(5)
    for _ in range(30):
        g = random_graph(rng, rng.randrange(1, 9))
        a, b = _exhaustive_dp(g), _exhaustive_bnb(g)
        assert ordering_width(g, a).width == ordering_width(g, b).width


def test_exhaustive_returns_lex_least_optimum():
    rng = random.Random(9)
    for _ in range(20):
        g = random_graph(rng, rng.randrange(1, 7))
        best = exhaustive_lrw(g)
        for perm in itertools.permutations(range(g.n)):
            if ordering_width(g, perm).width == best.width:
                assert perm == best.perm
                break


@given(graphs)
def test_exhaustive_matches_brute_force(g):
    assert exhaustive_lrw(g).width == brute_force_lrw(g)


@given(graphs)
def test_greedy_is_an_upper_bound(g):
    o = greedy_ordering(g)
    assert sorted(o.perm) == list(range(g.n))
    assert o.width >= exhaustive_lrw(g).width


@given(graphs, st.randoms(use_true_random=False))
def test_width_invariant_under_relabelling(g, rng):
    perm = list(range(g.n))
    rng.shuffle(perm)
    assert exhaustive_lrw(g.relabel(perm)).width == exhaustive_lrw(g).width


@given(graphs, st.randoms(use_true_random=False))
def test_profile_symmetric_under_reversal(g, rng):
    perm = list(range(g.n))
    rng.shuffle(perm)
    fwd = ordering_width(g, perm).profile
    back = ordering_width(g, perm[::-1]).profile
    assert fwd == back[::-1]


@given(graphs, st.randoms(use_true_random=False))
def test_profile_matches_cut_rank(g, rng):
    perm = list(range(g.n))
    rng.shuffle(perm)
    prof = [b.rank for b in cut_profile(g.rows, perm)]
    assert prof == [g.cut_rank(perm[:t]) for t in range(g.n + 1)]


def test_subdivide_edge_structure():
    g = subdivide_edge(path(3), (0, 1), 2)
    assert g.n == 5
    assert sorted(g.edges()) == [(0, 3), (1, 2), (1, 4), (3, 4)]
    with pytest.raises(ValueError):
        subdivide_edge(path(3), (0, 2), 1)


@given(st.integers(2, 6), st.integers(1, 3), st.randoms(use_true_random=False))
def test_insertion_bound(n, chain, rng):
    g = random_graph(rng, n, 0.6)
    if not g.edges():
        return
    wire = rng.choice(g.edges())
    base = exhaustive_lrw(g).perm
    old, new = insertion_width_bound_check(g, base, wire, chain)
    assert new <= old + 2
    assert brute_force_lrw(subdivide_edge(g, wire, chain)) <= brute_force_lrw(g) + 2


def test_insertion_on_complete_graph():
    g = complete(5)
    old, new = insertion_width_bound_check(g, range(5), (1, 3), 4)
    assert old == 1
    assert new <= 3
    assert brute_force_lrw(subdivide_edge(g, (1, 3), 4)) <= 3


def test_insertion_on_path_every_edge():
    g = path(4)
    for wire in g.edges():
        old, new = insertion_width_bound_check(g, range(4), wire, 1)
        assert new <= old + 2


def test_format_permutation():
    assert format_permutation((2, 0, 1)) == "2 0 1\n"
