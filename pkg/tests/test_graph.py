from fractions import Fraction

import pytest

from mcvc.errors import InputError, ParseError
from mcvc.graph import (WeightedGraph, WeightedHypergraph, coverage, covered_multiplicity, format_graph, gen_fig3,
                        gen_fig4, gen_fig6, gen_random, gen_random_hypergraph, parse_graph)
from mcvc.matroid import LAMINAR, PARTITION, TRANSVERSAL, UNIFORM, is_independent


def triangle():
    return WeightedGraph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])


def test_coverage_examples():
    g, _ = gen_fig3(Fraction(1, 10))
    assert coverage(g, {0, 2}) == Fraction(29, 10)
    assert coverage(g, set()) == 0
    assert coverage(triangle(), {1}) == 2


def test_coverage_counts_each_edge_once():
    assert coverage(triangle(), {0, 1, 2}) == 3


def test_self_loop_and_parallel_edges():
    g = WeightedGraph(2, [(0, 0, 2), (0, 1, 1), (0, 1, 1)])
    assert g.deg_w == [4, 2]
    assert coverage(g, {0}) == 4
    assert coverage(g, {1}) == 2
    assert covered_multiplicity(g, {0}, 0) == 1


def test_covered_multiplicity():
    g = WeightedGraph(2, [(0, 1, 1)])
    assert covered_multiplicity(g, {0, 1}, 0) == 2
    assert covered_multiplicity(g, {0}, 0) == 1
    h = WeightedHypergraph(3, [({0, 1, 2}, 1)])
    assert covered_multiplicity(h, {0, 2}, 0) == 2


def test_validation():
    with pytest.raises(InputError):
        WeightedGraph(2, [(0, 1, -1)])
    with pytest.raises(InputError):
        WeightedGraph(2, [(0, 2, 1)])
    with pytest.raises(InputError):
        coverage(triangle(), {7})
    with pytest.raises(InputError):
        WeightedHypergraph(3, [({0, 1, 2}, 1)], eta=2)
    with pytest.raises(InputError):
        WeightedHypergraph(3, [(set(), 1)])


def test_fig3():
    g, m = gen_fig3("0.1")
    assert (g.n, g.m) == (4, 2)
    assert m.kind == UNIFORM and m.uniform_rank == 2
    with pytest.raises(InputError):
        gen_fig3(1)


def test_fig4():
    g, m = gen_fig4(4)
    assert (g.n, g.m) == (12, 20)
    assert coverage(g, range(4)) == 16
    assert coverage(g, range(4, 8)) == 24
    g2, _ = gen_fig4(2)
    assert coverage(g2, {2, 3}) == 6
    for k in (2, 3, 5, 8):
        g, _ = gen_fig4(k)
        assert coverage(g, range(k)) / coverage(g, range(k, 2 * k)) == Fraction(2, 3)
    with pytest.raises(InputError):
        gen_fig4(1)


def test_fig6():
    k, eps = 3, Fraction(1, 2)
    g, _ = gen_fig6(k, eps)
    assert coverage(g, range(k)) == k * k
    assert coverage(g, range(k, 2 * k)) == Fraction(27, 2)
    assert g.edges[-1][2] == Fraction(3, 2)
    k, eps = 40, Fraction(1, 100)
    g, _ = gen_fig6(k, eps)
    assert coverage(g, range(k)) / coverage(g, range(k, 2 * k)) == Fraction(100, 199)


def test_gen_random_deterministic_and_valid():
    g1, m1 = gen_random(8, 12, seed=7)
    g2, m2 = gen_random(8, 12, seed=7)
    assert g1 == g2 and m1 == m2
    assert len({(u, v) for u, v, _ in g1.edges}) == 12
    g, m = gen_random(6, 8, matroid_kind=PARTITION, seed=1)
    covered = set()
    for part, _ in m.parts:
        assert not covered & part
        covered |= part
    assert covered == set(range(6))
    for kind in (UNIFORM, PARTITION, LAMINAR, TRANSVERSAL):
        g, m = gen_random(6, 8, matroid_kind=kind, seed=3)
        assert m.ground_size == g.n == 6
        assert is_independent(m, set())
    with pytest.raises(InputError):
        gen_random(4, 7)


def test_round_trip():
    g, _ = gen_random(9, 14, seed=2)
    assert parse_graph(format_graph(g)) == g
    h, _ = gen_random_hypergraph(7, 9, eta=3, seed=2)
    assert parse_graph(format_graph(h)) == h
    g, _ = gen_fig3(Fraction(1, 3))
    assert parse_graph(format_graph(g)) == g


def test_parse_weights():
    g = parse_graph("graph 2 2\ne 0 1 0.123456789\ne 0 1 2/7\n")
    assert g.weights == [Fraction(123456789, 10**9), Fraction(2, 7)]
    with pytest.raises(ParseError, match="line 2"):
        parse_graph("graph 2 1\ne 0 1 0.1234567891\n")
    with pytest.raises(ParseError, match="line 3"):
        parse_graph("graph 2 1\ne 0 1 1\ne 0 1 1\n")
    with pytest.raises(ParseError, match="line 2"):
        parse_graph("graph 2 1\nx 0 1 1\n")
    with pytest.raises(ParseError):
        parse_graph("graph 2 1\ne 0 5 1\n")
