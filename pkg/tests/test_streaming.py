from fractions import Fraction

import pytest

from mcvc.errors import ContractError, InputError, ParseError
from mcvc.exact import brute_force_opt, kernel_opt
from mcvc.graph import WeightedGraph, coverage, gen_random
from mcvc.kernel import kernelize
from mcvc.matroid import LAMINAR, PARTITION, TRANSVERSAL, UNIFORM, MatroidSpec
from mcvc.streaming import (EDGE_ARRIVAL, INCIDENCE, EdgeStream, format_stream, heap_capacity,
                            one_pass_edge_arrival, one_pass_incidence, parse_stream, two_pass)
from mcvc.verify import sample_instance

KINDS = [PARTITION, LAMINAR, TRANSVERSAL, UNIFORM]
HALF = Fraction(1, 2)


def test_from_graph_keeps_edges():
    g, _ = gen_random(8, 14, seed=1)
    s = EdgeStream.from_graph(g, seed=3)
    assert sorted(s.items) == sorted(g.edges)
    inc = EdgeStream.from_graph(g, INCIDENCE, seed=3)
    assert len(inc.items) == 2 * g.m
    assert sorted(inc.graph().edges, key=str) == sorted(g.edges, key=str)
    for x, group in inc.groups:
        assert all(x in (u, v) for u, v, _ in group)


def test_round_trip_files():
    g, _ = gen_random(7, 10, seed=2)
    for mode in (EDGE_ARRIVAL, INCIDENCE):
        s = EdgeStream.from_graph(g, mode, seed=5)
        back = parse_stream(format_stream(s))
        assert (back.mode, back.n, back.items, back.groups) == (s.mode, s.n, s.items, s.groups)


def test_parse_errors():
    with pytest.raises(ParseError, match="line 1"):
        parse_stream("stream sideways 3\n")
    with pytest.raises(ParseError, match="line 2"):
        parse_stream("stream incidence 3\ne 0 1 1\n")
    with pytest.raises(ParseError, match="line 2"):
        parse_stream("stream edge 3\nv 0\n")
    with pytest.raises(ParseError, match="line 3"):
        parse_stream("stream edge 3\ne 0 1 1\ne 0 9 1\n")


def test_two_pass_needs_replayable_stream():
    g, m = gen_random(6, 8, seed=1)
    with pytest.raises(ContractError):
        two_pass(iter(g.edges), m, HALF)
    with pytest.raises(ContractError):
        two_pass(EdgeStream.from_graph(g, INCIDENCE), m, HALF)


@pytest.mark.parametrize("seed", range(12))
def test_two_pass_equals_kernel_opt(seed):
    g, m = sample_instance(seed, KINDS[seed % 4])
    rep, stats = two_pass(EdgeStream.from_graph(g, seed=seed), m, HALF)
    kres = kernelize(g, m, HALF)
    off = kernel_opt(g, m, kres)
    assert (rep.value, rep.solution) == (off.value, off.solution)
    assert stats.passes == 2
    k = len(kres.kernel_vertices)
    assert stats.peak_retained_edges <= k * k
    assert stats.peak_retained_edges <= kres.size_bound ** 2


def test_empty_stream():
    m = MatroidSpec.uniform(3, 2)
    s = EdgeStream(EDGE_ARRIVAL, 3, items=[])
    assert two_pass(s, m, HALF)[0].value == 0
    assert one_pass_edge_arrival(s, m, HALF)[0].value == 0
    assert one_pass_incidence(EdgeStream(INCIDENCE, 3, groups=[]), m, HALF)[0].value == 0


def test_edge_arrival_without_truncation_matches_two_pass():
    # every vertex has at most ceil(2k/eps) = 4 incident edges
    g, m = gen_random(9, 12, matroid_kind=UNIFORM, seed=4)
    m = MatroidSpec.uniform(9, 1)
    assert max(len(x) for x in g.incident) <= heap_capacity(m, HALF)
    one, _ = one_pass_edge_arrival(EdgeStream.from_graph(g), m, HALF)
    two, _ = two_pass(EdgeStream.from_graph(g), m, HALF / 2)
    assert (one.value, one.solution) == (two.value, two.solution)
    assert one.estimate == one.value


def test_edge_arrival_tie_keeps_earlier_edge():
    # capacity ceil(2 * 1 / 1) = 2: the third unit edge at vertex 0 is dropped
    g = WeightedGraph(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1)])
    m = MatroidSpec.uniform(4, 1)
    _, stats = one_pass_edge_arrival(EdgeStream.from_graph(g), m, 1)
    assert stats.peak_retained_edges == 3


@pytest.mark.parametrize("seed", range(16))
def test_edge_arrival_quality(seed):
    g, m = sample_instance(seed, KINDS[seed % 4])
    eps = [HALF, Fraction(1, 3), Fraction(1, 4)][seed % 3]
    rep, stats = one_pass_edge_arrival(EdgeStream.from_graph(g, seed=seed), m, eps)
    assert rep.value == coverage(g, rep.solution)
    assert rep.estimate >= rep.value
    assert rep.value >= (1 - eps) * brute_force_opt(g, m).value
    assert stats.peak_retained_edges <= g.n * heap_capacity(m, eps)
    assert stats.passes == 1
    # dropped edges inside the solution cost at most eps/2 of the estimate
    assert rep.estimate - rep.value <= eps / 2 * rep.estimate


def test_incidence_sorted_order_never_evicts():
    g, m = sample_instance(3, PARTITION)
    order = sorted(range(g.n), key=lambda v: (-g.deg_w[v], v))
    groups = [(x, [g.edges[i] for i in g.incident[x]]) for x in order]
    _, stats = one_pass_incidence(EdgeStream(INCIDENCE, g.n, groups=groups), m, HALF)
    assert stats.kernel_vertices == kernelize(g, m, HALF).kernel_vertices


@pytest.mark.parametrize("seed", range(12))
def test_incidence_matches_offline_kernel(seed):
    g, m = sample_instance(seed, KINDS[seed % 4])
    kres = kernelize(g, m, Fraction(1, 3))
    off = kernel_opt(g, m, kres)
    for shuffle in range(5):
        rep, stats = one_pass_incidence(EdgeStream.from_graph(g, INCIDENCE, seed=shuffle), m, Fraction(1, 3))
        assert stats.kernel_vertices == kres.kernel_vertices
        assert (rep.value, rep.solution) == (off.value, off.solution)
        size = len(kres.kernel_vertices)
        assert stats.peak_retained_edges <= size * (size - 1) // 2
        assert stats.peak_transient_edges <= max(len(x) for x in g.incident)


def test_incidence_rejects_bad_grouping():
    g = WeightedGraph(3, [(0, 1, 1), (1, 2, 1)])
    m = MatroidSpec.uniform(3, 1)
    with pytest.raises(ContractError):
        one_pass_incidence(EdgeStream(INCIDENCE, 3, groups=[(0, [(1, 2, 1)])]), m, HALF)
    with pytest.raises(ContractError):
        one_pass_incidence(EdgeStream(INCIDENCE, 3, groups=[(0, []), (0, [])]), m, HALF)
    with pytest.raises(ContractError):
        one_pass_incidence(EdgeStream.from_graph(g), m, HALF)


def test_determinism():
    g, m = sample_instance(9, LAMINAR)
    runs = [one_pass_incidence(EdgeStream.from_graph(g, INCIDENCE, seed=4), m, HALF) for _ in range(2)]
    assert runs[0][0] == runs[1][0] and runs[0][1] == runs[1][1]
    runs = [one_pass_edge_arrival(EdgeStream.from_graph(g, seed=4), m, HALF) for _ in range(2)]
    assert runs[0][0] == runs[1][0] and runs[0][1] == runs[1][1]


def test_stream_validation():
    with pytest.raises(InputError):
        EdgeStream("bogus", 2)
    with pytest.raises(InputError):
        EdgeStream(EDGE_ARRIVAL, 2, items=[(0, 1, -1)])
