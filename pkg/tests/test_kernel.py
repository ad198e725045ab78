from fractions import Fraction

import pytest

from mcvc.errors import InputError, UnsupportedMatroid, WitnessInvariantError
from mcvc.exact import brute_force_opt, kernel_opt
from mcvc.graph import WeightedGraph, WeightedHypergraph, gen_fig4, gen_random_hypergraph
from mcvc.kernel import (RobustWitness, build_witness, kernelize, kernelize_hypergraph, laminar_robust_witness,
                         verify_robustness, witness_violations)
from mcvc.matroid import LAMINAR, PARTITION, TRANSVERSAL, MatroidSpec, UnionView, _indep, rank
from mcvc.verify import sample_instance


def loops(degrees):
    """Graph whose vertex i has weighted degree ``degrees[i]`` (one self-loop each)."""
    return WeightedGraph(len(degrees), [(i, i, d) for i, d in enumerate(degrees)])


def test_partition_top_t_per_part():
    g = loops([5, 3, 1])
    m = MatroidSpec.partition(3, [({0, 1, 2}, 1)])
    kres = kernelize(g, m, Fraction(1, 2))
    assert (kres.t, kres.tau) == (2, 2)
    assert kres.kernel_vertices == (0, 1)


def test_uniform_star():
    # centre 0 with degree 5; leaf 1 has degree 2, leaves 2..4 degree 1
    g = WeightedGraph(5, [(0, 1, 2), (0, 2, 1), (0, 3, 1), (0, 4, 1)])
    kres = kernelize(g, MatroidSpec.uniform(5, 1), Fraction(1, 3))
    assert kres.kernel_vertices == (0, 1, 2)


def test_fig4_kernel_takes_b_then_a():
    g, m = gen_fig4(2)
    kres = kernelize(g, m, Fraction(1, 2))
    assert kres.tau == 2
    assert kres.kernel_vertices == (0, 1, 2, 3)


def test_retained_edges_and_self_loops():
    g = WeightedGraph(4, [(0, 1, 5), (1, 2, 3), (2, 3, 1)])
    kres = kernelize(g, MatroidSpec.uniform(4, 1), 1)
    assert kres.kernel_vertices == (1,)
    assert sorted(kres.retained_edges) == [(1, 1, 3), (1, 1, 5)]


def test_multipliers_and_bounds():
    g, _ = sample_instance(5, PARTITION)
    lam = MatroidSpec.laminar(g.n, [(range(g.n // 2), 1), (range(g.n), 2)])
    tr = MatroidSpec.transversal(g.n, [range(g.n), range(3), range(2, 5)])
    eps = Fraction(1, 3)
    assert kernelize(g, lam, eps).tau == 6
    k = rank(tr)
    kres = kernelize(g, tr, eps)
    assert kres.tau == 3 + k - 1
    assert kres.size_bound == (3 + k - 1) * k
    assert kres.sharper_bound == 3 * k + k * (k - 1)


def test_unsupported_and_bad_eps():
    g = loops([1, 2])
    with pytest.raises(UnsupportedMatroid):
        kernelize(g, MatroidSpec.explicit(2, [{0}]), Fraction(1, 2))
    for eps in (0, Fraction(3, 2), -1):
        with pytest.raises(InputError):
            kernelize(g, MatroidSpec.uniform(2, 1), eps)


def test_hypergraph_with_pairs_matches_graph_kernel():
    for seed in range(10):
        g, m = sample_instance(seed, [PARTITION, LAMINAR, TRANSVERSAL][seed % 3])
        h = WeightedHypergraph(g.n, [({u, v}, w) for u, v, w in g.edges], eta=2)
        assert kernelize_hypergraph(h, m, Fraction(1, 3)).kernel_vertices == \
            kernelize(g, m, Fraction(1, 3)).kernel_vertices


def test_single_hyperedge():
    h = WeightedHypergraph(3, [({0, 1, 2}, 1)])
    m = MatroidSpec.uniform(3, 1)
    kres = kernelize_hypergraph(h, m, 1)
    assert len(kres.kernel_vertices) == 1
    assert kernel_opt(h, m, kres).value == 1


def test_random_hypergraph_guarantee():
    eps = Fraction(1, 4)
    for seed in range(10):
        h, m = gen_random_hypergraph(10, 15, eta=3, seed=seed)
        kres = kernelize_hypergraph(h, m, eps)
        assert kernel_opt(h, m, kres).value >= (1 - 2 * eps) * brute_force_opt(h, m).value


def test_laminar_witness_empty_when_base_inside_kernel():
    g = loops([5, 4, 3, 2, 1])
    m = MatroidSpec.laminar(5, [(range(5), 1)])
    kres = kernelize(g, m, Fraction(1, 2))
    assert laminar_robust_witness(g, m, kres, {0}).blocks == {}


def test_laminar_witness_single_set():
    g = loops([5, 4, 3, 2, 1])
    m = MatroidSpec.laminar(5, [(range(5), 1)])
    kres = kernelize(g, m, Fraction(1, 2))
    # the multiplier for laminar matroids is 2t = 4
    assert kres.kernel_vertices == (0, 1, 2, 3)
    w = laminar_robust_witness(g, m, kres, {4})
    assert w.blocks == {4: (0, 1)}
    assert witness_violations(m, kres, w) == []


@pytest.mark.parametrize("seed", range(30))
def test_laminar_witness_random(seed):
    g, m = sample_instance(seed, LAMINAR, n_range=(5, 10))
    eps = [Fraction(1, 2), Fraction(1, 3)][seed % 2]
    kres = kernelize(g, m, eps)
    opt = brute_force_opt(g, m).solution
    w = laminar_robust_witness(g, m, kres, opt)
    assert witness_violations(m, kres, w) == []


def test_laminar_witness_rejects_dependent_base():
    g = loops([5, 4, 3])
    m = MatroidSpec.laminar(3, [(range(3), 1)])
    kres = kernelize(g, m, 1)
    with pytest.raises(InputError):
        laminar_robust_witness(g, m, kres, {0, 1})


def test_laminar_witness_needs_laminar_multiplier():
    g = loops([5, 4, 3])
    m = MatroidSpec.laminar(3, [(range(3), 1)])
    kres = kernelize(g, MatroidSpec.partition(3, [({0, 1, 2}, 1)]), 1)
    with pytest.raises(InputError):
        laminar_robust_witness(g, m, kres, {2})


def test_witness_invariant_error_is_assertion():
    assert issubclass(WitnessInvariantError, AssertionError)


def test_verify_robustness_base_inside_kernel():
    for kind in (PARTITION, LAMINAR, TRANSVERSAL):
        g, m = sample_instance(11, kind)
        kres = kernelize(g, m, Fraction(1, 2))
        inside = [v for v in kres.kernel_vertices if _indep(m, frozenset([v]))][:1]
        assert verify_robustness(g, m, kres, inside)


def test_partition_witness_one_blocked_element():
    # part {0..4} bound 1 with t = 2: vertices 0, 1 kept, optimum element 4 left out
    g = loops([9, 8, 7, 6, 5, 1])
    m = MatroidSpec.partition(6, [({0, 1, 2, 3, 4}, 1), ({5}, 1)])
    kres = kernelize(g, m, Fraction(1, 2))
    assert kres.kernel_vertices == (0, 1, 5)
    w = build_witness(g, m, kres, {4, 5})
    assert w.blocks == {4: (0, 1)}
    assert verify_robustness(g, m, kres, {4, 5})


def test_corrupted_witness_fails():
    g = loops([9, 8, 7, 6, 5, 1])
    m = MatroidSpec.partition(6, [({0, 1, 2, 3, 4}, 1), ({5}, 1)])
    kres = kernelize(g, m, Fraction(1, 2))
    shrunk = RobustWitness(frozenset({4, 5}), {4: (0,)})
    assert witness_violations(m, kres, shrunk)
    wrong_base = RobustWitness(frozenset({4, 5}), {4: (0, 5)})
    assert witness_violations(m, kres, wrong_base)
    inside = RobustWitness(frozenset({0, 5}), {})
    assert witness_violations(m, kres, inside) == []


@pytest.mark.parametrize("seed", range(30))
def test_transversal_witness_random(seed):
    g, m = sample_instance(seed, TRANSVERSAL)
    kres = kernelize(g, m, [Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)][seed % 3])
    assert verify_robustness(g, m, kres, brute_force_opt(g, m).solution)


@pytest.mark.parametrize("kind", [PARTITION, LAMINAR, TRANSVERSAL])
def test_greedy_dominance(kind):
    for seed in range(20):
        g, m = sample_instance(seed, kind)
        kres = kernelize(g, m, Fraction(1, 2))
        union = UnionView(m, kres.tau)
        kernel = set(kres.kernel_vertices)
        for v in range(g.n):
            if v in kernel:
                continue
            heavier = frozenset(u for u in kernel if (-g.deg_w[u], u) < (-g.deg_w[v], v))
            assert not _indep(union, heavier | {v})
