import os
import subprocess
import sys
from fractions import Fraction

import pytest

from mcvc.errors import BudgetExceeded
from mcvc.exact import DegreeFormula, brute_force_opt, common_independent_opt, kernel_opt, maximize
from mcvc.graph import WeightedGraph, coverage, gen_fig3, gen_fig4, gen_random
from mcvc.kernel import kernelize
from mcvc.matroid import LAMINAR, PARTITION, MatroidSpec, _indep, independent_masks


def test_fig3_optimum():
    g, m = gen_fig3(Fraction(1, 10))
    rep = brute_force_opt(g, m)
    assert rep.value == Fraction(29, 10)
    assert rep.solution == (0, 2)


def test_empty_graph():
    rep = brute_force_opt(WeightedGraph(3, []), MatroidSpec.uniform(3, 2))
    assert rep.value == 0


def test_fig4_optimum():
    g, m = gen_fig4(3)
    rep = brute_force_opt(g, m)
    assert rep.value == Fraction(27, 2)
    assert rep.solution == (3, 4, 5)


def test_lexicographically_smallest_optimum():
    g = WeightedGraph(4, [(0, 1, 1), (2, 3, 1)])
    assert brute_force_opt(g, MatroidSpec.uniform(4, 1)).solution == (0,)


def test_explored_count_and_budget():
    g, m = gen_random(8, 12, seed=1)
    rep = brute_force_opt(g, m)
    assert rep.explored <= len(independent_masks(m))
    with pytest.raises(BudgetExceeded, match="cap of 3"):
        brute_force_opt(g, m, budget=3)


def test_budget_from_environment():
    code = "import mcvc.exact as e; print(e.DEFAULT_BUDGET)"
    env = dict(os.environ, MCVC_MAX_SETS="123")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "123"


def test_kernel_equal_to_ground_set_matches_brute_force():
    g, m = gen_random(8, 14, matroid_kind=PARTITION, seed=4)
    kres = kernelize(g, m, 1)
    # a large enough multiplier keeps everything
    full = kernelize(g, m, Fraction(1, 20))
    assert set(full.kernel_vertices) == set(range(8))
    assert kernel_opt(g, m, full).value == brute_force_opt(g, m).value
    assert kernel_opt(g, m, kres).value <= brute_force_opt(g, m).value


@pytest.mark.parametrize("seed", range(10))
def test_kernel_opt_partition_half(seed):
    g, m = gen_random(10, 20, matroid_kind=PARTITION, seed=seed)
    kres = kernelize(g, m, Fraction(1, 2))
    assert kernel_opt(g, m, kres).value >= Fraction(1, 2) * brute_force_opt(g, m).value


@pytest.mark.parametrize("seed", range(10))
def test_kernel_opt_laminar_third(seed):
    g, m = gen_random(12, 24, matroid_kind=LAMINAR, seed=seed)
    kres = kernelize(g, m, Fraction(1, 3))
    assert kernel_opt(g, m, kres).value >= Fraction(2, 3) * brute_force_opt(g, m).value


def test_degree_formula_equals_coverage_on_kernel_subsets():
    for seed in range(10):
        g, m = gen_random(9, 16, matroid_kind=PARTITION, seed=seed)
        kres = kernelize(g, m, Fraction(1, 2))
        formula = DegreeFormula(kres.degw, kres.retained_edges)
        kernel = list(kres.kernel_vertices)
        for mask in range(1 << len(kernel)):
            s = [kernel[i] for i in range(len(kernel)) if mask >> i & 1]
            assert formula.value(s) == coverage(g, s)


def test_invariance_under_permutation_and_relabeling():
    g, m = gen_random(9, 18, matroid_kind=PARTITION, seed=5)
    value = brute_force_opt(g, m).value
    shuffled = WeightedGraph(g.n, list(reversed(g.edges)))
    assert brute_force_opt(shuffled, m).value == value
    perm = [3, 7, 0, 8, 1, 6, 2, 5, 4]
    relabeled = WeightedGraph(g.n, [(perm[u], perm[v], w) for u, v, w in g.edges])
    parts = [({perm[x] for x in part}, k) for part, k in m.parts]
    rep = brute_force_opt(relabeled, MatroidSpec.partition(g.n, parts))
    assert rep.value == value


def test_common_independent_opt():
    g = WeightedGraph(4, [(0, 1, 5), (2, 3, 4), (1, 2, 1)])
    m1 = MatroidSpec.partition(4, [({0, 1}, 1), ({2, 3}, 1)])
    m2 = MatroidSpec.partition(4, [({0, 2}, 1), ({1, 3}, 1)])
    rep = common_independent_opt(g, m1, m2)
    assert _indep(m1, frozenset(rep.solution)) and _indep(m2, frozenset(rep.solution))
    assert rep.value == 10


def test_maximize_generic():
    class Count:
        def push(self, v):
            return Fraction(v)

        def pop(self, v):
            pass

    rep = maximize(range(4), lambda s: len(s) <= 2, Count(), algorithm="x")
    assert rep.solution == (2, 3) and rep.value == 5
