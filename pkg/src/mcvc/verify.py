"""Seeded property suites shared by the ``verify`` command and the test-suite.

Every trial draws one random instance from its own seed, runs the checks of
its suite and returns the failures found together with the instance text so
that counterexamples can be written to disk.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import brute_force_opt, common_independent_opt, kernel_opt
from .graph import format_graph, gen_random, random_matroid
from .kernel import build_witness, kernelize, witness_violations
from .localsearch import contracted_search, local_search_34, two_matroid_search
from .matroid import (LAMINAR, PARTITION, TRANSVERSAL, UNIFORM, ContractView, UnionView, _indep,
                      axiom_violations, explicit_from, find_circuit, format_matroid,
                      independent_masks, matroid_partition)
from .streaming import INCIDENCE, EdgeStream, heap_capacity, one_pass_edge_arrival, one_pass_incidence, two_pass

KERNEL_KINDS = (PARTITION, LAMINAR, TRANSVERSAL, UNIFORM)
EPSILONS = (Fraction(1, 2), Fraction(1, 3), Fraction(1, 4))
SUITES = ("axioms", "kernel", "ratios", "stream")


def trial_seed(seed: int, index: int) -> int:
    return seed * 1_000_003 + index


def sample_instance(seed: int, kind: str, n_range=(6, 14), max_rank: int = 4):
    """Random graph with ``n`` in ``n_range`` and between ``n`` and ``3n`` edges."""
    rng = random.Random(seed)
    n = rng.randint(*n_range)
    m_edges = rng.randint(n, min(3 * n, n * (n - 1) // 2))
    return gen_random(n, m_edges, matroid_kind=kind, seed=rng.randrange(2**32), max_rank=max_rank)


@dataclass
class TrialResult:
    index: int
    failures: list[str] = field(default_factory=list)
    files: dict[str, str] = field(default_factory=dict)


def _subsets(n: int):
    for mask in range(1 << n):
        yield frozenset(i for i in range(n) if mask >> i & 1)


def check_axioms(seed: int) -> TrialResult:
    rng = random.Random(seed)
    kind = KERNEL_KINDS[seed % len(KERNEL_KINDS)]
    n = rng.randint(1, 8)
    m = random_matroid(n, kind, rng, max_rank=4)
    res = TrialResult(seed, files={"matroid": format_matroid(m)})
    res.failures += axiom_violations(m)
    explicit = explicit_from(m)
    masks = independent_masks(m)
    for s in _subsets(n):
        mask = sum(1 << i for i in s)
        if _indep(explicit, s) != _indep(m, s) or (mask in masks) != _indep(m, s):
            res.failures.append(f"explicit oracle disagrees on {sorted(s)}")
            break
    tau = rng.randint(2, 3)
    union = UnionView(m, tau)
    for s in _subsets(n):
        if _indep(union, s) != (matroid_partition(m, s, tau) is not None):
            res.failures.append(f"union of {tau} copies disagrees with partitioning on {sorted(s)}")
            break
    base = [x for x in range(n) if rng.random() < 0.3]
    c = frozenset()
    for x in base:
        if _indep(m, c | {x}):
            c |= {x}
    view = ContractView(m, c)
    for s in _subsets(n):
        if _indep(view, s) != (not s & c and _indep(m, s | c)):
            res.failures.append(f"contraction by {sorted(c)} wrong on {sorted(s)}")
            break
        if not _indep(m, s):
            circ = find_circuit(m, s)
            if any(_indep(m, s - {e}) != (e in circ) for e in s):
                res.failures.append(f"find_circuit wrong on {sorted(s)}")
                break
    return res


def check_kernel(seed: int) -> TrialResult:
    kind = KERNEL_KINDS[seed % len(KERNEL_KINDS)]
    eps = EPSILONS[seed // len(KERNEL_KINDS) % len(EPSILONS)]
    g, m = sample_instance(seed, kind)
    res = TrialResult(seed, files={"graph": format_graph(g), "matroid": format_matroid(m)})
    kres = kernelize(g, m, eps)
    kernel = frozenset(kres.kernel_vertices)
    if len(kernel) > kres.size_bound:
        res.failures.append(f"kernel size {len(kernel)} exceeds {kres.size_bound}")
    if not _indep(UnionView(m, kres.tau), kernel):
        res.failures.append("kernel is dependent in the union matroid")
    opt = brute_force_opt(g, m)
    best = kernel_opt(g, m, kres)
    if best.value < (1 - eps) * opt.value:
        res.failures.append(f"kernel optimum {best.value} below (1-{eps}) * {opt.value}")
    witness = build_witness(g, m, kres, opt.solution)
    res.failures += witness_violations(m, kres, witness, seed=seed)
    return res


def check_ratios(seed: int) -> TrialResult:
    kind = KERNEL_KINDS[seed % len(KERNEL_KINDS)]
    g, m = sample_instance(seed, kind, n_range=(5, 10), max_rank=3)
    m2 = random_matroid(g.n, PARTITION, random.Random(seed + 1), max_rank=3)
    res = TrialResult(seed, files={"graph": format_graph(g), "matroid": format_matroid(m),
                                   "matroid2": format_matroid(m2)})
    opt = brute_force_opt(g, m).value
    opt2 = common_independent_opt(g, m, m2).value
    runs = [("contracted_search", contracted_search(g, m), Fraction(2, 3), opt),
            ("local_search_34", local_search_34(g, m), Fraction(3, 4), opt)]
    for p in (1, 2):
        runs.append((f"two_matroid_search p={p}", two_matroid_search(g, m, m2, p),
                     Fraction(2, 3) * (1 - Fraction(1, p + 1)), opt2))
    for name, rep, ratio, target in runs:
        if rep.value < ratio * target:
            res.failures.append(f"{name}: {rep.value} below {ratio} * {target}")
        for swaps, bound in rep.phases:
            if swaps > bound:
                res.failures.append(f"{name}: phase with {swaps} swaps exceeds bound {bound}")
                break
    return res


def check_stream(seed: int, shuffles: int = 5) -> TrialResult:
    kind = KERNEL_KINDS[seed % len(KERNEL_KINDS)]
    eps = EPSILONS[seed // len(KERNEL_KINDS) % len(EPSILONS)]
    g, m = sample_instance(seed, kind)
    res = TrialResult(seed, files={"graph": format_graph(g), "matroid": format_matroid(m)})
    kres = kernelize(g, m, eps)
    offline = kernel_opt(g, m, kres)
    rep, _ = two_pass(EdgeStream.from_graph(g, seed=seed), m, eps)
    if (rep.value, rep.solution) != (offline.value, offline.solution):
        res.failures.append("two-pass result differs from the offline kernel optimum")
    opt = brute_force_opt(g, m).value
    rep, stats = one_pass_edge_arrival(EdgeStream.from_graph(g, seed=seed), m, eps)
    if rep.value < (1 - eps) * opt:
        res.failures.append(f"edge-arrival coverage {rep.value} below (1-{eps}) * {opt}")
    if rep.estimate < rep.value:
        res.failures.append("edge-arrival estimate below true coverage")
    if stats.peak_retained_edges > g.n * heap_capacity(m, eps):
        res.failures.append("edge-arrival retained too many edges")
    size = kres.size_bound
    for shuffle in range(shuffles):
        rep, stats = one_pass_incidence(EdgeStream.from_graph(g, INCIDENCE, seed=seed + shuffle), m, eps)
        if stats.kernel_vertices != kres.kernel_vertices:
            res.failures.append(f"incidence shuffle {shuffle}: kernel {stats.kernel_vertices} "
                                f"differs from {kres.kernel_vertices}")
        if rep.value != offline.value:
            res.failures.append(f"incidence shuffle {shuffle}: value {rep.value} != {offline.value}")
        if stats.peak_retained_edges > size * (size - 1) // 2:
            res.failures.append(f"incidence shuffle {shuffle}: {stats.peak_retained_edges} edges stored")
    return res


CHECKS = {"axioms": check_axioms, "kernel": check_kernel, "ratios": check_ratios, "stream": check_stream}


def run_trial(suite: str, seed: int, index: int) -> TrialResult:
    res = CHECKS[suite](trial_seed(seed, index))
    res.index = index
    return res


def run_suite(suite: str, trials: int, seed: int = 0, jobs: int = 1) -> list[TrialResult]:
    """Run ``trials`` trials, in worker processes when ``jobs > 1``; results keep trial order."""
    if jobs <= 1:
        return [run_trial(suite, seed, i) for i in range(trials)]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_trial, itertools.repeat(suite), itertools.repeat(seed), range(trials)))
