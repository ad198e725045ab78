"""Brute-force optima used as ground truth.

Independent sets are explored depth-first in lexicographic order, extending a
set only by larger elements.  Every base is a leaf of that search, and coverage
is monotone, so evaluating leaves suffices.  The first leaf reaching the best
value wins, which makes the reported optimum the lexicographically smallest.
"""
from __future__ import annotations

import os
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import BudgetExceeded
from .kernel import KernelResult
from .matroid import Matroid, _indep, ground_elements
from .report import SolveReport

DEFAULT_BUDGET = int(os.environ.get("MCVC_MAX_SETS", 10**7))


class CoverageCounter:
    """Incremental coverage of weighted items, each a tuple of member vertices."""

    def __init__(self, items: Iterable[tuple[Sequence[int], Fraction]]):
        self.by_vertex: dict[int, list[tuple[int, Fraction]]] = {}
        n_items = 0
        for idx, (members, w) in enumerate(items):
            n_items += 1
            for v in set(members):
                self.by_vertex.setdefault(v, []).append((idx, w))
        self.count = [0] * n_items

    def push(self, v: int) -> Fraction:
        gain = Fraction(0)
        for idx, w in self.by_vertex.get(v, ()):
            if self.count[idx] == 0:
                gain += w
            self.count[idx] += 1
        return gain

    def pop(self, v: int) -> None:
        for idx, _ in self.by_vertex.get(v, ()):
            self.count[idx] -= 1


class DegreeFormula:
    """Evaluates ``sum(deg_w(v) for v in S) - w((S x S) & E')`` incrementally.

    Exact coverage when ``E'`` holds every edge inside the candidate set;
    an over-estimate when some of those edges were dropped.
    """

    def __init__(self, degw: dict[int, Fraction], pairs: Iterable[tuple[int, int, Fraction]]):
        self.degw = degw
        self.nbr: dict[int, list[tuple[int, Fraction]]] = {}
        for u, v, w in pairs:
            if u != v:
                self.nbr.setdefault(u, []).append((v, w))
                self.nbr.setdefault(v, []).append((u, w))
        self.chosen: set[int] = set()

    def push(self, v: int) -> Fraction:
        gain = self.degw[v] - sum((w for u, w in self.nbr.get(v, ()) if u in self.chosen), Fraction(0))
        self.chosen.add(v)
        return gain

    def pop(self, v: int) -> None:
        self.chosen.discard(v)

    def value(self, s: Iterable[int]) -> Fraction:
        s = set(s)
        total = sum((self.degw[v] for v in s), Fraction(0))
        # each internal edge sits in both endpoint lists
        inner = sum((w for v in s for u, w in self.nbr.get(v, ()) if u in s), Fraction(0))
        return total - inner / 2


def maximize(candidates: Iterable[int], independent: Callable[[frozenset[int]], bool],
             evaluator, *, algorithm: str, budget: int | None = None) -> SolveReport:
    budget = DEFAULT_BUDGET if budget is None else budget
    best_value: Fraction | None = None
    best_set: tuple[int, ...] = ()
    explored = 0
    current: list[int] = []

    def dfs(value: Fraction, cands: list[int]) -> None:
        nonlocal best_value, best_set, explored
        explored += 1
        if explored > budget:
            raise BudgetExceeded("independent-set enumeration", budget)
        base = frozenset(current)
        children = [c for c in cands if independent(base | {c})]
        if not children:
            if best_value is None or value > best_value:
                best_value, best_set = value, tuple(current)
            return
        for i, c in enumerate(children):
            gain = evaluator.push(c)
            current.append(c)
            dfs(value + gain, children[i + 1:])
            current.pop()
            evaluator.pop(c)

    dfs(Fraction(0), sorted(candidates))
    return SolveReport(algorithm=algorithm, solution=best_set, value=best_value, explored=explored)


def _items(g) -> list[tuple[tuple[int, ...], Fraction]]:
    return list(zip(g.members, g.weights))


def brute_force_opt(g, m: Matroid, budget: int | None = None) -> SolveReport:
    """Maximum coverage over all independent sets of ``m``."""
    return maximize(ground_elements(m), lambda s: _indep(m, s), CoverageCounter(_items(g)),
                    algorithm="bf", budget=budget)


def common_independent_opt(g, m1: Matroid, m2: Matroid, budget: int | None = None) -> SolveReport:
    """Maximum coverage over sets independent in both ``m1`` and ``m2``."""
    cands = sorted(set(ground_elements(m1)) & set(ground_elements(m2)))
    return maximize(cands, lambda s: _indep(m1, s) and _indep(m2, s), CoverageCounter(_items(g)),
                    algorithm="bf2", budget=budget)


def kernel_opt(g, m: Matroid, kres: KernelResult, budget: int | None = None) -> SolveReport:
    """Best set inside the kernel, independent in the original matroid.

    Only the kernel data is read: retained degrees and ``E'`` for graphs,
    the per-intersection weights for hypergraphs.
    """
    if kres.subset_weights is not None:
        evaluator = CoverageCounter((tuple(sorted(key)), w) for key, w in kres.subset_weights.items())
    else:
        evaluator = DegreeFormula(kres.degw, kres.retained_edges)
    allowed = set(ground_elements(m))
    report = maximize([v for v in kres.kernel_vertices if v in allowed], lambda s: _indep(m, s),
                      evaluator, algorithm="kernel-bf", budget=budget)
    report.epsilon = kres.eps
    return report
