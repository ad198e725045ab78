"""Non-oblivious local search for matroid-constrained vertex cover.

The search is guided by the potential ``g(S) = sum_e alpha[#(e, S)] * w(e)``
where ``#(e, S)`` counts the endpoints of ``e`` inside ``S``.  Swaps are
accepted only when they raise ``g`` by a factor larger than ``1 + eps``.
All comparisons are done on integers: weights are scaled by the lcm of their
denominators and the coefficients by the lcm of theirs.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from ._rational import as_rational
from .errors import BudgetExceeded, InputError
from .graph import coverage
from .matroid import Matroid, _indep, contract, ground_elements, rank
from .report import SolveReport

DEFAULT_RANK_CAP = 8
DEFAULT_EXCHANGE_BUDGET = 10**7


@dataclass(frozen=True)
class PotentialCoefficients:
    """``alpha[i]`` weighs an edge with ``i`` endpoints in the solution."""

    alpha: tuple[Fraction, ...]

    def __post_init__(self):
        alpha = tuple(as_rational(a) for a in self.alpha)
        object.__setattr__(self, "alpha", alpha)
        if len(alpha) < 2 or alpha[0] != 0 or alpha[1] != 1:
            raise InputError("coefficients must start with alpha_0 = 0, alpha_1 = 1")
        for i in range(1, len(alpha) - 1):
            step, prev = alpha[i + 1] - alpha[i], alpha[i] - alpha[i - 1]
            if step < 0:
                raise InputError("coefficients must be non-decreasing")
            if step > prev:
                raise InputError("coefficient increments must not grow")

    @classmethod
    def graph(cls, alpha2=Fraction(3, 2)) -> PotentialCoefficients:
        return cls((0, 1, as_rational(alpha2)))

    @property
    def alpha2(self) -> Fraction:
        return self.alpha[2] if len(self.alpha) > 2 else Fraction(1)

    def scaled(self) -> list[int]:
        d = lcm(*(a.denominator for a in self.alpha))
        return [int(a * d) for a in self.alpha]


OBLIVIOUS = PotentialCoefficients.graph(1)


def _coeffs(coeffs, g) -> PotentialCoefficients:
    if coeffs is None:
        coeffs = PotentialCoefficients.graph()
    elif not isinstance(coeffs, PotentialCoefficients):
        coeffs = PotentialCoefficients.graph(coeffs)
    if len(coeffs.alpha) < g.eta + 1:
        raise InputError(f"need {g.eta + 1} coefficients for edges of size up to {g.eta}")
    return coeffs


def potential(g, s: Iterable[int], coeffs=None) -> Fraction:
    coeffs = _coeffs(coeffs, g)
    s = g.check_vertices(s)
    total = Fraction(0)
    for mem, w in zip(g.members, g.weights):
        total += coeffs.alpha[sum(1 for v in mem if v in s)] * w
    return total


def swap_bound(eps) -> int:
    """Smallest ``N`` with ``(1 + eps)^N >= 2``."""
    eps = as_rational(eps)
    if eps <= 0:
        raise InputError("eps must be positive")
    n = max(1, math.ceil(math.log(2) / math.log1p(float(eps))))
    while n > 1 and (1 + eps) ** (n - 1) >= 2:
        n -= 1
    while (1 + eps) ** n < 2:
        n += 1
    return n


def default_eps(m: Matroid) -> Fraction:
    return Fraction(1, (3 * max(1, rank(m))) ** 2)


class PotentialTracker:
    """Integer-scaled potential of a changing vertex set."""

    def __init__(self, g, coeffs: PotentialCoefficients, s: Iterable[int] = ()):
        self.w, _ = g.scaled_weights()
        self.a = coeffs.scaled()
        self.incident = g.incident
        self.count = [0] * g.m
        self.chosen: set[int] = set()
        self.value = 0
        self.apply((), s)

    def gain(self, remove: Iterable[int], add: Iterable[int]) -> int:
        delta: dict[int, int] = {}
        for v in remove:
            for e in self.incident[v]:
                delta[e] = delta.get(e, 0) - 1
        for v in add:
            for e in self.incident[v]:
                delta[e] = delta.get(e, 0) + 1
        a, count, w = self.a, self.count, self.w
        return sum((a[count[e] + d] - a[count[e]]) * w[e] for e, d in delta.items() if d)

    def apply(self, remove: Iterable[int], add: Iterable[int]) -> None:
        remove, add = list(remove), list(add)
        self.value += self.gain(remove, add)
        for v in remove:
            self.chosen.remove(v)
            for e in self.incident[v]:
                self.count[e] -= 1
        for v in add:
            self.chosen.add(v)
            for e in self.incident[v]:
                self.count[e] += 1


def _improves(new: int, old: int, eps: Fraction) -> bool:
    return new * eps.denominator > old * (eps.denominator + eps.numerator)


def _greedy(tracker: PotentialTracker, candidates: Sequence[int], independent) -> frozenset[int]:
    while True:
        best, best_gain = None, None
        chosen = frozenset(tracker.chosen)
        for v in candidates:
            if v in chosen or not independent(chosen | {v}):
                continue
            gain = tracker.gain((), (v,))
            if best_gain is None or gain > best_gain:
                best, best_gain = v, gain
        if best is None:
            return frozenset(tracker.chosen)
        tracker.apply((), (best,))


def greedy_basis(g, m: Matroid, coeffs=None) -> frozenset[int]:
    """Basis of ``m`` grown by largest marginal potential (ties: smaller index)."""
    tracker = PotentialTracker(g, _coeffs(coeffs, g))
    return _greedy(tracker, ground_elements(m), lambda s: _indep(m, s))


def _single_swap_search(g, m: Matroid, eps: Fraction, coeffs: PotentialCoefficients):
    tracker = PotentialTracker(g, coeffs)
    cands = ground_elements(m)
    _greedy(tracker, cands, lambda s: _indep(m, s))
    swaps = 0
    while True:
        cur = frozenset(tracker.chosen)
        found = None
        for s in sorted(cur):
            rest = cur - {s}
            for x in cands:
                if x in cur:
                    continue
                if _improves(tracker.value + tracker.gain((s,), (x,)), tracker.value, eps) \
                        and _indep(m, rest | {x}):
                    found = (s, x)
                    break
            if found:
                break
        if found is None:
            return cur, swaps
        tracker.apply((found[0],), (found[1],))
        swaps += 1


def _finish(report: SolveReport, g, coeffs) -> SolveReport:
    report.potential_value = potential(g, report.solution, coeffs)
    report.alpha2 = coeffs.alpha2
    return report


def local_search(g, m: Matroid, eps=None, coeffs=None) -> SolveReport:
    """Greedy start, then first-improving single swaps until none is large enough."""
    coeffs = _coeffs(coeffs, g)
    eps = default_eps(m) if eps is None else as_rational(eps)
    if eps <= 0:
        raise InputError("eps must be positive")
    sol, swaps = _single_swap_search(g, m, eps, coeffs)
    report = SolveReport(algorithm="ls", solution=tuple(sorted(sol)), value=coverage(g, sol),
                         swap_count=swaps, epsilon=eps, phases=[(swaps, swap_bound(eps))])
    return _finish(report, g, coeffs)


def _better(value: Fraction, sol: tuple[int, ...], best) -> bool:
    return best is None or value > best[0] or (value == best[0] and sol < best[1])


def _guessable(m: Matroid) -> list[int]:
    return [v for v in ground_elements(m) if _indep(m, frozenset([v]))]


def contracted_search(g, m: Matroid, eps=None, alpha2=Fraction(3, 2)) -> SolveReport:
    """Guess one vertex, contract it, run :func:`local_search` on the rest; keep the best."""
    coeffs = _coeffs(alpha2, g)
    if rank(m) < 1:
        raise InputError("contracted search needs a matroid of rank at least 1")
    eps = default_eps(m) if eps is None else as_rational(eps)
    best, phases, swaps = None, [], 0
    for v in _guessable(m):
        inner = local_search(g.without_vertex_edges(v), contract(m, v), eps, coeffs)
        phases += inner.phases
        swaps += inner.swap_count
        sol = tuple(sorted(inner.solution + (v,)))
        value = coverage(g, sol)
        if _better(value, sol, best):
            best = (value, sol, v)
    report = SolveReport(algorithm="ls23", solution=best[1], value=best[0], swap_count=swaps,
                         guessed_vertices=[best[2]], epsilon=eps, phases=phases)
    return _finish(report, g, coeffs)


def _ls34(g, m: Matroid, eps, coeffs, phases, guessed: list[int]):
    sol, swaps = _single_swap_search(g, m, eps, coeffs)
    phases.append((swaps, swap_bound(eps)))
    best = (coverage(g, sol), tuple(sorted(sol)), list(guessed))
    for s in sorted(sol):
        sub = _ls34(g.without_vertex_edges(s), contract(m, s), eps, coeffs, phases, guessed + [s])
        cand = tuple(sorted(sub[1] + (s,)))
        value = coverage(g, cand)
        if _better(value, cand, best):
            best = (value, cand, sub[2])
    return best


def local_search_34(g, m: Matroid, eps=None, rank_cap: int = DEFAULT_RANK_CAP) -> SolveReport:
    """Local search at ``alpha2 = 5/3`` that recursively guesses a vertex of each local optimum.

    The whole recursion runs once per guessed starting vertex, so the cost
    grows like ``n * k!``; ranks above ``rank_cap`` are refused.
    """
    coeffs = _coeffs(Fraction(5, 3), g)
    k = rank(m)
    if k > rank_cap:
        raise BudgetExceeded(f"rank {k} for the recursive 3/4 search", rank_cap)
    if k < 1:
        raise InputError("the 3/4 search needs a matroid of rank at least 1")
    eps = default_eps(m) if eps is None else as_rational(eps)
    phases: list[tuple[int, int]] = []
    best = None
    for v in _guessable(m):
        value, sol, guessed = _ls34(g.without_vertex_edges(v), contract(m, v), eps, coeffs, phases, [v])
        sol = tuple(sorted(sol + (v,)))
        value = coverage(g, sol)
        if _better(value, sol, best):
            best = (value, sol, guessed)
    report = SolveReport(algorithm="ls34", solution=best[1], value=best[0],
                         swap_count=sum(s for s, _ in phases), guessed_vertices=best[2],
                         epsilon=eps, phases=phases)
    return _finish(report, g, coeffs)


# ---------------------------------------------------------------------------
# two matroids


class _Counter:
    def __init__(self, budget: int):
        self.budget = budget
        self.used = 0

    def tick(self) -> None:
        self.used += 1
        if self.used > self.budget:
            raise BudgetExceeded("exchange enumeration", self.budget)


def find_improving_exchange(tracker: PotentialTracker, matroids: Sequence[Matroid], eps: Fraction,
                            max_remove: int, max_add: int, counter: _Counter | None = None,
                            size_cap: int | None = None):
    """First exchange ``(A, B)`` that raises the potential by more than ``1 + eps``.

    Exchanges are tried with ``|B|`` ascending, then ``|A|`` ascending, each in
    lexicographic order.  Returns None when the current set is a local optimum.
    """
    cur = frozenset(tracker.chosen)
    inside = sorted(cur)
    common = set(ground_elements(matroids[0]))
    for mt in matroids[1:]:
        common &= set(ground_elements(mt))
    outside = sorted(common - cur)
    for nb in range(1, max_add + 1):
        for na in range(0, min(max_remove, len(inside)) + 1):
            if size_cap is not None and len(cur) - na + nb > size_cap:
                continue
            for a in itertools.combinations(inside, na):
                rest = cur - set(a)
                for b in itertools.combinations(outside, nb):
                    if counter is not None:
                        counter.tick()
                    if not _improves(tracker.value + tracker.gain(a, b), tracker.value, eps):
                        continue
                    new = rest | set(b)
                    if all(_indep(mt, new) for mt in matroids):
                        return a, b
    return None


def _two_matroid_inner(g, m1, m2, p, eps, coeffs, counter):
    tracker = PotentialTracker(g, coeffs)
    cands = sorted(set(ground_elements(m1)) & set(ground_elements(m2)))
    _greedy(tracker, cands, lambda s: _indep(m1, s) and _indep(m2, s))
    cap = min(rank(m1), rank(m2))
    swaps = 0
    while True:
        ex = find_improving_exchange(tracker, (m1, m2), eps, 2 * p + 1, 2 * p, counter, cap)
        if ex is None:
            return frozenset(tracker.chosen), swaps
        tracker.apply(*ex)
        swaps += 1


def two_matroid_search(g, m1: Matroid, m2: Matroid, p: int = 1, eps=None,
                       budget: int = DEFAULT_EXCHANGE_BUDGET, alpha2=Fraction(3, 2)) -> SolveReport:
    """Local search over sets independent in both matroids with exchanges of bounded size.

    Each step removes at most ``2p + 1`` and adds at most ``2p`` vertices.  Like
    :func:`contracted_search` it is run once per guessed vertex, contracted
    in both matroids.
    """
    if p < 1:
        raise InputError("p must be at least 1")
    if m1.ground_size != m2.ground_size:
        raise InputError("the two matroids have different ground sets")
    coeffs = _coeffs(alpha2, g)
    k = min(rank(m1), rank(m2))
    eps = Fraction(1, (3 * max(1, k)) ** 2) if eps is None else as_rational(eps)
    counter = _Counter(budget)
    bound = swap_bound(eps)
    best, phases = None, []
    both = [v for v in _guessable(m1) if _indep(m2, frozenset([v]))]
    for v in both:
        sol, swaps = _two_matroid_inner(g.without_vertex_edges(v), contract(m1, v), contract(m2, v),
                                        p, eps, coeffs, counter)
        phases.append((swaps, bound))
        sol = tuple(sorted(sol | {v}))
        value = coverage(g, sol)
        if _better(value, sol, best):
            best = (value, sol, v)
    if best is None:
        best = (Fraction(0), (), None)
    report = SolveReport(algorithm="2matroid", solution=best[1], value=best[0],
                         swap_count=sum(s for s, _ in phases),
                         guessed_vertices=[] if best[2] is None else [best[2]],
                         epsilon=eps, explored=counter.used, phases=phases)
    return _finish(report, g, coeffs)
