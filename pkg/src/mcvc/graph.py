"""Edge-weighted graphs and hypergraphs, coverage evaluation and generators."""
from __future__ import annotations

import random
from fractions import Fraction
from math import lcm
from typing import Iterable

from ._rational import as_rational, format_rational
from .errors import InputError, ParseError
from .matroid import LAMINAR, PARTITION, TRANSVERSAL, UNIFORM, MatroidSpec


class _Weighted:
    """Common storage: each edge is a tuple of distinct member vertices plus a weight."""

    n: int
    members: list[tuple[int, ...]]
    weights: list[Fraction]

    def _index(self) -> None:
        self.incident: list[list[int]] = [[] for _ in range(self.n)]
        self.deg_w: list[Fraction] = [Fraction(0)] * self.n
        for i, (mem, w) in enumerate(zip(self.members, self.weights)):
            if w < 0:
                raise InputError(f"edge {i} has negative weight {w}")
            for v in mem:
                if not 0 <= v < self.n:
                    raise InputError(f"edge {i} touches vertex {v} outside 0..{self.n - 1}")
                self.incident[v].append(i)
                self.deg_w[v] += w

    @property
    def m(self) -> int:
        return len(self.weights)

    def check_vertices(self, s: Iterable[int]) -> frozenset[int]:
        s = frozenset(s)
        for v in s:
            if not 0 <= v < self.n:
                raise InputError(f"vertex {v} outside 0..{self.n - 1}")
        return s

    def scaled_weights(self) -> tuple[list[int], int]:
        """Integer weights ``w * scale`` with ``scale`` the lcm of denominators."""
        scale = lcm(1, *(w.denominator for w in self.weights))
        return [int(w * scale) for w in self.weights], scale


class WeightedGraph(_Weighted):
    """Undirected multigraph with non-negative rational edge weights.

    Parallel edges stay distinct.  A self-loop ``(v, v, w)`` counts once
    towards ``deg_w(v)`` and is covered exactly when ``v`` is chosen.
    """

    eta = 2

    def __init__(self, n: int, edges: Iterable[tuple[int, int, object]]):
        if n < 0:
            raise InputError("vertex count must be non-negative")
        self.n = n
        self.edges: list[tuple[int, int, Fraction]] = []
        for u, v, w in edges:
            u, v = int(u), int(v)
            self.edges.append((u, v, as_rational(w)))
        self.members = [(u,) if u == v else (u, v) for u, v, _ in self.edges]
        self.weights = [w for _, _, w in self.edges]
        self._index()

    def __eq__(self, other):
        return isinstance(other, WeightedGraph) and self.n == other.n and self.edges == other.edges

    def __repr__(self):
        return f"WeightedGraph(n={self.n}, m={self.m})"

    def without_vertex_edges(self, v: int) -> WeightedGraph:
        """Same vertex set with every edge incident to ``v`` removed."""
        return WeightedGraph(self.n, [e for e in self.edges if v not in (e[0], e[1])])


class WeightedHypergraph(_Weighted):
    def __init__(self, n: int, hyperedges: Iterable[tuple[Iterable[int], object]], eta: int | None = None):
        self.n = n
        self.hyperedges: list[tuple[frozenset[int], Fraction]] = []
        for vs, w in hyperedges:
            vs = frozenset(int(x) for x in vs)
            if not vs:
                raise InputError("hyperedges must be non-empty")
            self.hyperedges.append((vs, as_rational(w)))
        largest = max((len(e) for e, _ in self.hyperedges), default=1)
        self.eta = largest if eta is None else eta
        if largest > self.eta:
            raise InputError(f"hyperedge of size {largest} exceeds eta={self.eta}")
        self.members = [tuple(sorted(e)) for e, _ in self.hyperedges]
        self.weights = [w for _, w in self.hyperedges]
        self._index()

    def __eq__(self, other):
        return (isinstance(other, WeightedHypergraph) and self.n == other.n
                and self.eta == other.eta and self.hyperedges == other.hyperedges)

    def __repr__(self):
        return f"WeightedHypergraph(n={self.n}, m={self.m}, eta={self.eta})"


def coverage(g: _Weighted, s: Iterable[int]) -> Fraction:
    """Total weight of edges with at least one endpoint in ``s``."""
    s = g.check_vertices(s)
    seen: set[int] = set()
    total = Fraction(0)
    for v in s:
        for i in g.incident[v]:
            if i not in seen:
                seen.add(i)
                total += g.weights[i]
    return total


def covered_multiplicity(g: _Weighted, s: Iterable[int], e: int) -> int:
    """Number of members of edge ``e`` that lie in ``s``."""
    s = frozenset(s)
    return sum(1 for v in g.members[e] if v in s)


# ---------------------------------------------------------------------------
# generators


def gen_fig3(eps) -> tuple[WeightedGraph, MatroidSpec]:
    """Two disjoint edges of weight 2 and 1-eps under a rank-2 uniform matroid."""
    eps = as_rational(eps)
    if not 0 < eps < 1:
        raise InputError("eps must lie in (0, 1)")
    g = WeightedGraph(4, [(0, 1, 2), (2, 3, 1 - eps)])
    return g, MatroidSpec.uniform(4, 2)


def _biclique_with_pendants(k: int, pendant: Fraction) -> WeightedGraph:
    # a_i = i, b_i = k + i, c_i = 2k + i
    edges = [(a, k + b, Fraction(1)) for a in range(k) for b in range(k)]
    edges += [(k + i, 2 * k + i, pendant) for i in range(k)]
    return WeightedGraph(3 * k, edges)


def gen_fig4(k: int) -> tuple[WeightedGraph, MatroidSpec]:
    """Complete bipartite a-b layer of unit weights plus b_i-c_i pendants of weight k/2.

    Vertices are numbered a_0..a_{k-1}, b_0..b_{k-1}, c_0..c_{k-1}.
    """
    if k < 2:
        raise InputError("k must be at least 2")
    return _biclique_with_pendants(k, Fraction(k, 2)), MatroidSpec.uniform(3 * k, k)


def gen_fig6(k: int, eps) -> tuple[WeightedGraph, MatroidSpec]:
    """As :func:`gen_fig4` with pendant weight ``k * (1 - eps)``."""
    eps = as_rational(eps)
    if k < 2:
        raise InputError("k must be at least 2")
    if not 0 < eps < 1:
        raise InputError("eps must lie in (0, 1)")
    return _biclique_with_pendants(k, k * (1 - eps)), MatroidSpec.uniform(3 * k, k)


def random_matroid(n: int, kind: str, rng: random.Random, max_rank: int = 4) -> MatroidSpec:
    """A random matroid of the given kind on ``n`` elements with rank in 1..max_rank."""
    if n < 1:
        raise InputError("need at least one element")
    max_rank = max(1, min(max_rank, n))
    if kind == UNIFORM:
        return MatroidSpec.uniform(n, rng.randint(1, max_rank))
    if kind == PARTITION:
        r = rng.randint(1, max_rank)
        parts = _random_split(list(range(n)), r, rng)
        budget = max_rank
        out = []
        for i, part in enumerate(parts):
            left = len(parts) - i - 1
            k = rng.randint(1, max(1, min(len(part), budget - left)))
            budget -= k
            out.append((part, k))
        return MatroidSpec.partition(n, out)
    if kind == LAMINAR:
        return _random_laminar(n, rng, max_rank)
    if kind == TRANSVERSAL:
        k = rng.randint(1, max_rank)
        sets = [rng.sample(range(n), rng.randint(1, n)) for _ in range(k)]
        return MatroidSpec.transversal(n, sets)
    raise InputError(f"cannot generate random {kind} matroids")


def _random_split(items: list[int], r: int, rng: random.Random) -> list[list[int]]:
    rng.shuffle(items)
    r = min(r, len(items))
    cuts = sorted(rng.sample(range(1, len(items)), r - 1)) if r > 1 else []
    bounds = [0, *cuts, len(items)]
    return [sorted(items[a:b]) for a, b in zip(bounds, bounds[1:])]


def _random_laminar(n: int, rng: random.Random, max_rank: int) -> MatroidSpec:
    family: list[tuple[list[int], int]] = []

    def grow(items: list[int], cap: int, depth: int) -> None:
        if len(items) < 2 or depth > 3 or rng.random() < 0.3:
            return
        for group in _random_split(list(items), rng.randint(2, min(3, len(items))), rng):
            k = rng.randint(0 if rng.random() < 0.05 else 1, max(1, min(cap, len(group))))
            if rng.random() < 0.75:
                family.append((group, k))
            grow(group, k, depth + 1)

    top = _random_split(list(range(n)), rng.randint(1, min(max_rank, n)), rng)
    budget = max_rank
    tops = []
    for i, group in enumerate(top):
        left = len(top) - i - 1
        k = rng.randint(1, max(1, min(len(group), budget - left)))
        budget -= k
        tops.append((group, k))
    total = sum(k for _, k in tops)
    for group, k in tops:
        family.append((group, k))
        grow(group, k, 1)
    if rng.random() < 0.5:
        family.append((list(range(n)), rng.randint(1, total)))
    return MatroidSpec.laminar(n, family)


def gen_random(n: int, m_edges: int, weight_range=(1, 10), matroid_kind: str = PARTITION,
               seed: int = 0, max_rank: int = 4) -> tuple[WeightedGraph, MatroidSpec]:
    """Random simple graph with integer weights in ``weight_range`` plus a random matroid."""
    if n < 1:
        raise InputError("n must be at least 1")
    if m_edges < 0 or m_edges > n * (n - 1) // 2:
        raise InputError(f"cannot place {m_edges} edges on {n} vertices")
    rng = random.Random(seed)
    lo, hi = weight_range
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = sorted(rng.sample(pairs, m_edges))
    g = WeightedGraph(n, [(u, v, rng.randint(lo, hi)) for u, v in chosen])
    return g, random_matroid(n, matroid_kind, rng, max_rank)


def gen_random_hypergraph(n: int, m_edges: int, eta: int = 3, weight_range=(1, 10),
                          matroid_kind: str = PARTITION, seed: int = 0,
                          max_rank: int = 4) -> tuple[WeightedHypergraph, MatroidSpec]:
    rng = random.Random(seed)
    lo, hi = weight_range
    edges = []
    for _ in range(m_edges):
        size = rng.randint(1, min(eta, n))
        edges.append((rng.sample(range(n), size), rng.randint(lo, hi)))
    return WeightedHypergraph(n, edges, eta), random_matroid(n, matroid_kind, rng, max_rank)


# ---------------------------------------------------------------------------
# text format


def format_graph(g: _Weighted) -> str:
    if isinstance(g, WeightedHypergraph):
        lines = [f"hgraph {g.n} {g.m} {g.eta}"]
        lines += [" ".join(["he", format_rational(w), *map(str, sorted(e))]) for e, w in g.hyperedges]
    else:
        lines = [f"graph {g.n} {g.m}"]
        lines += [f"e {u} {v} {format_rational(w)}" for u, v, w in g.edges]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> WeightedGraph | WeightedHypergraph:
    rows = [(i, ln.split()) for i, ln in enumerate(text.splitlines(), 1)]
    rows = [(i, t) for i, t in rows if t and not t[0].startswith("#")]
    if not rows:
        raise ParseError("empty graph file", 1)
    lineno, head = rows[0]
    try:
        if head[0] == "graph" and len(head) == 3:
            n, m = int(head[1]), int(head[2])
            edges = []
            for lineno, t in rows[1:]:
                if t[0] != "e" or len(t) != 4:
                    raise ParseError("expected 'e <u> <v> <w>'", lineno)
                edges.append((int(t[1]), int(t[2]), as_rational(t[3])))
            if len(edges) != m:
                raise ParseError(f"header announces {m} edges, found {len(edges)}", lineno)
            return WeightedGraph(n, edges)
        if head[0] == "hgraph" and len(head) == 4:
            n, m, eta = int(head[1]), int(head[2]), int(head[3])
            hedges = []
            for lineno, t in rows[1:]:
                if t[0] != "he" or len(t) < 3:
                    raise ParseError("expected 'he <w> <idx...>'", lineno)
                hedges.append(([int(x) for x in t[2:]], as_rational(t[1])))
            if len(hedges) != m:
                raise ParseError(f"header announces {m} hyperedges, found {len(hedges)}", lineno)
            return WeightedHypergraph(n, hedges, eta)
    except ParseError:
        raise
    except (InputError, ValueError) as exc:
        raise ParseError(str(exc), lineno) from exc
    raise ParseError("expected 'graph <n> <m>' or 'hgraph <n> <m> <eta>'", rows[0][0])


__all__ = [
    "WeightedGraph", "WeightedHypergraph", "coverage", "covered_multiplicity",
    "gen_fig3", "gen_fig4", "gen_fig6", "gen_random", "gen_random_hypergraph",
    "random_matroid", "format_graph", "parse_graph",
]
