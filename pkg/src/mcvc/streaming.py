"""Simulated streaming solvers.

Edges arrive either once each (edge arrival) or grouped per vertex so that
every edge shows up twice (incidence order).  The solvers only keep what the
corresponding algorithm is allowed to keep and report their peak usage in
:class:`StreamStats`.
"""
from __future__ import annotations

import heapq
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from ._rational import as_rational, format_rational
from .errors import ContractError, InputError, ParseError
from .exact import DegreeFormula, maximize
from .graph import WeightedGraph, coverage
from .kernel import kernel_from_degrees, robustness_parameter, union_multiplier
from .matroid import MatroidSpec, UnionView, _indep, find_circuit, rank
from .report import SolveReport

EDGE_ARRIVAL = "edge"
INCIDENCE = "incidence"
MODES = (EDGE_ARRIVAL, INCIDENCE)

Edge = tuple[int, int, Fraction]


class EdgeStream:
    """A replayable stream of weighted edges.

    In incidence mode the stream is a list of ``(vertex, edges)`` groups and
    every edge of the graph appears in the group of each of its endpoints.
    Each call to ``iter`` counts as one pass.
    """

    def __init__(self, mode: str, n: int, items=None, groups=None):
        if mode not in MODES:
            raise InputError(f"unknown stream mode {mode!r}")
        self.mode = mode
        self.n = n
        self.items: list[Edge] = []
        self.groups: list[tuple[int, list[Edge]]] = []
        if mode == EDGE_ARRIVAL:
            self.items = [(int(u), int(v), as_rational(w)) for u, v, w in items or ()]
        else:
            for x, edges in groups or ():
                self.groups.append((int(x), [(int(u), int(v), as_rational(w)) for u, v, w in edges]))
            self.items = [e for _, edges in self.groups for e in edges]
        for u, v, w in self.items:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) outside 0..{n - 1}")
            if w < 0:
                raise InputError("edge weights must be non-negative")
        self.passes = 0

    def __iter__(self) -> Iterator:
        self.passes += 1
        return iter(self.items if self.mode == EDGE_ARRIVAL else self.groups)

    @classmethod
    def from_graph(cls, g: WeightedGraph, mode: str = EDGE_ARRIVAL, seed: int | None = None) -> EdgeStream:
        """Stream the edges of ``g``; a seed shuffles edges (or vertices and their lists)."""
        rng = random.Random(seed) if seed is not None else None
        if mode == EDGE_ARRIVAL:
            edges = list(g.edges)
            if rng:
                rng.shuffle(edges)
            return cls(mode, g.n, items=edges)
        order = list(range(g.n))
        if rng:
            rng.shuffle(order)
        groups = []
        for x in order:
            edges = [g.edges[i] for i in g.incident[x]]
            if rng:
                rng.shuffle(edges)
            groups.append((x, edges))
        return cls(mode, g.n, groups=groups)

    def graph(self) -> WeightedGraph:
        """The streamed graph; an incidence stream contributes each edge from its first group."""
        if self.mode == EDGE_ARRIVAL:
            return WeightedGraph(self.n, self.items)
        visited: set[int] = set()
        edges = []
        for x, group in self.groups:
            visited.add(x)
            for u, v, w in group:
                other = v if u == x else u
                if other == x or other not in visited:
                    edges.append((u, v, w))
        return WeightedGraph(self.n, edges)


def format_stream(stream: EdgeStream) -> str:
    lines = [f"stream {stream.mode} {stream.n}"]
    if stream.mode == EDGE_ARRIVAL:
        lines += [f"e {u} {v} {format_rational(w)}" for u, v, w in stream.items]
    else:
        for x, edges in stream.groups:
            lines.append(f"v {x}")
            lines += [f"e {u} {v} {format_rational(w)}" for u, v, w in edges]
    return "\n".join(lines) + "\n"


def parse_stream(text: str) -> EdgeStream:
    rows = [(i, ln.split()) for i, ln in enumerate(text.splitlines(), 1)]
    rows = [(i, t) for i, t in rows if t and not t[0].startswith("#")]
    if not rows:
        raise ParseError("empty stream file", 1)
    lineno, head = rows[0]
    if len(head) != 3 or head[0] != "stream" or head[1] not in MODES:
        raise ParseError("expected 'stream <edge|incidence> <n>'", lineno)
    mode = head[1]
    try:
        n = int(head[2])
        items: list = []
        groups: list = []
        for lineno, t in rows[1:]:
            if t[0] == "v" and len(t) == 2 and mode == INCIDENCE:
                groups.append((int(t[1]), []))
            elif t[0] == "e" and len(t) == 4:
                edge = (int(t[1]), int(t[2]), as_rational(t[3]))
                if mode == EDGE_ARRIVAL:
                    items.append(edge)
                elif not groups:
                    raise ParseError("edge before the first 'v <idx>' line", lineno)
                else:
                    groups[-1][1].append(edge)
            else:
                raise ParseError(f"unexpected line {' '.join(t)!r}", lineno)
        return EdgeStream(mode, n, items=items, groups=groups)
    except ParseError:
        raise
    except (InputError, ValueError) as exc:
        raise ParseError(str(exc), lineno) from exc


@dataclass
class StreamStats:
    peak_retained_edges: int = 0
    peak_tracked_vertices: int = 0
    passes: int = 0
    # incidence only: largest vertex group held while it is processed
    peak_transient_edges: int = 0
    kernel_vertices: tuple[int, ...] = ()


def _require_mode(stream, mode: str) -> None:
    if not isinstance(stream, EdgeStream):
        raise ContractError("streaming solvers need a replayable EdgeStream, not a one-shot iterator")
    if stream.mode != mode:
        raise ContractError(f"expected a {mode} stream, got {stream.mode}")


def _solve_kernel(kernel, m, degw, edges, algorithm) -> SolveReport:
    return maximize(kernel, lambda s: _indep(m, s), DegreeFormula(degw, edges), algorithm=algorithm)


def two_pass(stream: EdgeStream, m: MatroidSpec, eps) -> tuple[SolveReport, StreamStats]:
    """Degrees in the first pass, kernel edges in the second, then exact search on the kernel."""
    _require_mode(stream, EDGE_ARRIVAL)
    stream.passes = 0
    stats = StreamStats()
    degw = [Fraction(0)] * stream.n
    for u, v, w in stream:
        degw[u] += w
        if v != u:
            degw[v] += w
    kres = kernel_from_degrees(degw, m, eps)
    inside = set(kres.kernel_vertices)
    kept: list[Edge] = []
    for u, v, w in stream:
        if u != v and u in inside and v in inside:
            kept.append((u, v, w))
            stats.peak_retained_edges = max(stats.peak_retained_edges, len(kept))
    stats.peak_tracked_vertices = stream.n
    stats.passes = stream.passes
    stats.kernel_vertices = kres.kernel_vertices
    report = _solve_kernel(kres.kernel_vertices, m, kres.degw, kept, "stream2p")
    report.epsilon = kres.eps
    return report, stats


def heap_capacity(m: MatroidSpec, eps) -> int:
    return math.ceil(2 * rank(m) / as_rational(eps))


def one_pass_edge_arrival(stream: EdgeStream, m: MatroidSpec, eps) -> tuple[SolveReport, StreamStats]:
    """One pass keeping every degree plus each vertex's heaviest incident edges.

    The kernel is built for ``eps / 2`` and the search maximizes the degree
    formula over the kept edges, which can only over-estimate coverage.  The
    report's ``estimate`` is that objective; ``value`` is the true coverage of
    the chosen set, evaluated after the fact.
    """
    _require_mode(stream, EDGE_ARRIVAL)
    eps = as_rational(eps)
    robustness_parameter(eps)
    stream.passes = 0
    cap = heap_capacity(m, eps)
    heaps: list[list[tuple[Fraction, int]]] = [[] for _ in range(stream.n)]
    refs: dict[int, int] = {}
    edges: dict[int, Edge] = {}
    degw = [Fraction(0)] * stream.n
    stats = StreamStats()
    for pos, (u, v, w) in enumerate(stream):
        degw[u] += w
        if v != u:
            degw[v] += w
        edges[pos] = (u, v, w)
        ends = {u, v}
        refs[pos] = len(ends)
        for x in ends:
            heapq.heappush(heaps[x], (w, -pos))
        for x in ends:
            if len(heaps[x]) > cap:
                dropped = -heapq.heappop(heaps[x])[1]
                refs[dropped] -= 1
                if refs[dropped] == 0:
                    del refs[dropped], edges[dropped]
        stats.peak_retained_edges = max(stats.peak_retained_edges, len(edges))
    stats.peak_tracked_vertices = stream.n
    stats.passes = stream.passes

    kres = kernel_from_degrees(degw, m, eps / 2)
    stats.kernel_vertices = kres.kernel_vertices
    inside = set(kres.kernel_vertices)
    kept = [e for e in edges.values() if e[0] != e[1] and e[0] in inside and e[1] in inside]
    report = _solve_kernel(kres.kernel_vertices, m, kres.degw, kept, "stream1p")
    report.estimate = report.value
    report.value = coverage(WeightedGraph(stream.n, stream.items), report.solution)
    report.epsilon = eps
    return report, stats


def one_pass_incidence(stream: EdgeStream, m: MatroidSpec, eps) -> tuple[SolveReport, StreamStats]:
    """One pass over vertex groups maintaining a kernel independent in ``tau * M``.

    When a completed vertex makes the kernel dependent, the lightest vertex of
    the resulting circuit (ties: larger index) is evicted and its edges are
    forgotten.  Only edges between current kernel vertices are stored.
    """
    _require_mode(stream, INCIDENCE)
    t = robustness_parameter(eps)
    union = UnionView(m, union_multiplier(m, t))
    stream.passes = 0
    stats = StreamStats()
    kernel: set[int] = set()
    degw: dict[int, Fraction] = {}
    stored: dict[int, Edge] = {}
    touching: dict[int, set[int]] = {}  # kernel vertex -> ids of stored edges
    next_id = 0
    seen_vertices: set[int] = set()
    for x, group in stream:
        if x in seen_vertices:
            raise ContractError(f"vertex {x} has two groups; the stream is not grouped by vertex")
        seen_vertices.add(x)
        stats.peak_transient_edges = max(stats.peak_transient_edges, len(group))
        stats.peak_tracked_vertices = max(stats.peak_tracked_vertices, len(kernel) + 1)
        d = Fraction(0)
        for u, v, w in group:
            if x not in (u, v):
                raise ContractError(f"edge ({u}, {v}) listed in the group of vertex {x}")
            d += w
        degw[x] = d
        cand = frozenset(kernel | {x})
        if not _indep(union, cand):
            out = min(find_circuit(union, cand), key=lambda y: (degw[y], -y))
            if out == x:
                del degw[x]
                continue
            kernel.discard(out)
            del degw[out]
            for eid in touching.pop(out):
                u, v, _ = stored.pop(eid)
                touching[v if u == out else u].discard(eid)
        kernel.add(x)
        touching[x] = set()
        for e in group:
            u, v, _ = e
            other = v if u == x else u
            if other != x and other in kernel:
                stored[next_id] = e
                touching[x].add(next_id)
                touching[other].add(next_id)
                next_id += 1
        stats.peak_retained_edges = max(stats.peak_retained_edges, len(stored))
    stats.passes = stream.passes
    stats.kernel_vertices = tuple(sorted(kernel))
    report = _solve_kernel(sorted(kernel), m, degw, stored.values(), "streaminc")
    report.epsilon = as_rational(eps)
    return report, stats
