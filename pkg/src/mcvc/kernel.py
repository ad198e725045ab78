"""Approximate kernels: greedy on the union of ``tau`` copies of the matroid.

Vertices are scanned by non-increasing weighted degree (ties: smaller index
first) and kept whenever the kept set stays independent in ``tau * M``.  With
``t = ceil(1/eps)`` the multiplier is ``t`` for partition (and uniform)
matroids, ``2t`` for laminar and ``t + k - 1`` for transversal ones.  The
kernel then holds a ``(1 - eps)``-approximate solution.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ._rational import as_rational
from .errors import InputError, UnsupportedMatroid, WitnessInvariantError
from .graph import WeightedGraph, WeightedHypergraph
from .matroid import (LAMINAR, PARTITION, TRANSVERSAL, UNIFORM, CapacitatedMatcher, LaminarTree,
                      MatroidSpec, _indep, build_laminar_tree, rank, transversal_assignment)


@dataclass
class KernelResult:
    kernel_vertices: tuple[int, ...]
    tau: int
    t: int
    eps: Fraction
    kind: str
    rank: int
    size_bound: int
    retained_edges: list[tuple[int, int, Fraction]]
    degw: dict[int, Fraction]
    # transversal only: kernel vertex -> index of the set it is matched to
    assignment: dict[int, int] | None = None
    # hypergraphs only: intersection with the kernel -> total weight
    subset_weights: dict[frozenset[int], Fraction] | None = None
    # transversal only: k/eps + k(k-1), reported but not enforced
    sharper_bound: int | None = None
    tree_nodes: int | None = None
    order: tuple[int, ...] = field(default=(), repr=False)


def robustness_parameter(eps) -> int:
    eps = as_rational(eps)
    if not 0 < eps <= 1:
        raise InputError("eps must lie in (0, 1]")
    return math.ceil(1 / eps)


def union_multiplier(m: MatroidSpec, t: int) -> int:
    if not isinstance(m, MatroidSpec):
        raise UnsupportedMatroid("kernels need a concrete matroid, not a derived view")
    if m.kind in (UNIFORM, PARTITION):
        return t
    if m.kind == LAMINAR:
        return 2 * t
    if m.kind == TRANSVERSAL:
        return t + rank(m) - 1
    raise UnsupportedMatroid(f"no kernel construction for {m.kind} matroids")


def processing_order(degw: Sequence[Fraction]) -> list[int]:
    return sorted(range(len(degw)), key=lambda v: (-degw[v], v))


class UnionGreedy:
    """Incremental independence test in ``tau * M`` for the supported kinds."""

    def __init__(self, m: MatroidSpec, tau: int):
        self.m = m
        self.tau = tau
        self.tree: LaminarTree | None = None
        self.matcher: CapacitatedMatcher | None = None
        if m.kind in (UNIFORM, PARTITION):
            spec = m.as_partition()
            self.part_of = {x: i for i, (part, _) in enumerate(spec.parts) for x in part}
            self.caps = [tau * k for _, k in spec.parts]
            self.counts = [0] * len(spec.parts)
        elif m.kind == LAMINAR:
            self.tree = build_laminar_tree(m)
            self.caps = [tau * nd.bound for nd in self.tree.nodes]
            self.counts = [0] * len(self.tree.nodes)
            self.paths = {v: self.tree.path_to_root(leaf) for v, leaf in self.tree.leaf_of.items()}
        elif m.kind == TRANSVERSAL:
            self.matcher = CapacitatedMatcher(m.transversal_sets, tau)
        else:
            raise UnsupportedMatroid(f"no kernel construction for {m.kind} matroids")

    def try_add(self, v: int) -> bool:
        if self.matcher is not None:
            return self.matcher.try_add(v)
        nodes = self.paths[v] if self.tree is not None else [self.part_of[v]]
        if any(self.counts[i] >= self.caps[i] for i in nodes):
            return False
        for i in nodes:
            self.counts[i] += 1
        return True


def _greedy(degw: Sequence[Fraction], m: MatroidSpec, eps):
    t = robustness_parameter(eps)
    tau = union_multiplier(m, t)
    state = UnionGreedy(m, tau)
    kept = [v for v in processing_order(degw) if state.try_add(v)]
    return kept, t, tau, state


def _result(kept, t, tau, state, m, eps, degw, retained, subset_weights=None) -> KernelResult:
    k = rank(m)
    factor = {UNIFORM: t, PARTITION: t, LAMINAR: 2 * t, TRANSVERSAL: t + k - 1}[m.kind]
    return KernelResult(
        kernel_vertices=tuple(sorted(kept)), tau=tau, t=t, eps=as_rational(eps), kind=m.kind, rank=k,
        size_bound=factor * k, retained_edges=retained, degw={v: degw[v] for v in range(len(degw))},
        assignment=dict(state.matcher.assignment) if state.matcher is not None else None,
        subset_weights=subset_weights,
        sharper_bound=math.ceil(k / as_rational(eps)) + k * (k - 1) if m.kind == TRANSVERSAL else None,
        tree_nodes=len(state.tree.nodes) if state.tree is not None else None,
        order=tuple(kept),
    )


def kernel_from_degrees(degw: Sequence[Fraction], m: MatroidSpec, eps) -> KernelResult:
    """Kernel vertex set from weighted degrees alone (no retained edges)."""
    kept, t, tau, state = _greedy(degw, m, eps)
    return _result(kept, t, tau, state, m, eps, degw, [])


def kernelize(g: WeightedGraph, m: MatroidSpec, eps) -> KernelResult:
    if g.n != m.ground_size:
        raise InputError("graph and matroid disagree on the number of vertices")
    kept, t, tau, state = _greedy(g.deg_w, m, eps)
    inside = set(kept)
    retained = []
    for u, v, w in g.edges:
        if u in inside and v in inside:
            retained.append((u, v, w))
        elif u in inside:
            retained.append((u, u, w))
        elif v in inside:
            retained.append((v, v, w))
    return _result(kept, t, tau, state, m, eps, g.deg_w, retained)


def kernelize_hypergraph(g: WeightedHypergraph, m: MatroidSpec, eps) -> KernelResult:
    if g.n != m.ground_size:
        raise InputError("hypergraph and matroid disagree on the number of vertices")
    kept, t, tau, state = _greedy(g.deg_w, m, eps)
    inside = frozenset(kept)
    subset_weights: dict[frozenset[int], Fraction] = {}
    for e, w in g.hyperedges:
        key = e & inside
        if key:
            subset_weights[key] = subset_weights.get(key, Fraction(0)) + w
    return _result(kept, t, tau, state, m, eps, g.deg_w, [], subset_weights)


# ---------------------------------------------------------------------------
# robustness witnesses


@dataclass
class RobustWitness:
    base: frozenset[int]
    blocks: dict[int, tuple[int, ...]]  # u in O \ V'  ->  U_u, exactly t vertices
    pools: dict[int, tuple[int, ...]] = field(default_factory=dict)  # the full allocated sets


def _check_base(m: MatroidSpec, o) -> frozenset[int]:
    o = frozenset(o)
    if not _indep(m, o):
        raise InputError("the reference set must be independent")
    return o


def laminar_robust_witness(g, m: MatroidSpec, kres: KernelResult, o) -> RobustWitness:
    """Allocate replacement pools for every element of ``o`` missing from the kernel.

    Works on the binary laminar tree: each excluded vertex is charged to its
    blocking node (the deepest saturated node above its leaf), blocking nodes
    are served deepest first, and the allocation descends while a child still
    holds at least ``t`` usable kernel vertices.  Booking counters ``s`` are
    raised up to the root and a node whose counter reaches its bound retires
    all of its remaining vertices.
    """
    if m.kind != LAMINAR:
        raise InputError("laminar witness needs a laminar matroid")
    o = _check_base(m, o)
    t, tau = kres.t, kres.tau
    if tau != 2 * t:
        raise InputError("kernel was not built with the laminar multiplier 2t")
    tree = build_laminar_tree(m)
    nodes = tree.nodes
    kernel = frozenset(kres.kernel_vertices)
    degw = kres.degw
    o_in, o_out = o & kernel, o - kernel

    members: list[set[int]] = [set() for _ in nodes]  # V'_i
    for v in kernel:
        for i in tree.path_to_root(tree.leaf_of[v]):
            members[i].add(v)
    saturated = [len(members[i]) == tau * nodes[i].bound for i in range(len(nodes))]

    blocked: dict[int, list[int]] = {}
    for v in sorted(o_out):
        path = tree.path_to_root(tree.leaf_of[v])  # leaf first, so the first hit is deepest
        node = next((i for i in path if saturated[i]), None)
        if node is None:
            raise WitnessInvariantError(f"vertex {v} left the kernel without a saturated node above it")
        if any(degw[u] < degw[v] for u in members[node]):
            raise WitnessInvariantError(f"blocking node of {v} holds a lighter kernel vertex")
        blocked.setdefault(node, []).append(v)

    s = [len(members[i] & o_in) for i in range(len(nodes))]
    usable = set(kernel - o_in)
    retired = [False] * len(nodes)  # fully booked
    pools: dict[int, tuple[int, ...]] = {}

    def below(i):
        stack = list(nodes[i].children)
        while stack:
            j = stack.pop()
            yield j
            stack.extend(nodes[j].children)

    def check_invariants():
        for i, nd in enumerate(nodes):
            b_sub = len(blocked.get(i, ())) + sum(len(blocked.get(j, ())) for j in below(i))
            if nd.bound < s[i] + b_sub:
                raise WitnessInvariantError(f"booking invariant broken at node {i}: "
                                            f"{nd.bound} < {s[i]} + {b_sub}")
            if saturated[i] and not any(retired[j] for j in tree.path_to_root(i)[1:]):
                have = len(members[i] & usable)
                if have < 2 * t * (nd.bound - s[i]):
                    raise WitnessInvariantError(f"node {i} has {have} usable vertices, "
                                                f"needs {2 * t * (nd.bound - s[i])}")

    check_invariants()
    while any(blocked.values()):
        node = min((i for i, vs in blocked.items() if vs), key=lambda i: (-nodes[i].depth, i))
        v = blocked[node].pop(0)
        here = node
        while True:
            nxt = next((c for c in nodes[here].children if len(members[c] & usable) >= t), None)
            if nxt is None:
                break
            here = nxt
        pool = sorted(members[here] & usable)
        if len(pool) < t:
            raise WitnessInvariantError(f"only {len(pool)} usable vertices for {v}, need {t}")
        pools[v] = tuple(pool)
        usable -= set(pool)
        for j in tree.path_to_root(here):
            s[j] += 1
            if s[j] == nodes[j].bound:
                retired[j] = True
                usable -= members[j]
        check_invariants()

    return RobustWitness(o, {v: p[:t] for v, p in pools.items()}, pools)


def _partition_witness(m: MatroidSpec, kres: KernelResult, o: frozenset[int]) -> RobustWitness:
    spec = m.as_partition()
    kernel = set(kres.kernel_vertices)
    t = kres.t
    blocks = {}
    for part, _ in spec.parts:
        missing = sorted((o & part) - kernel)
        if not missing:
            continue
        spare = sorted((kernel & part) - o)
        if len(spare) < t * len(missing):
            raise WitnessInvariantError("a part holding excluded vertices is not full")
        for i, u in enumerate(missing):
            blocks[u] = tuple(spare[i * t:(i + 1) * t])
    return RobustWitness(o, blocks, dict(blocks))


def _transversal_witness(m: MatroidSpec, kres: KernelResult, o: frozenset[int]) -> RobustWitness:
    if kres.assignment is None:
        raise InputError("transversal kernel result lacks its matching")
    phi = transversal_assignment(m.transversal_sets, o, 1)
    if phi is None:
        raise InputError("the reference set must be independent")
    kernel = set(kres.kernel_vertices)
    matched_to: dict[int, list[int]] = {}
    for v, j in kres.assignment.items():
        matched_to.setdefault(j, []).append(v)
    blocks, pools = {}, {}
    for u in sorted(o - kernel):
        spare = sorted(set(matched_to.get(phi[u], ())) - o)
        if len(spare) < kres.t:
            raise WitnessInvariantError(f"set {phi[u]} keeps only {len(spare)} spare vertices for {u}")
        pools[u] = tuple(spare)
        blocks[u] = tuple(spare[:kres.t])
    return RobustWitness(o, blocks, pools)


def build_witness(g, m: MatroidSpec, kres: KernelResult, o) -> RobustWitness:
    o = _check_base(m, o)
    if m.kind in (UNIFORM, PARTITION):
        return _partition_witness(m, kres, o)
    if m.kind == LAMINAR:
        return laminar_robust_witness(g, m, kres, o)
    if m.kind == TRANSVERSAL:
        return _transversal_witness(m, kres, o)
    raise UnsupportedMatroid(f"no robustness witness for {m.kind} matroids")


def witness_violations(m: MatroidSpec, kres: KernelResult, witness: RobustWitness, *,
                       exhaustive_limit: int = 10**4, samples: int = 2000, seed: int = 0) -> list[str]:
    """Problems with ``witness`` as a robust decomposition; empty when valid.

    Selections are checked exhaustively when there are at most
    ``exhaustive_limit`` of them, otherwise ``samples`` random ones.
    """
    problems = []
    kernel = frozenset(kres.kernel_vertices)
    o = witness.base
    missing = sorted(o - kernel)
    if sorted(witness.blocks) != missing:
        problems.append(f"blocks cover {sorted(witness.blocks)}, expected {missing}")
    used: set[int] = set()
    for u, block in witness.blocks.items():
        if len(set(block)) != kres.t or len(block) != kres.t:
            problems.append(f"block of {u} has {len(set(block))} vertices, expected {kres.t}")
        if not set(block) <= kernel - o:
            problems.append(f"block of {u} leaves the kernel or meets the reference set")
        if used & set(block):
            problems.append(f"block of {u} overlaps an earlier block")
        used |= set(block)
        if any(kres.degw[x] < kres.degw[u] for x in block):
            problems.append(f"block of {u} holds a lighter vertex")
    if problems:
        return problems

    core = o & kernel
    choices = [witness.blocks[u] for u in missing]
    total = math.prod(len(c) for c in choices)
    if total <= exhaustive_limit:
        selections = itertools.product(*choices)
    else:
        rng = random.Random(seed)
        selections = (tuple(rng.choice(c) for c in choices) for _ in range(samples))
    for pick in selections:
        if not _indep(m, core | frozenset(pick)):
            problems.append(f"selection {pick} with the kept part of the reference set is dependent")
            break
    return problems


def verify_robustness(g, m: MatroidSpec, kres: KernelResult, o) -> bool:
    return not witness_violations(m, kres, build_witness(g, m, kres, o))
