"""Matroid representations and their oracles.

Elements are the integers ``0..ground_size-1``.  A constraint is either a
:class:`MatroidSpec` (uniform, partition, laminar, transversal or explicit) or
one of the derived views :class:`UnionView` (the union of ``multiplier``
copies of a matroid) and :class:`ContractView` (contraction by an independent
set).  Every oracle in this module accepts any of the three.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Union

from .errors import ContractError, InputError, ParseError

UNIFORM = "uniform"
PARTITION = "partition"
LAMINAR = "laminar"
TRANSVERSAL = "transversal"
EXPLICIT = "explicit"
KINDS = (UNIFORM, PARTITION, LAMINAR, TRANSVERSAL, EXPLICIT)

# Explicit matroids enumerate bases; they exist for tests on tiny ground sets.
EXPLICIT_MAX_GROUND = 20


class MatroidError(InputError):
    pass


def _elements(n: int, items: Iterable[int], what: str) -> frozenset[int]:
    out = frozenset(int(x) for x in items)
    for x in out:
        if not 0 <= x < n:
            raise MatroidError(f"{what}: element {x} outside ground set of size {n}")
    return out


@dataclass(frozen=True)
class MatroidSpec:
    kind: str
    ground_size: int
    uniform_rank: int = 0
    parts: tuple[tuple[frozenset[int], int], ...] = ()
    laminar_sets: tuple[tuple[frozenset[int], int], ...] = ()
    transversal_sets: tuple[frozenset[int], ...] = ()
    explicit_bases: tuple[frozenset[int], ...] = ()
    _base_masks: tuple[int, ...] = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.ground_size
        if self.kind not in KINDS:
            raise MatroidError(f"unknown matroid kind {self.kind!r}")
        if n < 0:
            raise MatroidError("ground_size must be non-negative")
        if self.kind == UNIFORM and self.uniform_rank < 0:
            raise MatroidError("uniform rank must be non-negative")
        if self.kind == PARTITION:
            seen: set[int] = set()
            for part, k in self.parts:
                _elements(n, part, "partition part")
                if k < 0:
                    raise MatroidError("partition bounds must be non-negative")
                if seen & part:
                    raise MatroidError("partition parts overlap")
                seen |= part
            if len(seen) != n:
                raise MatroidError("partition parts do not cover the ground set")
        if self.kind == LAMINAR:
            for s, k in self.laminar_sets:
                _elements(n, s, "laminar set")
                if not s:
                    raise MatroidError("laminar sets must be non-empty")
                if k < 0:
                    raise MatroidError("laminar bounds must be non-negative")
            for (a, _), (b, _) in itertools.combinations(self.laminar_sets, 2):
                if a & b and not (a <= b or b <= a):
                    raise MatroidError(f"family is not laminar: {sorted(a)} and {sorted(b)} cross")
        if self.kind == TRANSVERSAL:
            for s in self.transversal_sets:
                _elements(n, s, "transversal set")
        if self.kind == EXPLICIT:
            if n > EXPLICIT_MAX_GROUND:
                raise MatroidError(f"explicit matroids are limited to {EXPLICIT_MAX_GROUND} elements")
            if not self.explicit_bases:
                raise MatroidError("explicit matroid needs at least one base")
            sizes = {len(b) for b in self.explicit_bases}
            if len(sizes) != 1:
                raise MatroidError("explicit bases must all have the same size")
            masks = []
            for b in self.explicit_bases:
                _elements(n, b, "explicit base")
                masks.append(sum(1 << x for x in b))
            object.__setattr__(self, "_base_masks", tuple(masks))

    @classmethod
    def uniform(cls, n: int, k: int) -> MatroidSpec:
        return cls(UNIFORM, n, uniform_rank=k)

    @classmethod
    def partition(cls, n: int, parts: Iterable[tuple[Iterable[int], int]]) -> MatroidSpec:
        return cls(PARTITION, n, parts=tuple((frozenset(p), int(k)) for p, k in parts))

    @classmethod
    def laminar(cls, n: int, sets: Iterable[tuple[Iterable[int], int]]) -> MatroidSpec:
        return cls(LAMINAR, n, laminar_sets=tuple((frozenset(s), int(k)) for s, k in sets))

    @classmethod
    def transversal(cls, n: int, sets: Iterable[Iterable[int]]) -> MatroidSpec:
        return cls(TRANSVERSAL, n, transversal_sets=tuple(frozenset(s) for s in sets))

    @classmethod
    def explicit(cls, n: int, bases: Iterable[Iterable[int]]) -> MatroidSpec:
        uniq = sorted({frozenset(b) for b in bases}, key=sorted)
        return cls(EXPLICIT, n, explicit_bases=tuple(uniq))

    def as_partition(self) -> MatroidSpec:
        """A uniform matroid seen as a one-part partition matroid."""
        if self.kind == PARTITION:
            return self
        if self.kind != UNIFORM:
            raise MatroidError(f"{self.kind} matroid is not a partition matroid")
        if self.ground_size == 0:
            return MatroidSpec.partition(0, [])
        return MatroidSpec.partition(self.ground_size, [(range(self.ground_size), self.uniform_rank)])


@dataclass(frozen=True)
class UnionView:
    """The union of ``multiplier`` copies of ``base``."""

    base: "Matroid"
    multiplier: int

    def __post_init__(self):
        if self.multiplier < 1:
            raise MatroidError("union multiplier must be at least 1")

    @property
    def ground_size(self) -> int:
        return self.base.ground_size


@dataclass(frozen=True)
class ContractView:
    """``base`` contracted by the independent set ``contracted_elements``."""

    base: "Matroid"
    contracted_elements: frozenset[int]

    def __post_init__(self):
        c = _elements(self.base.ground_size, self.contracted_elements, "contracted set")
        object.__setattr__(self, "contracted_elements", c)
        if not _indep(self.base, c):
            raise MatroidError("can only contract an independent set")

    @property
    def ground_size(self) -> int:
        return self.base.ground_size


Matroid = Union[MatroidSpec, UnionView, ContractView]


def contract(m: Matroid, v: int) -> ContractView:
    """Contract ``m`` by one more element, flattening nested contractions."""
    if isinstance(m, ContractView):
        return ContractView(m.base, m.contracted_elements | {v})
    return ContractView(m, frozenset([v]))


def ground_elements(m: Matroid) -> list[int]:
    """Elements that may appear in an independent set of ``m`` (ascending)."""
    if isinstance(m, ContractView):
        return [x for x in ground_elements(m.base) if x not in m.contracted_elements]
    if isinstance(m, UnionView):
        return ground_elements(m.base)
    return list(range(m.ground_size))


# ---------------------------------------------------------------------------
# transversal matching


class CapacitatedMatcher:
    """Incremental bipartite matching of elements into sets with a common capacity.

    ``try_add`` searches for an augmenting path; on failure the current
    matching is left untouched.
    """

    def __init__(self, sets: Iterable[Iterable[int]], capacity: int):
        self.sets = [frozenset(s) for s in sets]
        self.capacity = capacity
        self.member_of: dict[int, list[int]] = {}
        for j, s in enumerate(self.sets):
            for x in s:
                self.member_of.setdefault(x, []).append(j)
        self.assignment: dict[int, int] = {}
        self.load: list[list[int]] = [[] for _ in self.sets]

    def _augment(self, x: int, seen: set[int]) -> bool:
        for j in self.member_of.get(x, ()):
            if j in seen:
                continue
            seen.add(j)
            if len(self.load[j]) < self.capacity:
                self._move(x, j)
                return True
            for y in list(self.load[j]):
                if self._augment(y, seen):
                    self._move(x, j)
                    return True
        return False

    def _move(self, x: int, j: int) -> None:
        old = self.assignment.get(x)
        if old is not None:
            self.load[old].remove(x)
        self.assignment[x] = j
        self.load[j].append(x)

    def try_add(self, x: int) -> bool:
        if x in self.assignment:
            return True
        return self._augment(x, set())

    def remove(self, x: int) -> None:
        j = self.assignment.pop(x)
        self.load[j].remove(x)


def transversal_assignment(sets, s: Iterable[int], capacity: int = 1) -> dict[int, int] | None:
    matcher = CapacitatedMatcher(sets, capacity)
    for x in sorted(s):
        if not matcher.try_add(x):
            return None
    return dict(matcher.assignment)


# ---------------------------------------------------------------------------
# independence


def _as_set(m: Matroid, s: Iterable[int]) -> frozenset[int]:
    return _elements(m.ground_size, s, "query set")


def _spec_indep(spec: MatroidSpec, s: frozenset[int], scale: int) -> bool:
    kind = spec.kind
    if kind == UNIFORM:
        return len(s) <= scale * spec.uniform_rank
    if kind == PARTITION:
        return all(len(s & part) <= scale * k for part, k in spec.parts)
    if kind == LAMINAR:
        return all(len(s & vs) <= scale * k for vs, k in spec.laminar_sets)
    if kind == TRANSVERSAL:
        return transversal_assignment(spec.transversal_sets, s, scale) is not None
    if scale != 1:
        return matroid_partition(spec, s, scale) is not None
    mask = sum(1 << x for x in s)
    return any(mask & ~b == 0 for b in spec._base_masks)


def _indep(m: Matroid, s: frozenset[int]) -> bool:
    if isinstance(m, ContractView):
        c = m.contracted_elements
        return not (s & c) and _indep(m.base, s | c)
    if isinstance(m, UnionView):
        return _union_indep(m.base, m.multiplier, s)
    return _spec_indep(m, s, 1)


def _union_indep(base: Matroid, tau: int, s: frozenset[int]) -> bool:
    if tau == 1:
        return _indep(base, s)
    if isinstance(base, MatroidSpec):
        return _spec_indep(base, s, tau)
    if isinstance(base, UnionView):
        return _union_indep(base.base, base.multiplier * tau, s)
    return matroid_partition(base, s, tau) is not None


def is_independent(m: Matroid, s: Iterable[int]) -> bool:
    return _indep(m, _as_set(m, s))


def matroid_partition(m: Matroid, s: Iterable[int], tau: int) -> list[frozenset[int]] | None:
    """Split ``s`` into ``tau`` sets independent in ``m``, or return None.

    Generic matroid-partitioning by shortest augmenting paths in the exchange
    graph; only the independence oracle of ``m`` is used.
    """
    blocks: list[set[int]] = [set() for _ in range(tau)]
    where: dict[int, int] = {}
    for x in sorted(s):
        if not _indep(m, frozenset([x])):
            return None
        if not _partition_augment(m, blocks, where, x):
            return None
    return [frozenset(b) for b in blocks]


def _partition_augment(m, blocks, where, x) -> bool:
    # BFS over elements; an arc y -> z means y can replace z in z's block.
    prev: dict[int, int | None] = {x: None}
    queue = deque([x])
    while queue:
        y = queue.popleft()
        for j, block in enumerate(blocks):
            if where.get(y) == j:
                continue
            if _indep(m, frozenset(block | {y})):
                # shift every element on the path one step forward
                cur, target = y, j
                while cur is not None:
                    old = where.get(cur)
                    if old is not None:
                        blocks[old].discard(cur)
                    blocks[target].add(cur)
                    where[cur] = target
                    nxt = prev[cur]
                    target = old
                    cur = nxt
                return True
            for z in sorted(block):
                if z not in prev and _indep(m, frozenset(block - {z} | {y})):
                    prev[z] = y
                    queue.append(z)
    return False


def rank(m: Matroid) -> int:
    """Size of a maximum independent set, built greedily by ascending index."""
    if isinstance(m, MatroidSpec) and m.kind == UNIFORM:
        return min(m.uniform_rank, m.ground_size)
    chosen: set[int] = set()
    for x in ground_elements(m):
        if _indep(m, frozenset(chosen | {x})):
            chosen.add(x)
    return len(chosen)


def find_circuit(m: Matroid, s: Iterable[int]) -> frozenset[int]:
    """The elements ``e`` of a dependent ``s`` for which ``s - e`` is independent.

    When ``s`` is an independent set plus one element this is its unique circuit.
    """
    s = _as_set(m, s)
    if _indep(m, s):
        raise ContractError("find_circuit called on an independent set")
    return frozenset(e for e in s if _indep(m, s - {e}))


# ---------------------------------------------------------------------------
# laminar tree


@dataclass
class LaminarNode:
    id: int
    elements: frozenset[int]
    bound: int
    parent: int | None
    children: list[int]
    depth: int
    added: bool  # not a member of the input family


@dataclass
class LaminarTree:
    nodes: list[LaminarNode]
    leaf_of: dict[int, int]

    @property
    def root(self) -> LaminarNode:
        return self.nodes[0]

    def path_to_root(self, node_id: int) -> list[int]:
        path = []
        cur: int | None = node_id
        while cur is not None:
            path.append(cur)
            cur = self.nodes[cur].parent
        return path

    def is_independent(self, s: Iterable[int], scale: int = 1) -> bool:
        s = frozenset(s)
        return all(len(s & nd.elements) <= scale * nd.bound for nd in self.nodes)


def build_laminar_tree(spec: MatroidSpec) -> LaminarTree:
    """Binary laminar tree with the root ``(V, rank)`` and one leaf per element.

    Nodes with more than two children are split in halves; an inserted node
    gets bound ``min(parent bound, |set|)``.  Bounds are clipped to the parent
    bound so that they never increase downwards.  None of this changes the
    independent sets, nor those of any union of copies.
    """
    if spec.kind != LAMINAR:
        raise MatroidError(f"expected a laminar matroid, got {spec.kind}")
    n = spec.ground_size
    if n == 0:
        return LaminarTree(nodes=[], leaf_of={})

    family: dict[frozenset[int], int] = {}
    for s, k in spec.laminar_sets:
        family[s] = min(k, family.get(s, k))
    ground = frozenset(range(n))
    bounds: dict[frozenset[int], int] = dict(family)
    bounds[ground] = rank(spec)
    for v in range(n):
        single = frozenset([v])
        bounds[single] = min(1, bounds.get(single, 1))

    order = sorted(bounds, key=lambda s: (-len(s), sorted(s)))
    children: dict[frozenset[int], list[frozenset[int]]] = {s: [] for s in order}
    deepest: dict[int, frozenset[int]] = {}
    for s in order:
        if s != ground:
            children[deepest[min(s)]].append(s)
        for x in s:
            deepest[x] = s

    nodes: list[LaminarNode] = []
    leaf_of: dict[int, int] = {}

    def make(elems, bound, parent, depth, added, kids):
        node_id = len(nodes)
        if parent is not None:
            bound = min(bound, nodes[parent].bound)
        nodes.append(LaminarNode(node_id, elems, bound, parent, [], depth, added))
        if parent is not None:
            nodes[parent].children.append(node_id)
        if len(elems) == 1:
            leaf_of[next(iter(elems))] = node_id
        attach(node_id, depth, kids)
        return node_id

    def attach(node_id, depth, kids):
        kids = sorted(kids, key=min)
        if len(kids) <= 2:
            for c in kids:
                make(c, bounds[c], node_id, depth + 1, c not in family, children[c])
            return
        half = len(kids) // 2
        for group in (kids[:half], kids[half:]):
            if len(group) == 1:
                c = group[0]
                make(c, bounds[c], node_id, depth + 1, c not in family, children[c])
            else:
                elems = frozenset().union(*group)
                make(elems, min(nodes[node_id].bound, len(elems)), node_id, depth + 1, True, group)

    make(ground, bounds[ground], None, 0, ground not in family, children[ground])
    return LaminarTree(nodes=nodes, leaf_of=leaf_of)


# ---------------------------------------------------------------------------
# exhaustive helpers (small ground sets only)


def independent_masks(m: Matroid) -> set[int]:
    """Bitmasks of all independent sets, grown level by level."""
    elems = ground_elements(m)
    found = {0}
    frontier = [0]
    while frontier:
        nxt = set()
        for mask in frontier:
            for x in elems:
                bit = 1 << x
                if mask & bit or (mask | bit) in nxt:
                    continue
                # hereditary closure lets us grow only from the largest element
                if mask >> x:
                    continue
                if _indep(m, frozenset(y for y in elems if (mask | bit) >> y & 1)):
                    nxt.add(mask | bit)
        found |= nxt
        frontier = list(nxt)
    return found


def explicit_from(m: Matroid) -> MatroidSpec:
    """Explicit matroid with the same bases as ``m``."""
    masks = independent_masks(m)
    top = max(bin(x).count("1") for x in masks)
    bases = [[i for i in range(m.ground_size) if x >> i & 1] for x in masks if bin(x).count("1") == top]
    return MatroidSpec.explicit(m.ground_size, bases)


def axiom_violations(m: Matroid) -> list[str]:
    """Exhaustively check the hereditary and exchange axioms over all subsets."""
    n = m.ground_size
    problems = []
    indep = {mask for mask in range(1 << n) if _indep(m, frozenset(i for i in range(n) if mask >> i & 1))}
    if 0 not in indep:
        problems.append("empty set is dependent")
    for mask in indep:
        sub = mask
        while sub:
            sub = (sub - 1) & mask
            if sub not in indep:
                problems.append(f"hereditary: {mask:b} independent but subset {sub:b} is not")
                break
    by_size: dict[int, list[int]] = {}
    for mask in indep:
        by_size.setdefault(bin(mask).count("1"), []).append(mask)
    for size, xs in by_size.items():
        for x in xs:
            for y in by_size.get(size + 1, ()):
                diff = y & ~x
                if not any((x | (1 << e)) in indep for e in range(n) if diff >> e & 1):
                    problems.append(f"exchange: cannot extend {x:b} from {y:b}")
    return problems


# ---------------------------------------------------------------------------
# text format


def format_matroid(spec: MatroidSpec) -> str:
    lines = [f"matroid {spec.kind} {spec.ground_size}"]
    if spec.kind == UNIFORM:
        lines.append(f"uniform {spec.uniform_rank}")
    for part, k in spec.parts:
        lines.append(" ".join(["part", str(k), *map(str, sorted(part))]))
    for s, k in spec.laminar_sets:
        lines.append(" ".join(["laminar", str(k), *map(str, sorted(s))]))
    for s in spec.transversal_sets:
        lines.append(" ".join(["tset", *map(str, sorted(s))]))
    for b in spec.explicit_bases:
        lines.append(" ".join(["base", *map(str, sorted(b))]))
    return "\n".join(lines) + "\n"


_LINE_KIND = {"uniform": UNIFORM, "part": PARTITION, "laminar": LAMINAR, "tset": TRANSVERSAL, "base": EXPLICIT}


def parse_matroid(text: str) -> MatroidSpec:
    lines = [(i, ln.split()) for i, ln in enumerate(text.splitlines(), 1)]
    lines = [(i, toks) for i, toks in lines if toks and not toks[0].startswith("#")]
    if not lines:
        raise ParseError("empty matroid file", 1)
    lineno, head = lines[0]
    if len(head) != 3 or head[0] != "matroid" or head[1] not in KINDS:
        raise ParseError("expected 'matroid <kind> <n>'", lineno)
    kind = head[1]
    n = _int(head[2], lineno)
    uniform_rank = None
    groups: list[tuple[frozenset[int], int]] = []
    sets: list[frozenset[int]] = []
    for lineno, toks in lines[1:]:
        tag = toks[0]
        if _LINE_KIND.get(tag) != kind:
            raise ParseError(f"unexpected line {tag!r} in a {kind} matroid", lineno)
        nums = [_int(x, lineno) for x in toks[1:]]
        if tag == "uniform":
            if len(nums) != 1 or uniform_rank is not None:
                raise ParseError("expected a single 'uniform <k>' line", lineno)
            uniform_rank = nums[0]
        elif tag in ("part", "laminar"):
            if not nums:
                raise ParseError(f"'{tag}' needs a bound", lineno)
            groups.append((frozenset(nums[1:]), nums[0]))
        else:
            sets.append(frozenset(nums))
    try:
        if kind == UNIFORM:
            if uniform_rank is None:
                raise ParseError("missing 'uniform <k>' line", lineno)
            return MatroidSpec.uniform(n, uniform_rank)
        if kind == PARTITION:
            return MatroidSpec.partition(n, groups)
        if kind == LAMINAR:
            return MatroidSpec.laminar(n, groups)
        if kind == TRANSVERSAL:
            return MatroidSpec.transversal(n, sets)
        return MatroidSpec.explicit(n, sets)
    except MatroidError as exc:
        raise ParseError(str(exc), lineno) from exc


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", lineno) from None
