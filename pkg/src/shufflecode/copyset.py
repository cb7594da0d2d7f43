"""Choosing which RTG edges become copy operations.

A copy set keeps exactly one outgoing edge per register and turns the rest
into copies; what is left is an outdegree-1 RTG whose optimal length only
depends on its signature.  The tables here give, for every value ``d`` of
``a2 - a3`` reachable by some copy set, the least value of a linear cost of
the signature, built bottom-up over trees, unicyclic components and
disjoint unions.  Backtracking through the recorded tags recovers a copy
set for any finite entry.

Costs are kept as exact integers: the two costs that matter have halves and
thirds as coefficients, so they are stored in sixths.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Callable, Iterable, Iterator, Sequence

from .rtg import (
    Edge,
    Rtg,
    RtgError,
    Signature,
    Tree,
    Unicyclic,
    components,
    copy_count,
    decompose,
    signature_of_sizes,
)

__all__ = [
    "INF",
    "SIXTHS",
    "LinearCost",
    "COST1",
    "COST2",
    "DIFF",
    "CostTable",
    "RootedCostTable",
    "NotATreeError",
    "NotUnicyclicError",
    "NotACopySetError",
    "correction_term",
    "table_leaf",
    "combine_disjoint",
    "project",
    "table_tree",
    "table_unicyclic",
    "table_component",
    "table_graph",
    "optimal_copy_set",
    "check_copy_set",
]

SIXTHS = 6


class NotATreeError(RtgError):
    invariant = "tree component"


class NotUnicyclicError(RtgError):
    invariant = "unicyclic component"


class NotACopySetError(RtgError):
    invariant = "copy set"


class _Infinity:
    """Table sentinel above every integer and absorbing under addition."""

    __slots__ = ()

    def __repr__(self):
        return "INF"

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("shufflecode.INF")


INF = _Infinity()


@dataclass(frozen=True)
class LinearCost:
    """``cx*X + c2*a2 + c3*a3`` with integer coefficients.

    The costs use sixths as their unit; :data:`DIFF` is in plain units.
    """

    cx: int
    c2: int
    c3: int

    def __call__(self, sig: Sequence[int]) -> int:
        return self.cx * sig[0] + self.c2 * sig[1] + self.c3 * sig[2]


COST1 = LinearCost(6, 3, 3)  # X + a2/2 + a3/2
COST2 = LinearCost(6, 2, 4)  # X + a2/3 + 2*a3/3
DIFF = LinearCost(0, 1, -1)  # a2 - a3


def _path_signature(m: int) -> Signature:
    return Signature(m // 4, int(m % 4 == 2), int(m % 4 == 3))


def correction_term(c: LinearCost, s: int) -> int:
    """Change of ``c`` when a component grows from ``s`` to ``s + 1`` registers (only ``s mod 4`` matters)."""
    m = s % 4 + 4
    return c(_path_signature(m + 1)) - c(_path_signature(m))


_DIFF_STEP = tuple(correction_term(DIFF, s) for s in range(4))


# -- tables -------------------------------------------------------------------


class CostTable:
    """``d -> least cost`` over copy sets with ``diff = d``; absent entries are :data:`INF`.

    Stored densely from ``lo``.  ``origin`` says how the tags of this table
    are resolved into a copy set, see :func:`backtrack`.
    """

    __slots__ = ("lo", "values", "tags", "origin")

    def __init__(self, entries: dict[int, tuple[int, object]], origin: tuple):
        self.origin = origin
        if not entries:
            self.lo, self.values, self.tags = 0, [], []
            return
        lo, hi = min(entries), max(entries)
        self.lo = lo
        self.values = [INF] * (hi - lo + 1)
        self.tags = [None] * (hi - lo + 1)
        for d, (v, tag) in entries.items():
            self.values[d - lo] = v
            self.tags[d - lo] = tag

    @property
    def hi(self) -> int:
        return self.lo + len(self.values) - 1

    def __getitem__(self, d: int):
        i = d - self.lo
        if 0 <= i < len(self.values):
            return self.values[i]
        return INF

    def tag(self, d: int):
        if self[d] is INF:
            raise KeyError(f"no copy set with diff {d}")
        return self.tags[d - self.lo]

    def finite(self) -> list[tuple[int, int]]:
        return [(self.lo + i, v) for i, v in enumerate(self.values) if v is not INF]

    def as_dict(self) -> dict[int, int]:
        return dict(self.finite())

    def backtrack(self, d: int) -> frozenset[Edge]:
        return backtrack(self, d)

    def __eq__(self, other):
        if not isinstance(other, CostTable):
            return NotImplemented
        return self.as_dict() == other.as_dict()

    __hash__ = None

    def __repr__(self):
        return f"CostTable({self.as_dict()})"


class RootedCostTable:
    """``(d, s) -> least cost`` for a rooted tree, ``s`` being the root path size mod 4."""

    __slots__ = ("rows", "origin")

    def __init__(self, rows: Sequence[CostTable], origin: tuple):
        self.rows = tuple(rows)
        self.origin = origin

    def __getitem__(self, key: tuple[int, int]):
        d, s = key
        return self.rows[s % 4][d]

    def tag(self, d: int, s: int):
        return self.rows[s % 4].tag(d)

    def finite(self) -> list[tuple[tuple[int, int], int]]:
        out = []
        for s, row in enumerate(self.rows):
            out.extend(((d, s), v) for d, v in row.finite())
        return sorted(out)

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.finite())

    def backtrack(self, d: int, s: int) -> frozenset[Edge]:
        return backtrack(self, d, s)

    def __eq__(self, other):
        if not isinstance(other, RootedCostTable):
            return NotImplemented
        return self.as_dict() == other.as_dict()

    __hash__ = None

    def __repr__(self):
        return f"RootedCostTable({self.as_dict()})"


def _const(d: int, value: int, edges: Iterable[Edge] = ()) -> CostTable:
    return CostTable({d: (value, None)}, ("const", frozenset(edges)))


EMPTY = _const(0, 0)


def table_leaf() -> RootedCostTable:
    empty = CostTable({}, ("row",))
    rows = [empty, CostTable({0: (0, None)}, ("row",)), empty, empty]
    return RootedCostTable(rows, ("leaf",))


def combine_disjoint(t1: CostTable, t2: CostTable) -> CostTable:
    """Min-plus convolution; the tag is the share of ``d`` taken by ``t1``."""
    acc: dict[int, tuple[int, int]] = {}
    right = t2.finite()
    for d1, v1 in t1.finite():
        for d2, v2 in right:
            d, v = d1 + d2, v1 + v2
            cur = acc.get(d)
            if cur is None or v < cur[0]:
                acc[d] = (v, d1)
    return CostTable(acc, ("conv", t1, t2))


def _fold(tables: Sequence[CostTable]) -> CostTable:
    if not tables:
        return EMPTY
    return reduce(combine_disjoint, tables)


def project(rooted: RootedCostTable) -> CostTable:
    """Forget the root path size: ``T[d] = min_s T~[d, s]``; the tag is the winning ``s``."""
    acc: dict[int, tuple[int, int]] = {}
    for s, row in enumerate(rooted.rows):
        for d, v in row.finite():
            cur = acc.get(d)
            if cur is None or v < cur[0]:
                acc[d] = (v, s)
    return CostTable(acc, ("project", rooted))


def _node_table(v: int, kids: Sequence[int], kid_rooted: Sequence[RootedCostTable],
                kid_tables: Sequence[CostTable], cost: LinearCost) -> RootedCostTable:
    k = len(kids)
    folds = [_fold([kid_tables[i] for i in range(k) if i != j]) for j in range(k)]
    cost_step = [correction_term(cost, s) for s in range(4)]
    acc: list[dict[int, tuple[int, tuple[int, int]]]] = [{}, {}, {}, {}]
    for j in range(k):
        fold_items = folds[j].finite()
        for s in range(4):
            # the root path through (v, kids[j]) is one longer than the child's
            child = (s - 1) % 4
            row = kid_rooted[j].rows[child].finite()
            if not row:
                continue
            dd, dc = _DIFF_STEP[child], cost_step[child]
            out = acc[s]
            for d1, f in fold_items:
                for d2, r in row:
                    d, val = d1 + d2 + dd, f + r + dc
                    cur = out.get(d)
                    if cur is None or val < cur[0]:
                        out[d] = (val, (j, d1))
    rows = [CostTable(a, ("row",)) for a in acc]
    return RootedCostTable(rows, ("node", v, tuple(kids), tuple(folds), tuple(kid_rooted)))


def _post_order(root: int, children: Callable[[int], Sequence[int]]) -> Iterator[int]:
    stack = [(root, False)]
    while stack:
        v, done = stack.pop()
        if done:
            yield v
            continue
        stack.append((v, True))
        for c in reversed(children(v)):
            stack.append((c, False))


def _tree(root: int, children: Callable[[int], Sequence[int]],
          cost: LinearCost) -> tuple[RootedCostTable, CostTable]:
    rooted: dict[int, RootedCostTable] = {}
    projected: dict[int, CostTable] = {}
    for v in _post_order(root, children):
        kids = children(v)
        if not kids:
            r = table_leaf()
        else:
            r = _node_table(v, kids, [rooted[c] for c in kids], [projected[c] for c in kids], cost)
        rooted[v] = r
        projected[v] = project(r)
    return rooted[root], projected[root]


def table_tree(root: int, g: Rtg, cost: LinearCost) -> tuple[RootedCostTable, CostTable]:
    """Rooted and projected tables of a tree RTG."""
    kinds = decompose(g, fine=False)
    if len(kinds) != 1 or kinds[0] != Tree(root):
        raise NotATreeError(f"expected one tree rooted at {root}, got {kinds}")
    return _tree(root, g.successors, cost)


def table_unicyclic(g: Rtg, cost: LinearCost) -> CostTable:
    """Table of a connected RTG with one cycle.

    Either the cycle survives and every other out-edge of a cycle register
    becomes a copy, or exactly one cycle edge whose source has another
    out-edge becomes a copy and the rest is a tree.  The tag is the index of
    the winning alternative, the surviving-cycle case first.
    """
    kinds = decompose(g, fine=False)
    if len(kinds) != 1 or not isinstance(kinds[0], Unicyclic):
        raise NotUnicyclicError(f"expected one unicyclic component, got {kinds}")
    cycle = kinds[0].cycle
    ring = {(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))}
    breakable = [(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))
                 if g.out_degree(cycle[i]) >= 2]
    hanging = sorted((u, v) for u in cycle for v in g.successors(u) if (u, v) not in ring)

    sig = signature_of_sizes([len(cycle)])
    parts = [_const(DIFF(sig), cost(sig))]
    parts += [_tree(v, g.successors, cost)[1] for _, v in hanging]
    alternatives = [(_fold(parts), frozenset(hanging))]
    for e in breakable:
        def cut(v: int, e: Edge = e) -> tuple[int, ...]:
            return tuple(w for w in g.successors(v) if (v, w) != e)
        alternatives.append((_tree(e[1], cut, cost)[1], frozenset([e])))

    acc: dict[int, tuple[int, int]] = {}
    for i, (t, _) in enumerate(alternatives):
        for d, v in t.finite():
            cur = acc.get(d)
            if cur is None or v < cur[0]:
                acc[d] = (v, i)
    return CostTable(acc, ("choice", tuple(alternatives)))


def table_component(g: Rtg, cost: LinearCost) -> CostTable:
    (kind,) = decompose(g, fine=False)
    if isinstance(kind, Tree):
        return table_tree(kind.root, g, cost)[1]
    return table_unicyclic(g, cost)


def table_graph(g: Rtg, cost: LinearCost) -> CostTable:
    """Table of a whole RTG: per-component tables folded left to right."""
    return _fold([table_component(c, cost) for c in components(g)])


# -- backtracking -------------------------------------------------------------


def backtrack(table, d: int, s: int | None = None) -> frozenset[Edge]:
    """Copy set realizing entry ``d`` (or ``(d, s)`` of a rooted table)."""
    out: set[Edge] = set()
    stack = [(table, d, s)]
    while stack:
        t, d, s = stack.pop()
        if s is None:
            tag = t.tag(d)
            kind = t.origin[0]
            if kind == "const":
                out |= t.origin[1]
            elif kind == "conv":
                stack.append((t.origin[1], tag, None))
                stack.append((t.origin[2], d - tag, None))
            elif kind == "project":
                stack.append((t.origin[1], d, tag))
            elif kind == "choice":
                alt, extra = t.origin[1][tag]
                out |= extra
                stack.append((alt, d, None))
            else:
                raise ValueError(f"cannot backtrack through {kind!r}")
        else:
            tag = t.tag(d, s)
            if t.origin[0] == "leaf":
                continue
            j, d1 = tag
            _, v, kids, folds, kid_rooted = t.origin
            out.update((v, w) for i, w in enumerate(kids) if i != j)
            child = (s - 1) % 4
            stack.append((folds[j], d1, None))
            stack.append((kid_rooted[j], d - d1 - _DIFF_STEP[child], child))
    return frozenset(out)


# -- assembly -----------------------------------------------------------------


def _ceil_sixths(v: int) -> int:
    return -(-v // SIXTHS)


def optimal_copy_set(g: Rtg) -> tuple[frozenset[Edge], int]:
    """An optimal copy set of ``g`` and the length of an optimal shuffle code.

    The length is the number of copies plus the best of ``ceil(T1[d])`` over
    ``d >= 0`` and ``ceil(T2[d])`` over ``d < 0``; ties go to the smallest ``d``.
    """
    t1, t2 = table_graph(g, COST1), table_graph(g, COST2)
    best = None
    for d in range(min(t1.lo, t2.lo), max(t1.hi, t2.hi) + 1):
        t = t1 if d >= 0 else t2
        v = t[d]
        if v is INF:
            continue
        perms = _ceil_sixths(v)
        if best is None or perms < best[0]:
            best = (perms, t, d)
    perms, t, d = best
    return backtrack(t, d), copy_count(g) + perms


def check_copy_set(g: Rtg, c: Iterable[Edge]) -> frozenset[Edge]:
    """Validate ``c`` as a copy set of ``g`` and return it frozen."""
    c = frozenset((int(u), int(v)) for u, v in c)
    stray = c - g.edges
    if stray:
        raise NotACopySetError(f"edges not in graph: {sorted(stray)}")
    for v in g.vertices:
        leaving = sum(1 for w in g.successors(v) if (v, w) in c)
        if leaving != max(g.out_degree(v) - 1, 0):
            raise NotACopySetError(
                f"register {v} must keep exactly one of its {g.out_degree(v)} out-edges"
            )
    return c
