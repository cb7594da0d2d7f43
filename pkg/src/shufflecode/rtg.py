"""Register transfer graphs.

An RTG is a directed graph on register ids where an edge ``(u, v)`` means
that register ``v`` must end up holding the value that ``u`` held at the
start.  Every register has at most one incoming edge; it may have any
number of outgoing edges and may carry a loop ``(u, u)``.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

Edge = tuple[int, int]

__all__ = [
    "Edge",
    "Rtg",
    "RtgError",
    "DuplicateEdgeError",
    "InDegreeError",
    "EmptyRtgError",
    "NotOutdegreeOneError",
    "Tree",
    "Unicyclic",
    "TrivialLoop",
    "Path",
    "Cycle",
    "Signature",
    "SignatureDelta",
    "build_rtg",
    "decompose",
    "components",
    "signature",
    "signature_of_sizes",
    "component_sizes",
    "signature_delta",
    "apply_permutation",
    "compose",
    "copy_count",
]


class RtgError(ValueError):
    """Base class for malformed register transfer graphs."""

    invariant = "rtg"


class DuplicateEdgeError(RtgError):
    invariant = "no duplicate edges"


class InDegreeError(RtgError):
    invariant = "in-degree <= 1"


class EmptyRtgError(RtgError):
    invariant = "no edges"


class NotOutdegreeOneError(RtgError):
    invariant = "out-degree <= 1"


class Rtg:
    """An immutable, validated register transfer graph.

    The vertex set is inferred from the edge endpoints, so a register that
    takes part in no transfer cannot be represented.
    """

    __slots__ = ("_edges", "_vertices", "_succ", "_pred", "_hash")

    def __init__(self, edges: Iterable[Edge]):
        seen: set[Edge] = set()
        pred: dict[int, int] = {}
        succ: dict[int, list[int]] = defaultdict(list)
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u < 0 or v < 0:
                raise RtgError(f"register ids must be non-negative, got ({u}, {v})")
            if (u, v) in seen:
                raise DuplicateEdgeError(f"edge ({u}, {v}) listed twice")
            if v in pred:
                raise InDegreeError(
                    f"register {v} has two incoming edges: ({pred[v]}, {v}) and ({u}, {v})"
                )
            seen.add((u, v))
            pred[v] = u
            succ[u].append(v)
        if not seen:
            raise EmptyRtgError("no edges")
        self._edges = frozenset(seen)
        self._vertices = frozenset(pred) | frozenset(succ)
        self._succ = {u: tuple(sorted(vs)) for u, vs in succ.items()}
        self._pred = pred
        self._hash = hash(self._edges)

    @property
    def edges(self) -> frozenset[Edge]:
        return self._edges

    @property
    def vertices(self) -> frozenset[int]:
        return self._vertices

    def successors(self, v: int) -> tuple[int, ...]:
        return self._succ.get(v, ())

    def predecessor(self, v: int) -> int | None:
        return self._pred.get(v)

    def out_degree(self, v: int) -> int:
        return len(self._succ.get(v, ()))

    def in_degree(self, v: int) -> int:
        return 1 if v in self._pred else 0

    def sorted_edges(self) -> list[Edge]:
        return sorted(self._edges)

    def sorted_vertices(self) -> list[int]:
        return sorted(self._vertices)

    @property
    def is_outdegree_one(self) -> bool:
        return all(len(vs) <= 1 for vs in self._succ.values())

    @property
    def is_permutation(self) -> bool:
        """True for a PRTG: every register has in- and out-degree exactly one."""
        return len(self._pred) == len(self._vertices) and all(
            len(self._succ.get(v, ())) == 1 for v in self._vertices
        )

    @property
    def is_trivial(self) -> bool:
        return all(u == v for u, v in self._edges)

    def without(self, removed: Iterable[Edge]) -> "Rtg":
        """Return the RTG on the remaining edges; registers left isolated are dropped."""
        removed = set(removed)
        missing = removed - self._edges
        if missing:
            raise RtgError(f"edges not in graph: {sorted(missing)}")
        return Rtg(e for e in self.sorted_edges() if e not in removed)

    def __len__(self) -> int:
        return len(self._vertices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Rtg):
            return NotImplemented
        return self._edges == other._edges

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Rtg({self.sorted_edges()!r})"


def build_rtg(edge_list: Iterable[Sequence[int]]) -> Rtg:
    """Validate an edge list and build an :class:`Rtg` from it."""
    return Rtg((e[0], e[1]) for e in edge_list)


# -- components ---------------------------------------------------------------


@dataclass(frozen=True)
class Tree:
    root: int


@dataclass(frozen=True)
class Unicyclic:
    cycle: tuple[int, ...]


@dataclass(frozen=True)
class TrivialLoop:
    vertex: int


@dataclass(frozen=True)
class Path:
    vertices: tuple[int, ...]


@dataclass(frozen=True)
class Cycle:
    vertices: tuple[int, ...]


ComponentKind = Union[Tree, Unicyclic, TrivialLoop, Path, Cycle]


def _weak_components(g: Rtg) -> list[list[int]]:
    parent = {v: v for v in g.vertices}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    groups: dict[int, list[int]] = defaultdict(list)
    for v in g.sorted_vertices():
        groups[find(v)].append(v)
    return sorted(groups.values(), key=lambda vs: vs[0])


def _find_cycle(g: Rtg, start: int) -> tuple[int, ...]:
    """Cycle reached by walking predecessors from ``start``, ordered along edges from its minimum id."""
    seen = set()
    v = start
    while v not in seen:
        seen.add(v)
        v = g.predecessor(v)
    on_cycle = [v]
    u = g.predecessor(v)
    while u != v:
        on_cycle.append(u)
        u = g.predecessor(u)
    return _cycle_from_min(on_cycle[::-1])


def _cycle_from_min(cycle: Sequence[int]) -> tuple[int, ...]:
    i = cycle.index(min(cycle))
    return tuple(cycle[i:]) + tuple(cycle[:i])


def _classify(g: Rtg, vs: list[int], fine: bool) -> ComponentKind:
    n_edges = sum(g.out_degree(v) for v in vs)
    if n_edges == len(vs) - 1:
        root = next(v for v in vs if g.in_degree(v) == 0)
        if not fine:
            return Tree(root)
        walk = [root]
        while g.successors(walk[-1]):
            walk.append(g.successors(walk[-1])[0])
        return Path(tuple(walk))
    cycle = _find_cycle(g, vs[0])
    if not fine:
        return Unicyclic(cycle)
    if len(cycle) == 1:
        return TrivialLoop(cycle[0])
    return Cycle(cycle)


def decompose(g: Rtg, *, fine: bool | None = None) -> list[ComponentKind]:
    """Classify each weakly connected component, ordered by smallest register id.

    General RTGs decompose into :class:`Tree` and :class:`Unicyclic` parts.
    Outdegree-1 RTGs use the finer :class:`TrivialLoop` / :class:`Path` /
    :class:`Cycle` split; ``fine`` overrides that choice, but the fine split
    is only available for outdegree-1 inputs.
    """
    if fine is None:
        fine = g.is_outdegree_one
    elif fine and not g.is_outdegree_one:
        raise NotOutdegreeOneError("fine decomposition needs an outdegree-1 RTG")
    return [_classify(g, vs, fine) for vs in _weak_components(g)]


def components(g: Rtg) -> list[Rtg]:
    """Weakly connected components as separate RTGs, in :func:`decompose` order."""
    out = []
    for vs in _weak_components(g):
        members = set(vs)
        out.append(Rtg(e for e in g.sorted_edges() if e[0] in members))
    return out


# -- signatures ---------------------------------------------------------------


class Signature(NamedTuple):
    x: int
    a2: int
    a3: int


class SignatureDelta(NamedTuple):
    dx: int
    d2: int
    d3: int


def signature_of_sizes(sizes: Iterable[int]) -> Signature:
    x = a2 = a3 = 0
    for size in sizes:
        x += size // 4
        a2 += size % 4 == 2
        a3 += size % 4 == 3
    return Signature(x, a2, a3)


def component_sizes(g: Rtg) -> list[int]:
    return [len(vs) for vs in _weak_components(g)]


def signature(g: Rtg) -> Signature:
    """The ``(X, a2, a3)`` triple of an outdegree-1 RTG."""
    if not g.is_outdegree_one:
        raise NotOutdegreeOneError("signature is defined for outdegree-1 RTGs only")
    return signature_of_sizes(component_sizes(g))


def signature_delta(before: Signature, after: Signature) -> SignatureDelta:
    return SignatureDelta(after[0] - before[0], after[1] - before[1], after[2] - before[2])


# -- the symmetric group acting on RTGs ----------------------------------------


def apply_permutation(pi: Mapping[int, int], g: Rtg) -> Rtg:
    """``pi`` moves the content of register ``u`` to ``pi[u]``; returns ``(V, {(pi(u), v)})``.

    Registers missing from ``pi`` are fixed.  A register that ends up with
    neither an incoming nor an outgoing transfer is not part of the result.
    """
    return Rtg((pi.get(u, u), v) for u, v in g.sorted_edges())


def compose(second: Mapping[int, int], first: Mapping[int, int]) -> dict[int, int]:
    """``second`` after ``first`` as a mapping over the union of their domains."""
    keys = set(first) | set(second)
    out = {}
    for k in keys:
        m = first.get(k, k)
        out[k] = second.get(m, m)
    return out


def copy_count(g: Rtg) -> int:
    return sum(max(g.out_degree(v) - 1, 0) for v in g.vertices)
