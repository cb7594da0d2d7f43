"""Optimal shuffle code for outdegree-1 RTGs.

Paths are closed into cycles, long cycles are cut down four registers at a
time with ``permi5``, and the remaining 2- and 3-cycles are resolved with
``permi23`` in the order: 2+3 pairs, pairs of 2-cycles, triples of 3-cycles.
"""
from __future__ import annotations

from .ops import Permi5, Permi23, ShuffleCode, ShuffleOp
from .rtg import (
    Cycle,
    NotOutdegreeOneError,
    Path,
    Rtg,
    Signature,
    SignatureDelta,
    decompose,
    signature,
)

__all__ = ["complete_paths", "greedy_schedule", "greedy_cost", "greedy_length", "psi"]


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def greedy_cost(s: Signature) -> int:
    x, a2, a3 = s
    return x + max(_ceil_div(a2 + a3, 2), _ceil_div(a2 + 2 * a3, 3))


def greedy_length(g: Rtg) -> int:
    return greedy_cost(signature(g))


def psi(delta: SignatureDelta) -> tuple[int, int]:
    dx, d2, d3 = delta
    return 2 * dx + d2 + d3, 3 * dx + d2 + 2 * d3


def complete_paths(g: Rtg) -> Rtg:
    """Close every directed path ``v1 .. vk`` with the edge ``(vk, v1)``."""
    if not g.is_outdegree_one:
        raise NotOutdegreeOneError("path completion needs an outdegree-1 RTG")
    extra = [(p.vertices[-1], p.vertices[0]) for p in decompose(g) if isinstance(p, Path)]
    if not extra:
        return g
    return Rtg(g.sorted_edges() + extra)


def _cycles(g: Rtg) -> list[tuple[int, ...]]:
    closed = complete_paths(g)
    return [c.vertices for c in decompose(closed) if isinstance(c, Cycle)]


def greedy_schedule(g: Rtg) -> ShuffleCode:
    ops: list[ShuffleOp] = []
    twos: list[tuple[int, ...]] = []
    threes: list[tuple[int, ...]] = []

    for cycle in _cycles(g):
        # the shift parks v0..v3 and leaves v0 -> v5 -> ... -> v(k-1) -> v0
        while len(cycle) >= 4:
            if len(cycle) <= 5:
                ops.append(Permi5(cycle))
                cycle = ()
            else:
                ops.append(Permi5(cycle[:5]))
                cycle = (cycle[0],) + cycle[5:]
        if len(cycle) == 2:
            twos.append(cycle)
        elif len(cycle) == 3:
            threes.append(cycle)

    twos.sort()
    threes.sort()
    paired = min(len(twos), len(threes))
    for two, three in zip(twos, threes):
        ops.append(Permi23(two, three))
    twos, threes = twos[paired:], threes[paired:]

    for i in range(0, len(twos) - 1, 2):
        ops.append(Permi23(twos[i], twos[i + 1]))
    if len(twos) % 2:
        ops.append(Permi5(twos[-1]))

    full = len(threes) - len(threes) % 3
    for i in range(0, full, 3):
        a, b, c = threes[i : i + 3]
        # swapping a0, a1 leaves the 2-cycle a0 <-> a2
        ops.append(Permi23((a[0], a[1]), b))
        ops.append(Permi23((a[0], a[2]), c))
    rest = threes[full:]
    if len(rest) == 1:
        ops.append(Permi5(rest[0]))
    elif len(rest) == 2:
        a, b = rest
        ops.append(Permi23((b[0], b[1]), a))
        ops.append(Permi5((b[0], b[2])))

    return ShuffleCode(tuple(ops))
