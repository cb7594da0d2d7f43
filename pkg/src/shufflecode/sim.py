"""Register-state execution of shuffle code and an exhaustive shortest-code search.

The search is the ground truth the synthesizer is checked against, so it
knows nothing about signatures or copy sets: it only applies instructions
to register states and looks for the first depth at which every demanded
register holds the right value.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations
from typing import Hashable, Iterable, Mapping, Union

import numpy as np

from .ops import Copy, Permi5, Permi23, ShuffleCode, ShuffleOp, as_code
from .rtg import Edge, Rtg

__all__ = [
    "UnknownRegisterError",
    "NotFoundError",
    "InstanceTooLargeError",
    "identity_state",
    "execute",
    "satisfies",
    "first_violation",
    "oracle_min_length",
    "DEFAULT_ORACLE_BOUND",
]

DEFAULT_ORACLE_BOUND = 7

RegState = dict[int, Hashable]


class UnknownRegisterError(KeyError):
    pass


class NotFoundError(LookupError):
    pass


class InstanceTooLargeError(ValueError):
    pass


def identity_state(registers: Iterable[int]) -> RegState:
    return {r: r for r in registers}


def execute(code: Union[ShuffleCode, Iterable[ShuffleOp]], s0: Mapping[int, Hashable]) -> RegState:
    state = dict(s0)
    for op in as_code(code):
        for r in op.registers:
            if r not in state:
                raise UnknownRegisterError(r)
        if isinstance(op, Copy):
            state[op.dst] = state[op.src]
        else:
            old = {r: state[r] for r in op.registers}
            for src, dst in op.moves().items():
                state[dst] = old[src]
    return state


def _registers(g: Rtg, code: ShuffleCode) -> set[int]:
    regs = set(g.vertices)
    for op in code:
        regs.update(op.registers)
    return regs


def first_violation(g: Rtg, code: Union[ShuffleCode, Iterable[ShuffleOp]]) -> Edge | None:
    """The smallest edge ``(u, v)`` whose target does not end with ``u``'s initial value."""
    code = as_code(code)
    final = execute(code, identity_state(_registers(g, code)))
    for u, v in g.sorted_edges():
        if final[v] != u:
            return (u, v)
    return None


def satisfies(g: Rtg, code: Union[ShuffleCode, Iterable[ShuffleOp]]) -> bool:
    return first_violation(g, code) is None


# -- exhaustive search ----------------------------------------------------------


@lru_cache(maxsize=None)
def _op_table(n: int) -> np.ndarray:
    """Every instruction on ``n`` dense registers as a gather map ``new[i] = old[m[i]]``.

    Instructions with the same effect (a permi23 without cycle and a
    two-register permi5, rotations of one cycle) appear once.
    """
    maps = set()
    ident = tuple(range(n))

    def gather(moves: Mapping[int, int]) -> tuple[int, ...]:
        m = list(ident)
        for src, dst in moves.items():
            m[dst] = src
        return tuple(m)

    for a in range(n):
        for b in range(n):
            if a != b:
                m = list(ident)
                m[b] = a
                maps.add(tuple(m))
    for k in range(2, 6):
        for regs in combinations(range(n), k):
            first, rest = regs[0], regs[1:]
            for order in permutations(rest):
                maps.add(gather(Permi5((first,) + order).moves()))
    for pair in combinations(range(n), 2):
        others = [r for r in range(n) if r not in pair]
        maps.add(gather(Permi23(pair).moves()))
        for k in (2, 3):
            for regs in combinations(others, k):
                first, rest = regs[0], regs[1:]
                for order in permutations(rest):
                    maps.add(gather(Permi23(pair, (first,) + order).moves()))
    return np.array(sorted(maps), dtype=np.int8).reshape(-1, n)


def _lower_bound(states: np.ndarray, need: np.ndarray, demanded: np.ndarray,
                 need_count: np.ndarray) -> np.ndarray:
    """Admissible estimate of the remaining instructions for each state.

    Every demanded value must exist at least as often as it is demanded, and
    only copies raise a count.  Every wrong register must be written: a copy
    writes one register, a permutation at most five.
    """
    targets = need >= 0
    wrong = (states[:, targets] != need[targets]).sum(axis=1)
    have = (states[:, :, None] == demanded[None, None, :]).sum(axis=1)
    lost = (have == 0).any(axis=1)
    copies = np.maximum(need_count[None, :] - have, 0).sum(axis=1)
    perm_part = np.maximum(wrong - copies, 0)
    lb = copies + (perm_part + 4) // 5
    lb[lost] = np.iinfo(np.int32).max // 2
    return lb


def oracle_min_length(g: Rtg, max_depth: int | None = None, *,
                      bound: int = DEFAULT_ORACLE_BOUND, chunk: int = 256) -> int:
    """Length of a shortest shuffle code for ``g``, by breadth-first search over register states.

    States are value placements over ``g``'s registers with never-demanded
    values merged into one wildcard.  A state is dropped when its depth plus
    an admissible lower bound exceeds ``max_depth``, which never removes a
    state on a solution of length ``<= max_depth``; the first depth holding
    a goal state is therefore the optimum, and all shorter depths have been
    exhausted.  ``max_depth`` defaults to the synthesized length.
    """
    regs = g.sorted_vertices()
    n = len(regs)
    if n > bound:
        raise InstanceTooLargeError(f"{n} registers exceeds the oracle bound of {bound}")
    if max_depth is None:
        from .pipeline import synthesize

        max_depth = synthesize(g).total_length

    index = {r: i for i, r in enumerate(regs)}
    wildcard = n
    need = np.full(n, -1, dtype=np.int8)
    for u, v in g.edges:
        need[index[v]] = index[u]
    demanded = np.unique(need[need >= 0]).astype(np.int8)
    need_count = np.array([(need == x).sum() for x in demanded], dtype=np.int64)
    start = np.array([i if i in set(demanded.tolist()) else wildcard for i in range(n)], dtype=np.int8)

    targets = need >= 0
    powers = (wildcard + 1) ** np.arange(n, dtype=np.int64)

    def keys(states: np.ndarray) -> np.ndarray:
        return states.astype(np.int64) @ powers

    def solved(states: np.ndarray) -> np.ndarray:
        return (states[:, targets] == need[targets]).all(axis=1)

    frontier = start[None, :]
    if solved(frontier).any():
        return 0
    if _lower_bound(frontier, need, demanded, need_count)[0] > max_depth:
        raise NotFoundError(f"no code of length <= {max_depth}")
    ops = _op_table(n)
    visited = keys(frontier)

    for depth in range(1, max_depth + 1):
        layers = []
        for lo in range(0, len(frontier), chunk):
            block = frontier[lo:lo + chunk]
            children = block[:, ops].reshape(-1, n)
            if solved(children).any():
                return depth
            lb = _lower_bound(children, need, demanded, need_count)
            children = children[depth + lb <= max_depth]
            if len(children):
                layers.append(children)
        if not layers:
            break
        children = np.concatenate(layers)
        k = keys(children)
        k, first = np.unique(k, return_index=True)
        fresh = ~np.isin(k, visited, assume_unique=True)
        frontier = children[first[fresh]]
        visited = np.union1d(visited, k[fresh])
        if not len(frontier):
            break
    raise NotFoundError(f"no code of length <= {max_depth}")
