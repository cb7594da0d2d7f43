"""End-to-end synthesis: copy set, greedy permutations, then copies."""
from __future__ import annotations

from dataclasses import dataclass
from math import perm
from typing import Iterable, NamedTuple, Union

from .copyset import check_copy_set, optimal_copy_set
from .greedy import greedy_schedule
from .ops import Copy, ShuffleCode, ShuffleOp, as_code
from .rtg import Edge, Rtg, Signature, apply_permutation, copy_count, signature

__all__ = [
    "SynthesisResult",
    "Violation",
    "DomainError",
    "synthesize",
    "total_permutation",
    "check_normalized",
    "encoding_bits",
]


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class SynthesisResult:
    code: ShuffleCode
    copy_set: frozenset[Edge]
    residual_signature: Signature
    total_length: int


def total_permutation(ops: Iterable[ShuffleOp], registers: Iterable[int]) -> dict[int, int]:
    """Where each register's initial content sits after ``ops`` (copies ignored)."""
    regs = sorted(set(registers).union(*(op.registers for op in ops)))
    index = {r: i for i, r in enumerate(regs)}
    where = list(range(len(regs)))
    for op in ops:
        moves = op.moves()
        if not moves:
            continue
        step = list(range(len(regs)))
        for src, dst in moves.items():
            step[index[src]] = index[dst]
        where = [step[w] for w in where]
    return {r: regs[where[i]] for i, r in enumerate(regs)}


def synthesize(g: Rtg, copy_set: Iterable[Edge] | None = None) -> SynthesisResult:
    """Shortest shuffle code for ``g``.

    ``copy_set`` forces a particular copy set instead of the optimal one;
    the result is then the best code that uses exactly those copies.
    """
    if copy_set is None:
        chosen, _ = optimal_copy_set(g)
    else:
        chosen = check_copy_set(g, copy_set)
    residual = g.without(chosen) if chosen else g
    perms = greedy_schedule(residual)
    pi = total_permutation(perms.ops, g.vertices)
    copies = [Copy(pi[u], v) for u, v in sorted(chosen)]
    code = ShuffleCode(perms.ops + tuple(copies))
    return SynthesisResult(code, chosen, signature(residual), len(code))


class Violation(NamedTuple):
    rule: str
    detail: str


def check_normalized(g: Rtg, r: Union[SynthesisResult, ShuffleCode, Iterable[ShuffleOp]]) -> list[Violation]:
    """Ways in which a code breaks the normal form; empty when it has none.

    Rules: ``order`` permutations before copies; ``i`` no register is both
    copy source and copy target; ``ii`` no register is copied into twice;
    ``iii`` copies match the non-loop edges of ``pi G``; ``iv`` copy sources
    carry a loop in ``pi G``; ``v`` the number of copies is forced by the
    out-degrees.
    """
    code = as_code(r.code if isinstance(r, SynthesisResult) else r)
    out: list[Violation] = []
    if not code.permutations_first:
        out.append(Violation("order", "a permutation follows a copy"))
    copies = code.copies
    sources = {c.src for c in copies}
    targets = [c.dst for c in copies]
    for reg in sorted(sources & set(targets)):
        out.append(Violation("i", f"register {reg} is both copy source and target"))
    seen: set[int] = set()
    for reg in targets:
        if reg in seen:
            out.append(Violation("ii", f"register {reg} is copied into more than once"))
        seen.add(reg)

    pi = total_permutation(code.permutations, g.vertices)
    moved = apply_permutation(pi, g)
    open_edges = {e for e in moved.edges if e[0] != e[1]}
    copy_edges = {(c.src, c.dst) for c in copies}
    if copy_edges != open_edges or len(copies) != len(open_edges):
        out.append(Violation(
            "iii",
            f"copies {sorted(copy_edges)} do not match open edges {sorted(open_edges)}",
        ))
    for reg in sorted(sources):
        if (reg, reg) not in moved.edges:
            out.append(Violation("iv", f"copy source {reg} carries no loop after the permutations"))
    expected = copy_count(g)
    if len(copies) != expected:
        out.append(Violation("v", f"{len(copies)} copies, out-degrees force {expected}"))
    return out


def encoding_bits(n: int, k: int) -> int:
    """Bits needed to name an ordered choice of ``k`` out of ``n`` registers."""
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got n={n}, k={k}")
    return (perm(n, k) - 1).bit_length()
