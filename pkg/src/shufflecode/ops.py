"""Shuffle instructions: ``copy``, ``permi5`` and ``permi23``."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Iterator, Mapping, Sequence, Union

__all__ = [
    "MalformedOpError",
    "Copy",
    "Permi5",
    "Permi23",
    "ShuffleOp",
    "ShuffleCode",
    "op_to_record",
    "op_from_record",
    "format_op",
    "parse_op",
    "as_code",
]


class MalformedOpError(ValueError):
    pass


def _distinct(regs: Sequence[int], what: str) -> None:
    if len(set(regs)) != len(regs):
        raise MalformedOpError(f"{what} repeats a register: {list(regs)}")


@dataclass(frozen=True)
class Copy:
    src: int
    dst: int

    def __post_init__(self):
        if self.src == self.dst:
            raise MalformedOpError(f"copy from register {self.src} onto itself")

    @property
    def registers(self) -> tuple[int, ...]:
        return (self.src, self.dst)

    def moves(self) -> dict[int, int]:
        return {}


@dataclass(frozen=True)
class Permi5:
    """Cyclic shift: the content of ``cycle[i]`` moves to ``cycle[i + 1]``, the last wraps to the first."""

    cycle: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if not 2 <= len(self.cycle) <= 5:
            raise MalformedOpError(f"permi5 needs 2 to 5 registers, got {len(self.cycle)}")
        _distinct(self.cycle, "permi5")

    @property
    def registers(self) -> tuple[int, ...]:
        return self.cycle

    def moves(self) -> dict[int, int]:
        c = self.cycle
        return {c[i]: c[(i + 1) % len(c)] for i in range(len(c))}


@dataclass(frozen=True)
class Permi23:
    """Swap of ``pair`` together with a cyclic shift of ``cycle`` (empty, 2 or 3 registers)."""

    pair: tuple[int, int]
    cycle: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "pair", tuple(self.pair))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if len(self.pair) != 2:
            raise MalformedOpError(f"permi23 pair needs 2 registers, got {len(self.pair)}")
        if len(self.cycle) not in (0, 2, 3):
            raise MalformedOpError(f"permi23 cycle needs 0, 2 or 3 registers, got {len(self.cycle)}")
        _distinct(self.pair + self.cycle, "permi23")

    @property
    def registers(self) -> tuple[int, ...]:
        return self.pair + self.cycle

    def moves(self) -> dict[int, int]:
        a, b = self.pair
        out = {a: b, b: a}
        c = self.cycle
        out.update({c[i]: c[(i + 1) % len(c)] for i in range(len(c))})
        return out


ShuffleOp = Union[Copy, Permi5, Permi23]


@dataclass(frozen=True)
class ShuffleCode:
    ops: tuple[ShuffleOp, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))

    def __len__(self) -> int:
        return len(self.ops)

    def __iter__(self) -> Iterator[ShuffleOp]:
        return iter(self.ops)

    @property
    def permutations(self) -> list[ShuffleOp]:
        return [op for op in self.ops if not isinstance(op, Copy)]

    @property
    def copies(self) -> list[Copy]:
        return [op for op in self.ops if isinstance(op, Copy)]

    @property
    def permutations_first(self) -> bool:
        seen_copy = False
        for op in self.ops:
            if isinstance(op, Copy):
                seen_copy = True
            elif seen_copy:
                return False
        return True

    def __str__(self) -> str:
        return "\n".join(format_op(op) for op in self.ops)


def op_to_record(op: ShuffleOp) -> dict[str, Any]:
    if isinstance(op, Copy):
        return {"op": "copy", "src": op.src, "dst": op.dst}
    if isinstance(op, Permi5):
        return {"op": "permi5", "cycle": list(op.cycle)}
    return {"op": "permi23", "pair": list(op.pair), "cycle": list(op.cycle)}


def op_from_record(rec: Mapping[str, Any]) -> ShuffleOp:
    kind = rec.get("op")
    try:
        if kind == "copy":
            return Copy(int(rec["src"]), int(rec["dst"]))
        if kind == "permi5":
            return Permi5(tuple(int(r) for r in rec["cycle"]))
        if kind == "permi23":
            return Permi23(
                tuple(int(r) for r in rec["pair"]),
                tuple(int(r) for r in rec.get("cycle", ())),
            )
    except (KeyError, TypeError) as exc:
        raise MalformedOpError(f"bad {kind} record {dict(rec)!r}: {exc}") from None
    raise MalformedOpError(f"unknown op {kind!r}")


def format_op(op: ShuffleOp) -> str:
    if isinstance(op, Copy):
        return f"copy {op.src} -> {op.dst}"
    if isinstance(op, Permi5):
        return "permi5 " + " ".join(map(str, op.cycle))
    text = f"permi23 {op.pair[0]} {op.pair[1]}"
    if op.cycle:
        text += " | " + " ".join(map(str, op.cycle))
    return text


def parse_op(line: str) -> ShuffleOp:
    """Inverse of :func:`format_op`."""
    words = line.split()
    if not words:
        raise MalformedOpError("empty op line")
    kind, rest = words[0], words[1:]
    try:
        if kind == "copy":
            if len(rest) != 3 or rest[1] != "->":
                raise MalformedOpError(f"expected 'copy SRC -> DST', got {line!r}")
            return Copy(int(rest[0]), int(rest[2]))
        if kind == "permi5":
            return Permi5(tuple(int(w) for w in rest))
        if kind == "permi23":
            if "|" in rest:
                i = rest.index("|")
                pair, cycle = rest[:i], rest[i + 1:]
            else:
                pair, cycle = rest, []
            return Permi23(tuple(int(w) for w in pair), tuple(int(w) for w in cycle))
    except ValueError as exc:
        if isinstance(exc, MalformedOpError):
            raise
        raise MalformedOpError(f"bad register number in {line!r}") from None
    raise MalformedOpError(f"unknown op {kind!r}")


def as_code(ops: Union[ShuffleCode, Iterable[ShuffleOp]]) -> ShuffleCode:
    return ops if isinstance(ops, ShuffleCode) else ShuffleCode(tuple(ops))
