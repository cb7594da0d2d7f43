"""Command line front end.

RTGs are read either as text, one ``u -> v`` transfer per line, or as JSON
``{"name": ..., "edges": [[u, v], ...]}``; the format is picked from the
first non-blank character.  Shuffle code is read and written the same way,
as ``permi5 a b c`` / ``permi23 a b | c d e`` / ``copy a -> b`` lines or as a
JSON document with an ``ops`` list.

Exit codes: 0 success, 1 unreadable input, 2 invalid RTG, 3 instance too
large for the oracle, 4 code does not implement the RTG or lengths differ.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Any, Sequence, TextIO

from .greedy import greedy_schedule
from .ops import MalformedOpError, ShuffleCode, format_op, op_from_record, op_to_record, parse_op
from .pipeline import encoding_bits, synthesize
from .rtg import Edge, NotOutdegreeOneError, Rtg, RtgError, copy_count, signature
from .sim import InstanceTooLargeError, NotFoundError, first_violation, oracle_min_length

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_TOO_LARGE, EXIT_FAILED = 0, 1, 2, 3, 4


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line, self.column = line, column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


@dataclass
class RtgDocument:
    edges: list[Edge] = field(default_factory=list)
    name: str | None = None

    def to_rtg(self) -> Rtg:
        return Rtg(self.edges)


def _is_json(text: str) -> bool:
    stripped = text.lstrip()
    return stripped.startswith("{")


def _load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None


def _register(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ParseError(f"{where}: register ids are non-negative integers, got {value!r}")
    return value


def parse_rtg_document(text: str) -> RtgDocument:
    if _is_json(text):
        data = _load_json(text)
        if not isinstance(data, dict) or not isinstance(data.get("edges"), list):
            raise ParseError('expected an object with an "edges" list')
        edges = []
        for i, pair in enumerate(data["edges"]):
            if not isinstance(pair, list) or len(pair) != 2:
                raise ParseError(f"edges[{i}]: expected [src, dst], got {pair!r}")
            edges.append((_register(pair[0], f"edges[{i}]"), _register(pair[1], f"edges[{i}]")))
        name = data.get("name")
        if name is not None and not isinstance(name, str):
            raise ParseError(f"name must be a string, got {name!r}")
        return RtgDocument(edges, name)

    doc = RtgDocument()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("name:"):
            doc.name = line[len("name:"):].strip() or None
            continue
        parts = line.split("->")
        if len(parts) != 2:
            raise ParseError(f"expected 'src -> dst', got {line!r}", lineno, raw.find(line) + 1)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"register ids must be integers in {line!r}", lineno) from None
        if u < 0 or v < 0:
            raise ParseError(f"register ids must be non-negative in {line!r}", lineno)
        doc.edges.append((u, v))
    return doc


def format_rtg_document(doc: RtgDocument, fmt: str = "text") -> str:
    if fmt == "json":
        data: dict[str, Any] = {"edges": [list(e) for e in doc.edges]}
        if doc.name is not None:
            data = {"name": doc.name, **data}
        return json.dumps(data) + "\n"
    lines = [f"name: {doc.name}"] if doc.name is not None else []
    lines += [f"{u} -> {v}" for u, v in doc.edges]
    return "\n".join(lines) + "\n"


def parse_code_document(text: str) -> ShuffleCode:
    if _is_json(text):
        data = _load_json(text)
        if not isinstance(data, dict) or not isinstance(data.get("ops"), list):
            raise ParseError('expected an object with an "ops" list')
        ops = []
        for i, rec in enumerate(data["ops"]):
            if not isinstance(rec, dict):
                raise ParseError(f"ops[{i}]: expected an object, got {rec!r}")
            try:
                ops.append(op_from_record(rec))
            except (MalformedOpError, ValueError) as exc:
                raise ParseError(f"ops[{i}]: {exc}") from None
        return ShuffleCode(tuple(ops))
    ops = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            ops.append(parse_op(line))
        except MalformedOpError as exc:
            raise ParseError(str(exc), lineno) from None
    return ShuffleCode(tuple(ops))


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_rtg(path: str, err: TextIO) -> tuple[RtgDocument, Rtg] | int:
    try:
        doc = parse_rtg_document(_read(path))
    except (OSError, ParseError) as exc:
        print(f"{path}: {exc}", file=err)
        return EXIT_PARSE
    try:
        return doc, doc.to_rtg()
    except RtgError as exc:
        print(f"{path}: invalid RTG ({exc.invariant}): {exc}", file=err)
        return EXIT_INVALID


def _stats(g: Rtg, register_file: int) -> dict[str, Any]:
    return {
        "registers": len(g),
        "edges": len(g.edges),
        "copy_count": copy_count(g),
        "register_file": register_file,
        "encoding_bits": {str(k): encoding_bits(register_file, k)
                          for k in range(1, min(5, register_file) + 1)},
    }


def cmd_synth(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    loaded = _load_rtg(args.input, err)
    if isinstance(loaded, int):
        return loaded
    doc, g = loaded
    if args.greedy_only:
        if not g.is_outdegree_one:
            print(f"{args.input}: invalid RTG ({NotOutdegreeOneError.invariant}): "
                  "--greedy-only needs an outdegree-1 RTG", file=err)
            return EXIT_INVALID
        code, copies, residual = greedy_schedule(g), 0, signature(g)
    else:
        result = synthesize(g)
        code, copies, residual = result.code, len(result.copy_set), result.residual_signature
    summary = {"length": len(code), "copies": copies, "residual_signature": list(residual)}

    if args.format == "json":
        data: dict[str, Any] = {}
        if doc.name is not None:
            data["name"] = doc.name
        data["ops"] = [op_to_record(op) for op in code]
        data["summary"] = summary
        if args.stats:
            data["stats"] = _stats(g, args.register_file)
        out.write(json.dumps(data, indent=2) + "\n")
    else:
        x, a2, a3 = residual
        out.write(f"# length {len(code)}, copies {copies}, residual signature ({x}, {a2}, {a3})\n")
        if args.stats:
            st = _stats(g, args.register_file)
            bits = ", ".join(f"k={k}: {b}" for k, b in st["encoding_bits"].items())
            out.write(f"# {st['registers']} registers, {st['edges']} edges, "
                      f"copy count {st['copy_count']}\n")
            out.write(f"# encoding bits for {st['register_file']} registers: {bits}\n")
        for op in code:
            out.write(format_op(op) + "\n")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    loaded = _load_rtg(args.input, err)
    if isinstance(loaded, int):
        return loaded
    _, g = loaded
    try:
        code = parse_code_document(_read(args.code))
    except (OSError, ParseError) as exc:
        print(f"{args.code}: {exc}", file=err)
        return EXIT_PARSE
    bad = first_violation(g, code)
    if bad is not None:
        u, v = bad
        print(f"edge {u} -> {v} not implemented: register {v} does not end with {u}'s value", file=err)
        return EXIT_FAILED
    out.write(f"ok: {len(code)} ops implement {len(g.edges)} transfers\n")
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    loaded = _load_rtg(args.input, err)
    if isinstance(loaded, int):
        return loaded
    _, g = loaded
    synth = synthesize(g).total_length
    depth = synth if args.oracle_depth is None else args.oracle_depth
    try:
        best = oracle_min_length(g, depth, bound=args.bound)
    except InstanceTooLargeError as exc:
        print(f"instance too large: {exc}", file=err)
        return EXIT_TOO_LARGE
    except NotFoundError:
        out.write(f"synth={synth} oracle=>{depth} MISMATCH\n")
        return EXIT_FAILED
    verdict = "MATCH" if best == synth else "MISMATCH"
    out.write(f"synth={synth} oracle={best} {verdict}\n")
    return EXIT_OK if verdict == "MATCH" else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="shufflecode", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="emit an optimal shuffle code")
    p.add_argument("input", help="RTG document, '-' for stdin")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--greedy-only", action="store_true",
                   help="schedule an outdegree-1 RTG without the copy-set search")
    p.add_argument("--stats", action="store_true", help="add copy count and encoding bit table")
    p.add_argument("--register-file", type=int, default=32, metavar="N",
                   help="register file size for the encoding bit table (default 32)")
    p.set_defaults(run=cmd_synth)

    p = sub.add_parser("verify", help="check that a code implements an RTG")
    p.add_argument("input", help="RTG document")
    p.add_argument("code", help="code document")
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("oracle", help="compare against exhaustive search")
    p.add_argument("input", help="RTG document")
    p.add_argument("--oracle-depth", type=int, default=None, metavar="N",
                   help="search depth (default: synthesized length)")
    p.add_argument("--bound", type=int, default=7, help="largest instance to search")
    p.set_defaults(run=cmd_oracle)
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.run(args, out or sys.stdout, err or sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
