import io
import json

import pytest

from shufflecode.cli import (
    ParseError,
    RtgDocument,
    format_rtg_document,
    main,
    parse_code_document,
    parse_rtg_document,
)
from shufflecode.ops import Copy, Permi5

FIG1_LEFT = "1 -> 2\n1 -> 3\n4 -> 5\n5 -> 6\n6 -> 4\n"
FIG1_RIGHT = FIG1_LEFT + "1 -> 1\n"
FIG3 = '{"name": "fig3", "edges": [[2, 1], [2, 3], [3, 4], [4, 5], [5, 6], [6, 2]]}'


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return _write


def test_synth_fig1_text(write):
    code, out, _ = run("synth", write("g.txt", FIG1_LEFT))
    assert code == 0
    lines = [l for l in out.splitlines() if not l.startswith("#")]
    assert lines == ["permi23 1 2 | 4 5 6", "copy 2 -> 3"]
    assert out.startswith("# length 2, copies 1")


def test_synth_fig3_json(write):
    code, out, _ = run("synth", write("g.json", FIG3), "--format", "json", "--stats")
    assert code == 0
    data = json.loads(out)
    assert data["name"] == "fig3"
    assert data["summary"]["length"] == 2
    assert data["stats"]["encoding_bits"]["5"] == 25
    code_doc = parse_code_document(json.dumps(data))
    assert code_doc.ops == (Permi5((2, 3, 4, 5, 6)), Copy(3, 1))


def test_synth_empty_is_invalid(write):
    code, _, err = run("synth", write("e.txt", "# nothing\n"))
    assert code == 2
    assert "no edges" in err


def test_synth_bad_syntax(write):
    code, _, err = run("synth", write("b.txt", "1 -> 2\n1 => 3\n"))
    assert code == 1
    assert "line 2" in err


def test_synth_two_incoming(write):
    code, _, err = run("synth", write("b.txt", "1 -> 3\n2 -> 3\n"))
    assert code == 2
    assert "in-degree" in err or "incoming" in err


def test_greedy_only(write):
    code, out, _ = run("synth", write("c.txt", "1 -> 2\n2 -> 3\n3 -> 1\n"), "--greedy-only")
    assert code == 0 and "permi5" in out
    code, _, _ = run("synth", write("g.txt", FIG1_LEFT), "--greedy-only")
    assert code == 2


def test_synth_output_verifies(write):
    g = write("g.json", FIG3)
    _, out, _ = run("synth", g)
    code, msg, _ = run("verify", g, write("code.txt", out))
    assert code == 0 and msg.startswith("ok")


def test_verify_failures(write):
    left_code = write("c.txt", "permi23 1 2 | 4 5 6\ncopy 2 -> 3\n")
    assert run("verify", write("l.txt", FIG1_LEFT), left_code)[0] == 0
    assert run("verify", write("r.txt", FIG1_RIGHT), left_code)[0] == 4
    assert run("verify", write("l2.txt", FIG1_LEFT), write("empty.txt", ""))[0] == 4
    assert run("verify", write("l3.txt", FIG1_LEFT), write("bad.txt", "permi5 1\n"))[0] == 1


def test_oracle(write):
    code, out, _ = run("oracle", write("g.txt", FIG1_LEFT))
    assert code == 0 and out.strip() == "synth=2 oracle=2 MATCH"
    code, out, _ = run("oracle", write("t.txt", "1 -> 1\n"))
    assert code == 0 and "oracle=0 MATCH" in out
    big = "".join(f"{i} -> {i + 1}\n" for i in range(9))
    assert run("oracle", write("big.txt", big))[0] == 3


def test_round_trip():
    for text in (FIG1_LEFT, FIG3):
        doc = parse_rtg_document(text)
        for fmt in ("text", "json"):
            again = parse_rtg_document(format_rtg_document(doc, fmt))
            assert again == doc


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_rtg_document('{"edges": [[1, -2]]}')
    with pytest.raises(ParseError):
        parse_rtg_document('{"edges": [1, 2]')
    with pytest.raises(ParseError):
        parse_rtg_document("a -> b\n")
    assert parse_rtg_document("name: g\n1 -> 2  # note\n") == RtgDocument([(1, 2)], "g")
