import io
import json
import sys

import pytest

from edgemult.cli import main


def run(argv, stdin=None):
    old_out, old_err = sys.stdout, sys.stderr
    sys.stdout, sys.stderr = io.StringIO(), io.StringIO()
    old_in = sys.stdin
    if stdin is not None:
        sys.stdin = io.StringIO(stdin)
    try:
        code = main(argv)
        return code, sys.stdout.getvalue(), sys.stderr.getvalue()
    finally:
        sys.stdout, sys.stderr = old_out, old_err
        sys.stdin = old_in


@pytest.fixture
def path_file(tmp_path):
    p = tmp_path / "path.edges"
    p.write_text("a b\nb c\n")
    return str(p)


@pytest.fixture
def c4_file(tmp_path):
    p = tmp_path / "c4.edges"
    p.write_text("x1 y1\nx1 y2\nx2 y1\nx2 y2\n")
    return str(p)


def test_betti_text_and_json(path_file):
    code, out, _ = run(["betti", path_file])
    assert code == 0 and "reg 1" in out and "projdim 2" in out
    code, out, _ = run(["betti", path_file, "--json"])
    obj = json.loads(out)
    assert obj["reg"] == 1 and obj["projdim"] == 2
    assert obj["pure"] and obj["quasi_pure"]


def test_betti_from_stdin_as_ideal():
    code, out, _ = run(["betti", "-", "--ideal", "--json"], stdin="a b\nb c\n")
    assert code == 0
    assert json.loads(out)["projdim"] == 2


def test_betti_char_flag(path_file):
    code, out, _ = run(["betti", path_file, "--char", "2", "--json"])
    assert code == 0 and json.loads(out)["char"] == 2
    code, _, err = run(["betti", path_file, "--char", "4"])
    assert code == 2 and "prime" in err


def test_malformed_input_exits_2(tmp_path):
    p = tmp_path / "bad.edges"
    p.write_text("a a\n")
    code, _, err = run(["betti", str(p)])
    assert code == 2 and "loop" in err
    code, _, _ = run(["betti", str(tmp_path / "missing.edges")])
    assert code == 2


def test_mult(c4_file):
    code, out, _ = run(["mult", c4_file, "--json"])
    obj = json.loads(out)
    assert code == 0 and obj["e"] == 2 and obj["height"] == 2
    assert obj["minimal_covers"] == [["x1", "x2"], ["y1", "y2"]]


def test_bounds(c4_file, path_file):
    code, out, _ = run(["bounds", c4_file])
    assert code == 0 and "hhsu" in out and "fails" not in out
    code, out, _ = run(["bounds", path_file, "--json"])
    obj = json.loads(out)
    assert code == 0
    assert {b["name"] for b in obj["bounds"]} >= {"hhsu", "taylor"}


def test_reduce(c4_file, tmp_path):
    code, out, _ = run(["reduce", c4_file])
    assert code == 0 and "collapse 1" in out and "e_after=2" in out
    k13 = tmp_path / "k13.edges"
    k13.write_text("a b\na c\na d\n")
    code, _, err = run(["reduce", str(k13)])
    assert code == 2 and "standing hypothesis" in err


def test_check_cm(path_file, c4_file, tmp_path):
    p4 = tmp_path / "p4.edges"
    p4.write_text("a b\nb c\nc d\n")
    code, out, _ = run(["check-cm", str(p4)])
    assert code == 0 and "True" in out
    code, out, _ = run(["check-cm", c4_file, "--json"])
    assert code == 0 and not json.loads(out)["cohen_macaulay"]


def test_verify_subcommand():
    code, out, _ = run(["verify", "--max-vertices", "6", "--json"])
    obj = json.loads(out)
    assert code == 0 and obj["classes"] == 20 and not obj["failures"]
    code, _, err = run(["verify", "--max-vertices", "6", "--checks", "bogus"])
    assert code == 2 and "unknown" in err


def test_report(path_file):
    code, out, _ = run(["report", path_file])
    obj = json.loads(out)
    assert code == 0
    assert "colon_height_search" in obj and obj["quantities"]["e"] == 1


def test_json_output_deterministic(c4_file):
    _, out1, _ = run(["bounds", c4_file, "--json"])
    _, out2, _ = run(["bounds", c4_file, "--json"])
    assert out1 == out2
    _, r1, _ = run(["reduce", c4_file, "--json"])
    _, r2, _ = run(["reduce", c4_file, "--json"])
    assert r1 == r2


def test_out_file(tmp_path, path_file):
    target = tmp_path / "out.json"
    code, out, _ = run(["betti", path_file, "--json", "--out", str(target)])
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["reg"] == 1


def test_config_file_flags_win(tmp_path, path_file):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"characteristic": 2, "cap_n": 18}))
    code, out, _ = run(["betti", path_file, "--config", str(cfg), "--json"])
    assert code == 0 and json.loads(out)["char"] == 2
    code, out, _ = run(["betti", path_file, "--config", str(cfg),
                        "--char", "3", "--json"])
    assert code == 0 and json.loads(out)["char"] == 3


def test_verify_jsonl_stream(tmp_path):
    target = tmp_path / "reports.jsonl"
    code, out, _ = run(["verify", "--max-vertices", "4", "--json",
                        "--jsonl", str(target)])
    assert code == 0
    lines = target.read_text().splitlines()
    assert len(lines) == 4  # digraph classes with c <= 2
    assert all(json.loads(line)["subject"].startswith("digraph:")
               for line in lines)
