import json
import subprocess
import sys
from pathlib import Path

import pytest

from sigmadae.cli import main
from sigmadae.sigfile import parse_sig

DATA = Path(__file__).resolve().parents[1] / "src" / "sigmadae" / "data"
PENDULUM_SIG = """SIG v1
n 3
1 1 2
1 3 0
2 2 2
2 3 0
3 1 0
3 2 0
rows A B C
cols x y lam
"""


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_convert_pendulum(capsys):
    code, out, _ = run(capsys, "convert", DATA / "pendulum.dae", "-")
    assert code == 0
    assert out == PENDULUM_SIG


def test_convert_two_pendula(capsys, tmp_path, two):
    target = tmp_path / "two.sig"
    assert run(capsys, "convert", DATA / "twopendula.dae", target)[0] == 0
    text = target.read_text()
    assert len([l for l in text.splitlines()[2:] if l[0].isdigit()]) == 14
    assert parse_sig(text) == two


def test_convert_roundtrip_idempotent(capsys, tmp_path):
    first = tmp_path / "a.sig"
    run(capsys, "convert", DATA / "modpendulum.dae", first)
    again = parse_sig(first.read_text())
    from sigmadae.sigfile import format_sig

    assert format_sig(again) == first.read_text()


def test_convert_errors(capsys, tmp_path):
    bad = tmp_path / "bad.dae"
    bad.write_text("DAE v1\nvars x\n")
    code, _, err = run(capsys, "convert", bad, "-")
    assert code == 1 and "equations" in err
    code, _, err = run(capsys, "convert", tmp_path / "missing.dae", "-")
    assert code == 1


def test_analyze_pendulum_fine(capsys):
    code, out, _ = run(capsys, "analyze", DATA / "pendulum.sig", "--print", "fine")
    assert code == 0
    assert "block sizes [3]" in out
    lines = out.splitlines()
    cols = lines[1].split()[:-1]
    d = dict(zip(cols, lines[-1].split()[1:]))
    c = {l.split()[0]: l.split()[-1] for l in lines[2:5]}
    assert d == {"x": "2", "y": "2", "lam": "0"}
    assert c == {"A": "0", "B": "0", "C": "2"}


def test_analyze_summary(capsys):
    code, out, _ = run(capsys, "analyze", DATA / "twopendula.dae")
    assert code == 0
    assert "val(Sigma) = 5" in out
    assert "canonical K = (0,0,2,4)" in out
    assert "normalised offset set: infinite" in out


def test_analyze_views(capsys):
    code, out, _ = run(capsys, "analyze", DATA / "modpendulum.dae", *sum((["--print", v] for v in ("sigma", "coarse", "fine", "sess", "fbg")), []))
    assert code == 0
    assert "essential pattern (3 entries)" in out
    assert "fine BTF, block sizes [1, 1, 1]" in out
    assert "coarse BTF, block sizes [3]" in out


def test_analyze_enumeration(capsys):
    code, out, _ = run(capsys, "analyze", DATA / "twopendula.dae", "--print", "fbg", "--enumerate-k", "6")
    assert code == 0
    assert "truncated (set is infinite)" in out
    assert "  (0,1,3,6)" in out
    code, out, _ = run(capsys, "analyze", DATA / "modpendulum.dae", "--enumerate-k", "6")
    assert "truncated" not in out


def test_analyze_dot(capsys, tmp_path):
    dot = tmp_path / "fbg.dot"
    assert run(capsys, "analyze", DATA / "twopendula.dae", "--dot", dot)[0] == 0
    text = dot.read_text()
    assert text.startswith("digraph FBG {")
    assert text.count("[label=\"B") == 4
    edges = [l.strip() for l in text.splitlines() if "->" in l]
    assert edges == [
        'B1 -> B2 [label="0"];',
        'B2 -> B3 [label="2"];',
        'B3 -> B1 [label="-3"];',
        'B3 -> B4 [label="2"];',
    ]
    assert 'B1 [label="B1\\n{E}|{v}"];' in text


def test_analyze_dot_with_k(capsys, tmp_path):
    dot = tmp_path / "fbg.dot"
    code, out, _ = run(capsys, "analyze", DATA / "twopendula.dae", "--dot", dot, "--k", "0,0,3,5")
    assert code == 0
    assert "critical edges: B1->B2, B3->B1, B3->B4" in out
    assert "BTF block order: B3 B4 B1 B2" in out
    text = dot.read_text()
    assert 'B1 -> B2 [label="0", style=bold];' in text
    assert 'B2 -> B3 [label="2"];' in text
    assert "K=5" in text


def test_analyze_bad_k(capsys):
    code, _, err = run(capsys, "analyze", DATA / "twopendula.dae", "--k", "0,0,1,3")
    assert code == 2
    code, _, err = run(capsys, "analyze", DATA / "twopendula.dae", "--k", "0,0")
    assert code == 1


def test_analyze_offsets(capsys):
    code, out, _ = run(capsys, "analyze", DATA / "pendulum.sig", "--offsets", "1,1,3", "--json", "-")
    assert code == 0
    data = json.loads(out)
    assert data["offsets"] == {"c": [1, 1, 3], "d": [3, 3, 1], "canonical": False}
    code, _, err = run(capsys, "analyze", DATA / "pendulum.sig", "--offsets", "0,0,0")
    assert code == 2 and "not a valid offset vector" in err


def test_json_report(capsys):
    code, out, _ = run(capsys, "analyze", DATA / "twopendula.dae", "--json", "-")
    assert code == 0
    data = json.loads(out)
    for key in ("n", "labels", "sigma", "hvt", "val", "offsets", "coarse", "fine", "sess", "fbg"):
        assert key in data
    assert data["val"] == 5
    assert data["offsets"]["c"] == [4, 4, 6, 0, 0, 2]
    assert data["coarse"]["sizes"] == [3, 3]
    assert data["fine"]["sizes"] == [1, 1, 1, 3]
    assert len(data["sess"]) == 9
    fbg = data["fbg"]
    assert fbg["canonical_K"] == [0, 0, 2, 4]
    assert fbg["classification"] == "infinite"
    assert {(e["from"], e["to"], e["w"]) for e in fbg["edges"]} == {(3, 1, -3), (1, 2, 0), (2, 3, 2), (3, 4, 2)}
    assert "diagnostics" not in data


def test_check_offsets(capsys):
    path = DATA / "pendulum.sig"
    code, out, _ = run(capsys, "check-offsets", path, "--c", "0,0,2")
    assert code == 0 and "general valid normalised" in out and "witness HVT" in out
    code, out, _ = run(capsys, "check-offsets", path, "--c", "1,1,3")
    assert code == 0 and out.splitlines()[2] == "general valid"
    code, out, _ = run(capsys, "check-offsets", path, "--c", "0,0,0")
    assert code == 2 and "not a general offset vector" in out
    code, out, _ = run(capsys, "check-offsets", path, "--c", "0,0,2", "--d", "2,2,1")
    assert code == 2
    code, _, _ = run(capsys, "check-offsets", path, "--c", "0,0")
    assert code == 1


def test_ill_posed(capsys):
    code, _, err = run(capsys, "analyze", DATA / "illposed.sig")
    assert code == 2 and "structurally ill-posed" in err


def test_usage_and_format_errors(capsys, tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["analyze"])
    assert exc.value.code == 1
    bad = tmp_path / "bad.sig"
    bad.write_text("SIG v1\nn 2\n1 1 -3\n")
    assert run(capsys, "analyze", bad)[0] == 1


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "sigmadae", "analyze", str(DATA / "illposed.sig")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2
    assert "structurally ill-posed" in proc.stderr
