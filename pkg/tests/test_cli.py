import json
import shutil
import subprocess
import sys
from importlib import resources

import pytest

from luttinger.cli import main

SCRIPTS = resources.files("luttinger").joinpath("scripts")


def call(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_run_shipped_script(capsys):
    code, out, _ = call(capsys, "run", str(SCRIPTS / "paper_Q.mfd"))
    assert code == 0
    assert "Finite(1)" in out


def test_run_json_is_byte_stable(capsys):
    path = str(SCRIPTS / "paper_R.mfd")
    first = call(capsys, "run", path, "--json", "--no-timestamp")[1]
    second = call(capsys, "run", path, "--json", "--no-timestamp")[1]
    assert first == second
    data = json.loads(first)
    assert data["exit_code"] == 0 and "generated_at" not in data


def test_timestamp_present_by_default(capsys):
    _, out, _ = call(capsys, "abelianize", "< a | a^2 >", "--json")
    assert "generated_at" in json.loads(out)


def test_failing_assertion_exit_1(tmp_path, capsys):
    script = tmp_path / "bad.mfd"
    script.write_text(
        'block W = builtin("matsumoto_W")\nblock B = builtin("block_B")\n'
        "let R = fiber_sum(W.F, B.G, match=[a1->x1, b1->y1, a2->x2, b2->y2])\n"
        "assert euler(R) == 9\n"
    )
    code, out, _ = call(capsys, "run", str(script))
    assert code == 1
    assert "computed 8, expected 9" in out


def test_parse_error_exit_2(tmp_path, capsys):
    script = tmp_path / "bad.mfd"
    script.write_text("let X = euler(Y)\n")
    code, _, err = call(capsys, "run", str(script))
    assert code == 2
    assert "bad.mfd:1:15: error: unknown name 'Y'" in err


def test_missing_script_exit_2(capsys):
    assert call(capsys, "run", "/nonexistent.mfd")[0] == 2


def test_bad_presentation_exit_2(capsys):
    code, _, err = call(capsys, "simplify", "< a | b >")
    assert code == 2 and "1:7" in err


def test_bad_cap_exit_2(capsys):
    assert call(capsys, "enumerate", "< a | a^2 >", "--max-cosets", "0")[0] == 2


def test_simplify(capsys):
    code, out, _ = call(capsys, "simplify", "< x, t | [t,x], x >", "--json", "--no-timestamp")
    data = json.loads(out)
    assert code == 0
    assert data["output"] == "< t | >"
    assert data["generator_images"] == {"x": "1", "t": "t"}
    assert data["certificate"]["replay_ok"]


def test_abelianize(capsys):
    code, out, _ = call(capsys, "abelianize", "< a, s | a^2, [s,a] >", "--no-timestamp")
    assert out.strip() == "Z ⊕ Z/2"


def test_enumerate(capsys):
    _, out, _ = call(capsys, "enumerate", "< a, b | a^2, b^2, (a*b)^3 >", "--json", "--no-timestamp")
    data = json.loads(out)
    assert data["outcome"] == "finite" and data["order"] == 6
    _, out, _ = call(capsys, "enumerate", "< a | >", "--max-cosets", "30", "--json", "--no-timestamp")
    assert json.loads(out)["outcome"] == "exceeded"


def test_presentation_from_file_and_stdin(tmp_path, capsys, monkeypatch):
    f = tmp_path / "g.txt"
    f.write_text("< a | a^4 >\n")
    assert call(capsys, "abelianize", str(f))[1].strip() == "Z/4"
    monkeypatch.setattr(sys, "stdin", __import__("io").StringIO("< a | a^3 >"))
    assert call(capsys, "abelianize", "-")[1].strip() == "Z/3"


def test_verify_paper_json(capsys):
    code, out, _ = call(capsys, "verify-paper", "--json", "--no-timestamp")
    data = json.loads(out)
    assert code == 0
    assert data["summary"]["fail"] == 0 and data["summary"]["blocked"] == 0


@pytest.mark.skipif(shutil.which("luttinger-calc") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(
        ["luttinger-calc", "abelianize", "< a, b | [a,b] >", "--no-timestamp"], capture_output=True, text=True
    )
    assert res.returncode == 0 and res.stdout.strip() == "Z^2"
