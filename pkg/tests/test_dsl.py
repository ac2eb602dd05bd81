from importlib import resources

import pytest

from luttinger.dsl import (
    BlockStmt,
    LetStmt,
    Options,
    ScriptError,
    format_script,
    parse,
    run,
)

SCRIPTS = sorted(p.name for p in resources.files("luttinger").joinpath("scripts").iterdir() if p.name.endswith(".mfd"))

HEADER = """block W = builtin("matsumoto_W")
block B = builtin("block_B")
let R = fiber_sum(W.F, B.G, match=[a1->x1, b1->y1, a2->x2, b2->y2])
"""


def script_text(name):
    return resources.files("luttinger").joinpath("scripts", name).read_text(encoding="utf-8")


def test_single_binding():
    s = parse('block W = builtin("matsumoto_W")')
    assert s.statements == (BlockStmt("W", "matsumoto_W"),)


def test_shipped_scripts_present():
    assert {"paper_R.mfd", "paper_P.mfd", "paper_Q.mfd", "paper_Wprime.mfd"} <= set(SCRIPTS)


@pytest.mark.parametrize("name", SCRIPTS)
def test_round_trip(name):
    s = parse(script_text(name))
    printed = format_script(s)
    assert parse(printed) == s
    assert format_script(parse(printed)) == printed


@pytest.mark.parametrize("name", SCRIPTS)
def test_shipped_scripts_pass(name):
    code, report = run(parse(script_text(name)))
    assert code == 0, report
    assert report["summary"]["failed"] == 0 and report["summary"]["errors"] == 0


def test_paper_R_assertions():
    code, report = run(parse(script_text("paper_R.mfd")))
    asserted = [e["statement"] for e in report["statements"] if e["statement"].startswith("assert")]
    assert "assert euler(R) == 8" in asserted
    assert "assert sigma(R) == -4" in asserted
    assert "assert abelianization(G) == Z^2" in asserted


def test_paper_Q_reports_order_one():
    code, report = run(parse(script_text("paper_Q.mfd")))
    order = next(e for e in report["statements"] if e["statement"].startswith("assert order"))
    assert order["lhs"] == "Finite(1)"


def test_unknown_surface_label_is_positioned():
    text = 'block W = builtin("matsumoto_W")\nblock B = builtin("block_B")\n'
    text += "let X = fiber_sum(W.F, B.H, match=[a1->x1,b1->y1,a2->x2,b2->y2])\n"
    code, report = run(parse(text))
    assert code == 1
    err = report["statements"][2]
    assert err["status"] == "error"
    assert err["error"].startswith("3:24: error:") and "'H'" in err["error"]


def test_failed_assertion_shows_computed_value():
    code, report = run(parse(HEADER + "assert euler(R) == 9\n"))
    assert code == 1
    last = report["statements"][-1]
    assert last["status"] == "fail" and last["lhs"] == 8 and last["rhs"] == 9


def test_genus_mismatch_is_a_report_entry():
    text = HEADER + 'block T = builtin("torus_T4")\nlet X = fiber_sum(R.T1, W.F, match=[y1->a1, s->b1])\nassert euler(X) == 0\n'
    code, report = run(parse(text))
    assert code == 1
    statuses = [e["status"] for e in report["statements"]]
    assert statuses[-2:] == ["error", "error"]
    assert "genus mismatch" in report["statements"][-2]["error"]
    assert "depends on 'X'" in report["statements"][-1]["error"]


def test_unknown_builtin():
    code, report = run(parse('block V = builtin("nope")'))
    assert code == 1 and "catalog has" in report["statements"][0]["error"]


@pytest.mark.parametrize(
    "text, line, column, fragment",
    [
        ("let X = frob(W)", 1, 9, "unknown operation"),
        ("let X = euler(Y)", 1, 15, "unknown name"),
        ('block W = builtin("matsumoto_W")\nblock W = builtin("block_B")', 2, 7, "single-assignment"),
        ("assert 1 = 1", 1, 10, "'=='"),
        ("let let = 1", 1, 5, "reserved"),
        ("set speed = 3", 1, 5, "unknown setting"),
        ('block W = builtin("matsumoto_W")\nlet X = luttinger(W.F, dir=(0,1))', 2, 33, "missing argument 'k'"),
        ("block W = builtin(matsumoto_W)", 1, 19, "quoted"),
        ("assert order(< a | a^2 >) == 2 $", 1, 32, "unexpected character"),
        ("frobnicate", 1, 1, "expected 'block'"),
    ],
)
def test_parse_errors_are_positioned(text, line, column, fragment):
    with pytest.raises(ScriptError) as info:
        parse(text)
    d = info.value.diagnostics[0]
    assert (d.line, d.column) == (line, column), d
    assert fragment in d.message
    assert d.severity == "error"


def test_every_bad_line_reported():
    with pytest.raises(ScriptError) as info:
        parse("let = 1\nblock W = builtin(\"matsumoto_W\")\nassert euler(W) ==\n")
    assert [d.line for d in info.value.diagnostics] == [1, 3]


def test_literals_and_predicates():
    text = HEADER + "\n".join(
        [
            "let G = closed_pi1(R)",
            "assert abelianization(< a, b | a^2, [a,b] >) == Z ⊕ Z/2",
            "assert abelianization(< a | a^6 >) == Z/2 + Z/3",
            'assert hom_count(G, "S3") == 18',
            "assert order(< a, b | a^2, b^2, (a*b)^3 >) == 6",
            "assert order(< a | a >) == 1",
            "assert abelianization(< a | a >) == 0",
            "assert euler(blow_up(R, n=2)) == 10",
            "assert simplify(G) != < t | >",
            "assert trivial([x1,t], complement(R))",
            "assert trivial(a, < a | a^2, a^3 >)",
        ]
    )
    code, report = run(parse(text))
    assert code == 0, [e for e in report["statements"] if e["status"] != "ok" and e["status"] != "pass"]


def test_not_shown_trivial_fails():
    code, report = run(parse("assert trivial(t, < t, s | [t,s] >)"))
    assert code == 1
    assert report["statements"][0]["result"] == "not shown trivial"


def test_set_directive_overrides_options():
    text = "set max_cosets = 10\nassert order(< a | a^50 >) == 50\n"
    code, report = run(parse(text), Options(max_cosets=1000))
    assert code == 1 and report["statements"][1]["lhs"] == "Exceeded(10)"


def test_run_is_deterministic():
    s = parse(script_text("paper_P.mfd"))
    assert run(s) == run(s)


def test_let_binding_value():
    s = parse(HEADER)
    assert isinstance(s.statements[2], LetStmt)
    code, report = run(s)
    assert report["statements"][2]["value"]["euler"] == 8
