import json
import math
import pathlib

import pytest

import normfuzz

DATA = pathlib.Path(__file__).resolve().parents[2] / "data"
CURTAIN = (DATA / "curtain.sleec").read_text()


def test_pretty_print_normalizes_the_curtain_rule():
    text = normfuzz.pretty_print(CURTAIN)
    assert "  if dressed then open_curtains\n" in text
    assert "  else if not highly_distressed then do_not_open\n" in text
    assert text.endswith("  else open_curtains\n}\n")


def test_check_reports_undeclared_conditions():
    ok = normfuzz.check(CURTAIN)
    assert ok["rules"] == ["curtains"] and ok["errors"] == []
    bad = normfuzz.check("rule s { when ask_open then open_curtains unless sleepy in which case do_not_open }")
    assert bad["errors"] == ["rule s: undeclared condition 'sleepy'"]


def test_parse_error_is_raised():
    with pytest.raises(normfuzz.ParseError, match="1:16"):
        normfuzz.pretty_print("rule R1 { when then open }")
    assert issubclass(normfuzz.ParseError, normfuzz.NormfuzzError)


def test_membership_functions():
    assert normfuzz.eval_age(30, "young") == pytest.approx(0.5, abs=1e-12)
    assert normfuzz.eval_age(55, "Old") == pytest.approx(0.5, abs=1e-12)
    assert normfuzz.eval_trapezoid(75, [60, 90, 153, 180]) == pytest.approx(0.5, abs=1e-12)
    assert normfuzz.eval_trapezoid(-1e9, [-math.inf, -math.inf, 60, 90]) == 1.0
    with pytest.raises(normfuzz.InvalidCorners):
        normfuzz.eval_trapezoid(1, [3, 2, 4, 5])
    with pytest.raises(normfuzz.NegativeAge):
        normfuzz.eval_age(-1, "young")
    assert normfuzz.possibility_of_union({"a": 0.2, "b": 0.7}, {"a", "b"}) == 0.7


def test_dressing():
    r = normfuzz.is_dressed({"one_sock", "hat"}, categories={"one_sock": 0.12, "hat": 0.11})
    assert not r["dressed"]
    assert r["accumulated_sum"] == pytest.approx(0.23, abs=1e-12)
    assert normfuzz.is_dressed({"sundress"})["step"] == "single_max"
    with pytest.raises(normfuzz.UnknownItem):
        normfuzz.is_dressed({"cape"})


def test_distress():
    r = normfuzz.assess_distress(80, 170, 190, 39.0)
    assert r["d_star"] == pytest.approx(0.8, abs=1e-9)
    assert r["numerator"] / r["denominator"] == pytest.approx(r["d_star"], abs=1e-12)
    assert len(json.loads(normfuzz.default_rule_base_json())["rules"]) == 81


def test_evaluate_scenarios():
    scenarios = json.loads((DATA / "scenarios" / "ward_round.json").read_text())
    out = normfuzz.evaluate(CURTAIN, scenarios, trace=True)
    assert [o["action"] for o in out] == ["open_curtains", "do_not_open", "open_curtains", "open_curtains"]
    assert out[1]["branch"] == 1
    strict = normfuzz.evaluate(CURTAIN, scenarios[3], profile={"distress_threshold": 0.95})
    assert strict[0]["action"] == "do_not_open"
    err = normfuzz.evaluate(CURTAIN, {"event": "ask_open", "worn": ["cape"], "vitals": {"age": 1, "bp": 2, "hr": 3, "bt": 4}})
    assert err[0]["error"] == "UnknownItem"


def test_run_cli():
    code, out, _ = normfuzz.run_cli(["table", "hr", "--from", "75", "--to", "75", "--step", "1"])
    assert code == 0
    assert "75: Low=0.500 Medium=0.500 High=0.000" in out
    assert normfuzz.run_cli(["table", "spo2"])[0] == 1
