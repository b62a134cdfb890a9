import json

import pytest

from puiseux import PuiseuxSeries
from puiseux.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_plane(capsys):
    code, out, _ = run(capsys, "analyze", "x^(5/2)+x^(8/3)")
    assert code == 0
    assert "characteristic exponents: (5/2, 8/3)" in out
    assert "essential exponents: (5/2, 8/3) [complete]" in out


def test_analyze_json_roundtrips(capsys):
    code, out, _ = run(capsys, "analyze", "x^(5/2)+x^(8/3)", "--json")
    assert code == 0
    blob = json.loads(out)
    again = PuiseuxSeries.from_json(blob["series"])
    assert again.terms and again.ramification == (6,)
    assert blob["characteristic"]["entries"] == ["5/2", "8/3"]


def test_invert_example(capsys):
    code, out, _ = run(capsys, "invert", "x^(3/2)+2*x^(7/4)", "--precision", "4")
    assert code == 0
    assert "m1 = 6, n1 = 4" in out
    assert "y^(2/3) - 4/3*y^(5/6)" in out
    assert "PASS" in out


def test_invert_json_roundtrips(capsys):
    from fractions import Fraction as F

    from puiseux import INF, invert_series, parse
    from puiseux.exponents import EssentialSequence

    code, out, _ = run(capsys, "invert", "x^(3/2)+2*x^(7/4)", "--precision", "2", "--json")
    assert code == 0
    blob = json.loads(out)
    direct = invert_series(parse("x^(3/2)+2*x^(7/4)", precision=INF), F(2))
    assert PuiseuxSeries.from_json(blob["xi"]) == direct.xi
    assert PuiseuxSeries.from_json(blob["eta"]) == direct.eta
    assert EssentialSequence.from_json(blob["ess_xi"]) == direct.ess_xi
    assert blob["checks"]["all_passed"] is True


def test_invert_with_param(capsys):
    code, out, _ = run(
        capsys, "invert", "x^(3/2) + c*x^(7/4)", "--param", "c=-3", "--precision", "1"
    )
    assert code == 0
    assert "y^(2/3) + 2*y^(5/6)" in out  # -(2/3)(-3) = 2


def test_dual_verb(capsys):
    code, out, _ = run(capsys, "dual", "1 + t", "--precision", "6")
    assert code == 0
    assert "1 - u + 2*u^(2) - 5*u^(3)" in out


def test_qo_verb(capsys):
    code, out, _ = run(capsys, "qo", "x1^(3/2) + x2^(5/2)")
    assert code == 0
    assert "quasi-ordinary: no" in out
    assert "witness" in out


def test_toric_verb(tmp_path, capsys):
    matrix = tmp_path / "q.json"
    matrix.write_text(json.dumps([["1", "1"], ["0", "1"]]))
    code, out, _ = run(
        capsys,
        "toric",
        "x1^(3/2) + x2^(1/4) + x1^(7/2)*x2^(5/2)",
        "--matrix",
        str(matrix),
    )
    assert code == 0
    assert "v2^(1/4) + v1^(3/2)*v2^(3/2) + v1^(7/2)*v2^(6)" in out
    assert "PASS" in out


def test_verify_verb(capsys):
    code, out, _ = run(capsys, "verify", "x^(3/2)+2*x^(7/4)", "--precision", "2")
    assert code == 0
    assert "Halphen-Stolz inversion: PASS" in out
    assert "Lagrange oracle equivalence: PASS" in out


def test_lagrange_verb(capsys):
    code, out, _ = run(capsys, "lagrange", "x^(3/2)+2*x^(7/4)", "--precision", "1")
    assert code == 0
    assert "[xi]_2/3 = 1" in out
    assert "[xi]_5/6 = -4/3" in out


def test_corpus_verb(capsys):
    code, out, _ = run(capsys, "corpus")
    assert code == 0
    assert "corpus cases passed" in out
    assert "FAIL" not in out


def test_deterministic_output(capsys):
    first = run(capsys, "invert", "x^(3/2)+2*x^(7/4)", "--precision", "3")
    second = run(capsys, "invert", "x^(3/2)+2*x^(7/4)", "--precision", "3")
    assert first == second


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "analyze", "x^(")
    assert code == 1
    assert "error" in err


def test_precondition_error_exit_code(capsys):
    code, _, err = run(capsys, "invert", "x1^(3/2) + x2^(5/2)")
    assert code == 1
    assert "dominating" in err


def test_unknown_flag_exits_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["analyze", "x", "--bogus"])
    assert exc.value.code == 1


def test_unknown_verb_exits_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1


def test_order_and_lattice_flags(tmp_path, capsys):
    matrix = tmp_path / "order.json"
    matrix.write_text(json.dumps([["1", "1"], ["0", "1"]]))
    code, out, _ = run(
        capsys,
        "analyze",
        "x1^(3/2) + x2^(1/4) + x1^(7/2)*x2^(5/2)",
        "--order",
        f"matrix:{matrix}",
    )
    assert code == 0
    code2, out2, _ = run(
        capsys,
        "analyze",
        "x1^(3/2) + x2^(1/4)",
        "--order",
        "weights:1,2",
        "--lattice",
        "zh",
    )
    assert code2 == 0


def test_failed_verification_exits_two(capsys):
    # a hand-corrupted report exercises the exit-code mapping
    from puiseux.cli import _report_exit

    assert _report_exit(False) == 2
    assert _report_exit(True) == 0
