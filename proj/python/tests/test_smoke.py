import json
import math

import pytest

import leggett_lab as ll


def test_kappa_range():
    assert ll.kappa_K(0.01) > 0.9999
    assert 0.905 <= min(ll.kappa_K(0.1 + 0.01 * i) for i in range(991)) <= 0.910


def test_closed_form_matches_oracle():
    model = ll.CorrelationModel.ecs(1.0, -1)
    for a, b in [((0.3, 0.1), (1.2, -0.7)), ((2.0, 2.5), (0.4, 1.0))]:
        assert abs(model.correlation(a, b) - ll.oracle_correlation(1.0, -1, a, b)) < 1e-8


def test_singlet_leggett_value():
    pes = ll.CorrelationModel.pes()
    assert ll.leggett_value(pes, "3p6", 0.65) == pytest.approx(4 * math.cos(0.325), abs=1e-12)
    assert ll.analytic_fmin("3p7", 0.25) == pytest.approx(math.sin(0.125))


def test_malus_bound():
    r = ll.numeric_fmin(ll.CorrelationModel.pes(), "3p6", 1.0)
    assert r["f_min"] == pytest.approx(4 / 3 * math.sin(0.5), abs=1e-3)
    assert r["mode"] == "state_corrected"


def test_chsh_closed_form():
    k = ll.kappa_K(1.0)
    r = ll.optimize_chsh(ll.CorrelationModel.ecs(1.0, -1))
    assert r["B"] == pytest.approx(2 * math.sqrt(1 + k * k), abs=1e-4)


def test_evaluate_and_errors():
    e = ll.evaluate("ecs-", 5.0, 0.25)
    assert e["violated"]
    assert e["margin"] == pytest.approx(e["L"] - e["bound"]["bound"])
    with pytest.raises(ValueError):
        ll.evaluate("ecs-", 5.0, 0.25, layout="4p8")


def test_cli_round(tmp_path):
    out = tmp_path / "chsh.csv"
    code, stdout, stderr = ll.run_cli(["chsh", "--state", "pes", "--alpha", "1", "-o", str(out)])
    assert code == 0, stderr
    summary = json.loads(stdout)
    assert summary["command"] == "chsh"
    assert out.read_text().startswith("index,alpha,B")
    code, _, stderr = ll.run_cli(["chsh", "--nope"])
    assert code == 2
    assert "Usage" in stderr
