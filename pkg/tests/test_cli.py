"""Command-line surface: grammar, formats, exit codes, round trips."""
import csv
import json
import math

import numpy as np
import pytest

import qrigf as q
from qrigf.cli import main, parse_pair, prostate_model


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# ---------------------------------------------------------------------------
# grammar
# ---------------------------------------------------------------------------

def test_pair_grammar_variants():
    assert parse_pair("exp:2,1").closed_form == "exp_pair"
    assert parse_pair("ph:2").closed_form == "ph"
    assert parse_pair("po:0.5").closed_form == "po_survival"
    assert parse_pair("pocdf:0.5").closed_form == "po_cdf"
    assert parse_pair("rph:2").closed_form == "reversed_ph"
    assert parse_pair("pareto2:1,2").closed_form == "pareto2_pair"
    m = parse_pair("govindarajulu:1,1/recipexp:0.7")
    assert m.closed_form == "govindarajulu_recipexp"
    ident = parse_pair("identity")
    assert ident.q3(0.5) == 1.0


def test_pair_grammar_errors():
    with pytest.raises(q.ParamError):
        parse_pair("weibull:1")
    with pytest.raises(q.ParamError):
        parse_pair("exp:2")
    with pytest.raises(q.ParamError):
        parse_pair("ph:2,3")


# ---------------------------------------------------------------------------
# eval / residual / past
# ---------------------------------------------------------------------------

def test_eval_prints_nine_decimals(capsys):
    code, out, _ = run(capsys, "eval", "--pair", "exp:2,1", "--alpha", "0.5")
    assert code == 0
    lib = q.igf(q.compose(q.Exponential(2), q.Exponential(1)), 0.5).value
    assert out.strip() == f"{lib:.9f}" == "0.942809042"


def test_eval_identity_alpha_one(capsys):
    code, out, _ = run(capsys, "eval", "--pair", "identity", "--alpha", "1")
    assert code == 0
    assert out.strip() == "1.000000000"


def test_residual_and_past_match_library(capsys):
    code, out, _ = run(capsys, "residual", "--pair", "ph:2",
                       "--alpha", "0.5", "--u", "0.3")
    lib = q.igf_residual(parse_pair("ph:2"), 0.5, 0.3).value
    assert code == 0 and out.strip() == f"{lib:.9f}"
    code, out, _ = run(capsys, "past", "--pair", "pocdf:0.5",
                       "--alpha", "0.7", "--u", "0.5")
    lib = q.igf_past(parse_pair("pocdf:0.5"), 0.7, 0.5).value
    assert code == 0 and out.strip() == f"{lib:.9f}"


def test_eval_alpha_grid_csv(tmp_path, capsys):
    out_file = tmp_path / "vals.csv"
    code, _, _ = run(capsys, "eval", "--pair", "exp:2,1",
                     "--alphas", "0.25,0.5,0.75", "--out", str(out_file))
    assert code == 0
    rows = list(csv.DictReader(out_file.open()))
    assert [r["alpha"] for r in rows] == ["0.25", "0.5", "0.75"]
    m = q.compose(q.Exponential(2), q.Exponential(1))
    for r in rows:
        assert float(r["value"]) == q.igf(m, float(r["alpha"])).value


def test_json_output(tmp_path, capsys):
    out_file = tmp_path / "vals.json"
    code, _, _ = run(capsys, "eval", "--pair", "ph:2", "--alpha", "0.5",
                     "--out", str(out_file), "--format", "json")
    assert code == 0
    data = json.loads(out_file.read_text())
    assert data[0]["value"] == q.igf(parse_pair("ph:2"), 0.5).value


# ---------------------------------------------------------------------------
# exit codes
# ---------------------------------------------------------------------------

def test_usage_error_exit_code(capsys):
    code, _, err = run(capsys, "eval", "--pair", "nonsense:1", "--alpha", "0.5")
    assert code == 2
    assert "error[ParamError]" in err


def test_numeric_error_exit_code(capsys):
    code, _, err = run(capsys, "eval", "--pair", "exp:2,1", "--alpha", "2")
    assert code == 3
    assert "error[DivergentIntegral]" in err


def test_io_error_exit_code(capsys):
    code, _, err = run(capsys, "estimate", "--input", "/nonexistent/zz.txt",
                       "--alpha", "0.5")
    assert code == 4
    assert "error[OSError]" in err


def test_argparse_usage_exit():
    with pytest.raises(SystemExit) as exc:
        main(["eval", "--pair", "exp:2,1"])  # missing --alpha
    assert exc.value.code == 2


# ---------------------------------------------------------------------------
# sample / estimate round trip
# ---------------------------------------------------------------------------

def test_sample_estimate_roundtrip_bitwise(tmp_path, capsys):
    sample_file = tmp_path / "z.txt"
    code, _, _ = run(capsys, "sample", "--pair", "ph:2", "--n", "200",
                     "--seed", "5", "--out", str(sample_file))
    assert code == 0
    est_file = tmp_path / "est.json"
    code, _, _ = run(capsys, "estimate", "--input", str(sample_file),
                     "--alpha", "0.5", "--out", str(est_file),
                     "--format", "json")
    assert code == 0
    via_cli = json.loads(est_file.read_text())[0]["estimate"]
    in_memory = q.estimate_igf(
        q.sample_from_Q3(parse_pair("ph:2"), 200, 5), 0.5).estimate
    assert via_cli == in_memory


def test_estimate_two_sample_mode(tmp_path, capsys):
    rng = np.random.default_rng(1)
    f1, f2 = tmp_path / "x1.txt", tmp_path / "x2.txt"
    q.write_sample_file(f1, rng.exponential(1.0, size=300))
    q.write_sample_file(f2, rng.exponential(1.0, size=300))
    code, out, _ = run(capsys, "estimate", "--input", str(f1),
                       "--input2", str(f2), "--alpha", "1")
    assert code == 0
    assert out.strip() == "1.000000000"


def test_qigf_seed_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("QIGF_SEED", "5")
    f_env = tmp_path / "env.txt"
    code, _, _ = run(capsys, "sample", "--pair", "ph:2", "--n", "50",
                     "--out", str(f_env))
    assert code == 0
    f_flag = tmp_path / "flag.txt"
    monkeypatch.delenv("QIGF_SEED")
    run(capsys, "sample", "--pair", "ph:2", "--n", "50", "--seed", "5",
        "--out", str(f_flag))
    assert np.array_equal(q.read_sample_file(f_env), q.read_sample_file(f_flag))


# ---------------------------------------------------------------------------
# divergences / simulate / figure / prostate
# ---------------------------------------------------------------------------

def test_divergences_table(tmp_path, capsys):
    out_file = tmp_path / "d.csv"
    code, _, _ = run(capsys, "divergences", "--pair", "ph:2",
                     "--out", str(out_file))
    assert code == 0
    rows = {r["measure"]: float(r["value"])
            for r in csv.DictReader(out_file.open())}
    panel = q.divergence_panel(parse_pair("ph:2"))
    assert rows["kl"] == panel.kl
    assert rows["hellinger"] == panel.hellinger
    assert rows["renyi_0.5"] == panel.renyi[0.5]


def test_simulate_csv(tmp_path, capsys):
    out_file = tmp_path / "sim.csv"
    code, _, _ = run(capsys, "simulate", "--pair", "ph:2", "--alpha", "0.5",
                     "--u", "0.3", "--n-list", "50", "--reps", "10",
                     "--seed", "1", "--out", str(out_file))
    assert code == 0
    lines = out_file.read_text().strip().splitlines()
    assert lines[0] == "n,u,truth,mean_estimate,bias,mse"
    assert len(lines) == 3


def test_simulate_truth_override(tmp_path, capsys):
    out_file = tmp_path / "sim.csv"
    code, _, _ = run(capsys, "simulate", "--pair", "ph:2", "--alpha", "0.5",
                     "--n-list", "50", "--reps", "5", "--seed", "1",
                     "--truth", "igf=0.25", "--out", str(out_file))
    assert code == 0
    row = next(csv.DictReader(out_file.open()))
    assert float(row["truth"]) == 0.25


def test_figure_series_match_library(tmp_path, capsys):
    out_file = tmp_path / "fig.csv"
    code, _, _ = run(capsys, "figure", "--which", "igf-vs-alpha",
                     "--out", str(out_file))
    assert code == 0
    rows = list(csv.DictReader(out_file.open()))
    by_series = {}
    for r in rows:
        by_series.setdefault(r["series"], []).append(
            (float(r["x"]), float(r["y"])))
    assert len(by_series) == 3
    for series, points in by_series.items():
        pair = parse_pair(series)
        for a, y in points[:4]:
            assert f"{y:.9f}" == f"{q.igf(pair, a).value:.9f}"
        ys = [p[1] for p in points]
        assert all(b < a for a, b in zip(ys, ys[1:]))


def test_figure_residual_surface(tmp_path, capsys):
    out_file = tmp_path / "fig2.csv"
    code, _, _ = run(capsys, "figure", "--which", "residual-surface",
                     "--out", str(out_file))
    assert code == 0
    rows = list(csv.DictReader(out_file.open()))
    assert {r["series"] for r in rows} == {
        "alpha=0.25", "alpha=0.5", "alpha=0.75", "alpha=1.25", "alpha=1.5"}
    assert all(float(r["y"]) > 0 for r in rows)


def test_prostate_table_identities(tmp_path, capsys):
    table = tmp_path / "table.csv"
    code, _, _ = run(capsys, "prostate", "--n", "400", "--seed", "1",
                     "--out", str(table))
    assert code == 0
    rows = {r["measure"]: float(r["placebo_vs_5mg"])
            for r in csv.DictReader(table.open())}
    sample = q.sample_from_Q3(prostate_model(), 400, 1)
    i_half = q.estimate_igf(sample, 0.5).estimate
    assert rows["hellinger"] == 1.0 - i_half
    assert rows["bhattacharyya"] == -math.log(i_half)
    assert rows["kl"] == q.estimate_kl(sample).estimate


def test_prostate_figures_and_second_arm(tmp_path, capsys):
    table = tmp_path / "table.csv"
    prefix = str(tmp_path / "fig")
    code, _, _ = run(capsys, "prostate", "--n", "300", "--seed", "2",
                     "--out", str(table), "--figures-prefix", prefix,
                     "--arm2", "power:70,4")
    assert code == 0
    rows = list(csv.DictReader(table.open()))
    assert "placebo_vs_power:70,4" in rows[0]
    for suffix in ("q3", "igf", "residual", "past"):
        assert (tmp_path / f"fig_{suffix}.csv").exists()
    q3rows = list(csv.DictReader((tmp_path / "fig_q3.csv").open()))
    model = prostate_model()
    sample = q.sample_from_Q3(model, 300, 2)
    first = q3rows[0]
    assert float(first["parametric"]) == pytest.approx(
        float(model.Q3(float(first["u"]))), rel=1e-12)
    assert float(first["nonparametric"]) == pytest.approx(
        q.parzen_Q3(sample, float(first["u"])), rel=1e-12)
