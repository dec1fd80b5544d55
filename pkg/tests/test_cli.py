import csv
import json
import math
import subprocess
import sys
from fractions import Fraction as F

import pytest

from lcadirent import EntropyCurve, MarkovMeasure, parse_rule
from lcadirent.cli import main
from lcadirent.estimator import TDEEstimate
from lcadirent.io import (CURVE_SCHEMA, ESTIMATE_SCHEMA, MARKOV_SCHEMA, emit_csv, emit_svg,
                          log_scale, validate)

from conftest import RULES, T4

ln = math.log


@pytest.fixture
def t4_file(tmp_path):
    path = tmp_path / "t4.json"
    path.write_text(json.dumps({"n": 4, "rows": [[str(x) for x in r] for r in T4]}))
    return str(path)


def run_json(capsys, *argv):
    assert main(list(argv)) == 0
    return json.loads(capsys.readouterr().out)


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


# -- analyze / invert ---------------------------------------------------------------

def test_analyze_mod4(capsys):
    rep = run_json(capsys, "analyze", RULES["m4"])
    assert rep["factorization"] == [[2, 2]]
    assert rep["permutivity"]["factors"][0]["P"] == [0, 1]
    assert rep["permutivity"]["leftmost"] is False
    assert rep["invertible"] is True
    assert rep["inverse"] == "2x[-3]+2x[-2]+3x[-1] % 4"


def test_analyze_not_invertible(capsys):
    rep = run_json(capsys, "analyze", "1x[-1]+1x[1] % 2")
    assert rep["invertible"] is False and rep["inverse"] is None
    assert rep["non_invertible_primes"] == [2]
    assert rep["topological_entropy"] == pytest.approx(2 * ln(2))


def test_invert(capsys, tmp_path):
    assert main(["invert", RULES["m9_inv"]]) == 0
    assert capsys.readouterr().out == "7x[1]+6x[2]+6x[3] % 9\n"
    out = tmp_path / "inv.json"
    assert main(["invert", RULES["m4"], "--json", "-o", str(out)]) == 0
    assert json.loads(out.read_text())["inverse"] == "2x[-3]+2x[-2]+3x[-1] % 4"


# -- exit codes -------------------------------------------------------------------------

@pytest.mark.parametrize("argv, code", [
    (["invert", "1x[-1]+1x[1] % 2"], 1),
    (["analyze", "3x[1] % 1"], 2),
    (["analyze", "1x[0]+1x[0] % 4"], 2),
    (["frobnicate"], 2),
    (["tde"], 2),
    (["tde", RULES["m5"], "--log-base", "7"], 2),
    (["bounds", RULES["m4"], "--direction", "0,1"], 2),
    (["bounds", RULES["m4"], "--direction", "zero", "--bernoulli", "1/2,1/2"], 2),
    (["bounds", RULES["m4"], "--direction", "0,1", "--bernoulli", "1/2,1/3"], 1),
    (["bounds", RULES["m4"], "--direction", "0,1", "--bernoulli", "1/2,1/2"], 1),
    (["estimate", "1x[-1]+1x[1] % 2", "--rows", "9", "--budget", "100"], 1),
    (["estimate", "1x[-1]+1x[1] % 2", "--theta", "0"], 1),
])
def test_exit_codes(argv, code, capsys):
    assert main(argv) == code
    if code:
        assert capsys.readouterr().err


def test_bad_matrix_exit_1(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"rows": [["1/2", "1/3"], ["0", "1"]]}))
    assert main(["markov", "--matrix", str(bad)]) == 1
    bad.write_text("{not json")
    assert main(["markov", "--matrix", str(bad)]) == 1
    bad.write_text(json.dumps({"rows": "nope"}))
    assert main(["markov", "--matrix", str(bad)]) == 1
    assert main(["markov", "--matrix", str(tmp_path / "missing.json")]) == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "lcadirent", "invert", "1x[-1]+1x[1] % 2"],
                         capture_output=True, text=True)
    assert res.returncode == 1
    assert "not invertible" in res.stderr
    res = subprocess.run([sys.executable, "-m", "lcadirent", "invert", RULES["m4"]],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "2x[-3]+2x[-2]+3x[-1] % 4"


# -- tde / mtde curves ------------------------------------------------------------------------

def test_tde_csv_mod30(tmp_path):
    out = tmp_path / "curve.csv"
    assert main(["tde", RULES["m30"], "--samples", "721", "--out", str(out)]) == 0
    rows = read_csv(out)
    assert rows[0] == ["theta", "entropy"]
    assert len(rows) == 1 + 721 + 4
    data = {float(t): float(h) for t, h in rows[1:]}
    mid = min(data, key=lambda t: abs(t - math.pi / 2))
    assert mid == pytest.approx(math.pi / 2, abs=1e-11)
    assert data[mid] == pytest.approx(5 * ln(2) + 6 * ln(3) + 5 * ln(5), rel=1e-11)
    raw = out.read_bytes()
    assert b"\r" not in raw
    thetas = [float(r[0]) for r in rows[1:]]
    assert thetas == sorted(thetas)


def test_tde_log_base(tmp_path):
    outs = {}
    for base in ("e", "2", "10", "m"):
        path = tmp_path / f"c{base}.csv"
        assert main(["tde", RULES["m5"], "--samples", "50", "--log-base", base,
                     "-o", str(path)]) == 0
        outs[base] = [float(r[1]) for r in read_csv(path)[1:]]
    for b, div in (("2", ln(2)), ("10", ln(10)), ("m", ln(5))):
        for nat, conv in zip(outs["e"], outs[b]):
            assert conv * div == pytest.approx(nat, rel=1e-11, abs=1e-12)


def test_tde_json_and_svg(tmp_path):
    j, s = tmp_path / "c.json", tmp_path / "c.svg"
    assert main(["tde", RULES["m30"], "-o", str(tmp_path / "c.csv"),
                 "--json", str(j), "--svg", str(s)]) == 0
    data = json.loads(j.read_text())
    validate(data, CURVE_SCHEMA)
    curve = EntropyCurve.from_json(data)
    assert curve.to_json()["breakpoints"] == data["breakpoints"]
    assert len(data["sectors"]) == 5
    svg = s.read_text()
    assert svg.count('class="marker"') == 4
    assert svg.count("<polyline") == 1
    assert 'viewBox="0 0 800 500"' in svg


def test_mtde_csv_includes_mod23_roots(tmp_path):
    out = tmp_path / "m.csv"
    assert main(["mtde", RULES["m23"], "-o", str(out), "--svg", str(tmp_path / "m.svg")]) == 0
    thetas = [float(r[0]) for r in read_csv(out)[1:]]
    assert any(abs(t - 0.463647609) < 1e-9 for t in thetas)
    assert any(abs(t - 2.819842099) < 1e-9 for t in thetas)
    assert thetas[-1] == pytest.approx(2 * math.pi)


def test_mtde_single_direction(capsys):
    rec = run_json(capsys, "mtde", RULES["m23"], "--direction", "0,1")
    assert rec["value"] == pytest.approx(5 * ln(23))
    assert rec["case"] == 3 and [rec["z_l"], rec["z_r"]] == [-2, 3]


# -- bounds / markov ---------------------------------------------------------------------------

def test_bounds_bernoulli(capsys):
    rec = run_json(capsys, "bounds", RULES["m4"], "--direction", "1,-2",
                   "--bernoulli", "1/2,1/8,1/8,1/4")
    assert rec["bound"] == pytest.approx(7 * ln(2))
    assert rec["vector"] == ["1/2", "1/8", "1/8", "1/4"]


def test_bounds_markov(capsys, t4_file):
    rec = run_json(capsys, "bounds", RULES["m4"], "--direction", "0,3", "--matrix", t4_file)
    assert rec["bound"] == pytest.approx(6 * rec["entropy_rate"])


def test_markov_exact_rendering(capsys, t4_file):
    rec = run_json(capsys, "markov", "--matrix", t4_file, "--direction", "2,3")
    assert rec["stationary"] == ["1/113", "4/113", "56/113", "52/113"]
    assert rec["exact"] is True
    assert rec["directional_entropy"] == pytest.approx(3 * rec["entropy_rate"])
    validate(rec, MARKOV_SCHEMA)
    mu = MarkovMeasure.from_json(rec)
    assert mu.stationary[2] == F(56, 113)


# -- estimate ------------------------------------------------------------------------------------

def test_estimate_record(capsys):
    rec = run_json(capsys, "estimate", "1x[-1]+1x[1] % 2", "--half-width", "2", "--rows", "4")
    validate(rec, ESTIMATE_SCHEMA)
    assert rec["count"] == 8192
    assert TDEEstimate.from_json(rec).nats_per_row == pytest.approx(rec["nats_per_row"])


def test_estimate_sampled_seed(capsys):
    rec = run_json(capsys, "estimate", "1x[-1]+1x[1] % 2", "--mode", "sampled",
                   "--budget", "3000", "--seed", "11", "--log-base", "2")
    assert rec["seed"] == 11 and rec["mode"] == "sampled"
    assert rec["nats_per_row"] == pytest.approx(math.log2(rec["count"]) / 4)


# -- environment, determinism ----------------------------------------------------------------------

def test_outdir_env(tmp_path, monkeypatch):
    monkeypatch.setenv("LCADIRENT_OUTDIR", str(tmp_path / "base"))
    assert main(["tde", RULES["m5"], "--samples", "10", "-o", "sub/c.csv"]) == 0
    assert (tmp_path / "base" / "sub" / "c.csv").exists()


def test_byte_identical_reruns(tmp_path, t4_file):
    def run(tag):
        d = tmp_path / tag
        main(["tde", RULES["m30"], "-o", str(d / "c.csv"), "--svg", str(d / "c.svg"),
              "--json", str(d / "c.json")])
        main(["mtde", RULES["m11"], "-o", str(d / "m.csv"), "--svg", str(d / "m.svg")])
        main(["markov", "--matrix", t4_file, "-o", str(d / "k.json")])
        main(["estimate", "1x[-1]+1x[1] % 2", "--mode", "sampled", "--budget", "5000",
              "--seed", "3", "-o", str(d / "e.json")])
        return {p.name: p.read_bytes() for p in sorted(d.iterdir())}
    a, b = run("a"), run("b")
    assert len(a) == 7 and a == b


# -- emitters ------------------------------------------------------------------------------------

def test_emit_csv_identity_two_points(tmp_path):
    out = tmp_path / "i.csv"
    emit_csv([(math.pi, ln(3)), (0.0, ln(3))], out)
    assert out.read_text() == f"theta,entropy\n0,{ln(3):.12g}\n{math.pi:.12g},{ln(3):.12g}\n"


def test_emit_csv_empty(tmp_path):
    out = tmp_path / "e.csv"
    emit_csv([], out)
    assert out.read_text() == "theta,entropy\n"


def test_emit_svg_needs_two_points(tmp_path):
    with pytest.raises(ValueError):
        emit_svg([(0.0, 1.0)], tmp_path / "x.svg")
    emit_svg([(0.0, 1.0), (1.0, 1.0)], tmp_path / "flat.svg")
    assert "<polyline" in (tmp_path / "flat.svg").read_text()


def test_log_scale():
    assert log_scale("m", 9) == ln(9)
    with pytest.raises(ValueError):
        log_scale("m")
    with pytest.raises(ValueError):
        log_scale("3")
