import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from rareweak import RwModel, cb_threshold, fdr_cutoff, sample
from rareweak.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows_of(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_thresholds_values(capsys):
    code, out, _ = run(capsys, "thresholds", "--epsilon", "0.001", "--tau", "6")
    assert code == 0
    (row,) = rows_of(out)
    assert float(row["z_ks"]) == 3.0
    assert float(row["z_hc"]) == pytest.approx(4.1454, abs=1e-3)
    assert float(row["z_cb"]) == pytest.approx(4.1511, abs=1e-4)


def test_thresholds_half(capsys):
    _, out, _ = run(capsys, "thresholds", "--epsilon", "0.5", "--tau", "2")
    (row,) = rows_of(out)
    assert row["z_ks"] == row["z_hc"] == row["z_cb"] == "1"


def test_thresholds_infinite_boundary(capsys):
    _, out, _ = run(capsys, "thresholds", "--epsilon", "0", "--tau", "6")
    assert rows_of(out)[0]["z_cb"] == "inf"
    _, out, _ = run(capsys, "thresholds", "--epsilon", "0", "--tau", "6", "--format", "json")
    doc = json.loads(out)
    assert doc["z_cb"] is None and doc["z_cb_inf"] == "+inf"
    assert set(doc) >= {"z_ks", "z_hc", "z_cb", "fdr_cutoffs"}


def test_thresholds_full_precision(capsys):
    _, out, _ = run(capsys, "thresholds", "--epsilon", "0.1", "--tau", "4", "--full-precision")
    assert rows_of(out)[0]["z_cb"] == repr(cb_threshold(RwModel(0.1, 4.0)))


def test_table2a(capsys):
    code, out, _ = run(capsys, "thresholds", "--table2a")
    rows = rows_of(out)
    assert code == 0 and len(rows) == 15
    flagged = [(r["tau"], r["epsilon"]) for r in rows if r["note"]]
    assert flagged == [("4", "0"), ("6", "0")]


def test_thresholds_usage_errors(capsys):
    assert run(capsys, "thresholds", "--epsilon", "0.1", "--tau", "0")[0] == 2
    assert run(capsys, "thresholds", "--epsilon", "1.5", "--tau", "1")[0] == 2
    assert run(capsys, "thresholds", "--tau", "1")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["thresholds", "--tau", "abc"])
    assert exc.value.code == 2


@pytest.fixture
def pfile(tmp_path):
    path = tmp_path / "p.txt"
    path.write_text("# four p-values\n0.01\n0.02\n\n0.8\n0.9\n")
    return path


def test_hc_file(capsys, pfile):
    code, out, _ = run(capsys, "hc", str(pfile), "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["threshold"] == 0.02 and doc["argmax_index"] == 1
    assert doc["hc_star"] == pytest.approx(1.92)
    assert doc["significant"] == [0]


def test_hc_objective_rows(capsys, pfile):
    _, out, _ = run(capsys, "hc", str(pfile), "--emit-objective")
    rows = rows_of(out)
    assert [r["i"] for r in rows] == ["1", "2", "3"]
    assert float(rows[0]["hc"]) == pytest.approx(0.24 / np.sqrt(0.25 * 0.75 / 4), rel=1e-5)


def test_hc_zscores_match_pvalues(capsys, tmp_path):
    z = sample(RwModel(0.05, 3.0), 500, 2).z
    zf, pf = tmp_path / "z.txt", tmp_path / "p.txt"
    np.savetxt(zf, z, fmt="%.17g")
    from rareweak import p_value

    np.savetxt(pf, p_value(z), fmt="%.17g")
    _, out_z, err = run(capsys, "hc", str(zf), "--kind", "z", "--format", "json")
    assert "converting" in err
    _, out_p, _ = run(capsys, "hc", str(pf), "--format", "json")
    assert json.loads(out_z)["argmax_index"] == json.loads(out_p)["argmax_index"]


def test_hc_usage_errors(capsys, tmp_path):
    one = tmp_path / "one.txt"
    one.write_text("0.5\n")
    assert run(capsys, "hc", str(one))[0] == 2
    assert run(capsys, "hc", str(tmp_path / "missing.txt"))[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("0.1\n1.7\n")
    assert run(capsys, "hc", str(bad))[0] == 2
    nan = tmp_path / "nan.txt"
    nan.write_text("0.1\nnan\n")
    assert run(capsys, "hc", str(nan))[0] == 2


@pytest.fixture
def zfile(tmp_path):
    path = tmp_path / "z.txt"
    np.savetxt(path, sample(RwModel(0.1, 4.0), 10_000, 21).z, fmt="%.17g")
    return path


def test_fdr_oracle_matches_closed_form(capsys, zfile):
    _, out, _ = run(capsys, "fdr", str(zfile), "--mode", "oracle", "--epsilon", "0.1", "--tau", "4",
                    "--full-precision")
    rows = rows_of(out)
    m = RwModel(0.1, 4.0)
    for row in rows:
        assert float(row["z_cutoff"]) == pytest.approx(fdr_cutoff(m, float(row["level"])), abs=1e-6)
    cuts = {float(r["level"]): float(r["z_cutoff"]) for r in rows}
    assert cuts[0.8] <= cuts[0.5] <= cuts[0.2]


def test_fdr_estimated(capsys, zfile):
    code, out, _ = run(capsys, "fdr", str(zfile), "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert abs(doc["fit"]["eta0_hat"] - 0.9) <= 0.03
    assert abs(doc["fit"]["tau_hat"] - 4.0) <= 0.3
    assert [c["level"] for c in doc["cutoffs"]] == [0.2, 0.5, 0.8]


def test_fdr_curves_and_pvalue_input(capsys, tmp_path):
    pf = tmp_path / "p.txt"
    from rareweak import p_value

    np.savetxt(pf, p_value(sample(RwModel(0.1, 4.0), 2_000, 2).z), fmt="%.17g")
    code, out, err = run(capsys, "fdr", str(pf), "--kind", "p", "--curves", "--grid-step", "0.01")
    rows = rows_of(out)
    assert code == 0 and "converting" in err
    assert set(rows[0]) == {"z", "local_fdr", "local_fndr", "tail_fdr", "tail_fndr"}


def test_fdr_failures(capsys, zfile):
    code, _, err = run(capsys, "fdr", str(zfile), "--max-iter", "1")
    assert code == 3 and "converge" in err
    assert run(capsys, "fdr", str(zfile), "--mode", "oracle")[0] == 2


def test_phase(capsys):
    _, out, _ = run(capsys, "phase", "--d", "10000")
    rows = rows_of(out)
    assert len(rows) == 51
    for r in rows:
        assert float(r["r_detect"]) <= float(r["r_ident"]) <= float(r["r_recov"])
    assert run(capsys, "phase", "--d", "1")[0] == 2


def test_ratio(capsys):
    _, out, _ = run(capsys, "ratio", "--epsilon", "1e-3", "--delta-r", "0")
    (row,) = rows_of(out)
    assert float(row["ratio"]) <= 1.0
    assert run(capsys, "ratio", "--epsilon", "0")[0] == 2


def test_simulate_deterministic(capsys, tmp_path, monkeypatch):
    args = ["simulate", "--epsilon", "0.01", "--tau", "3,4", "--d", "2000", "--B", "4", "--seed", "42"]
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b
    assert len(rows_of(a)) == 3 * 2 * 5
    out = tmp_path / "sim.csv"
    run(capsys, *args, "--out", str(out))
    assert out.read_text() == a
    monkeypatch.setenv("RAREWEAK_SEED", "42")
    _, c, _ = run(capsys, *args[:-2])
    assert c == a


def test_simulate_usage(capsys):
    assert run(capsys, "simulate", "--methods", "HC,nope", "--B", "1", "--d", "100")[0] == 2
    assert run(capsys, "simulate", "--epsilon", "2", "--B", "1", "--d", "100")[0] == 2


def test_stdin_and_module_entry(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "rareweak", "hc", "-"],
        input="# header\n0.01\n0.02\n\n0.8\n0.9\n",
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert rows_of(proc.stdout)[0]["threshold"] == "0.02"
    proc = subprocess.run([sys.executable, "-m", "rareweak", "bogus"], capture_output=True, text=True)
    assert proc.returncode == 2
