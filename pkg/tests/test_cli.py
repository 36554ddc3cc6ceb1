import csv
import json

import pytest

from fqzeta.cli import main
from fqzeta.congruence import check_height_congruence, INFINITE
from fqzeta.zeta import RationalZeta, build_log_zeta, K3_TYPE_III


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out.strip(), captured.err.strip()


def test_count_diagonal_table(capsys):
    code, out, _ = run(
        capsys, "count", "--diagonal", "d=4,coeffs=1,1,1,1", "--p", "7", "--e", "1", "--k", "1"
    )
    assert code == 0
    assert out == "64"


def test_count_k_range_and_formats(capsys):
    code, out, _ = run(
        capsys, "count", "--diagonal", "d=4,coeffs=1,1,1,1", "--p", "3", "--k", "1-2"
    )
    assert code == 0
    assert out.splitlines() == ["k=1: 16", "k=2: 280"]
    code, out, _ = run(
        capsys, "count", "--diagonal", "d=4,coeffs=1,1,1,1", "--p", "3", "--k", "1-2",
        "--format", "json",
    )
    doc = json.loads(out)
    assert doc["counts"] == [{"k": 1, "count": 16}, {"k": 2, "count": 280}]
    code, out, _ = run(
        capsys, "count", "--ngon", "3", "--p", "5", "--k", "1-2", "--format", "csv"
    )
    rows = list(csv.reader(out.splitlines()))
    assert rows == [["k", "count"], ["1", "15"], ["2", "75"]]


def test_count_oracles_agree(capsys):
    for oracle in ("brute", "convolution"):
        code, out, _ = run(
            capsys, "count", "--diagonal", "d=4,coeffs=1,1,1,1", "--p", "5",
            "--oracle", oracle,
        )
        assert code == 0 and out == "0"


def test_count_system_json(capsys):
    doc = json.dumps(
        {
            "ambient": 2,
            "polys": [
                {"degree": 1, "terms": [{"exps": [1, 0, 0], "coeff": 1}]}
            ],
        }
    )
    code, out, _ = run(capsys, "count", "--system", doc, "--p", "7")
    assert code == 0
    assert out == "8"  # a line in P^2 over F_7


def test_count_chain_flag(capsys):
    code, out, _ = run(capsys, "count", "--chain", "N=2,n=2", "--p", "3")
    assert code == 0 and out == "25"


def test_count_system_from_file(capsys, tmp_path):
    doc = tmp_path / "variety.json"
    doc.write_text(json.dumps({"diagonal": {"d": 4, "coeffs": [1, 1, 1, 1]}}))
    code, out, _ = run(capsys, "count", "--system", str(doc), "--p", "7")
    assert code == 0 and out == "64"
    code, _, err = run(capsys, "count", "--system", str(tmp_path / "nope.json"), "--p", "7")
    assert code == 2


def test_congruence_height_pass(capsys):
    code, out, _ = run(
        capsys, "congruence", "height", "--counts", "0", "--p", "5", "--e", "1",
        "--height", "1",
    )
    assert code == 0
    assert "overall: pass" in out


def test_congruence_height_fail_exit_code(capsys):
    code, out, _ = run(
        capsys, "congruence", "height", "--counts", "6", "--p", "5", "--e", "1",
        "--height", "1",
    )
    assert code == 1
    assert "overall: FAIL" in out


def test_congruence_infinite_height(capsys):
    code, out, _ = run(
        capsys, "congruence", "height", "--counts", "16,280", "--p", "3",
        "--height", "inf", "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    report = check_height_congruence([16, 280], 3, 1, INFINITE)
    assert doc == report.to_json()
    from fqzeta.congruence import CongruenceReport

    assert CongruenceReport.from_json(doc) == report


def test_congruence_gauss(capsys):
    code, _, _ = run(capsys, "congruence", "gauss", "--counts", "8", "--p", "7")
    assert code == 0
    code, _, _ = run(capsys, "congruence", "gauss", "--counts", "2", "--p", "3", "--e", "2")
    assert code == 1


def test_congruence_ax_katz(capsys):
    doc = json.dumps({"diagonal": {"d": 2, "coeffs": [1, 1, 1, 1]}})
    code, out, _ = run(
        capsys, "congruence", "ax-katz", "--system", doc, "--p", "3", "--kmax", "2"
    )
    assert code == 0
    code, _, err = run(
        capsys, "congruence", "ax-katz", "--system",
        json.dumps({"diagonal": {"d": 4, "coeffs": [1, 1, 1, 1]}}), "--p", "3",
    )
    assert code == 2
    assert "exceeds ambient dimension" in err


def test_zeta_log_k3_expand(capsys):
    code, out, _ = run(
        capsys, "zeta", "log-k3", "--type", "III", "--q", "3", "--expand", "3"
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "1/((1-t)^2*(1-3*t)^19*(1-9*t))"
    assert lines[1].startswith("series: 1 + 68*t")


def test_zeta_json_round_trip(capsys):
    code, out, _ = run(
        capsys, "zeta", "log-k3", "--type", "III", "--q", "3", "--format", "json"
    )
    assert code == 0
    doc = json.loads(out)
    z = RationalZeta.from_json(doc["zeta"])
    assert z == build_log_zeta(K3_TYPE_III, 3).zeta
    assert doc["h_factors"]["2"] == [["1-t", 1], ["1-3*t", 19]]


def test_zeta_degeneration_builder(capsys):
    code, out, _ = run(
        capsys, "zeta", "k3", "--type", "III", "--q", "3", "--M", "4", "--M1", "4",
        "--M2", "0", "--m", "0", "--d", "6", "--T", "4",
    )
    assert code == 0
    assert out == "(1-3*t)^2/((1-t)^2*(1-9*t)^4)"


def test_height_subcommand(capsys):
    code, out, _ = run(capsys, "height", "--d", "4", "--p", "5")
    assert code == 0
    assert "criterion: Finite(1)" in out and "series: Finite(1)" in out
    code, out, _ = run(capsys, "height", "--elliptic-count", "8", "--p", "7")
    assert code == 0 and out == "Finite(2)"
    code, out, _ = run(capsys, "height", "--slopes", "2", "--p", "5")
    assert code == 0 and "slopes=1/2,1/2" in out


def test_survey_subcommand(capsys, tmp_path):
    out_path = tmp_path / "k3.csv"
    code, out, _ = run(
        capsys, "survey", "k3", "--xmax", "30", "--out", str(out_path), "--format", "json"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["alpha_histogram"] == {"2": 5}
    with open(out_path) as fh:
        rows = list(csv.reader(fh))
    assert rows[0][0] == "p"
    code, out, _ = run(
        capsys, "survey", "elliptic", "--A", "1", "--B", "0", "--D", "-1",
        "--xmax", "100", "--format", "json",
    )
    doc = json.loads(out)
    assert doc["ratios"]["alpha=2"][-1] == "1"
    # exact ratio strings re-parse into rationals
    from fractions import Fraction

    parsed = [None if r is None else Fraction(r) for r in doc["ratios"]["alpha=2"]]
    assert parsed[-1] == 1


def test_usage_errors_exit_2(capsys):
    code, _, _ = run(capsys, "count", "--p", "7")
    assert code == 2
    code, _, _ = run(capsys, "count", "--diagonal", "nonsense", "--p", "7")
    assert code == 2
    code, _, _ = run(capsys, "nosuchcommand")
    assert code == 2
    code, _, err = run(capsys, "count", "--diagonal", "d=4,coeffs=1,1,1,1", "--p", "9")
    assert code == 2 and "not a prime" in err


def test_field_bound_error_reports_bound_and_size(capsys):
    code, _, err = run(
        capsys, "count", "--diagonal", "d=2,coeffs=1,1", "--p", "2", "--k", "25"
    )
    assert code == 2
    assert "33554432" in err and "1048576" in err


def test_config_file_defaults(capsys, tmp_path):
    cfg = tmp_path / "fqzeta.cfg"
    cfg.write_text("format=json\nthreads=2\n")
    code, out, _ = run(
        capsys, "count", "--diagonal", "d=4,coeffs=1,1,1,1", "--p", "7",
        "--config", str(cfg),
    )
    assert code == 0
    assert json.loads(out)["counts"] == [{"k": 1, "count": 64}]
    # explicit flags win over the config file
    code, out, _ = run(
        capsys, "count", "--diagonal", "d=4,coeffs=1,1,1,1", "--p", "7",
        "--config", str(cfg), "--format", "table",
    )
    assert out == "64"


def test_out_dir_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("FQZETA_OUT_DIR", str(tmp_path))
    code, _, _ = run(
        capsys, "count", "--diagonal", "d=4,coeffs=1,1,1,1", "--p", "7",
        "--out", "counts.txt",
    )
    assert code == 0
    assert (tmp_path / "counts.txt").read_text().strip() == "64"
