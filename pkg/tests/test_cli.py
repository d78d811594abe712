import json

import pytest

from cpintegral import cli


def run_cli(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    report = json.loads(captured.out) if captured.out.strip() else None
    return code, report, captured.err


def test_integrate_full_plane(capsys):
    code, report, err = run_cli(capsys, ["integrate", "--primitive", "prodArctan"])
    assert code == 0
    assert report["value"] == 1.0
    assert "integrate" in err


def test_integrate_interval_with_infinite_endpoints(capsys):
    code, report, _ = run_cli(
        capsys, ["integrate", "--primitive", "prodArctan", "--interval", "0", "inf", "0", "inf"]
    )
    assert code == 0
    assert abs(report["value"] - 0.25) < 1e-12


def test_norm_command(capsys):
    code, report, _ = run_cli(capsys, ["norm", "--primitive", "prodArctan"])
    assert code == 0
    assert report["value"] == 1.0
    assert report["converged"] is True


def test_bvnorm_command(capsys):
    code, report, _ = run_cli(capsys, ["bvnorm", "--bv", "quadrantIndicator"])
    assert code == 0
    assert report["value"] == 4.0


def test_primitive_params_json(capsys):
    code, report, _ = run_cli(
        capsys, ["norm", "--primitive", "sineStrip", "--params", '{"n": 4}', "--tol", "1e-3"]
    )
    assert code == 0
    assert abs(report["value"] - 0.5) < 1e-2


def test_ndcorner(capsys):
    code, report, _ = run_cli(
        capsys, ["ndcorner", "--lower", "0", "0", "0", "--upper", "inf", "inf", "inf"]
    )
    assert code == 0
    assert abs(report["value"] - 0.125) < 1e-12
    assert report["dims"] == 3


def test_catalog_listing(capsys):
    code, report, _ = run_cli(capsys, ["catalog"])
    assert code == 0
    assert "prodArctan" in report["primitives"]
    assert "quadrantIndicator" in report["bvFunctions"]
    assert "ftc" in report["suites"]


def test_verify_suite(capsys):
    code, report, _ = run_cli(capsys, ["verify", "--suite", "ftc"])
    assert code == 0
    assert report["suite"]["passed"] is True


def test_job_file(tmp_path, capsys):
    job = tmp_path / "job.json"
    job.write_text(json.dumps({
        "command": "integrate",
        "primitive": "expRadial",
        "interval": ["-inf", 0, "-inf", 0],
    }))
    code, report, _ = run_cli(capsys, ["--job", str(job)])
    assert code == 0
    assert report["value"] == 1.0  # corner value exp(0)


def test_missing_job_file_exit_66(capsys):
    code, _, err = run_cli(capsys, ["--job", "/nonexistent/job.json"])
    assert code == 66
    assert "error" in err


def test_unknown_command_exit_64(tmp_path, capsys):
    job = tmp_path / "job.json"
    job.write_text(json.dumps({"command": "frobnicate"}))
    code, _, _ = run_cli(capsys, ["--job", str(job)])
    assert code == 64


def test_unknown_primitive_exit_64(capsys):
    code, _, _ = run_cli(capsys, ["integrate", "--primitive", "nope"])
    assert code == 64


def test_bad_grid_file_exit_66(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, _ = run_cli(capsys, ["norm", "--grid-file", str(bad)])
    assert code == 66


def test_mixed_boundary_point_exit_1(capsys):
    code, _, err = run_cli(
        capsys,
        ["convolve-bv", "--primitive", "prodArctan", "--bv", "constant", "--point", "inf", "0"],
    )
    assert code == 1
    assert "error" in err


def test_grid_file_roundtrip(tmp_path, capsys):
    out = tmp_path / "parts.json"
    code, report, _ = run_cli(
        capsys,
        ["parts", "--primitive", "prodArctan", "--bv", "approxIdentity", "--out", str(out)],
    )
    assert code == 0
    assert out.exists()
    code2, report2, _ = run_cli(capsys, ["norm", "--grid-file", str(out)])
    assert code2 == 0
    assert abs(report2["value"] - report["supNorm"]) < 1e-9


def test_report_is_deterministic(capsys):
    argv = ["integrate", "--primitive", "gauss2", "--interval", "-1", "1", "-1", "1"]
    _, first, _ = run_cli(capsys, argv)
    _, second, _ = run_cli(capsys, argv)
    first.pop("wallTime")
    second.pop("wallTime")
    assert first == second


def test_translate_command(capsys):
    code, report, _ = run_cli(
        capsys, ["translate", "--primitive", "prodArctan", "--shift", "1", "1"]
    )
    assert code == 0
    assert abs(report["normTranslated"] - 1.0) < 1e-6
    assert report["normDifference"] > 0


def test_changevars_command(capsys):
    code, report, _ = run_cli(
        capsys,
        ["changevars", "--primitive", "gauss2", "--interval", "-2", "2", "-2", "2",
         "--map-spec", '{"alpha": -1.0, "beta": 2.0, "gamma1": 0.5}'],
    )
    assert code == 0
    assert report["difference"] < 1e-12


def test_improper_command(capsys):
    code, report, _ = run_cli(capsys, ["improper", "--name", "arctanXY", "--order", "dyFirst"])
    assert code == 0
    assert abs(report["value"] - 3.141592653589793) < 1e-3
