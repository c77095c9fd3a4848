"""
Smoke tests for the ptspectra command line.

Verifies: exit codes, JSON / CSV payloads, config-file merging and the
per-field validation messages.
"""

import io
import json
import sys
import tempfile
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent))

from src.errors import ConfigError
from src.main import run, setup_logging
from src.model.builder import build_preset
from src.run_config import validate_config
from src.verify import check_random_models


def invoke(*argv: str) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = run(list(argv))
    return code, out.getvalue(), err.getvalue()


def test_build():
    code, out, _ = invoke("build", "--preset", "hami5", "--r", "0.5", "--s", "0.5")
    assert code == 0
    data = json.loads(out)
    assert data["N"] == 5
    assert data["pt_symmetric"] is True
    assert data["matrix"][2][1] == -1.5 and data["matrix"][1][2] == -0.5

    code, out, _ = invoke("build", "--preset", "dim5", "--r", "0.5", "--s", "0", "--exact")
    assert code == 0
    assert json.loads(out)["matrix"][0] == ["0", "-1", "1/2", "0", "0"]
    print("  ✓ build hami5 / exact dim5")


def test_spectrum():
    code, out, _ = invoke("spectrum", "--preset", "hami5", "--r", "0.5", "--s", "0")
    assert code == 0
    data = json.loads(out)
    assert data["reality"] == "all_real" and data["path"] == "reduced"
    assert data["family"] == ["z1", "z0", "z1", "z0", "z1"]
    assert abs(data["energies"][2][0]) <= 1e-10

    code, out, _ = invoke("spectrum", "--preset", "hami5", "--r", "0.5", "--s", "0", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "index,re,im,family"
    assert len(lines) == 6

    code, out, _ = invoke("spectrum", "--preset", "hami5", "--r", "0.5", "--s", "0.2", "--vectors")
    data = json.loads(out)
    assert len(data["right_vectors"]) == 5 and len(data["left_vectors"]) == 5
    print("  ✓ spectrum JSON / CSV / vectors")


def test_ep_commands():
    code, out, _ = invoke("ep", "closed-form")
    assert code == 0
    assert abs(json.loads(out)["s_ep"] - 0.5242106130) <= 1e-9

    code, out, _ = invoke("ep", "certify", "--preset", "hami5", "--r", "0.5", "--s", "0.5", "--eps=-1")
    assert code == 0
    data = json.loads(out)
    assert data["geometric_multiplicity"] == 1 and data["jordan_block_size"] == 2
    assert data["param_value"] == 0.5
    print("  ✓ closed-form and certify")


def test_metric_recurrent_exact():
    code, out, _ = invoke(
        "metric", "recurrent", "--preset", "dim5", "--r", "0.5", "--s", "0", "--first-row", "1,0,0.1,0,0"
    )
    assert code == 0
    data = json.loads(out)
    assert data["theta_exact"][1] == ["0", "11/10", "-1/2", "1/10", "-1/20"]
    assert data["positive_definite"] is True
    assert data["residual"] == 0.0
    print("  ✓ exact Θ row (0, 11/10, −1/2, 1/10, −1/20)")


def test_metric_positivity_and_dyson():
    code, out, _ = invoke(
        "metric", "positivity", "--preset", "dim5", "--r", "0.5", "--s", "0",
        "--first-row", "1,0,xi,0,0", "--lo=-1", "--hi", "2", "--n", "61",
    )
    assert code == 0
    lo, hi = json.loads(out)["interval"]
    assert -0.62 < lo < 0.0 < hi < 1.62

    code, out, _ = invoke("metric", "dyson", "--preset", "hami5", "--r", "0.5", "--s", "0.2")
    assert code == 0
    data = json.loads(out)
    assert data["hermiticity_defect"] <= 1e-8
    print("  ✓ positivity interval, Dyson map")


def test_numerical_error_exit():
    code, out, err = invoke("metric", "spectral", "--preset", "hami5", "--r", "0.5", "--s", "0.5")
    assert code == 1
    assert out == ""
    assert "DegenerateSpectrum" in err

    code, _, err = invoke("metric", "spectral", "--preset", "hami5", "--r", "0.5", "--s", "0.6")
    assert code == 1 and "ComplexSpectrum" in err
    print("  ✓ exit 1 with the error name on stderr")


def test_validation_errors():
    code, _, err = invoke("spectrum")
    assert code == 2
    assert "--preset" in err and "--M" in err

    code, _, err = invoke("sweep", "--preset", "hami5", "--n", "1", "--lo", "1", "--hi", "0")
    assert code == 2
    lines = [line for line in err.splitlines() if line.startswith("error:")]
    assert len(lines) == 2
    assert any("n_points" in line for line in lines) and any("lo/hi" in line for line in lines)

    code, _, err = invoke("spectrum", "--M", "2", "--w", "0.5", "--v=-1,0")
    assert code == 2 and "model.w" in err

    code, _, err = invoke("domains", "--preset", "hami5", "--format", "csv")
    assert code == 2 and "format" in err

    code, _, _ = invoke("frobnicate")
    assert code == 2
    print("  ✓ missing model, several problems at once, length check, csv, unknown command")


def test_validate_config():
    cfg = validate_config({"command": "spectrum", "model": {"preset": "hami7", "q": 0.1}})
    assert cfg.dimension == 7
    try:
        validate_config({"command": "spectrum", "model": {"preset": "hami5"}, "colour": "red"})
        assert False, "ConfigError expected"
    except ConfigError as e:
        assert any("colour" in p for p in e.problems)
    try:
        validate_config({"command": "metric", "action": "positivity", "model": {"preset": "hami5"},
                         "first_row": ["1", "0", "0", "0", "0"]})
        assert False, "ConfigError expected"
    except ConfigError as e:
        assert any("xi" in p for p in e.problems)
    print("  ✓ extra keys and missing xi reported")


def test_determinism_and_config_file():
    args = ("sweep", "--preset", "hami5", "--r", "0.5", "--lo=-0.6", "--hi", "0.6", "--n", "25")
    _, first, _ = invoke(*args)
    _, second, _ = invoke(*args)
    assert first == second

    with tempfile.TemporaryDirectory() as tmp:
        out_path = Path(tmp) / "sweep.json"
        code, stdout, _ = invoke(*args, "--out", str(out_path))
        assert code == 0 and stdout == ""
        assert out_path.read_text(encoding="utf-8") == first

        config_path = Path(tmp) / "run.json"
        config_path.write_text(json.dumps({"model": {"preset": "hami5", "r": 0.5}, "lo": 0.4}), encoding="utf-8")
        code, out, _ = invoke("ep", "locate", "--config", str(config_path), "--hi", "0.7")
        assert code == 0
        assert abs(json.loads(out)["boundary"] - 0.5242106130) <= 1e-6
    print("  ✓ byte-identical reruns, --out, --config merge")


def test_exact_decimal_input():
    code, out, _ = invoke("build", "--preset", "dim5", "--r", "0.1", "--s", "0", "--exact")
    assert code == 0
    assert json.loads(out)["matrix"][0] == ["0", "-1", "1/10", "0", "0"]

    code, out, _ = invoke(
        "metric", "recurrent", "--preset", "dim5", "--r", "0.1", "--s", "0", "--first-row", "1,0,0,0,0"
    )
    assert code == 0
    row = json.loads(out)["theta_exact"][2]
    assert row[:3] == ["0", "-1/10", "1"]
    assert all(len(entry) < 20 for entry in row)
    print("  ✓ --r 0.1 stays 1/10 on the exact path")


def test_certify_chain_vector():
    code, out, _ = invoke("ep", "certify", "--preset", "hami5", "--r", "0.5", "--s", "0.5", "--eps=-1")
    assert code == 0
    data = json.loads(out)
    assert data["chain_residual"] <= 1e-8
    g = np.array([re + 1j * im for re, im in data["chain_vector"]])
    n = np.array([re + 1j * im for re, im in data["null_vector"]])
    a = build_preset("hami5", r=0.5, s=0.5) + np.eye(5)
    assert np.linalg.norm(a @ g - n) <= 1e-7
    print("  ✓ certify payload carries (H + 1)·g = n")


def test_xi_only_for_positivity():
    code, _, err = invoke(
        "metric", "dyson", "--preset", "dim5", "--r", "0.5", "--s", "0", "--first-row", "1,0,xi,0,0"
    )
    assert code == 2
    assert "xi" in err and "metric dyson" in err
    print("  ✓ xi rejected outside metric positivity")


def test_log_level_respected():
    sink = io.StringIO()
    setup_logging(sink=sink, level="ERROR")
    try:
        code, _, _ = invoke("spectrum", "--preset", "hami5", "--r", "0.5", "--s", "0")
        assert code == 0
        assert sink.getvalue() == ""

        setup_logging(sink=sink, level="DEBUG")
        invoke("spectrum", "--preset", "hami5", "--r", "0.5", "--s", "0")
        assert "running spectrum" in sink.getvalue()
    finally:
        setup_logging()
    print("  ✓ run() keeps the configured sink and level")


def test_seeded_random_check():
    first = check_random_models(7, count=10)
    second = check_random_models(7, count=10)
    assert first[0], first[1]
    assert first == second
    print(f"  ✓ {first[1]}")


def main():
    print("\n=== PTSpectra CLI Tests ===\n")

    tests = [
        ("build", test_build),
        ("spectrum", test_spectrum),
        ("ep", test_ep_commands),
        ("metric recurrent", test_metric_recurrent_exact),
        ("metric positivity / dyson", test_metric_positivity_and_dyson),
        ("Numerical Errors", test_numerical_error_exit),
        ("Validation Errors", test_validation_errors),
        ("validate_config", test_validate_config),
        ("Determinism", test_determinism_and_config_file),
        ("Seeded Random Check", test_seeded_random_check),
        ("Exact Decimals", test_exact_decimal_input),
        ("Certify Chain", test_certify_chain_vector),
        ("xi Placement", test_xi_only_for_positivity),
        ("Log Level", test_log_level_respected),
    ]

    passed = 0
    failed = 0
    for name, fn in tests:
        try:
            print(f"[{name}]")
            fn()
            passed += 1
        except Exception as e:
            print(f"  ✗ FAILED: {e}")
            import traceback
            traceback.print_exc()
            failed += 1
        print()

    print(f"{'=' * 40}")
    print(f"Results: {passed} passed, {failed} failed")
    return failed


if __name__ == "__main__":
    sys.exit(main())
