"""CLI smoke tests: subcommands, wire output, exit codes, determinism."""

import json
import subprocess
import sys

import pytest


def run_cli(*argv, check=False):
    return subprocess.run(
        [sys.executable, "-m", "betaseries", *argv],
        capture_output=True,
        text=True,
        check=check,
    )


class TestDerive:
    def test_arcsine_seed(self):
        proc = run_cli(
            "derive", "--p", "1,1/3", "--a", "-1/2", "--b", "0", "--k", "1", "--s", "2"
        )
        assert proc.returncode == 0
        doc = json.loads(proc.stdout)
        assert doc["z"] == "-48"
        assert doc["qcoeffs"] == ["-48", "15", "-3"]
        assert doc["seed_p_coeffs"] == ["1", "1/3"]

    def test_param_seed(self):
        proc = run_cli("derive", "--p", "0:1,-1,1", "--k", "3", "--s", "3", "--param")
        assert proc.returncode == 0
        doc = json.loads(proc.stdout)
        assert doc["z_w_coeffs"] == ["0", "0", "0", "1"]

    def test_underivable_seed_fails_cleanly(self):
        proc = run_cli("derive", "--p", "1,0,1", "--k", "1", "--s", "1")
        assert proc.returncode == 1
        assert "not divisible" in proc.stderr


class TestEval:
    def test_expr(self):
        proc = run_cli(
            "eval", "--expr", "1/(binom(2*n,n)*(2*n+1))", "--digits", "25"
        )
        assert proc.returncode == 0
        doc = json.loads(proc.stdout)
        assert doc["value"].startswith("1.2091995761561452337293")
        assert doc["terms"] > 10

    def test_spec_file(self, tmp_path):
        spec = tmp_path / "spec.json"
        derive = run_cli(
            "derive", "--p", "1,1/3", "--a", "-1/2", "--b", "0", "--k", "1",
            "--s", "2", check=True,
        )
        spec.write_text(derive.stdout)
        proc = run_cli("eval", "--spec", str(spec), "--digits", "30")
        assert proc.returncode == 0
        doc = json.loads(proc.stdout)
        # pi sqrt(3) / 3
        assert doc["value"].startswith("1.81379936423421785")

    def test_requires_exactly_one_input(self):
        assert run_cli("eval", "--digits", "10").returncode == 2
        assert (
            run_cli(
                "eval", "--digits", "10", "--expr", "1", "--spec", "x.json"
            ).returncode
            == 2
        )


class TestRateAndIntegrate:
    def test_rate_of_derived_spec(self, tmp_path):
        spec = tmp_path / "spec.json"
        derive = run_cli(
            "derive", "--p", "1,1/3", "--a", "-1/2", "--b", "0", "--k", "1",
            "--s", "2", check=True,
        )
        spec.write_text(derive.stdout)
        proc = run_cli("rate", "--spec", str(spec))
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["predicted_rate"] == pytest.approx(
            2.5105, abs=1e-3
        )

    def test_integrate_beta(self):
        proc = run_cli("integrate", "--a", "-1/2", "--b", "-1/2", "--digits", "25")
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["value"].startswith("3.14159265358979323846")

    def test_integrate_kernel(self):
        proc = run_cli(
            "integrate", "--a", "-1/2", "--b", "0", "--num", "16,-5,1",
            "--kernel", "-48,1,2", "--digits", "20",
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["value"].startswith("-0.604599788078")

    def test_integrate_rejects_two_denominators(self):
        proc = run_cli(
            "integrate", "--a", "0", "--b", "0", "--p", "1,1",
            "--kernel", "-2,1,1", "--digits", "10",
        )
        assert proc.returncode == 2


class TestAccelerate:
    def test_group_spec(self, tmp_path):
        hyp = tmp_path / "hyp.json"
        hyp.write_text(
            json.dumps({"upper": ["1", "1/2"], "lower": ["3/2", "3/2"], "z": "1/4"})
        )
        proc = run_cli("accelerate", "--hyp", str(hyp), "--m", "2")
        assert proc.returncode == 0
        doc = json.loads(proc.stdout)
        assert doc["m"] == 2 and doc["z"] == "1/4"


class TestVerify:
    def test_single_identity(self):
        proc = run_cli("verify", "--id", "eq-3.3")
        assert proc.returncode == 0
        doc = json.loads(proc.stdout)
        assert doc["status"] == "PASS"

    def test_unknown_identity(self):
        proc = run_cli("verify", "--id", "eq-0.0")
        assert proc.returncode == 1
        assert "eq-0.0" in proc.stderr

    def test_filtered_all(self):
        proc = run_cli("verify", "--all", "--only", "eq-3.2*", "--digits", "10")
        assert proc.returncode == 0
        doc = json.loads(proc.stdout)
        assert doc["failed"] == 0
        assert {r["id"] for r in doc["records"]} == {
            "eq-3.2-w1",
            "eq-3.2-w13-4",
            "eq-3.2-w2",
        }

    def test_requires_id_or_all(self):
        assert run_cli("verify").returncode == 2


class TestUsage:
    def test_no_command(self):
        assert run_cli().returncode == 2

    def test_unknown_command(self):
        assert run_cli("frobnicate").returncode == 2

    def test_list(self):
        proc = run_cli("list")
        assert proc.returncode == 0
        records = json.loads(proc.stdout)
        assert any(r["id"] == "eq-1.1" for r in records)

    def test_determinism(self):
        # identical invocations produce byte-identical stdout
        for argv in (
            ("list",),
            ("derive", "--p", "1,1/3", "--a", "-1/2", "--b", "0", "--k", "1", "--s", "2"),
            ("eval", "--expr", "1/(binom(2*n,n)*(2*n+1))", "--digits", "20"),
            ("verify", "--id", "eq-3.2-w1", "--digits", "12"),
        ):
            first = run_cli(*argv)
            second = run_cli(*argv)
            assert first.stdout == second.stdout
            assert first.returncode == second.returncode == 0
