"""End-to-end checks of the `verify` command line."""

from __future__ import annotations

import json
import subprocess
import sys

CLI = [sys.executable, "-m", "localpoints.cli"]


def run_cli(*args: str) -> subprocess.CompletedProcess:
    return subprocess.run(
        CLI + list(args), capture_output=True, text=True, check=False, timeout=120
    )


def test_list_shows_registry():
    result = run_cli("list")
    assert result.returncode == 0
    assert "point_sqrt_t" in result.stdout
    assert "lemma91_property" in result.stdout
    assert "perturbation_sweep" in result.stdout


def test_run_single_claim_text_mode():
    result = run_cli("run", "point_sqrt_t")
    assert result.returncode == 0
    assert result.stdout.startswith("PASS")


def test_run_single_claim_json_mode():
    result = run_cli("run", "point_cbrt_t", "--json")
    assert result.returncode == 0
    payload = json.loads(result.stdout)
    assert payload["verdict"] == "pass"
    assert payload["evidence"]["simplification_identity"] == "exact"
    assert "wall_time" not in payload


def test_unknown_claim_is_usage_error():
    result = run_cli("run", "nonexistent")
    assert result.returncode == 2
    assert "no claim named" in result.stderr


def test_bad_subcommand_is_usage_error():
    result = run_cli("frobnicate")
    assert result.returncode == 2


def test_run_all_filtered_kind():
    result = run_cli("all", "--kind", "semigroup_fact", "--json")
    assert result.returncode == 0
    payload = json.loads(result.stdout)
    assert payload["summary"]["total"] == 2
    assert payload["summary"]["failed"] == 0


def test_json_reports_are_byte_identical_across_runs():
    first = run_cli("run", "lemma91_property", "--samples", "60", "--seed", "3", "--json")
    second = run_cli("run", "lemma91_property", "--samples", "60", "--seed", "3", "--json")
    assert first.returncode == 0
    assert first.stdout == second.stdout


def test_truncated_mode_flag():
    result = run_cli("run", "point_sqrt_t", "--mode", "truncated", "--precision", "12", "--json")
    assert result.returncode == 0
    payload = json.loads(result.stdout)
    statuses = {eq["status"] for eq in payload["evidence"]["equations"]}
    assert statuses == {"zero_to_precision"}


def test_load_then_run(tmp_path):
    claim_file = tmp_path / "extra.txt"
    claim_file.write_text(
        """claim my_cover_lift
system:
  x^2 - t*u^2 + t = (t^2*u^2 - t)*y^2
  (t^2*u^2 - t)*y^2 != 0
  x^2 - 2*t*u^2 + 1/t = t*(t^2*u^2 - t)*z^2
  t*(t^2*u^2 - t)*z^2 != 0
  w^2 = t^2*u^2 - t
place: t = 0 ram 1
let u = 0
let x = 0
let y = sqrt(-1)
let z = sqrt(-1/t^3)
expect: obstructed
""",
        encoding="utf-8",
    )
    listed = run_cli("load", str(claim_file))
    assert listed.returncode == 0
    assert "my_cover_lift" in listed.stdout
    result = run_cli("load", str(claim_file), "run", "my_cover_lift", "--json")
    assert result.returncode == 0
    payload = json.loads(result.stdout)
    assert payload["verdict"] == "pass"
    assert payload["evidence"]["result"] == "obstructed"


def test_load_parse_error_exit_code(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("claim broken\nnot a directive at all\n", encoding="utf-8")
    result = run_cli("load", str(bad))
    assert result.returncode == 2
    assert "error" in result.stderr


def test_failing_claim_gives_exit_one(tmp_path):
    failing = tmp_path / "failing.txt"
    failing.write_text(
        """claim wrong_sign_point
system:
  x^2 - t*u^2 + t = (t^2*u^2 - t)*y^2
place: t = 0 ram 2
let u = 0
let x = 0
let y = sqrt(1)
expect: pass
""",
        encoding="utf-8",
    )
    result = run_cli("load", str(failing), "run", "wrong_sign_point")
    assert result.returncode == 1
    assert "FAIL" in result.stdout
