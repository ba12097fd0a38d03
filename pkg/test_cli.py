#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
명령줄 인터페이스 테스트 (click CliRunner)
"""

import csv
import json
import sys
from pathlib import Path

import pytest
from click.testing import CliRunner

# 프로젝트 루트를 Python 경로에 추가
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from src.main import cli  # noqa: E402
from src.services.surfaces import CSV_COLUMNS  # noqa: E402


@pytest.fixture
def runner():
    return CliRunner()


def invoke_json(runner, args):
    result = runner.invoke(cli, args)
    return result, json.loads(result.stdout)


def test_construct_table_degree(runner):
    result, payload = invoke_json(runner, ["construct", "--n", "3", "--q", "2"])
    assert result.exit_code == 0
    assert payload["schema"] == "weilforge/1"
    assert payload["g"] == "1,-5,0,1"
    assert payload["verdict"] == "abs_simple"


def test_surface_classify(runner):
    result, payload = invoke_json(runner, ["surface", "classify", "--q", "3", "--a", "0", "--b", "1"])
    assert result.exit_code == 0
    assert payload["class"] == "splits"
    assert payload["degree"] == 2


def test_check(runner):
    result, payload = invoke_json(runner, ["check", "--q", "2", "--poly", "4,2,1,1,1"])
    assert result.exit_code == 0
    assert payload["verdict"] == "abs_simple"


def test_check_real_flag(runner):
    result, payload = invoke_json(runner, ["check", "--q", "3", "--poly", "1,-5,0,1", "--real"])
    assert result.exit_code == 0
    assert payload["hypotheses"]["p1"] == 2


def test_domain_error_exits_one_with_json(runner):
    result, payload = invoke_json(runner, ["check", "--q", "6", "--poly", "36,0,1,0,1"])
    assert result.exit_code == 1
    assert payload["status"] == "error"
    assert payload["code"] == "not_a_prime_power"
    assert payload["schema"] == "weilforge/1"


def test_bounds(runner):
    result, payload = invoke_json(runner, ["bounds", "--n", "2", "--epsilon", "1/10", "--precision-digits", "6"])
    assert result.exit_code == 0
    assert payload["surface_threshold"] == ["43428100", "1"]
    assert abs(payload["constants"]["c1"]["approx"] - 0.288675) < 1e-5


def test_count_and_reduction(runner):
    result, payload = invoke_json(runner, ["count", "--p", "3", "--n", "2"])
    assert result.exit_code == 0
    assert payload["irreducible"] == 3
    assert payload["linear_times_irreducible"] == 6

    result, payload = invoke_json(runner, ["--jobs", "2", "verify-reduction", "--n", "3", "--primes", "2,3"])
    assert result.exit_code == 0
    assert payload["exhaustive_count"] == payload["formula_count"] == 34


def test_verify_tables_text(runner):
    result = runner.invoke(cli, ["--format", "text", "verify-tables"])
    assert result.exit_code == 0
    assert "1,-5,0,1" in result.stdout
    assert "all_pass: True" in result.stdout


def test_text_format_key_value_table(runner):
    result = runner.invoke(cli, ["--format", "text", "count", "--p", "2", "--n", "3"])
    assert result.exit_code == 0
    assert "irreducible" in result.stdout
    assert not result.stdout.lstrip().startswith("{")


def test_census_csv_with_summary(runner, tmp_path):
    out = tmp_path / "census.csv"
    summary = tmp_path / "summary.json"
    checkpoint = tmp_path / "checkpoints"
    result = runner.invoke(cli, [
        "--format", "csv", "--output", str(out),
        "surface", "census", "--q", "2", "--q-max", "3",
        "--summary", str(summary), "--checkpoint", str(checkpoint), "--partition-size", "2",
    ])
    assert result.exit_code == 0
    rows = list(csv.reader(out.read_text(encoding="utf-8").splitlines()))
    assert rows[0] == CSV_COLUMNS
    assert {row[0] for row in rows[1:]} == {"2", "3"}
    data = json.loads(summary.read_text(encoding="utf-8"))
    assert data["schema"] == "weilforge/1"
    assert [c["q"] for c in data["censuses"]] == [2, 3]
    assert len(rows) - 1 == sum(c["simple_ordinary"] for c in data["censuses"])
    assert any(checkpoint.glob("census_q2_*.json"))


def test_json_output_file(runner, tmp_path):
    out = tmp_path / "result.json"
    result = runner.invoke(cli, ["--output", str(out), "construct", "--n", "2", "--q", "5"])
    assert result.exit_code == 0
    payload = json.loads(out.read_text(encoding="utf-8"))
    assert payload["f"] == "25,5,1,1,1"


@pytest.mark.parametrize("args", [
    ["--format", "csv", "check", "--q", "2", "--poly", "4,2,1,1,1"],
    ["verify-reduction", "--n", "3", "--primes", "2,x"],
    ["--jobs", "0", "count", "--p", "2", "--n", "2"],
    ["construct", "--n", "3"],
])
def test_usage_errors_exit_two(runner, args):
    assert runner.invoke(cli, args).exit_code == 2


def test_log_file(runner, tmp_path):
    log_path = tmp_path / "logs" / "run.log"
    result = runner.invoke(cli, ["--log-level", "info", "--log-file", str(log_path),
                                 "count", "--p", "2", "--n", "2"])
    assert result.exit_code == 0
    assert log_path.exists()
    assert "count" in log_path.read_text(encoding="utf-8")
