"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

import subprocess
import sys
import time

import pytest

from frobhh.acceptance import CRITERIA, run_selftest

SEED = 7


def _report(log, result):
    log(f"ACCEPTANCE {result.line()}")


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA])
def test_criterion(number, acceptance_log):
    (result,) = run_selftest(SEED, only={number})
    _report(acceptance_log, result)
    assert result.passed, result.details


def test_criterion_1_total_runtime(acceptance_log):
    t0 = time.perf_counter()
    (result,) = run_selftest(SEED, only={1})
    elapsed = time.perf_counter() - t0
    acceptance_log(f"ACCEPTANCE criterion 1 wall time {elapsed:.2f} s (limit 300 s)")
    assert result.passed and elapsed <= 300


def test_criterion_11_selftest_byte_identical(acceptance_log):
    cmd = [sys.executable, "-m", "frobhh", "selftest", "--seed", str(SEED), "--stable-output"]
    runs = [subprocess.run(cmd, capture_output=True) for _ in range(2)]
    same = runs[0].stdout == runs[1].stdout and runs[0].returncode == runs[1].returncode == 0
    acceptance_log(f"ACCEPTANCE [{'PASS' if same else 'FAIL'}] 11 selftest --seed {SEED} --stable-output "
          f"twice, byte-identical ({len(runs[0].stdout)} bytes)")
    assert same


def test_criterion_11_in_process(acceptance_log):
    (result,) = run_selftest(SEED, only={11})
    _report(acceptance_log, result)
    assert result.passed
