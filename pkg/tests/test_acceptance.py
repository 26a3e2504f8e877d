"""One test per acceptance criterion.  Tolerances and budgets live in
heckecm.acceptance; the numbers below are the ones it enforces.

1  epsilon cocycle on C2, C4, C2xC2, S3; C4 sign -1            < 1 s
2  reflex involution, double reflex, S3 reflex                 < 1 s
3  critical decomposition and Xi weight identity               -
4  ek vs direct sums, s in {3, 4}, rel err <= 1e-25 at p=192   < 5 s each
5  split <= 2^-(p-10), scaling and distribution <= 1e-25       < 60 s
6  E-series vs Dirichlet at s=3, Nmax=1e6, <= 1e-12            < 120 s
7  smoothed partial consistency <= 1e-25                       < 60 s
8  Deligne ratios recognized, residual <= 2^-128, stable       < 60 s each
9  criterion 8 with Omega -> 2 Omega
10 selftest exit 0                                             < 300 s
"""
import json
import subprocess
import sys
import time

import pytest

from heckecm.acceptance import CRITERIA

pytestmark = pytest.mark.acceptance


def _run(cid: str):
    result = CRITERIA[cid][1]()
    print("\n".join([result.line()] + result.details))
    assert result.passed, "\n".join(d for d in result.details if d.startswith("failed"))


def test_criterion_1_epsilon_cocycle():
    _run("1")


def test_criterion_2_reflex_structure():
    _run("2")


def test_criterion_3_criticality_and_xi():
    _run("3")


@pytest.mark.slow
def test_criterion_4_eseries_vs_direct():
    _run("4")


def test_criterion_5_continuation_oracles():
    _run("5")


@pytest.mark.slow
def test_criterion_6_l_route_agreement():
    _run("6")


def test_criterion_7_smoothed_partials():
    _run("7")


@pytest.mark.slow
def test_criterion_8_deligne_ratio():
    _run("8")


@pytest.mark.slow
def test_criterion_9_rescaling():
    _run("9")


@pytest.mark.slow
def test_criterion_10_selftest_end_to_end():
    t0 = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "heckecm", "selftest"], capture_output=True, text=True, timeout=900)
    dt = time.perf_counter() - t0
    summary = json.loads(proc.stdout)
    failed = [c["name"] for c in summary["checks"] if not c["passed"]]
    assert proc.returncode == 0, f"selftest failed checks: {failed}"
    assert dt < 300, f"selftest took {dt:.0f}s"
