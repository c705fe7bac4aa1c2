"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Tolerances: 1e-12 for closed-form identities and inequalities, 1e-9 for the
LP against the pairing bound, 1e-4 for optimizer-mediated equalities.
"""

import json
import time

import numpy as np

from ginsum import verifier
from ginsum.cli import main
from ginsum.model import validate_params, validate_split
from ginsum.optimizer import maximize_sum_rate
from ginsum.rates import cap, region_constraints, sum_rate_bounds
from ginsum.region_lp import max_sum_rate_lp
from ginsum.regimes import li_tin_margin, transform, vsi_two_message_margin


def _report(criterion: str, passed: bool, elapsed: float, detail: str = "") -> None:
    status = "PASS" if passed else "FAIL"
    extra = f" ({detail})" if detail else ""
    print(f"ACCEPTANCE {criterion}: {status} in {elapsed:.1f}s{extra}")


def test_criterion_1_pairing_oracle_and_lp():
    start = time.perf_counter()
    report = verifier.check_theorem1(10_000, seed=101)
    elapsed = time.perf_counter() - start
    _report(
        "1 pairing=min(t) to 1e-12, lp<=min(t)+1e-9 on 10k draws",
        report.failures == 0,
        elapsed,
        f"max_violation={report.max_violation:.2e}",
    )
    assert report.failures == 0


def test_criterion_2_mixed_interference_mac():
    start = time.perf_counter()
    report = verifier.check_theorem2(10_000, seed=202, optimizer_trials=100)
    elapsed = time.perf_counter() - start
    _report(
        "2 mixed bound<=mac to 1e-12 (10k/case), optimizer=mac to 1e-4 "
        "(100/case), canonical split exact",
        report.failures == 0,
        elapsed,
        f"max_violation={report.max_violation:.2e}",
    )
    assert report.failures == 0


def test_criterion_3_gamma_merge_monotone():
    start = time.perf_counter()
    report = verifier.check_theorem3(100_000, seed=303)
    elapsed = time.perf_counter() - start
    _report(
        "3 low interference: merged terms never lower, 100k draws to 1e-12",
        report.failures == 0,
        elapsed,
        f"max_violation={report.max_violation:.2e}",
    )
    assert report.failures == 0


def test_criterion_4_strong_structure():
    start = time.perf_counter()
    report = verifier.check_strong_duality(
        200, seed=404, optimizer_trials=100, eq7_trials=20
    )
    elapsed = time.perf_counter() - start
    _report(
        "4 strong/very-strong: transform lands low, zero-a and {W1,W2} "
        "restrictions match to 1e-4",
        report.failures == 0,
        elapsed,
        f"max_violation={report.max_violation:.2e}",
    )
    assert report.failures == 0
    assert report.details["transform_classify_failures"] == 0


def test_criterion_5_message_set_sufficiency():
    start = time.perf_counter()
    report = verifier.check_table1(350, seed=505)  # 50 instances per row
    elapsed = time.perf_counter() - start
    _report(
        "5 per-row restricted optimum matches unrestricted to 1e-4, "
        "50 instances x 7 rows",
        report.failures == 0,
        elapsed,
        f"max_violation={report.max_violation:.2e}",
    )
    assert report.failures == 0


def test_criterion_6_condition_duality_identity():
    start = time.perf_counter()
    rng = np.random.default_rng(606)
    worst = 0.0
    disagreements = 0
    for _ in range(10_000):
        p1, p2 = rng.uniform(1e-3, 20.0, 2)
        h1, h2 = rng.uniform(0.5, 10.0, 2)
        params = validate_params(h1, h2, p1, p2)
        m_direct = vsi_two_message_margin(params)
        m_mapped = li_tin_margin(transform(params).params)
        worst = max(worst, abs(m_direct - m_mapped))
        if (m_direct <= 1.0) != (m_mapped <= 1.0):
            disagreements += 1
    elapsed = time.perf_counter() - start
    passed = worst <= 1e-12 and disagreements == 0
    _report(
        "6 two-message condition = transformed treat-as-noise condition, "
        "10k draws, margins to 1e-12",
        passed,
        elapsed,
        f"worst_margin_diff={worst:.2e}",
    )
    assert passed


def test_criterion_7_determinism(tmp_path):
    start = time.perf_counter()
    verify_outs = []
    for name in ("v1.json", "v2.json"):
        out = tmp_path / name
        code = main(
            ["verify", "--suite", "all", "--trials", "1000", "--seed", "1",
             "--out", str(out)]
        )
        assert code == 0
        verify_outs.append(out.read_bytes())
    sweep_outs = []
    for name in ("s1.csv", "s2.csv"):
        out = tmp_path / name
        code = main(
            ["sweep", "--h1-range", "0.25:3:4", "--h2-range", "0.25:3:4",
             "--p1", "1.5", "--p2", "0.75", "--out", str(out)]
        )
        assert code == 0
        sweep_outs.append(out.read_bytes())
    elapsed = time.perf_counter() - start
    passed = verify_outs[0] == verify_outs[1] and sweep_outs[0] == sweep_outs[1]
    _report("7 verify and sweep outputs byte-identical across runs", passed, elapsed)
    assert verify_outs[0] == verify_outs[1]
    assert sweep_outs[0] == sweep_outs[1]
    assert json.loads(verify_outs[0])["failures_total"] == 0


def test_criterion_8_spot_values():
    start = time.perf_counter()
    checks = []
    checks.append(cap(3) == 1.0)
    checks.append(f"{cap(5):.9f}" == "1.292481250")
    params = validate_params(0, 0, 1, 1)
    split = validate_split(1, 0, 0, 1, 0, 0)
    lp_value, _ = max_sum_rate_lp(region_constraints(params, split))
    min_t = sum_rate_bounds(params, split).min_bound
    opt = maximize_sum_rate(params).best_value
    checks.append(abs(lp_value - 1.0) <= 1e-9)
    checks.append(abs(min_t - 1.0) <= 1e-12)
    checks.append(abs(opt - 1.0) <= 1e-9)
    elapsed = time.perf_counter() - start
    _report("8 spot values: cap(3)=1, cap(5) to 9 digits, decoupled=1.0",
            all(checks), elapsed)
    assert all(checks)
