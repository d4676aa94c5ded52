"""Acceptance suite.

Each test implements one acceptance criterion at its stated tolerance and
prints one ``[PASS]``/``[FAIL]`` line (run with ``pytest -s`` to see them
live).  Criteria:

1. case-study renormalization values (exact, within 0.2 percentage points)
2. adaptive-bandwidth endpoints (base and 2*base, to 1e-12)
3. uniform-entropy maximum (ln n to 1e-12; strictly above perturbations)
4. brute-force oracle equivalence for every strategy (exact supports)
5. fixed-band / min-p complement cross-check (exact supports)
6. support monotonicity in bandwidth (nested supports)
7. adaptive band vs nucleus on the peaked reference process (orderings)
8. across-seed variance ordering on the same paired seeds
9. byte-identical CLI reruns (trajectory and compare)
10. multinomial sampling fidelity over 1e6 draws (±0.002)
"""

import functools
import json
import math
import os
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from bandlab import (
    ProbDist,
    ProcessConfig,
    TopB,
    TopP,
    batch_entropy,
    entropy,
    renormalize,
    run_comparison,
    sample,
    truncate_band,
    truncate_min_p,
    truncate_top_b,
    truncate_top_k,
    truncate_top_p,
    truncate_epsilon,
    truncate_eta,
    apply_to_probs,
    TemperatureOnly,
)

import reference as ref
from reference import random_dist

ROOT = Path(__file__).resolve().parent.parent
CONFIGS = ROOT / "configs"
FIXTURES = ROOT / "fixtures" / "case_studies"


def criterion(name):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                result = fn(*args, **kwargs)
            except BaseException:
                print(f"[FAIL] {name}")
                raise
            print(f"[PASS] {name}")
            return result

        return wrapper

    return decorate


def run_cli(*args):
    env = dict(os.environ)
    env.pop("BANDLAB_SEED", None)
    return subprocess.run(
        [sys.executable, "-m", "bandlab", *args],
        capture_output=True, text=True, env=env, cwd=ROOT,
    )


@criterion("1. case-study renormalization (±0.2pp, <1s)")
def test_case_study_renormalization():
    t0 = time.perf_counter()

    email = renormalize({0: 0.2388, 1: 0.1125, 2: 0.0994})
    np.testing.assert_allclose(
        [v * 100 for v in email.values()], [52.9, 25.0, 22.1], atol=0.2
    )
    describe = renormalize({0: 0.3450, 1: 0.2700})
    np.testing.assert_allclose(
        [v * 100 for v in describe.values()], [56.2, 43.8], atol=0.2
    )

    # same values through the full pipeline: fixture file -> CLI -> JSON report
    out = run_cli(
        "truncate", str(FIXTURES / "email_invite.json"),
        "--strategy", "top-b", "--base-bandwidth", "0.4", "--format", "json",
    )
    assert out.returncode == 0
    row = json.loads(out.stdout)[0]
    assert row["support_size"] == 3
    np.testing.assert_allclose(
        [t["renormalized_pct"] for t in row["tokens"]], [52.9, 25.0, 22.1], atol=0.2
    )
    out = run_cli(
        "truncate", str(FIXTURES / "describe_decision.json"),
        "--strategy", "top-b", "--base-bandwidth", "0.3", "--format", "json",
    )
    assert out.returncode == 0
    row = json.loads(out.stdout)[0]
    assert row["support_size"] == 2
    np.testing.assert_allclose(
        [t["renormalized_pct"] for t in row["tokens"]], [56.2, 43.8], atol=0.2
    )

    assert time.perf_counter() - t0 < 1.0, "criterion must finish within 1 s"


@criterion("2. bandwidth endpoints: base at H=0, 2*base at H=H_max (1e-12)")
def test_bandwidth_endpoints_over_random_bases():
    from bandlab import top_b_bandwidth

    rng = np.random.default_rng(2)
    one_hot = np.zeros(16)
    one_hot[3] = 1.0
    zero_h = entropy(ProbDist(one_hot))
    assert zero_h.entropy == 0.0
    max_h = entropy(ProbDist.from_probs(np.full(16, 1 / 16)))

    for _ in range(100):
        base = float(rng.uniform(0.01, 0.99))
        low = top_b_bandwidth(zero_h, base)
        high = top_b_bandwidth(max_h, base)
        assert abs(low.raw_bandwidth - base) <= 1e-12
        assert abs(high.raw_bandwidth - 2 * base) <= 1e-12


@criterion("3. uniform entropy = ln(n) (1e-12) and beats 1000 perturbations, n=2..4096")
def test_uniform_entropy_maximum():
    rng = np.random.default_rng(3)
    # Shared exponential block; prefix slices give 1000 flat-Dirichlet
    # perturbations for every n.
    raw = rng.standard_exponential((1000, 4096))
    cum_s = np.cumsum(raw, axis=1)
    cum_t = np.cumsum(raw * np.log(raw), axis=1)

    # the prefix identity H = ln(S) - T/S must agree with the library's
    # entropy; pin that on a log-spaced subsample before trusting it
    for n in (2, 3, 7, 16, 64, 256, 1024, 4096):
        slice_probs = raw[:, :n] / cum_s[:, n - 1, None]
        identity_h = np.log(cum_s[:, n - 1]) - cum_t[:, n - 1] / cum_s[:, n - 1]
        np.testing.assert_allclose(batch_entropy(slice_probs), identity_h, atol=1e-9)

    for n in range(2, 4097):
        uniform_h = entropy(ProbDist.from_probs(np.full(n, 1.0 / n))).entropy
        assert abs(uniform_h - math.log(n)) <= 1e-12
        perturbed_h = np.log(cum_s[:, n - 1]) - cum_t[:, n - 1] / cum_s[:, n - 1]
        assert perturbed_h.max() < uniform_h


@criterion("4. brute-force oracle equivalence, 1000 dists/strategy, n<=64 (<10s)")
def test_oracle_equivalence_all_strategies():
    t0 = time.perf_counter()
    rng = np.random.default_rng(4)

    checks = {
        "top-b": lambda d, p, r: list(truncate_top_b(d, r["base"]).support)
        == ref.ref_top_b_support(p, r["base"]),
        "top-k": lambda d, p, r: list(truncate_top_k(d, r["k"]).support)
        == ref.ref_top_k_support(p, r["k"]),
        "top-p": lambda d, p, r: list(truncate_top_p(d, r["p"]).support)
        == ref.ref_top_p_support(p, r["p"]),
        "min-p": lambda d, p, r: list(truncate_min_p(d, r["alpha"]).support)
        == ref.ref_min_p_support(p, r["alpha"]),
        "epsilon": lambda d, p, r: list(truncate_epsilon(d, r["eps"]).support)
        == ref.ref_epsilon_support(p, r["eps"]),
        "eta": lambda d, p, r: list(truncate_eta(d, r["eta"]).support)
        == ref.ref_eta_support(p, r["eta"]),
        "temperature": lambda d, p, r: list(apply_to_probs(TemperatureOnly(), d).support)
        == ref.ref_full_support(p),
    }

    for name, check in checks.items():
        for i in range(1000):
            n = int(rng.integers(2, 65))
            p = random_dist(rng, n, zeros=(i % 3 == 0), sharpen=2.0 if i % 5 == 0 else None)
            params = {
                "base": float(rng.uniform(0.05, 0.95)),
                "k": int(rng.integers(1, n + 4)),
                "p": float(rng.uniform(0.05, 0.99)),
                "alpha": float(rng.uniform(0.01, 1.0)),
                "eps": float(rng.uniform(0.001, 0.7)),
                "eta": float(rng.uniform(0.001, 0.7)),
            }
            assert check(ProbDist(p), p, params), f"{name} diverged on trial {i}"

    assert time.perf_counter() - t0 < 10.0, "criterion must finish within 10 s"


@criterion("5. fixed-band(B) support == min-p(1-B) support, 1000 random pairs")
def test_band_min_p_crosscheck():
    rng = np.random.default_rng(5)
    for _ in range(1000):
        n = int(rng.integers(2, 65))
        p = random_dist(rng, n)
        band = float(rng.uniform(0.001, 0.999))
        left = truncate_band(ProbDist(p), band)
        right = truncate_min_p(ProbDist(p), 1.0 - band)
        assert left.support == right.support


@criterion("6. support monotone (superset) in bandwidth, 1000 dists x 10 ladders")
def test_support_monotone_in_bandwidth():
    rng = np.random.default_rng(6)
    for _ in range(1000):
        n = int(rng.integers(2, 48))
        p = random_dist(rng, n)
        d = ProbDist(p)
        bases = np.sort(rng.uniform(0.01, 0.99, size=10))
        previous = None
        for base in bases:
            support = set(truncate_top_b(d, float(base)).support)
            if previous is not None:
                assert previous <= support
            previous = support


@pytest.fixture(scope="module")
def peaked_reference_summaries():
    config = ProcessConfig.from_dict(
        json.loads((CONFIGS / "peaked_family.json").read_text())
    )
    assert config.vocab_size == 32 and config.steps == 200
    return run_comparison(config, [TopB(base_bandwidth=0.3), TopP(p=0.9)], n_seeds=32)


@criterion("7. peaked reference: adaptive band beats nucleus on entropy and branching")
def test_entropy_trajectory_orderings(peaked_reference_summaries):
    top_b = peaked_reference_summaries["top-b"]
    top_p = peaked_reference_summaries["top-p"]
    assert top_b.mean_entropy.mean < top_p.mean_entropy.mean
    assert top_b.geometric_mean_branching.mean < top_p.geometric_mean_branching.mean


@criterion("8. peaked reference: across-seed variance of agreement rate not larger")
def test_variance_ordering(peaked_reference_summaries):
    top_b = peaked_reference_summaries["top-b"]
    top_p = peaked_reference_summaries["top-p"]
    assert top_b.mode_agreement_rate.variance <= top_p.mode_agreement_rate.variance


@criterion("9. byte-identical CLI reruns (trajectory + compare)")
def test_cli_determinism(tmp_path):
    traj_args = (
        "trajectory", str(CONFIGS / "peaked_family.json"),
        "--strategy", "top-b", "--seed", "11",
    )
    a, b = tmp_path / "t1.csv", tmp_path / "t2.csv"
    assert run_cli(*traj_args, "--out", str(a)).returncode == 0
    assert run_cli(*traj_args, "--out", str(b)).returncode == 0
    assert a.read_bytes() == b.read_bytes()

    cmp_args = (
        "compare", str(CONFIGS / "mixed_reference.json"),
        "--strategy", "top-b", "--strategy", "top-p", "--seeds", "6",
    )
    c, d = tmp_path / "c1.json", tmp_path / "c2.json"
    assert run_cli(*cmp_args, "--out", str(c)).returncode == 0
    assert run_cli(*cmp_args, "--out", str(d)).returncode == 0
    assert c.read_bytes() == d.read_bytes()


@criterion("10. sampling frequencies within ±0.002 of renormalized masses (1e6 draws)")
def test_sampling_fidelity():
    result = truncate_top_k(ProbDist.from_probs([0.5, 0.3, 0.15, 0.05]), 2)
    np.testing.assert_allclose(result.renormalized, [0.625, 0.375], atol=1e-9)
    rng = np.random.default_rng(10)
    draws = sample(result, rng, size=1_000_000)
    for token, mass in zip(result.support, result.renormalized):
        freq = float(np.mean(draws == token))
        assert abs(freq - mass) <= 0.002, (token, freq, mass)
