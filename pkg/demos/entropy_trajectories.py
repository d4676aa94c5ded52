"""Entropy trajectories under the adaptive band vs the cumulative-mass rule.

Runs both strategies over the shipped peaked-family reference process with
the same seed and prints the per-step sampling entropy side by side
(coarse-grained).  The adaptive band drives the sampling entropy to zero;
the cumulative rule keeps admitting wide candidate sets.
"""

import json
from pathlib import Path

import numpy as np

from bandlab import ProcessConfig, TopB, TopP, run_trajectory

CONFIG = Path(__file__).resolve().parent.parent / "configs" / "peaked_family.json"

process = ProcessConfig.from_dict(json.loads(CONFIG.read_text()))
band = run_trajectory(process, TopB(base_bandwidth=0.3), seed=0)
nucleus = run_trajectory(process, TopP(p=0.9), seed=0)

print(f"process: vocab={process.vocab_size}, steps={process.steps} (PEAKED, L=3)\n")
print(f"{'steps':<10} {'top-b H_post':>13} {'top-p H_post':>13} {'top-b |S|':>10} {'top-p |S|':>10}")
window = 20
for start in range(0, process.steps, window):
    sl = slice(start, start + window)
    print(
        f"{start:>3}-{min(start + window, process.steps) - 1:<5}"
        f" {band.entropy[sl].mean():>13.4f} {nucleus.entropy[sl].mean():>13.4f}"
        f" {band.support_size[sl].mean():>10.2f} {nucleus.support_size[sl].mean():>10.2f}"
    )

print(f"\nmean sampling entropy: top-b {band.entropy.mean():.4f} vs top-p {nucleus.entropy.mean():.4f}")
print(f"geometric mean branching: top-b {np.exp(np.log(band.support_size).mean()):.3f} "
      f"vs top-p {np.exp(np.log(nucleus.support_size).mean()):.3f}")
print(f"mode agreement: top-b {band.mode_agreement.mean():.3f} vs top-p {nucleus.mode_agreement.mean():.3f}")
