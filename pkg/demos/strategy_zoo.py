"""Tour of the strategy zoo on a single hand-built distribution.

Shows how each truncation rule carves a different support out of the same
probability vector, and what the diagnostics (threshold, bandwidth,
entropy) look like.
"""

import numpy as np

from bandlab import (
    Epsilon,
    Eta,
    MinP,
    ProbDist,
    TemperatureOnly,
    TopB,
    TopK,
    TopP,
    apply_to_probs,
    entropy,
)

# A moderately peaked distribution over a 10-token vocabulary.
dist = ProbDist.from_probs([0.38, 0.22, 0.13, 0.09, 0.06, 0.05, 0.03, 0.02, 0.01, 0.01])
report = entropy(dist)
print(f"input: n={dist.n}, H={report.entropy:.4f} nats, "
      f"H/Hmax={report.normalized:.3f}, p_max={dist.probs.max():.2f}\n")

strategies = [
    TopB(base_bandwidth=0.3),
    TopK(k=3),
    TopP(p=0.9),
    MinP(alpha=0.1),
    Epsilon(epsilon=0.05),
    Eta(eta=0.05),
    TemperatureOnly(),
]

print(f"{'strategy':<12} {'|S|':>4}  {'support':<28} {'threshold':>10} {'bandwidth':>10}")
for config in strategies:
    result = apply_to_probs(config, dist)
    thr = f"{result.threshold:.4f}" if result.threshold is not None else "-"
    bw = f"{result.bandwidth:.4f}" if result.bandwidth is not None else "-"
    print(f"{config.name:<12} {result.support_size:>4}  "
          f"{str(list(result.support)):<28} {thr:>10} {bw:>10}")

# The adaptive band widens as the distribution flattens: compare the same
# base bandwidth against a sharper and a flatter input.
print("\nadaptive bandwidth vs distribution shape (base_bandwidth = 0.3):")
for label, values in [
    ("sharp", [0.85, 0.05, 0.04, 0.03, 0.02, 0.01]),
    ("medium", [0.40, 0.25, 0.15, 0.10, 0.06, 0.04]),
    ("flat", [1 / 6] * 6),
]:
    result = apply_to_probs(TopB(base_bandwidth=0.3), ProbDist.from_probs(values))
    print(f"  {label:<7} H/Hmax={result.entropy_report.normalized:.3f} "
          f"bandwidth={result.bandwidth:.3f} |S|={result.support_size}")
