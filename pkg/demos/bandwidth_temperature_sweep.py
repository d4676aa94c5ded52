"""Bandwidth x temperature interaction on the mixed reference process.

Sweeps the base bandwidth against temperature and prints the mode-agreement
grid.  High temperature flattens the step distributions (pre-truncation
entropy rises toward ln n); a mid-range band soaks up that extra tail mass,
so agreement degrades far more slowly than the bare temperature column
would suggest.
"""

import json
from pathlib import Path

from bandlab import ProcessConfig, sweep_grid

CONFIG = Path(__file__).resolve().parent.parent / "configs" / "mixed_reference.json"

process = ProcessConfig.from_dict(json.loads(CONFIG.read_text()))
bandwidths = [0.1, 0.2, 0.3, 0.4, 0.5]
temperatures = [0.7, 1.0, 1.5, 2.5]
cells = sweep_grid(process, bandwidths, temperatures, n_seeds=8)

print(f"process: vocab={process.vocab_size}, steps={process.steps} (MIXED)\n")
print("mode-agreement rate (rows: base bandwidth, cols: temperature)")
header = "".join(f"  T={t:<6}" for t in temperatures)
print(f"{'':>6}{header}")
for i, b in enumerate(bandwidths):
    row = cells[i * len(temperatures):(i + 1) * len(temperatures)]
    values = "".join(f"  {c.summary.mode_agreement_rate.mean:<7.3f}" for c in row)
    print(f"b={b:<4}{values}")

print("\nmean pre-truncation entropy per temperature (any bandwidth row):")
row = cells[:len(temperatures)]
for cell in row:
    print(f"  T={cell.temperature:<4} H_pre={cell.summary.mean_pre_entropy.mean:.4f}")
