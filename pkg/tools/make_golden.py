#!/usr/bin/env python3
"""Regenerate the golden conformance fixtures under golden/.

Each fixture is a distribution file (same schema the CLI reads) extended
with an ``expected`` list: strategy configs plus the support, renormalized
probabilities, threshold, and bandwidth the core computes for them.
Bindings in other runtimes replay these files and must reproduce the
support index sets exactly and the renormalized values within 1e-6.
"""

import json
import sys
from pathlib import Path

import numpy as np

from bandlab import (
    Epsilon,
    Eta,
    MinP,
    TemperatureOnly,
    TopB,
    TopK,
    TopP,
    parse_distribution,
)

ROOT = Path(__file__).resolve().parent.parent
OUT_DIR = ROOT / "golden"
CASE_DIR = ROOT / "fixtures" / "case_studies"


def config_to_json(config) -> dict:
    out = {"kind": config.name, "temperature": config.temperature}
    if isinstance(config, TopB):
        out["base_bandwidth"] = config.base_bandwidth
    elif isinstance(config, TopK):
        out["k"] = config.k
    elif isinstance(config, TopP):
        out["p"] = config.p
    elif isinstance(config, MinP):
        out["alpha"] = config.alpha
    elif isinstance(config, Epsilon):
        out["epsilon"] = config.epsilon
    elif isinstance(config, Eta):
        out["eta"] = config.eta
    return out


def expected_case(dfile, config) -> dict:
    result = dfile.truncate(config)
    return {
        "strategy": config_to_json(config),
        "support": list(result.support),
        "renormalized": [float(x) for x in result.renormalized],
        "threshold": result.threshold,
        "bandwidth": result.bandwidth,
    }


def emit(name: str, data: dict, configs) -> None:
    dfile = parse_distribution(data)
    data = dict(data)
    data["expected"] = [expected_case(dfile, c) for c in configs]
    path = OUT_DIR / f"{name}.json"
    path.write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {path}")


def main() -> int:
    OUT_DIR.mkdir(parents=True, exist_ok=True)

    zoo = [
        TopB(base_bandwidth=0.3),
        TopK(k=5),
        TopK(k=40),
        TopP(p=0.9),
        MinP(alpha=0.05),
        Epsilon(epsilon=0.01),
        Eta(eta=0.01),
        TemperatureOnly(),
    ]

    for case_file in sorted(CASE_DIR.glob("*.json")):
        data = json.loads(case_file.read_text(encoding="utf-8"))
        base = data["metadata"]["base_bandwidth"]
        configs = [TopB(base_bandwidth=base)] + [c for c in zoo if not isinstance(c, TopB)]
        emit(f"case_{case_file.stem}", data, configs)

    rng = np.random.default_rng(20250810)
    for n in (12, 33, 64):
        logits = rng.normal(scale=2.0, size=n)
        data = {
            "logits": [
                {"token": f"tok_{i:02d}", "logit": float(v)} for i, v in enumerate(logits)
            ],
            "metadata": {"prompt": f"synthetic normal logits, n={n}"},
        }
        configs = zoo + [
            TopB(base_bandwidth=0.5, temperature=2.0),
            TopP(p=0.85, temperature=0.7),
            Epsilon(epsilon=0.02),
            Eta(eta=0.02),
            TemperatureOnly(temperature=1.5),
        ]
        emit(f"logits_n{n:02d}", data, configs)
    return 0


if __name__ == "__main__":
    sys.exit(main())
