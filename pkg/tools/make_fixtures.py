#!/usr/bin/env python3
"""Regenerate the case-study distribution fixtures.

Each fixture carries the published top-3 token probabilities of one prompt,
with the unprinted remainder reconstructed as equal-mass filler tokens so
the file sums to 100%.  The remainder is split across many fillers (rather
than kept as one lump) so the printed head tokens stay the top of the
distribution; a single lump would outweigh the printed mode and change
every support.

``metadata.base_bandwidth`` records the band setting that reproduces the
published support size; the script asserts that it does before writing.
"""

import json
import sys
from pathlib import Path

from bandlab import DistributionFile, TopB

OUT_DIR = Path(__file__).resolve().parent.parent / "fixtures" / "case_studies"

# name -> (prompt, [(token, pct), ...], filler count, base bandwidth,
#          expected support size)
CASE_STUDIES = {
    "arithmetic_2plus2": (
        "2+2=",
        [("4", 39.75), ("5", 15.50), ("\\n", 7.81)],
        40,
        0.3,
        1,
    ),
    "rainbow_refraction": (
        "A rainbow is an optically brilliant meteorological event resulting "
        "from refraction, reflection, and dispersion of",
        [("light", 59.50), ("sunlight", 21.88), ("the", 13.25)],
        10,
        0.3,
        1,
    ),
    "battle_ensued": (
        "You will pay for what you have done, she hissed, her blade flashing "
        "in the moonlight. The battle that ensued",
        [("was", 46.00), ("left", 6.25), ("between", 5.53)],
        50,
        0.3,
        1,
    ),
    "email_invite": (
        "If you could help me write an email to my friends inviting them to "
        "dinner on Friday, it would be greatly appreciated.",
        [("\\n", 23.88), ("I", 11.25), ("\\n\\n", 9.94)],
        60,
        0.4,
        3,
    ),
    "describe_decision": (
        "Describe a time when you had to make a difficult decision.",
        [("\\n", 34.50), ("You", 27.00), ("\\n\\n", 8.75)],
        30,
        0.3,
        2,
    ),
}


def build_fixture(prompt, head, filler_count, base_bandwidth, expected_size):
    head_mass = sum(pct for _, pct in head)
    filler_pct = (100.0 - head_mass) / filler_count
    entries = [{"token": tok, "prob": pct / 100.0} for tok, pct in head]
    entries += [
        {"token": f"tail_{i:02d}", "prob": filler_pct / 100.0}
        for i in range(filler_count)
    ]
    data = {
        "probs": entries,
        "metadata": {"prompt": prompt, "base_bandwidth": base_bandwidth},
    }

    from bandlab import parse_distribution

    dfile = parse_distribution(data)
    result = dfile.truncate(TopB(base_bandwidth=base_bandwidth))
    if result.support_size != expected_size:
        raise AssertionError(
            f"{prompt!r}: support size {result.support_size} != expected {expected_size} "
            f"(threshold {result.threshold:.4f})"
        )
    if list(result.support) != list(range(expected_size)):
        raise AssertionError(f"{prompt!r}: support {result.support} is not the printed head")
    return data


def main() -> int:
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    for name, spec in CASE_STUDIES.items():
        data = build_fixture(*spec)
        path = OUT_DIR / f"{name}.json"
        path.write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
