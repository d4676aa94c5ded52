"""Token-level case studies: support sizes and renormalized probabilities.

Replays the shipped case-study fixtures (reconstructed next-token
distributions for five prompts) through the strategy zoo and prints a
comparison table per prompt.  The adaptive band collapses the
low-entropy prompts to a single token while the cumulative-mass rule keeps
a long distractor tail.
"""

from pathlib import Path

from bandlab import MinP, TopB, TopK, TopP, build_report, format_table, load_distribution

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures" / "case_studies"

for path in sorted(FIXTURES.glob("*.json")):
    dfile = load_distribution(path)
    base = dfile.metadata.get("base_bandwidth", 0.3)
    print(f"=== {dfile.metadata['prompt'][:72]}")
    rows = build_report(
        dfile,
        [TopB(base_bandwidth=base), TopP(p=0.9), TopK(k=5), MinP(alpha=0.05)],
    )
    print(format_table(rows))
