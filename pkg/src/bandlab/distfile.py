"""Distribution files and case-study report rows.

A distribution file is a JSON object holding either a probability column or
a logit column over named tokens::

    {"probs":  [{"token": "a", "prob": 0.7}, ...], "metadata": {"prompt": "..."}}
    {"logits": [{"token": "a", "logit": 2.0}, ...]}

Probability columns must sum to 1 within 1e-6 and are renormalized on load.
Token strings must be unique and the list non-empty.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import SchemaError
from .probs import INPUT_SUM_TOLERANCE, LogitVector, ProbDist
from .strategies import StrategyConfig, TruncationResult, apply, apply_to_probs


@dataclass
class DistributionFile:
    tokens: list[str]
    values: np.ndarray
    kind: str  # "probs" or "logits"
    metadata: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.tokens)

    def to_dist(self) -> ProbDist:
        return ProbDist(self.original_probs())

    def truncate(self, config: StrategyConfig) -> TruncationResult:
        if self.kind == "probs":
            return apply_to_probs(config, ProbDist(self.values))
        return apply(config, LogitVector(self.values))

    def original_probs(self) -> np.ndarray:
        """The file's probability column (softmaxed at T=1 for logit files)."""
        if self.kind == "probs":
            return self.values
        shifted = np.exp(self.values - self.values.max())
        return shifted / shifted.sum()

    def to_jsonable(self) -> dict:
        key = "prob" if self.kind == "probs" else "logit"
        entries = [
            {"token": tok, key: float(v)} for tok, v in zip(self.tokens, self.values)
        ]
        out = {self.kind: entries}
        if self.metadata:
            out["metadata"] = self.metadata
        return out

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_jsonable(), indent=2) + "\n", encoding="utf-8")


def _parse_entries(entries, kind: str) -> tuple[list[str], np.ndarray]:
    value_key = "prob" if kind == "probs" else "logit"
    if not isinstance(entries, list) or len(entries) == 0:
        raise SchemaError(f"field {kind!r} must be a non-empty list")
    tokens: list[str] = []
    values: list[float] = []
    for i, entry in enumerate(entries):
        if not isinstance(entry, dict):
            raise SchemaError(f"{kind}[{i}] must be an object")
        if "token" not in entry or not isinstance(entry["token"], str):
            raise SchemaError(f"{kind}[{i}].token must be a string")
        if value_key not in entry or not isinstance(entry[value_key], (int, float)) or isinstance(entry[value_key], bool):
            raise SchemaError(f"{kind}[{i}].{value_key} must be a number")
        tokens.append(entry["token"])
        values.append(float(entry[value_key]))
    if len(set(tokens)) != len(tokens):
        dupes = sorted({t for t in tokens if tokens.count(t) > 1})
        raise SchemaError(f"field {kind!r} has duplicate tokens: {dupes}")
    arr = np.asarray(values, dtype=float)
    if not np.isfinite(arr).all():
        raise SchemaError(f"field {kind!r} values must be finite")
    if kind == "probs":
        if (arr < 0).any():
            raise SchemaError("field 'probs' values must be non-negative")
        total = float(arr.sum())
        if abs(total - 1.0) > INPUT_SUM_TOLERANCE:
            raise SchemaError(
                f"field 'probs' must sum to 1 within {INPUT_SUM_TOLERANCE:g}, got {total!r}"
            )
        arr = arr / total
    return tokens, arr


def parse_distribution(data) -> DistributionFile:
    if not isinstance(data, dict):
        raise SchemaError("distribution file: expected a JSON object")
    kinds = [k for k in ("probs", "logits") if k in data]
    if len(kinds) != 1:
        raise SchemaError("distribution file: exactly one of 'probs' or 'logits' is required")
    kind = kinds[0]
    for key in data:
        if key not in (kind, "metadata"):
            raise SchemaError(f"distribution file: unknown field {key!r}")
    metadata = data.get("metadata", {})
    if not isinstance(metadata, dict):
        raise SchemaError("field 'metadata' must be an object")
    tokens, values = _parse_entries(data[kind], kind)
    return DistributionFile(tokens=tokens, values=values, kind=kind, metadata=metadata)


def load_distribution(path) -> DistributionFile:
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"distribution file: invalid JSON ({exc})") from exc
    return parse_distribution(data)


@dataclass
class ReportRow:
    """One strategy's case-study outcome over a named-token distribution.

    Percentages cover the full support; renderers may print only the top
    few tokens, Table-style.
    """

    strategy: str
    support_size: int
    tokens: list[str]
    original_pct: list[float]
    renormalized_pct: list[float]
    threshold: float | None
    bandwidth: float | None


def build_report(dfile: DistributionFile, configs) -> list[ReportRow]:
    """Apply each strategy config to the distribution file."""
    original = dfile.original_probs()
    rows = []
    for config in configs:
        result = dfile.truncate(config)
        rows.append(
            ReportRow(
                strategy=config.name,
                support_size=result.support_size,
                tokens=[dfile.tokens[i] for i in result.support],
                original_pct=[float(original[i]) * 100.0 for i in result.support],
                renormalized_pct=[float(r) * 100.0 for r in result.renormalized],
                threshold=result.threshold,
                bandwidth=result.bandwidth,
            )
        )
    return rows


def _display_token(token: str) -> str:
    return token.replace("\n", "\\n").replace("\t", "\\t")


def format_table(rows: list[ReportRow], top_n: int = 3) -> str:
    """Render report rows as a fixed-width table, one block per strategy."""
    lines = []
    header = f"{'strategy':<12} {'|S|':>5}  {'token':<14} {'orig %':>8} {'renorm %':>9}"
    lines.append(header)
    lines.append("-" * len(header))
    for row in rows:
        extras = []
        if row.threshold is not None:
            extras.append(f"threshold={row.threshold:.6g}")
        if row.bandwidth is not None:
            extras.append(f"bandwidth={row.bandwidth:.6g}")
        suffix = ("  [" + ", ".join(extras) + "]") if extras else ""
        for j in range(min(top_n, row.support_size)):
            label = row.strategy if j == 0 else ""
            size = str(row.support_size) if j == 0 else ""
            tail = suffix if j == 0 else ""
            lines.append(
                f"{label:<12} {size:>5}  {_display_token(row.tokens[j]):<14}"
                f" {row.original_pct[j]:>8.2f} {row.renormalized_pct[j]:>9.1f}{tail}"
            )
    return "\n".join(lines) + "\n"


def report_to_jsonable(rows: list[ReportRow]) -> list[dict]:
    out = []
    for row in rows:
        out.append(
            {
                "strategy": row.strategy,
                "support_size": row.support_size,
                "threshold": row.threshold,
                "bandwidth": row.bandwidth,
                "tokens": [
                    {
                        "token": tok,
                        "original_pct": orig,
                        "renormalized_pct": renorm,
                    }
                    for tok, orig, renorm in zip(
                        row.tokens, row.original_pct, row.renormalized_pct
                    )
                ],
            }
        )
    return out


def report_to_csv(rows: list[ReportRow]) -> str:
    lines = ["strategy,support_size,token,original_pct,renormalized_pct"]
    for row in rows:
        for tok, orig, renorm in zip(row.tokens, row.original_pct, row.renormalized_pct):
            lines.append(
                f"{row.strategy},{row.support_size},{_csv_quote(_display_token(tok))},{orig:.6g},{renorm:.6g}"
            )
    return "\n".join(lines) + "\n"


def _csv_quote(value: str) -> str:
    if any(c in value for c in ',"\n'):
        return '"' + value.replace('"', '""') + '"'
    return value
