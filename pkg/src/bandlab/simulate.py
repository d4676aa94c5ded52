"""Synthetic autoregressive process and trajectory runner.

A process emits one probability distribution per step according to a regime
schedule:

* ``PEAKED``: softmax of a one-hot logit vector scaled by a sharpness L;
  the hot position is derived deterministically from (seed, step, history
  digest).
* ``FLAT``: the uniform distribution.
* ``MIXED``: a flat-Dirichlet-like draw built from seeded exponential
  variates normalized to sum 1.

Determinism contract: every distribution is a pure function of
(process seed, step, history digest), and the history digest is a 64-bit
mixing hash folded over the sampled token ids.  All pseudo-randomness on the
process side comes from the splitmix64 finalizer implemented below (not a
platform RNG), so trajectories are reproducible bit-for-bit across
platforms and library versions.  Only the multinomial sampling step uses
numpy's seeded PCG64 generator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import ParameterError, SchemaError
from .probs import ProbDist, batch_entropy, mode
from .strategies import StrategyConfig, apply_to_probs, sample

_MASK64 = (1 << 64) - 1
# Salt separating the history-digest stream from the per-step streams.
_DIGEST_SALT = 0xD1B54A32D192ED03


def mix64(x: int) -> int:
    """splitmix64 finalizer: a 64-bit avalanche hash."""
    z = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


class _Stream:
    """Deterministic 64-bit stream via repeated splitmix64 steps."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def next_unit(self) -> float:
        # 53-bit mantissa mapped into (0, 1]; never 0, so log() is safe.
        return ((self.next_u64() >> 11) + 1) * 2.0**-53

    def exponential(self) -> float:
        return -math.log(self.next_unit())


class Regime(str, Enum):
    PEAKED = "PEAKED"
    FLAT = "FLAT"
    MIXED = "MIXED"


@dataclass(frozen=True)
class ProcessConfig:
    """Specification of a synthetic autoregressive process.

    Exactly one schedule form must be given: ``regimes`` (a single tag for
    every step, or one tag per step) or ``anneal`` (all-PEAKED with the
    sharpness interpolated linearly from ``anneal[0]`` to ``anneal[1]``).
    ``sharpness`` is the PEAKED logit scale L and is required whenever the
    schedule contains a PEAKED step and no anneal is given.
    """

    vocab_size: int
    steps: int
    seed: int = 0
    regimes: str | Sequence[str] | None = None
    sharpness: float | None = None
    anneal: tuple[float, float] | None = None

    def __post_init__(self):
        if not isinstance(self.vocab_size, int) or self.vocab_size < 2:
            raise ParameterError(f"vocab_size must be an integer >= 2, got {self.vocab_size!r}")
        if not isinstance(self.steps, int) or self.steps < 1:
            raise ParameterError(f"steps must be an integer >= 1, got {self.steps!r}")
        if not isinstance(self.seed, int):
            raise ParameterError(f"seed must be an integer, got {self.seed!r}")
        if (self.regimes is None) == (self.anneal is None):
            raise ParameterError("exactly one of regimes or anneal must be given")
        if self.anneal is not None:
            l_start, l_end = self.anneal
            if l_start <= 0 or l_end <= 0:
                raise ParameterError("anneal sharpness endpoints must be positive")
            object.__setattr__(self, "anneal", (float(l_start), float(l_end)))
            return
        regimes = self.regimes
        if isinstance(regimes, (str, Regime)):
            schedule = (Regime(regimes),) * self.steps
        else:
            schedule = tuple(Regime(r) for r in regimes)
            if len(schedule) != self.steps:
                raise ParameterError(
                    f"regime schedule has {len(schedule)} entries for {self.steps} steps"
                )
        object.__setattr__(self, "regimes", schedule)
        if Regime.PEAKED in schedule:
            if self.sharpness is None or not self.sharpness > 0:
                raise ParameterError("sharpness must be positive for PEAKED steps")
            object.__setattr__(self, "sharpness", float(self.sharpness))

    def regime_at(self, step: int) -> Regime:
        if self.anneal is not None:
            return Regime.PEAKED
        return self.regimes[step]

    def sharpness_at(self, step: int) -> float:
        if self.anneal is not None:
            l_start, l_end = self.anneal
            if self.steps == 1:
                return l_start
            return l_start + (l_end - l_start) * step / (self.steps - 1)
        return self.sharpness

    def to_dict(self) -> dict:
        out: dict = {"vocab_size": self.vocab_size, "steps": self.steps, "seed": self.seed}
        if self.anneal is not None:
            out["anneal"] = {"l_start": self.anneal[0], "l_end": self.anneal[1]}
            return out
        tags = [r.value for r in self.regimes]
        out["regimes"] = tags[0] if len(set(tags)) == 1 else tags
        if self.sharpness is not None:
            out["sharpness"] = self.sharpness
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "ProcessConfig":
        if not isinstance(data, dict):
            raise SchemaError("process config: expected a JSON object")
        known = {"vocab_size", "steps", "seed", "regimes", "sharpness", "anneal"}
        for key in data:
            if key not in known:
                raise SchemaError(f"process config: unknown field {key!r}")
        for key, typ in (("vocab_size", int), ("steps", int)):
            if key not in data:
                raise SchemaError(f"process config: missing field {key!r}")
            if not isinstance(data[key], typ) or isinstance(data[key], bool):
                raise SchemaError(f"process config: field {key!r} must be an integer")
        seed = data.get("seed", 0)
        if not isinstance(seed, int) or isinstance(seed, bool):
            raise SchemaError("process config: field 'seed' must be an integer")
        anneal = None
        if "anneal" in data:
            a = data["anneal"]
            if not isinstance(a, dict) or set(a) != {"l_start", "l_end"}:
                raise SchemaError("process config: field 'anneal' must be {l_start, l_end}")
            if not all(isinstance(a[k], (int, float)) for k in ("l_start", "l_end")):
                raise SchemaError("process config: anneal endpoints must be numbers")
            anneal = (float(a["l_start"]), float(a["l_end"]))
        regimes = data.get("regimes")
        if regimes is not None and not isinstance(regimes, (str, list)):
            raise SchemaError("process config: field 'regimes' must be a string or list")
        if isinstance(regimes, (str, list)):
            valid = {r.value for r in Regime}
            tags = [regimes] if isinstance(regimes, str) else regimes
            for tag in tags:
                if tag not in valid:
                    raise SchemaError(f"process config: unknown regime {tag!r}")
        sharpness = data.get("sharpness")
        if sharpness is not None and not isinstance(sharpness, (int, float)):
            raise SchemaError("process config: field 'sharpness' must be a number")
        try:
            return cls(
                vocab_size=data["vocab_size"],
                steps=data["steps"],
                seed=seed,
                regimes=regimes,
                sharpness=None if sharpness is None else float(sharpness),
                anneal=anneal,
            )
        except ParameterError as exc:
            raise SchemaError(f"process config: {exc}") from exc


@dataclass(frozen=True)
class TrajectoryRecord:
    """Per-step metrics of one simulated decoding run.

    ``entropy`` is the entropy of the renormalized (post-truncation)
    sampling distribution; ``pre_entropy`` is the entropy of the step
    distribution before truncation.  ``bandwidth`` is NaN at steps where the
    strategy has no bandwidth notion.
    """

    strategy: str
    entropy: np.ndarray
    normalized_entropy: np.ndarray
    pre_entropy: np.ndarray
    support_size: np.ndarray
    bandwidth: np.ndarray
    sampled_token: np.ndarray
    mode_agreement: np.ndarray

    @property
    def steps(self) -> int:
        return self.entropy.size


@dataclass(frozen=True)
class MetricSummary:
    """A per-seed metric with its across-seed mean and unbiased variance."""

    per_seed: np.ndarray
    mean: float
    variance: float

    @classmethod
    def from_values(cls, values) -> "MetricSummary":
        arr = np.asarray(values, dtype=float)
        return cls(
            per_seed=arr,
            mean=float(arr.mean()),
            variance=float(arr.var(ddof=1)) if arr.size > 1 else 0.0,
        )


@dataclass(frozen=True)
class RunSummary:
    """Across-seed aggregates of one strategy's trajectories.

    ``mean_entropy`` aggregates per-seed means of post-truncation entropy;
    ``mean_pre_entropy`` the same for pre-truncation entropy.
    """

    strategy: str
    n_seeds: int
    mean_entropy: MetricSummary
    mean_pre_entropy: MetricSummary
    mean_support_size: MetricSummary
    geometric_mean_branching: MetricSummary
    mode_agreement_rate: MetricSummary

    METRICS = (
        "mean_entropy",
        "mean_pre_entropy",
        "mean_support_size",
        "geometric_mean_branching",
        "mode_agreement_rate",
    )


def _digest_init(seed: int) -> int:
    return mix64(seed ^ _DIGEST_SALT)


def _digest_update(digest: int, token: int) -> int:
    return mix64(digest ^ mix64(token + 1))


def _step_key(seed: int, step: int, history_digest: int) -> int:
    key = mix64(seed & _MASK64)
    key = mix64(key ^ (step & _MASK64))
    return mix64(key ^ (history_digest & _MASK64))


def step_distribution(config: ProcessConfig, step: int, history_digest: int) -> ProbDist:
    """The process's conditional distribution at one step.

    Fully deterministic given (config.seed, step, history_digest).
    """
    if not 0 <= step < config.steps:
        raise ParameterError(f"step {step} out of range [0, {config.steps})")
    n = config.vocab_size
    regime = config.regime_at(step)
    if regime is Regime.FLAT:
        return ProbDist.from_probs(np.full(n, 1.0 / n))
    stream = _Stream(_step_key(config.seed, step, history_digest))
    if regime is Regime.PEAKED:
        hot = stream.next_u64() % n
        logits = np.zeros(n)
        logits[hot] = config.sharpness_at(step)
        shifted = np.exp(logits - logits.max())
        return ProbDist(shifted / shifted.sum())
    # MIXED: exponential variates normalized to 1 (a flat Dirichlet draw).
    draws = np.array([stream.exponential() for _ in range(n)])
    return ProbDist(draws / draws.sum())


def run_trajectory(process: ProcessConfig, strategy: StrategyConfig, seed: int) -> TrajectoryRecord:
    """Simulate one decoding run: per step, truncate, sample, record.

    The history digest is folded over sampled tokens, so runs with different
    strategies (or seeds) visit different distributions.
    """
    rng = np.random.default_rng(mix64(mix64(process.seed) ^ mix64(seed)))
    digest = _digest_init(process.seed)
    steps = process.steps
    log_n = math.log(process.vocab_size)

    post_h = np.empty(steps)
    pre_h = np.empty(steps)
    sizes = np.empty(steps, dtype=np.int64)
    bandwidths = np.full(steps, np.nan)
    tokens = np.empty(steps, dtype=np.int64)
    agree = np.empty(steps, dtype=bool)

    for t in range(steps):
        dist = step_distribution(process, t, digest)
        result = apply_to_probs(strategy, dist)
        token = sample(result, rng)
        post_h[t] = batch_entropy(result.renormalized)
        pre_h[t] = result.entropy_report.entropy
        sizes[t] = result.support_size
        if result.bandwidth is not None:
            bandwidths[t] = result.bandwidth
        tokens[t] = token
        agree[t] = token == mode(dist).index
        digest = _digest_update(digest, token)

    return TrajectoryRecord(
        strategy=strategy.name,
        entropy=post_h,
        normalized_entropy=post_h / log_n,
        pre_entropy=pre_h,
        support_size=sizes,
        bandwidth=bandwidths,
        sampled_token=tokens,
        mode_agreement=agree,
    )


def summarize_trajectories(strategy_name: str, records: Sequence[TrajectoryRecord]) -> RunSummary:
    """Aggregate per-seed trajectory records into a RunSummary."""
    return RunSummary(
        strategy=strategy_name,
        n_seeds=len(records),
        mean_entropy=MetricSummary.from_values([r.entropy.mean() for r in records]),
        mean_pre_entropy=MetricSummary.from_values([r.pre_entropy.mean() for r in records]),
        mean_support_size=MetricSummary.from_values([r.support_size.mean() for r in records]),
        geometric_mean_branching=MetricSummary.from_values(
            [math.exp(np.log(r.support_size).mean()) for r in records]
        ),
        mode_agreement_rate=MetricSummary.from_values([r.mode_agreement.mean() for r in records]),
    )


def run_comparison(
    process: ProcessConfig,
    strategies: Sequence[StrategyConfig],
    n_seeds: int,
) -> dict[str, RunSummary]:
    """Run every strategy over the identical seed list 0..n_seeds-1.

    The paired-seed design makes across-strategy variance comparisons
    matched.  Returns summaries keyed by strategy name.
    """
    if not isinstance(n_seeds, int) or n_seeds < 2:
        raise ParameterError(f"n_seeds must be an integer >= 2, got {n_seeds!r}")
    if len(strategies) == 0:
        raise ParameterError("at least one strategy is required")
    names = [s.name for s in strategies]
    if len(set(names)) != len(names):
        raise ParameterError(f"duplicate strategy names in comparison: {names}")
    out: dict[str, RunSummary] = {}
    for strategy in strategies:
        records = [run_trajectory(process, strategy, seed) for seed in range(n_seeds)]
        out[strategy.name] = summarize_trajectories(strategy.name, records)
    return out


@dataclass(frozen=True)
class SweepCell:
    bandwidth: float
    temperature: float
    summary: RunSummary


def sweep_grid(
    process: ProcessConfig,
    bandwidths: Sequence[float],
    temperatures: Sequence[float],
    n_seeds: int,
) -> list[SweepCell]:
    """Evaluate the adaptive-band strategy over a (bandwidth, temperature) grid.

    Cells are emitted in row-major order (bandwidths outer, temperatures
    inner); every cell reuses the same paired seeds, so results are
    independent of evaluation order.
    """
    from .strategies import TopB

    if len(bandwidths) == 0 or len(temperatures) == 0:
        raise ParameterError("bandwidth and temperature grids must be non-empty")
    cells = []
    for b in bandwidths:
        for t in temperatures:
            summary = run_comparison(process, [TopB(base_bandwidth=b, temperature=t)], n_seeds)
            cells.append(SweepCell(bandwidth=float(b), temperature=float(t), summary=summary["top-b"]))
    return cells
