"""Truncation strategy zoo.

Every strategy maps a probability distribution to a non-empty support set
with renormalized probabilities and diagnostics, behind one result contract:

* the mode is always a member of the support;
* the support is ordered by descending input probability, ties broken by
  lowest token index;
* zero-probability tokens never enter a support;
* threshold comparisons are inclusive (``>=``).

The headline strategy keeps tokens whose probability lies within a relative
band below the mode's probability, with the band width scaled by normalized
entropy: ``bandwidth = base * (1 + H/H_max)``, clamped to 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import ClassVar, Union

import numpy as np

from .errors import ParameterError
from .probs import (
    EntropyReport,
    LogitVector,
    ProbDist,
    entropy,
    mode,
    softmax,
    temper,
)

# Inclusive-boundary grace for cumulative-mass comparisons, so that decimal
# thresholds like 0.8 still count as "reached" when the float cumsum lands a
# few ulps short.
_CUMSUM_EPS = 1e-12


def _check_unit_open(value: float, name: str) -> None:
    if not (isinstance(value, (int, float)) and math.isfinite(value)) or not 0 < value < 1:
        raise ParameterError(f"{name} must lie in (0, 1), got {value!r}")


def _check_unit_half_open(value: float, name: str) -> None:
    if not (isinstance(value, (int, float)) and math.isfinite(value)) or not 0 < value <= 1:
        raise ParameterError(f"{name} must lie in (0, 1], got {value!r}")


def _check_temperature(value: float) -> None:
    if not (isinstance(value, (int, float)) and math.isfinite(value)) or value <= 0:
        raise ParameterError(f"temperature must be a positive real, got {value!r}")


@dataclass(frozen=True)
class TopB:
    """Entropy-scaled relative band anchored at the mode probability."""

    base_bandwidth: float = 0.3
    temperature: float = 1.0
    name: ClassVar[str] = "top-b"

    def __post_init__(self):
        _check_unit_open(self.base_bandwidth, "base_bandwidth")
        _check_temperature(self.temperature)


@dataclass(frozen=True)
class TopK:
    """Keep the k most probable tokens."""

    k: int = 40
    temperature: float = 1.0
    name: ClassVar[str] = "top-k"

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 1:
            raise ParameterError(f"k must be a positive integer, got {self.k!r}")
        _check_temperature(self.temperature)


@dataclass(frozen=True)
class TopP:
    """Keep the smallest prefix of tokens whose cumulative mass reaches p."""

    p: float = 0.9
    temperature: float = 1.0
    name: ClassVar[str] = "top-p"

    def __post_init__(self):
        _check_unit_half_open(self.p, "p")
        _check_temperature(self.temperature)


@dataclass(frozen=True)
class MinP:
    """Keep tokens with probability at least alpha times the mode's."""

    alpha: float = 0.05
    temperature: float = 1.0
    name: ClassVar[str] = "min-p"

    def __post_init__(self):
        _check_unit_half_open(self.alpha, "alpha")
        _check_temperature(self.temperature)


@dataclass(frozen=True)
class Epsilon:
    """Keep tokens with probability at least an absolute floor."""

    epsilon: float
    temperature: float = 1.0
    name: ClassVar[str] = "epsilon"

    def __post_init__(self):
        _check_unit_open(self.epsilon, "epsilon")
        _check_temperature(self.temperature)


@dataclass(frozen=True)
class Eta:
    """Entropy-adaptive floor: min(eta, sqrt(eta) * exp(-H))."""

    eta: float
    temperature: float = 1.0
    name: ClassVar[str] = "eta"

    def __post_init__(self):
        _check_unit_open(self.eta, "eta")
        _check_temperature(self.temperature)


@dataclass(frozen=True)
class TemperatureOnly:
    """No truncation; the full (nonzero) distribution is its own support."""

    temperature: float = 1.0
    name: ClassVar[str] = "temperature"

    def __post_init__(self):
        _check_temperature(self.temperature)


StrategyConfig = Union[TopB, TopK, TopP, MinP, Epsilon, Eta, TemperatureOnly]

STRATEGY_NAMES = ("top-b", "top-k", "top-p", "min-p", "epsilon", "eta", "temperature")


@dataclass(frozen=True)
class BandwidthTrace:
    """Adaptive bandwidth before and after clamping to the unit interval."""

    raw_bandwidth: float
    clamped_bandwidth: float
    clamp_applied: bool

    def __post_init__(self):
        if not 0 < self.clamped_bandwidth <= 1:
            raise ParameterError(
                f"clamped bandwidth {self.clamped_bandwidth!r} outside (0, 1]"
            )


@dataclass(frozen=True)
class TruncationResult:
    """Support set, renormalized probabilities, and diagnostics.

    ``threshold`` is the absolute probability cutoff that was applied, or
    None for strategies without one (top-k, top-p, temperature).
    ``bandwidth`` is present only when a relative band produced the support.
    ``entropy_report`` describes the (post-temperature) input distribution.
    """

    support: tuple[int, ...]
    renormalized: np.ndarray
    threshold: float | None
    bandwidth: float | None
    entropy_report: EntropyReport
    support_size: int

    def __post_init__(self):
        if len(self.support) == 0:
            raise ParameterError("support must be non-empty")
        if self.support_size != len(self.support):
            raise ParameterError("support_size must equal len(support)")
        renorm = np.array(self.renormalized, dtype=float)
        renorm.setflags(write=False)
        if abs(float(renorm.sum()) - 1.0) > 1e-9:
            raise ParameterError("renormalized probabilities must sum to 1")
        object.__setattr__(self, "renormalized", renorm)


def _ordered_support(probs: np.ndarray, keep: np.ndarray) -> np.ndarray:
    """Indices of kept tokens, descending probability, ties by lowest index."""
    idx = np.flatnonzero(keep)
    return idx[np.argsort(-probs[idx], kind="stable")]


def _build_result(
    dist: ProbDist,
    keep: np.ndarray,
    threshold: float | None,
    bandwidth: float | None,
    report: EntropyReport | None = None,
) -> TruncationResult:
    if report is None:
        report = entropy(dist)
    order = _ordered_support(dist.probs, keep)
    kept = dist.probs[order]
    return TruncationResult(
        support=tuple(int(i) for i in order),
        renormalized=kept / kept.sum(),
        threshold=threshold,
        bandwidth=bandwidth,
        entropy_report=report,
        support_size=int(order.size),
    )


def _singleton_result(
    dist: ProbDist,
    threshold: float | None,
    report: EntropyReport | None = None,
) -> TruncationResult:
    keep = np.zeros(dist.n, dtype=bool)
    keep[mode(dist).index] = True
    return _build_result(dist, keep, threshold, None, report)


def top_b_bandwidth(entropy_report: EntropyReport, base_bandwidth: float) -> BandwidthTrace:
    """Adaptive bandwidth: base * (1 + normalized entropy), clamped to 1.

    The raw value ranges from ``base_bandwidth`` (zero entropy) to
    ``2 * base_bandwidth`` (maximal entropy).
    """
    _check_unit_open(base_bandwidth, "base_bandwidth")
    raw = base_bandwidth * (1.0 + entropy_report.normalized)
    clamped = min(raw, 1.0)
    return BandwidthTrace(
        raw_bandwidth=raw,
        clamped_bandwidth=clamped,
        clamp_applied=raw > 1.0,
    )


def truncate_band(dist: ProbDist, bandwidth: float, *, _report: EntropyReport | None = None) -> TruncationResult:
    """Keep tokens with probability >= (1 - bandwidth) * p_max.

    This is the fixed-band core of the adaptive strategy; ``bandwidth`` must
    lie in (0, 1].
    """
    if not (isinstance(bandwidth, (int, float)) and math.isfinite(bandwidth)) or not 0 < bandwidth <= 1:
        raise ParameterError(f"bandwidth must lie in (0, 1], got {bandwidth!r}")
    p = dist.probs
    threshold = (1.0 - bandwidth) * mode(dist).p_max
    keep = (p >= threshold) & (p > 0)
    return _build_result(dist, keep, threshold, float(bandwidth), _report)


def truncate_top_b(dist: ProbDist, base_bandwidth: float, temperature: float = 1.0) -> TruncationResult:
    """Entropy-adaptive relative-band truncation.

    Temperature (if not 1) is applied to the distribution first; the
    entropy, bandwidth, and threshold are all computed on the tempered
    distribution, which is the one actually being truncated and sampled.
    """
    dist = temper(dist, temperature)
    report = entropy(dist)
    trace = top_b_bandwidth(report, base_bandwidth)
    return truncate_band(dist, trace.clamped_bandwidth, _report=report)


def truncate_top_k(dist: ProbDist, k: int) -> TruncationResult:
    """Keep the k most probable (nonzero) tokens; ties broken by lowest index."""
    if not isinstance(k, int) or k < 1:
        raise ParameterError(f"k must be a positive integer, got {k!r}")
    p = dist.probs
    order = _ordered_support(p, p > 0)
    keep = np.zeros(dist.n, dtype=bool)
    keep[order[:k]] = True
    return _build_result(dist, keep, None, None)


def truncate_top_p(dist: ProbDist, p: float) -> TruncationResult:
    """Smallest descending-probability prefix whose cumulative mass reaches p.

    The crossing token is included; the support never shrinks below one
    token.
    """
    _check_unit_half_open(p, "p")
    probs = dist.probs
    order = _ordered_support(probs, probs > 0)
    cum = np.cumsum(probs[order])
    count = int(np.searchsorted(cum, p - _CUMSUM_EPS, side="left")) + 1
    count = min(count, order.size)
    keep = np.zeros(dist.n, dtype=bool)
    keep[order[:count]] = True
    return _build_result(dist, keep, None, None)


def truncate_min_p(dist: ProbDist, alpha: float) -> TruncationResult:
    """Keep tokens with probability >= alpha * p_max."""
    _check_unit_half_open(alpha, "alpha")
    p = dist.probs
    threshold = alpha * mode(dist).p_max
    keep = (p >= threshold) & (p > 0)
    return _build_result(dist, keep, threshold, None)


def truncate_epsilon(dist: ProbDist, epsilon: float) -> TruncationResult:
    """Keep tokens with probability >= epsilon; falls back to {mode} if empty."""
    _check_unit_open(epsilon, "epsilon")
    keep = dist.probs >= epsilon
    if not keep.any():
        return _singleton_result(dist, epsilon)
    return _build_result(dist, keep, epsilon, None)


def truncate_eta(dist: ProbDist, eta: float) -> TruncationResult:
    """Entropy-adaptive absolute floor: min(eta, sqrt(eta) * exp(-H)).

    Falls back to {mode} when no token clears the floor.
    """
    _check_unit_open(eta, "eta")
    report = entropy(dist)
    cutoff = min(eta, math.sqrt(eta) * math.exp(-report.entropy))
    keep = dist.probs >= cutoff
    if not keep.any():
        return _singleton_result(dist, cutoff, report)
    return _build_result(dist, keep, cutoff, None, report)


def _full_support(dist: ProbDist) -> TruncationResult:
    p = dist.probs
    return _build_result(dist, p > 0, None, None)


def _dispatch(config: StrategyConfig, dist: ProbDist) -> TruncationResult:
    """Apply a strategy to an already-tempered distribution."""
    match config:
        case TopB():
            return truncate_top_b(dist, config.base_bandwidth)
        case TopK():
            return truncate_top_k(dist, config.k)
        case TopP():
            return truncate_top_p(dist, config.p)
        case MinP():
            return truncate_min_p(dist, config.alpha)
        case Epsilon():
            return truncate_epsilon(dist, config.epsilon)
        case Eta():
            return truncate_eta(dist, config.eta)
        case TemperatureOnly():
            return _full_support(dist)
    raise ParameterError(f"unknown strategy config {config!r}")


def apply(config: StrategyConfig, logits) -> TruncationResult:
    """Softmax the logits at the config's temperature, then truncate."""
    if not isinstance(logits, LogitVector):
        logits = LogitVector(np.asarray(logits, dtype=float))
    return _dispatch(config, softmax(logits, config.temperature))


def apply_to_probs(config: StrategyConfig, dist: ProbDist) -> TruncationResult:
    """Apply a strategy to a probability distribution.

    The config's temperature re-tempers the distribution first (identity at
    T = 1).
    """
    return _dispatch(config, temper(dist, config.temperature))


def sample(result: TruncationResult, rng: np.random.Generator, size: int | None = None):
    """Multinomial draw over the renormalized support.

    Returns a single token index when ``size`` is None, else an integer
    array of draws.  Deterministic given the generator's state.
    """
    support = np.asarray(result.support)
    if size is None:
        return int(rng.choice(support, p=result.renormalized))
    return rng.choice(support, size=size, p=result.renormalized)
