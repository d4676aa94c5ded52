"""Probability primitives: validated score/probability vectors, stable softmax,
Shannon entropy, mode extraction, and sparse renormalization.

All functions are pure and operate on immutable value objects, so results can
be shared freely across threads.
"""

from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError, ParameterError

# Tolerance enforced on every constructed distribution.
SUM_TOLERANCE = 1e-9
# Looser gate for user-supplied probability vectors, which are renormalized
# on construction when they pass it.
INPUT_SUM_TOLERANCE = 1e-6


def _frozen_array(values, dtype=float) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class LogitVector:
    """Raw per-token scores (unitless log-odds) over a finite vocabulary.

    ``-inf`` is permitted as an explicit mask marker; NaN and ``+inf`` are
    rejected.
    """

    values: np.ndarray

    def __post_init__(self):
        arr = _frozen_array(self.values)
        if arr.ndim != 1 or arr.size < 1:
            raise ParameterError("logits must be a non-empty 1-d sequence")
        if np.isnan(arr).any():
            raise ParameterError("logits must not contain NaN")
        if np.isposinf(arr).any():
            raise ParameterError("logits must not contain +inf")
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class ProbDist:
    """A validated probability vector over a finite vocabulary.

    The strict constructor requires entries in [0, 1] summing to 1 within
    ``SUM_TOLERANCE``.  Use :meth:`from_probs` for user-supplied vectors,
    which are renormalized when their sum is within ``INPUT_SUM_TOLERANCE``
    of 1 and rejected otherwise.
    """

    probs: np.ndarray

    def __post_init__(self):
        arr = _frozen_array(self.probs)
        if arr.ndim != 1 or arr.size < 1:
            raise ParameterError("probabilities must be a non-empty 1-d sequence")
        if not np.isfinite(arr).all():
            raise ParameterError("probabilities must be finite")
        if (arr < 0).any():
            raise ParameterError("probabilities must be non-negative")
        if (arr > 1 + SUM_TOLERANCE).any():
            raise ParameterError("probabilities must not exceed 1")
        total = float(arr.sum())
        if abs(total - 1.0) > SUM_TOLERANCE:
            raise ParameterError(
                f"probabilities must sum to 1 within {SUM_TOLERANCE:g}, got {total!r}"
            )
        object.__setattr__(self, "probs", arr)

    @classmethod
    def from_probs(cls, values) -> "ProbDist":
        """Build a distribution from a raw probability sequence.

        The sum may deviate from 1 by up to ``INPUT_SUM_TOLERANCE``; the
        vector is renormalized to remove that deviation.
        """
        arr = np.asarray(values, dtype=float)
        if arr.ndim != 1 or arr.size < 1:
            raise ParameterError("probabilities must be a non-empty 1-d sequence")
        if not np.isfinite(arr).all() or (arr < 0).any():
            raise ParameterError("probabilities must be finite and non-negative")
        total = float(arr.sum())
        if abs(total - 1.0) > INPUT_SUM_TOLERANCE:
            raise ParameterError(
                f"probabilities must sum to 1 within {INPUT_SUM_TOLERANCE:g}, got {total!r}"
            )
        return cls(arr / total)

    @property
    def n(self) -> int:
        return self.probs.size


@dataclass(frozen=True)
class EntropyReport:
    """Shannon entropy of a distribution, in nats, plus its normalization.

    ``normalized`` is entropy divided by ``max_entropy`` (= ln n); it is
    defined as 0 for single-token vocabularies, where ln n = 0.
    """

    entropy: float
    max_entropy: float
    normalized: float

    def __post_init__(self):
        if not (0.0 <= self.entropy <= self.max_entropy + 1e-12):
            raise ParameterError(
                f"entropy {self.entropy!r} outside [0, {self.max_entropy!r}]"
            )
        if not (0.0 <= self.normalized <= 1.0):
            raise ParameterError(f"normalized entropy {self.normalized!r} outside [0, 1]")


@dataclass(frozen=True)
class ModeInfo:
    """Index and probability of a distribution's most likely token."""

    index: int
    p_max: float


def softmax(logits, temperature: float = 1.0) -> ProbDist:
    """Convert logits to a probability distribution at the given temperature.

    Numerically stable: the running maximum is subtracted before
    exponentiation.  ``-inf`` entries map to exactly 0.

    Parameters
    ----------
    logits : LogitVector or array-like
    temperature : float
        Must be positive.  Larger values flatten the distribution.
    """
    if not isinstance(logits, LogitVector):
        logits = LogitVector(np.asarray(logits, dtype=float))
    if not (isinstance(temperature, (int, float)) and math.isfinite(temperature)) or temperature <= 0:
        raise ParameterError(f"temperature must be a positive real, got {temperature!r}")
    scaled = logits.values / float(temperature)
    finite = np.isfinite(scaled)
    if not finite.any():
        raise DegenerateInputError("all logits are masked (-inf)")
    shifted = scaled - scaled[finite].max()
    exps = np.exp(shifted)  # exp(-inf) == 0 exactly
    return ProbDist(exps / exps.sum())


def entropy(dist: ProbDist) -> EntropyReport:
    """Shannon entropy of ``dist`` in nats, with the convention 0*log(0) = 0."""
    p = dist.probs
    # log of 1 at zero entries keeps the p*log(p) terms exactly 0 there.
    terms = p * np.log(np.where(p > 0, p, 1.0))
    h = float(-terms.sum()) + 0.0  # normalize IEEE -0.0 away
    h_max = math.log(dist.n)
    if dist.n == 1:
        normalized = 0.0
    else:
        normalized = min(max(h / h_max, 0.0), 1.0)
    return EntropyReport(entropy=h, max_entropy=h_max, normalized=normalized)


def batch_entropy(rows: np.ndarray) -> np.ndarray:
    """Entropy in nats of each row of a (m, n) matrix of probability vectors.

    Vectorized companion to :func:`entropy`; rows are assumed to be valid
    probability vectors.
    """
    rows = np.asarray(rows, dtype=float)
    terms = rows * np.log(np.where(rows > 0, rows, 1.0))
    return -terms.sum(axis=-1) + 0.0


def mode(dist: ProbDist) -> ModeInfo:
    """The argmax token and its probability; ties broken by lowest index."""
    idx = int(np.argmax(dist.probs))
    return ModeInfo(index=idx, p_max=float(dist.probs[idx]))


def renormalize(subset: Mapping[int, float]) -> dict[int, float]:
    """Rescale a sparse index -> probability map so it sums to 1.

    Entries must be strictly positive; an empty subset is rejected.
    Insertion order is preserved.
    """
    if len(subset) == 0:
        raise DegenerateInputError("cannot renormalize an empty subset")
    values = list(subset.values())
    if any(not math.isfinite(v) or v <= 0 for v in values):
        raise ParameterError("subset probabilities must be positive and finite")
    total = math.fsum(values)
    return {k: v / total for k, v in subset.items()}


def temper(dist: ProbDist, temperature: float) -> ProbDist:
    """Re-temper a distribution: probabilities proportional to p**(1/T).

    Equivalent to applying :func:`softmax` at temperature T to log
    probabilities; zero entries stay exactly zero.  T = 1 returns the input
    unchanged.
    """
    if not (isinstance(temperature, (int, float)) and math.isfinite(temperature)) or temperature <= 0:
        raise ParameterError(f"temperature must be a positive real, got {temperature!r}")
    if temperature == 1.0:
        return dist
    with np.errstate(divide="ignore"):
        logp = np.log(dist.probs)  # zeros -> -inf, the softmax mask marker
    return softmax(LogitVector(logp), temperature)
