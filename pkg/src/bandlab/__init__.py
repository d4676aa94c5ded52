"""bandlab: entropy-regulated relative-band truncation and baseline decoding
strategies, plus a synthetic stochastic-process harness for studying their
entropy, branching, and variance behavior without a language model.
"""

from .errors import BandlabError, DegenerateInputError, ParameterError, SchemaError
from .probs import (
    EntropyReport,
    LogitVector,
    ModeInfo,
    ProbDist,
    batch_entropy,
    entropy,
    mode,
    renormalize,
    softmax,
    temper,
)
from .strategies import (
    STRATEGY_NAMES,
    BandwidthTrace,
    Epsilon,
    Eta,
    MinP,
    StrategyConfig,
    TemperatureOnly,
    TopB,
    TopK,
    TopP,
    TruncationResult,
    apply,
    apply_to_probs,
    sample,
    top_b_bandwidth,
    truncate_band,
    truncate_epsilon,
    truncate_eta,
    truncate_min_p,
    truncate_top_b,
    truncate_top_k,
    truncate_top_p,
)
from .simulate import (
    MetricSummary,
    ProcessConfig,
    Regime,
    RunSummary,
    SweepCell,
    TrajectoryRecord,
    run_comparison,
    run_trajectory,
    step_distribution,
    summarize_trajectories,
    sweep_grid,
)
from .distfile import (
    DistributionFile,
    ReportRow,
    build_report,
    format_table,
    load_distribution,
    parse_distribution,
)

__version__ = "0.1.0"

__all__ = [
    "BandlabError",
    "BandwidthTrace",
    "DegenerateInputError",
    "DistributionFile",
    "EntropyReport",
    "Epsilon",
    "Eta",
    "LogitVector",
    "MetricSummary",
    "MinP",
    "ModeInfo",
    "ParameterError",
    "ProbDist",
    "ProcessConfig",
    "Regime",
    "ReportRow",
    "RunSummary",
    "STRATEGY_NAMES",
    "SchemaError",
    "StrategyConfig",
    "SweepCell",
    "TemperatureOnly",
    "TopB",
    "TopK",
    "TopP",
    "TrajectoryRecord",
    "TruncationResult",
    "apply",
    "apply_to_probs",
    "batch_entropy",
    "build_report",
    "entropy",
    "format_table",
    "load_distribution",
    "mode",
    "parse_distribution",
    "renormalize",
    "run_comparison",
    "run_trajectory",
    "sample",
    "softmax",
    "step_distribution",
    "summarize_trajectories",
    "sweep_grid",
    "temper",
    "top_b_bandwidth",
    "truncate_band",
    "truncate_epsilon",
    "truncate_eta",
    "truncate_min_p",
    "truncate_top_b",
    "truncate_top_k",
    "truncate_top_p",
]
