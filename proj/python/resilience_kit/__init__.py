"""Resilience event analytics for distribution outage records."""

from ._core import (
    CustomerFamily,
    DiffKind,
    Event,
    EventLog,
    ExpFitModel,
    FitResult,
    IngestConfig,
    MarginalFamily,
    MetricsPrediction,
    MomentStats,
    SdConvention,
    SimConfig,
    SimMode,
    StatsBundle,
    Weight,
    bundle_from_json,
    bundle_hash,
    bundle_to_json,
    curve_table,
    customer_hours,
    decompose,
    event_duration_stats,
    extract_events,
    extract_events_from_intervals,
    fit_exp_model,
    gamma_quantile,
    mean_customer_hours,
    moments,
    monte_carlo_metrics,
    outage_process,
    overlap_fraction,
    parse_records,
    pool_customers,
    pool_restore_delay,
    pool_time_differences,
    predict,
    rates,
    reference_bundle,
    resilience_curve,
    restore_duration_percentile,
    restore_duration_stats,
    restore_process,
    simulate_event,
    summarize,
    to_csv,
)
from ._core import (
    Error,
    OutOfRangeError,
    ParseError,
)

__all__ = [name for name in dir() if not name.startswith("_")]
