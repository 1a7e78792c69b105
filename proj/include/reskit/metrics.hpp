#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "reskit/fitting.hpp"
#include "reskit/gamma.hpp"

namespace reskit {

/// Controls the n_max_valid guard.
struct RangePolicy
{
    bool allow_extrapolation = false;
};

struct DurationStats
{
    double mean = 0;  // minutes
    double sd = 0;    // minutes
    bool extrapolated = false;
};

/// Mean and sd of r_n - r_1 for an event of n outages, measured until a
/// fraction q of outages is restored: with m = ceil(q n - 1),
/// mean = m * mean_dr(n), sd = sqrt(m) * sd_dr(n). m < 1 gives (0, 0).
DurationStats restore_duration_stats(std::size_t n, const StatsBundle& bundle, double completion = 1.0,
                                     RangePolicy policy = {});

/// Restore duration plus the restore delay, which is independent of it.
DurationStats event_duration_stats(std::size_t n, const StatsBundle& bundle, RangePolicy policy = {});

struct Rates
{
    double outage = 0;   // per minute
    double restore = 0;  // per minute
    bool extrapolated = false;
};

/// Reciprocals of the mean outage and restore gaps at n. Requires n >= 2.
Rates rates(std::size_t n, const StatsBundle& bundle, RangePolicy policy = {});

struct CustomerHours
{
    double mean = 0;         // customer-hours
    double alternative = 0;  // same quantity via the event-duration form
    bool extrapolated = false;
    /// Set when the formula goes negative (mean restore gap well below the
    /// mean outage gap), which no real event can produce.
    std::optional<std::string> warning;
};

/// n c (dr0 + (n-1)/2 (mean_dr - mean_do)) in customer-hours, cross-checked
/// against n c D_E - n(n-1)/2 c (mean_dr + mean_do). Throws NumericalError if
/// the two disagree beyond round-off.
CustomerHours mean_customer_hours(std::size_t n, const StatsBundle& bundle, RangePolicy policy = {});

/// 95th (or p-th) percentile of the moment-matched gamma of restore duration.
/// Requires n >= 2.
double restore_duration_percentile(std::size_t n, const StatsBundle& bundle, double p = 0.95,
                                   RangePolicy policy = {});

struct PredictOptions
{
    double percentile = 0.95;
    double completion = 1.0;
    RangePolicy range;
};

struct MetricsPrediction
{
    std::size_t n = 0;
    double dr_mean = 0;
    double dr_sd = 0;
    double de_mean = 0;
    double de_sd = 0;
    std::optional<double> rate_outage;   // absent for n = 1
    std::optional<double> rate_restore;  // absent for n = 1
    double customer_hours_mean = 0;
    std::optional<double> dr_percentile;  // absent for n = 1
    double percentile = 0.95;
    double completion = 1.0;
    bool extrapolated = false;
    std::optional<std::string> warning;
};

/// All metrics at n. Completion applies to dr_mean/dr_sd only; the percentile
/// and event duration use full completion.
MetricsPrediction predict(std::size_t n, const StatsBundle& bundle, const PredictOptions& options = {});

} // namespace reskit
