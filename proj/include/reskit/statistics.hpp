#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "reskit/events.hpp"

namespace reskit {

enum class DiffKind
{
    outage,   // consecutive outage-time gaps
    restore,  // consecutive restore-time gaps
};

enum class ScalarKind
{
    restore_delay,  // r_1 - o_1
    customers,
};

enum class SdConvention
{
    sample,      // n - 1 denominator
    population,  // n denominator
};

/// Time differences pooled by event size n. An event of size n contributes
/// exactly n - 1 samples under key n.
struct TimeDiffPool
{
    DiffKind kind = DiffKind::restore;
    std::map<std::size_t, std::vector<double>> samples_by_n;

    std::size_t total_samples() const;
    /// Fold another pool of the same kind into this one.
    void merge(const TimeDiffPool& other);
};

struct ScalarPool
{
    ScalarKind kind = ScalarKind::restore_delay;
    std::vector<double> samples;
};

struct MomentStats
{
    double mean = 0;
    double sd = 0;
    std::size_t count = 0;

    friend bool operator==(const MomentStats&, const MomentStats&) = default;
};

TimeDiffPool pool_time_differences(std::span<const Event> events, DiffKind kind);

/// One r_1 - o_1 sample per event with n >= 2.
ScalarPool pool_restore_delay(std::span<const Event> events);

/// Every customers_out entry of every event, n = 1 events included.
ScalarPool pool_customers(std::span<const Event> events);

/// Throws UndefinedMomentsError on an empty sample. sd is 0 for one sample
/// under either convention.
MomentStats moments(std::span<const double> samples, SdConvention convention = SdConvention::sample);

/// Per-n row of the stats table: (n, count, mean, sd) of the pooled samples.
struct PoolRow
{
    std::size_t n = 0;
    MomentStats stats;
};
std::vector<PoolRow> summarize(const TimeDiffPool& pool, SdConvention convention = SdConvention::sample);

/// Range-binned census of a time-difference pool, in the style of a
/// "samples and events per n" table.
struct BinSummary
{
    std::size_t n_lo = 0;
    std::size_t n_hi = 0;
    double mean_samples_per_n = 0;  // averaged over the n values in range that occur
    double mean_events_per_n = 0;
    std::size_t total_events = 0;
};
std::vector<BinSummary> bin_summary(std::span<const Event> events,
                                    std::span<const std::pair<std::size_t, std::size_t>> bins);

} // namespace reskit
