#include "reskit/statistics.hpp"

#include <cmath>
#include <numeric>

#include "reskit/error.hpp"

namespace reskit {

std::size_t TimeDiffPool::total_samples() const
{
    std::size_t total = 0;
    for (const auto& [n, samples] : samples_by_n)
        total += samples.size();
    return total;
}

void TimeDiffPool::merge(const TimeDiffPool& other)
{
    for (const auto& [n, samples] : other.samples_by_n)
    {
        auto& dst = samples_by_n[n];
        dst.insert(dst.end(), samples.begin(), samples.end());
    }
}

TimeDiffPool pool_time_differences(std::span<const Event> events, DiffKind kind)
{
    TimeDiffPool pool;
    pool.kind = kind;
    for (const auto& e : events)
    {
        const auto n = e.n();
        if (n < 2)
            continue;
        const auto& times = kind == DiffKind::outage ? e.outage_times : e.restore_times;
        auto& dst = pool.samples_by_n[n];
        for (std::size_t k = 1; k < n; ++k)
            dst.push_back(times[k] - times[k - 1]);
    }
    return pool;
}

ScalarPool pool_restore_delay(std::span<const Event> events)
{
    ScalarPool pool{ScalarKind::restore_delay, {}};
    for (const auto& e : events)
        if (e.n() >= 2)
            pool.samples.push_back(e.restore_delay());
    return pool;
}

ScalarPool pool_customers(std::span<const Event> events)
{
    ScalarPool pool{ScalarKind::customers, {}};
    for (const auto& e : events)
        for (const auto c : e.customers_out)
            pool.samples.push_back(static_cast<double>(c));
    return pool;
}

MomentStats moments(std::span<const double> samples, SdConvention convention)
{
    if (samples.empty())
        throw UndefinedMomentsError("moments of an empty sample are undefined");
    const auto count = samples.size();
    const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(count);
    double ss = 0;
    for (const auto x : samples)
        ss += (x - mean) * (x - mean);
    double sd = 0;
    if (count >= 2)
    {
        const auto denom = convention == SdConvention::sample ? count - 1 : count;
        sd = std::sqrt(ss / static_cast<double>(denom));
    }
    return {mean, sd, count};
}

std::vector<PoolRow> summarize(const TimeDiffPool& pool, SdConvention convention)
{
    std::vector<PoolRow> rows;
    for (const auto& [n, samples] : pool.samples_by_n)
        if (!samples.empty())
            rows.push_back({n, moments(samples, convention)});
    return rows;
}

std::vector<BinSummary> bin_summary(std::span<const Event> events,
                                    std::span<const std::pair<std::size_t, std::size_t>> bins)
{
    std::map<std::size_t, std::size_t> events_by_n;
    for (const auto& e : events)
        ++events_by_n[e.n()];

    std::vector<BinSummary> out;
    for (const auto& [lo, hi] : bins)
    {
        BinSummary b;
        b.n_lo = lo;
        b.n_hi = hi;
        std::size_t distinct = 0;
        std::size_t samples = 0;
        for (auto it = events_by_n.lower_bound(lo); it != events_by_n.end() && it->first <= hi; ++it)
        {
            ++distinct;
            b.total_events += it->second;
            samples += it->second * (it->first - 1);
        }
        if (distinct > 0)
        {
            b.mean_samples_per_n = static_cast<double>(samples) / static_cast<double>(distinct);
            b.mean_events_per_n = static_cast<double>(b.total_events) / static_cast<double>(distinct);
        }
        out.push_back(b);
    }
    return out;
}

} // namespace reskit
