#include "reskit/events.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <tuple>

#include "reskit/error.hpp"

namespace reskit {

namespace {

// Sweep order at one instant: restores of records that opened earlier, then
// outages, then restores of zero-duration records opened at this instant.
enum class Phase : int
{
    restore = 0,
    outage = 1,
    instant_restore = 2,
};

struct Instant
{
    Minutes time;
    Phase phase;
    std::size_t record;
};

// Tied instants within an event are ordered by customer count so the layout
// does not depend on how restores were paired with outages.
void sort_ties(std::vector<Minutes>& times, std::vector<std::int64_t>& customers)
{
    std::vector<std::size_t> idx(times.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return std::tie(times[a], customers[a]) < std::tie(times[b], customers[b]);
    });
    std::vector<Minutes> t2;
    std::vector<std::int64_t> c2;
    t2.reserve(idx.size());
    c2.reserve(idx.size());
    for (auto i : idx)
    {
        t2.push_back(times[i]);
        c2.push_back(customers[i]);
    }
    times = std::move(t2);
    customers = std::move(c2);
}

} // namespace

void validate(const Event& e)
{
    const auto n = e.n();
    const auto fail = [&](const std::string& what) {
        throw DataCorruptionError("event " + std::to_string(e.id) + ": " + what);
    };
    if (n == 0)
        fail("no outages");
    if (e.restore_times.size() != n || e.customers_out.size() != n || e.customers_restored.size() != n)
        fail("mismatched lengths");
    if (!std::is_sorted(e.outage_times.begin(), e.outage_times.end()) ||
        !std::is_sorted(e.restore_times.begin(), e.restore_times.end()))
        fail("unsorted times");
    auto a = e.customers_out;
    auto b = e.customers_restored;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b)
        fail("restored customers are not a permutation of customers out");
    if (e.restore_times.front() < e.outage_times.front())
        fail("restore before first outage");

    // O(t) - R(t) >= 1 at every change instant before r_n, and 0 at r_n.
    std::size_t io = 0, ir = 0;
    while (ir < n)
    {
        const Minutes t = std::min(io < n ? e.outage_times[io] : e.restore_times[ir], e.restore_times[ir]);
        while (io < n && e.outage_times[io] <= t)
            ++io;
        while (ir < n && e.restore_times[ir] <= t)
            ++ir;
        if (ir > io)
            fail("more restores than outages at t=" + std::to_string(t));
        if (ir < n && io == ir)
            fail("outstanding count returns to zero inside the event at t=" + std::to_string(t));
    }
}

std::vector<Event> extract_events(std::span<const Interval> intervals)
{
    std::vector<Instant> sweep;
    sweep.reserve(2 * intervals.size());
    for (std::size_t i = 0; i < intervals.size(); ++i)
    {
        const auto& iv = intervals[i];
        if (iv.end < iv.start)
            throw DataCorruptionError("record " + std::to_string(i) + ": restore precedes outage");
        sweep.push_back({iv.start, Phase::outage, i});
        sweep.push_back({iv.end, iv.end == iv.start ? Phase::instant_restore : Phase::restore, i});
    }
    std::sort(sweep.begin(), sweep.end(), [](const Instant& a, const Instant& b) {
        return std::tie(a.time, a.phase, a.record) < std::tie(b.time, b.phase, b.record);
    });

    std::vector<Event> events;
    std::int64_t count = 0;
    for (const auto& s : sweep)
    {
        const auto& iv = intervals[s.record];
        if (s.phase == Phase::outage)
        {
            if (count == 0)
            {
                Event e;
                e.id = static_cast<std::int64_t>(events.size());
                events.push_back(std::move(e));
            }
            ++count;
            events.back().outage_times.push_back(iv.start);
            events.back().customers_out.push_back(iv.customers);
        }
        else
        {
            --count;
            if (count < 0 || events.empty())
                throw DataCorruptionError("outstanding outage count went negative at t=" + std::to_string(s.time));
            events.back().restore_times.push_back(iv.end);
            events.back().customers_restored.push_back(iv.customers);
        }
    }
    if (count != 0)
        throw DataCorruptionError("sweep ended with " + std::to_string(count) + " outstanding outages");

    for (auto& e : events)
    {
        sort_ties(e.outage_times, e.customers_out);
        sort_ties(e.restore_times, e.customers_restored);
    }
    return events;
}

std::vector<Event> extract_events(const EventLog& log)
{
    std::vector<Interval> intervals;
    intervals.reserve(log.size());
    const auto origin = log.origin();
    for (const auto& r : log.records())
        intervals.push_back({static_cast<Minutes>(r.outage_start - origin), static_cast<Minutes>(r.restore_time - origin),
                             r.customers_out});
    return extract_events(intervals);
}

std::vector<Interval> to_intervals(std::span<const Event> events)
{
    std::vector<Interval> out;
    for (const auto& e : events)
    {
        const auto n = e.n();
        // Open outages keyed by customer count; each restore claims one with a
        // matching count, preferring an outage at the same instant.
        std::map<std::int64_t, std::vector<Minutes>> open;
        std::size_t io = 0;
        for (std::size_t ir = 0; ir < n; ++ir)
        {
            const Minutes r = e.restore_times[ir];
            while (io < n && e.outage_times[io] <= r)
            {
                open[e.customers_out[io]].push_back(e.outage_times[io]);
                ++io;
            }
            auto it = open.find(e.customers_restored[ir]);
            if (it == open.end() || it->second.empty())
                throw DataCorruptionError("event " + std::to_string(e.id) + ": restore at t=" + std::to_string(r) +
                                          " has no matching open outage");
            auto& starts = it->second;
            // starts is sorted ascending; the latest start is the same-instant one if any
            const Minutes start = starts.back();
            if (start == r)
                starts.pop_back();
            else
            {
                out.push_back({starts.front(), r, e.customers_restored[ir]});
                starts.erase(starts.begin());
                continue;
            }
            out.push_back({start, r, e.customers_restored[ir]});
        }
    }
    return out;
}

double overlap_fraction(const Event& e)
{
    if (e.n() < 2)
        throw UndefinedMetricError("overlap fraction needs at least 2 outages (event " + std::to_string(e.id) + ")");
    const Minutes duration = e.duration();
    if (!(duration > 0))
        throw UndefinedMetricError("overlap fraction undefined for zero-duration event " + std::to_string(e.id));
    return (e.outage_times.back() - e.restore_times.front()) / duration;
}

} // namespace reskit
