#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "reskit/ingest.hpp"

namespace reskit {

/// Time on an event-relative axis, in minutes.
using Minutes = double;

/// An outage interval on a minutes axis. Input to event extraction that does not
/// need to come from a CSV (simulated or hand-built logs).
struct Interval
{
    Minutes start = 0;
    Minutes end = 0;
    std::int64_t customers = 0;
};

/// One resilience event.
///
/// Outage and restore times are each sorted. customers_out follows outage
/// order and customers_restored follows restore order, so the two are the same
/// multiset in (generally) different orders.
struct Event
{
    std::int64_t id = 0;
    std::vector<Minutes> outage_times;
    std::vector<Minutes> restore_times;
    std::vector<std::int64_t> customers_out;
    std::vector<std::int64_t> customers_restored;

    std::size_t n() const noexcept { return outage_times.size(); }
    Minutes start() const { return outage_times.front(); }
    Minutes end() const { return restore_times.back(); }
    Minutes duration() const { return end() - start(); }
    /// r_1 - o_1
    Minutes restore_delay() const { return restore_times.front() - outage_times.front(); }
    /// r_n - r_1
    Minutes restore_duration() const { return restore_times.back() - restore_times.front(); }

    friend bool operator==(const Event&, const Event&) = default;
};

/// Throws DataCorruptionError if the event breaks a structural invariant:
/// mismatched lengths, unsorted times, mismatched customer multisets, or an
/// interior instant at which the outstanding count drops to zero or below.
void validate(const Event& e);

/// Split a log into resilience events by sweeping the sorted outage and restore
/// instants and cutting wherever the outstanding count returns to zero.
///
/// At a shared timestamp restores are applied before outages, so a restore that
/// empties the count closes the event and a coincident outage opens the next
/// one. A zero-duration record's own restore is applied after its outage.
/// Event ids count from 0 in time order.
std::vector<Event> extract_events(std::span<const Interval> intervals);

/// Times are minutes since log.origin().
std::vector<Event> extract_events(const EventLog& log);

/// Flatten events back into intervals, pairing o_k with r_k in sorted order.
std::vector<Interval> to_intervals(std::span<const Event> events);

/// (o_n - r_1) / (r_n - o_1). Negative when outages finish before restores begin.
double overlap_fraction(const Event& e);

} // namespace reskit
