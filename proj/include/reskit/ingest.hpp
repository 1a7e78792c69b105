#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace reskit {

/// Minutes since 1970-01-01T00:00 UTC.
using EpochMinutes = std::int64_t;

/// One raw fuse-card row: when the outage started, when it was restored and how
/// many customers lost supply.
struct OutageRecord
{
    EpochMinutes outage_start = 0;
    EpochMinutes restore_time = 0;
    std::int64_t customers_out = 0;

    EpochMinutes duration() const noexcept { return restore_time - outage_start; }

    friend bool operator==(const OutageRecord&, const OutageRecord&) = default;
};

struct Rejection
{
    std::size_t line = 0; // 1-based line in the input text, header is line 1
    std::string reason;

    friend bool operator==(const Rejection&, const Rejection&) = default;
};

struct CleaningReport
{
    std::size_t rows_in = 0;
    std::size_t rows_kept = 0;
    std::size_t blanks_zeroed = 0;
    std::vector<Rejection> rejections;
};

struct IngestConfig
{
    std::string outage_start_column = "outage_start";
    std::string restore_time_column = "restore_time";
    std::string customers_column = "customers";
    /// Abort on the first bad row instead of rejecting it.
    bool strict = false;
};

/// Validated, sorted collection of outage records.
///
/// Records are ordered by (outage_start, restore_time); equal keys keep their
/// input order. Immutable once built.
class EventLog
{
public:
    EventLog() = default;
    EventLog(std::vector<OutageRecord> records, std::string source_meta = {}, CleaningReport report = {});

    const std::vector<OutageRecord>& records() const noexcept { return records_; }
    const std::string& source_meta() const noexcept { return source_meta_; }
    const CleaningReport& report() const noexcept { return report_; }
    std::size_t size() const noexcept { return records_.size(); }
    bool empty() const noexcept { return records_.empty(); }

    /// Earliest outage start; the zero of every event-relative time axis.
    EpochMinutes origin() const noexcept { return records_.empty() ? 0 : records_.front().outage_start; }

    /// Record equality only; provenance text is ignored.
    friend bool operator==(const EventLog& a, const EventLog& b) { return a.records_ == b.records_; }

private:
    std::vector<OutageRecord> records_;
    std::string source_meta_;
    CleaningReport report_;
};

/// Parse CSV text into an EventLog.
///
/// Blank customer fields become 0 and are counted in the cleaning report.
/// Rows with unparseable timestamps, a restore before the outage, or a negative
/// or non-integer customer count are rejected with a diagnostic (or abort with
/// ParseError when config.strict is set). A missing required header column is
/// always a ParseError.
EventLog parse_records(std::string_view csv_text, const IngestConfig& config = {});

/// Serialize to the input CSV schema using the configured column names.
std::string to_csv(const EventLog& log, const IngestConfig& config = {});

/// ISO-8601 "YYYY-MM-DDTHH:MM", with optional ":SS" (floored to the minute),
/// 'T' or a single space as separator and an optional trailing 'Z'.
/// Throws std::invalid_argument on malformed input.
EpochMinutes parse_timestamp(std::string_view text);
std::string format_timestamp(EpochMinutes t);

} // namespace reskit
