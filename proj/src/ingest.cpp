#include "reskit/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "reskit/error.hpp"

namespace reskit {

namespace {

std::string_view trim(std::string_view s)
{
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && is_space(s.front()))
        s.remove_prefix(1);
    while (!s.empty() && is_space(s.back()))
        s.remove_suffix(1);
    return s;
}

// RFC 4180-ish: double-quoted fields may contain commas and "" escapes.
std::vector<std::string> split_csv_line(std::string_view line)
{
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i)
    {
        const char c = line[i];
        if (quoted)
        {
            if (c == '"')
            {
                if (i + 1 < line.size() && line[i + 1] == '"')
                {
                    field += '"';
                    ++i;
                }
                else
                    quoted = false;
            }
            else
                field += c;
        }
        else if (c == '"')
            quoted = true;
        else if (c == ',')
        {
            fields.emplace_back(trim(field));
            field.clear();
        }
        else
            field += c;
    }
    fields.emplace_back(trim(field));
    return fields;
}

template <typename Int>
bool parse_int(std::string_view s, Int& out)
{
    if (s.empty())
        return false;
    if (s.front() == '+')
        s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

std::size_t find_column(const std::vector<std::string>& header, const std::string& name)
{
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
        throw ParseError(1, "missing column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
}

} // namespace

EventLog::EventLog(std::vector<OutageRecord> records, std::string source_meta, CleaningReport report)
    : records_(std::move(records)), source_meta_(std::move(source_meta)), report_(std::move(report))
{
    for (const auto& r : records_)
    {
        if (r.restore_time < r.outage_start)
            throw DataCorruptionError("record restore precedes outage");
        if (r.customers_out < 0)
            throw DataCorruptionError("record has negative customers");
    }
    std::stable_sort(records_.begin(), records_.end(), [](const OutageRecord& a, const OutageRecord& b) {
        return std::tie(a.outage_start, a.restore_time) < std::tie(b.outage_start, b.restore_time);
    });
}

EpochMinutes parse_timestamp(std::string_view text)
{
    using namespace std::chrono;
    auto s = trim(text);
    if (!s.empty() && (s.back() == 'Z' || s.back() == 'z'))
        s.remove_suffix(1);
    // YYYY-MM-DDTHH:MM[:SS]
    if (s.size() != 16 && s.size() != 19)
        throw std::invalid_argument("malformed timestamp '" + std::string(text) + "'");
    const auto digits = [&](std::size_t pos, std::size_t len) {
        int v = 0;
        if (!parse_int(s.substr(pos, len), v) || s[pos] == '+' || s[pos] == '-')
            throw std::invalid_argument("malformed timestamp '" + std::string(text) + "'");
        return v;
    };
    if (s[4] != '-' || s[7] != '-' || (s[10] != 'T' && s[10] != ' ') || s[13] != ':' ||
        (s.size() == 19 && s[16] != ':'))
        throw std::invalid_argument("malformed timestamp '" + std::string(text) + "'");

    const year_month_day ymd{year{digits(0, 4)}, month{static_cast<unsigned>(digits(5, 2))},
                             day{static_cast<unsigned>(digits(8, 2))}};
    const int hh = digits(11, 2);
    const int mm = digits(14, 2);
    const int ss = s.size() == 19 ? digits(17, 2) : 0;
    if (!ymd.ok() || hh > 23 || mm > 59 || ss > 59)
        throw std::invalid_argument("timestamp out of range '" + std::string(text) + "'");

    const auto days = sys_days{ymd}.time_since_epoch().count();
    return static_cast<EpochMinutes>(days) * 1440 + hh * 60 + mm;
}

std::string format_timestamp(EpochMinutes t)
{
    using namespace std::chrono;
    // floor division so pre-1970 times format correctly
    EpochMinutes days = t / 1440;
    EpochMinutes rem = t % 1440;
    if (rem < 0)
    {
        rem += 1440;
        --days;
    }
    const year_month_day ymd{sys_days{std::chrono::days{days}}};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02lld:%02lld", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<long long>(rem / 60), static_cast<long long>(rem % 60));
    return buf;
}

EventLog parse_records(std::string_view csv_text, const IngestConfig& config)
{
    std::vector<OutageRecord> records;
    CleaningReport report;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    std::vector<std::string> header;
    std::size_t i_start = 0, i_restore = 0, i_customers = 0;

    const auto reject = [&](std::size_t line, std::string reason) {
        if (config.strict)
            throw ParseError(line, reason);
        report.rejections.push_back({line, std::move(reason)});
    };

    while (pos <= csv_text.size())
    {
        const auto eol = csv_text.find('\n', pos);
        const auto raw = csv_text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? csv_text.size() + 1 : eol + 1;
        ++line_no;

        const auto line = trim(raw);
        if (line.empty())
            continue;

        if (header.empty())
        {
            header = split_csv_line(line);
            if (!header.empty() && header.front().starts_with("\xEF\xBB\xBF"))
                header.front().erase(0, 3);
            i_start = find_column(header, config.outage_start_column);
            i_restore = find_column(header, config.restore_time_column);
            i_customers = find_column(header, config.customers_column);
            continue;
        }

        ++report.rows_in;
        const auto fields = split_csv_line(line);
        const auto needed = std::max({i_start, i_restore, i_customers}) + 1;
        // a trailing empty customers field may be dropped by some writers
        if (fields.size() + 1 < needed || (fields.size() + 1 == needed && i_customers + 1 != needed))
        {
            reject(line_no, "expected " + std::to_string(header.size()) + " fields, got " +
                                std::to_string(fields.size()));
            continue;
        }

        OutageRecord rec;
        try
        {
            rec.outage_start = parse_timestamp(fields[i_start]);
            rec.restore_time = parse_timestamp(fields[i_restore]);
        }
        catch (const std::invalid_argument& e)
        {
            reject(line_no, e.what());
            continue;
        }
        if (rec.restore_time < rec.outage_start)
        {
            reject(line_no, "restore precedes outage");
            continue;
        }

        const std::string_view cust = i_customers < fields.size() ? std::string_view(fields[i_customers]) : "";
        bool blank = false;
        if (cust.empty())
        {
            rec.customers_out = 0;
            blank = true;
        }
        else if (!parse_int(cust, rec.customers_out))
        {
            reject(line_no, "customers not an integer '" + std::string(cust) + "'");
            continue;
        }
        else if (rec.customers_out < 0)
        {
            reject(line_no, "negative customers");
            continue;
        }

        if (blank)
            ++report.blanks_zeroed;
        records.push_back(rec);
    }

    if (header.empty())
        throw ParseError(1, "missing header row");

    report.rows_kept = records.size();
    std::ostringstream meta;
    meta << "rows_in=" << report.rows_in << " rows_kept=" << report.rows_kept
         << " blanks_zeroed=" << report.blanks_zeroed << " rejected=" << report.rejections.size();
    return EventLog(std::move(records), meta.str(), std::move(report));
}

std::string to_csv(const EventLog& log, const IngestConfig& config)
{
    std::ostringstream out;
    out << config.outage_start_column << ',' << config.restore_time_column << ',' << config.customers_column
        << '\n';
    for (const auto& r : log.records())
        out << format_timestamp(r.outage_start) << ',' << format_timestamp(r.restore_time) << ','
            << r.customers_out << '\n';
    return out.str();
}

} // namespace reskit
