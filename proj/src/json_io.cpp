#include "reskit/json_io.hpp"

#include <cstdio>

#include "reskit/error.hpp"
#include "reskit/processes.hpp"

namespace reskit {

using nlohmann::json;

void to_json(json& j, const Rejection& r)
{
    j = json{{"line", r.line}, {"reason", r.reason}};
}

void to_json(json& j, const CleaningReport& r)
{
    j = json{{"rows_in", r.rows_in},
             {"rows_kept", r.rows_kept},
             {"blanks_zeroed", r.blanks_zeroed},
             {"rejections", r.rejections}};
}

void to_json(json& j, const ExpFitModel& m)
{
    j = json{{"c", m.constant}, {"terms", json::array()}};
    for (const auto& t : m.terms)
        j["terms"].push_back({{"a", t.amplitude}, {"b", t.decay}});
}

void from_json(const json& j, ExpFitModel& m)
{
    m.constant = j.at("c").get<double>();
    m.terms.clear();
    for (const auto& t : j.at("terms"))
        m.terms.push_back({t.at("a").get<double>(), t.at("b").get<double>()});
    if (m.terms.empty() || m.terms.size() > 2)
        throw Error("model must have 1 or 2 exponential terms");
    for (const auto& t : m.terms)
        if (!(t.decay > 0) || t.amplitude < 0)
            throw Error("model terms need a >= 0 and b > 0");
    if (m.constant < 0)
        throw Error("model constant must be nonnegative");
    canonicalize(m);
}

void to_json(json& j, const MomentStats& m)
{
    j = json{{"mean", m.mean}, {"sd", m.sd}, {"count", m.count}};
}

void from_json(const json& j, MomentStats& m)
{
    m.mean = j.at("mean").get<double>();
    m.sd = j.at("sd").get<double>();
    m.count = j.value("count", std::size_t{1});
    if (m.sd < 0 || m.count < 1)
        throw Error("moment stats need sd >= 0 and count >= 1");
}

void to_json(json& j, const StatsBundle& b)
{
    j = json{{"model_do_mean", b.outage_diff_mean}, {"model_do_sd", b.outage_diff_sd},
             {"model_dr_mean", b.restore_diff_mean}, {"model_dr_sd", b.restore_diff_sd},
             {"dr0", b.restore_delay},           {"customers", b.customers},
             {"n_max_valid", b.n_max_valid}};
}

void from_json(const json& j, StatsBundle& b)
{
    b.outage_diff_mean = j.at("model_do_mean").get<ExpFitModel>();
    b.outage_diff_sd = j.at("model_do_sd").get<ExpFitModel>();
    b.restore_diff_mean = j.at("model_dr_mean").get<ExpFitModel>();
    b.restore_diff_sd = j.at("model_dr_sd").get<ExpFitModel>();
    b.restore_delay = j.at("dr0").get<MomentStats>();
    b.customers = j.at("customers").get<MomentStats>();
    b.n_max_valid = j.value("n_max_valid", std::size_t{250});
    if (b.n_max_valid < 2)
        throw Error("n_max_valid must be at least 2");
}

namespace {

json optional_number(const std::optional<double>& v)
{
    return v ? json(*v) : json(nullptr);
}

} // namespace

void to_json(json& j, const MetricsPrediction& p)
{
    j = json{{"n", p.n},
             {"dr_mean", p.dr_mean},
             {"dr_sd", p.dr_sd},
             {"de_mean", p.de_mean},
             {"de_sd", p.de_sd},
             {"lambda_o", optional_number(p.rate_outage)},
             {"lambda_r", optional_number(p.rate_restore)},
             {"A_mean", p.customer_hours_mean},
             {"dr_percentile", optional_number(p.dr_percentile)},
             {"percentile", p.percentile},
             {"completion", p.completion},
             {"extrapolated", p.extrapolated},
             {"warning", p.warning ? json(*p.warning) : json(nullptr)}};
}

void to_json(json& j, const EmpiricalMoment& m)
{
    j = json{{"mean", m.mean}, {"sd", m.sd}, {"se", optional_number(m.standard_error)}};
}

json event_json(const Event& e)
{
    json j{{"id", e.id},
           {"n", e.n()},
           {"o", e.outage_times},
           {"r", e.restore_times},
           {"c_out", e.customers_out},
           {"c_res", e.customers_restored},
           {"duration_min", e.duration()},
           {"overlap_fraction", nullptr},
           {"customer_hours", customer_hours(e).customer_hours()}};
    if (e.n() >= 2 && e.duration() > 0)
        j["overlap_fraction"] = overlap_fraction(e);
    return j;
}

std::string bundle_hash(const StatsBundle& bundle)
{
    const auto text = json(bundle).dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const unsigned char c : text)
    {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace reskit
