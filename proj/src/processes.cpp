#include "reskit/processes.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "reskit/error.hpp"

namespace reskit {

namespace {

template <typename T>
std::vector<T> merge_same_time(std::vector<T> items, auto&& value)
{
    std::stable_sort(items.begin(), items.end(), [](const T& a, const T& b) { return a.time < b.time; });
    std::vector<T> merged;
    for (const auto& item : items)
    {
        if (!merged.empty() && merged.back().time == item.time)
            value(merged.back()) += value(item);
        else
            merged.push_back(item);
    }
    std::erase_if(merged, [&](const T& x) { return value(x) == 0; });
    return merged;
}

std::vector<Step> weighted_steps(const std::vector<Minutes>& times, const std::vector<std::int64_t>& customers,
                                 Weight weight)
{
    std::vector<Step> steps;
    steps.reserve(times.size());
    for (std::size_t k = 0; k < times.size(); ++k)
        steps.push_back({times[k], weight == Weight::unit ? 1 : customers.at(k)});
    return steps;
}

} // namespace

StepProcess::StepProcess(std::vector<Step> steps)
{
    for (const auto& s : steps)
        if (s.increment < 0)
            throw std::invalid_argument("step process increments must be nonnegative");
    steps_ = merge_same_time(std::move(steps), [](auto& s) -> auto& { return s.increment; });
}

std::int64_t StepProcess::value_at(Minutes t) const
{
    std::int64_t v = 0;
    for (const auto& s : steps_)
    {
        if (s.time > t)
            break;
        v += s.increment;
    }
    return v;
}

std::int64_t StepProcess::final_value() const noexcept
{
    std::int64_t v = 0;
    for (const auto& s : steps_)
        v += s.increment;
    return v;
}

ResilienceCurve::ResilienceCurve(std::vector<Change> changes)
    : changes_(merge_same_time(std::move(changes), [](auto& c) -> auto& { return c.delta; }))
{
}

std::int64_t ResilienceCurve::value_at(Minutes t) const
{
    std::int64_t v = 0;
    for (const auto& c : changes_)
    {
        if (c.time > t)
            break;
        v += c.delta;
    }
    return v;
}

bool ResilienceCurve::is_valid() const noexcept
{
    std::int64_t v = 0;
    for (const auto& c : changes_)
    {
        v += c.delta;
        if (v > 0)
            return false;
    }
    return v == 0;
}

StepProcess outage_process(const Event& e, Weight weight)
{
    return StepProcess(weighted_steps(e.outage_times, e.customers_out, weight));
}

StepProcess restore_process(const Event& e, Weight weight)
{
    return StepProcess(weighted_steps(e.restore_times, e.customers_restored, weight));
}

ResilienceCurve difference(const StepProcess& restores, const StepProcess& outages)
{
    std::vector<Change> changes;
    changes.reserve(restores.steps().size() + outages.steps().size());
    for (const auto& s : restores.steps())
        changes.push_back({s.time, s.increment});
    for (const auto& s : outages.steps())
        changes.push_back({s.time, -s.increment});
    return ResilienceCurve(std::move(changes));
}

ResilienceCurve resilience_curve(const Event& e, Weight weight)
{
    return difference(restore_process(e, weight), outage_process(e, weight));
}

std::pair<StepProcess, StepProcess> decompose(const ResilienceCurve& curve)
{
    if (!curve.is_valid())
        throw InvalidCurveError("resilience curve goes positive or does not return to zero");
    std::vector<Step> outages;
    std::vector<Step> restores;
    for (const auto& c : curve.changes())
    {
        if (c.delta < 0)
            outages.push_back({c.time, -c.delta});
        else
            restores.push_back({c.time, c.delta});
    }
    return {StepProcess(std::move(outages)), StepProcess(std::move(restores))};
}

CustomerHoursBreakdown customer_hours(const Event& e)
{
    CustomerHoursBreakdown out;
    const auto n = e.n();
    if (n == 0)
        return out;

    // Integral route: -C_cust is constant between change instants.
    const auto curve = resilience_curve(e, Weight::customers);
    std::int64_t level = 0;
    for (std::size_t i = 0; i + 1 < curve.changes().size(); ++i)
    {
        level += curve.changes()[i].delta;
        out.area += static_cast<double>(-level) * (curve.changes()[i + 1].time - curve.changes()[i].time);
    }

    // Rectangle route. tail[j] = sum of customers from position j to n-1.
    std::int64_t restored_tail = 0;
    std::int64_t outaged_tail = 0;
    for (std::size_t j = n; j-- > 1;)
    {
        restored_tail += e.customers_restored[j];
        outaged_tail += e.customers_out[j];
        out.restore_area += static_cast<double>(restored_tail) * (e.restore_times[j] - e.restore_times[j - 1]);
        out.outage_area += static_cast<double>(outaged_tail) * (e.outage_times[j] - e.outage_times[j - 1]);
    }
    restored_tail += e.customers_restored[0];
    out.restore_area += static_cast<double>(restored_tail) * (e.restore_times[0] - e.outage_times[0]);
    return out;
}

std::vector<CurvePoint> curve_table(const Event& e, Weight weight)
{
    const auto o = outage_process(e, weight).steps();
    const auto r = restore_process(e, weight).steps();
    std::vector<CurvePoint> table;
    std::size_t io = 0, ir = 0;
    std::int64_t ov = 0, rv = 0;
    while (io < o.size() || ir < r.size())
    {
        Minutes t = io < o.size() ? o[io].time : r[ir].time;
        if (ir < r.size())
            t = std::min(t, r[ir].time);
        if (io < o.size() && o[io].time == t)
            ov += o[io++].increment;
        if (ir < r.size() && r[ir].time == t)
            rv += r[ir++].increment;
        table.push_back({t, ov, rv, rv - ov});
    }
    return table;
}

} // namespace reskit
