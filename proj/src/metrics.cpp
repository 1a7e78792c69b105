#include "reskit/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "reskit/error.hpp"

namespace reskit {

namespace {

// Returns true when n lies past the validated range (and that is allowed).
bool check_range(std::size_t n, std::size_t min_n, const StatsBundle& bundle, RangePolicy policy)
{
    if (n < min_n)
        throw std::invalid_argument("n must be at least " + std::to_string(min_n) + " (got " + std::to_string(n) + ")");
    if (n <= bundle.n_max_valid)
        return false;
    if (!policy.allow_extrapolation)
        throw OutOfRangeError("n=" + std::to_string(n) + " is outside the validated range [1, " +
                              std::to_string(bundle.n_max_valid) + "]; allow extrapolation to override");
    return true;
}

// ceil(q n - 1), guarded against q n landing a hair above an integer.
std::size_t completed_gaps(std::size_t n, double q)
{
    const double m = std::ceil(q * static_cast<double>(n) - 1.0 - 1e-9);
    return m < 1 ? 0 : static_cast<std::size_t>(m);
}

} // namespace

DurationStats restore_duration_stats(std::size_t n, const StatsBundle& bundle, double completion, RangePolicy policy)
{
    if (!(completion > 0 && completion <= 1))
        throw std::invalid_argument("completion fraction must be in (0, 1]");
    DurationStats out;
    out.extrapolated = check_range(n, 1, bundle, policy);
    const auto m = completion == 1.0 ? n - 1 : completed_gaps(n, completion);
    if (m == 0)
        return out;
    const auto nd = static_cast<double>(n);
    out.mean = static_cast<double>(m) * bundle.restore_diff_mean(nd);
    out.sd = std::sqrt(static_cast<double>(m)) * bundle.restore_diff_sd(nd);
    return out;
}

DurationStats event_duration_stats(std::size_t n, const StatsBundle& bundle, RangePolicy policy)
{
    const auto dr = restore_duration_stats(n, bundle, 1.0, policy);
    const auto& delay = bundle.restore_delay;
    return {delay.mean + dr.mean, std::sqrt(delay.sd * delay.sd + dr.sd * dr.sd), dr.extrapolated};
}

Rates rates(std::size_t n, const StatsBundle& bundle, RangePolicy policy)
{
    Rates out;
    out.extrapolated = check_range(n, 2, bundle, policy);
    const auto nd = static_cast<double>(n);
    out.outage = 1.0 / bundle.outage_diff_mean(nd);
    out.restore = 1.0 / bundle.restore_diff_mean(nd);
    return out;
}

CustomerHours mean_customer_hours(std::size_t n, const StatsBundle& bundle, RangePolicy policy)
{
    CustomerHours out;
    out.extrapolated = check_range(n, 1, bundle, policy);
    const auto nd = static_cast<double>(n);
    const double c = bundle.customers.mean;
    const double dr = bundle.restore_diff_mean(nd);
    const double dout = bundle.outage_diff_mean(nd);
    const double pairs = 0.5 * nd * (nd - 1.0);

    const double minutes = nd * c * bundle.restore_delay.mean + pairs * c * (dr - dout);
    const double event_mean = bundle.restore_delay.mean + (nd - 1.0) * dr;
    const double alt_minutes = nd * c * event_mean - pairs * c * (dr + dout);

    out.mean = minutes / 60.0;
    out.alternative = alt_minutes / 60.0;
    const double scale = std::abs(nd * c * event_mean) + std::abs(pairs * c * (dr + dout));
    if (std::abs(minutes - alt_minutes) > 1e-12 * scale + 1e-300)
        throw NumericalError("customer-hour forms disagree at n=" + std::to_string(n));
    if (out.mean < 0)
        out.warning = "mean customer hours negative at n=" + std::to_string(n) +
                      ": mean restore gap is well below mean outage gap, the models are inconsistent here";
    return out;
}

double restore_duration_percentile(std::size_t n, const StatsBundle& bundle, double p, RangePolicy policy)
{
    if (n < 2)
        throw std::invalid_argument("restore duration percentile needs n >= 2");
    const auto dr = restore_duration_stats(n, bundle, 1.0, policy);
    return gamma_quantile(gamma_from_moments(dr.mean, dr.sd), p);
}

MetricsPrediction predict(std::size_t n, const StatsBundle& bundle, const PredictOptions& options)
{
    MetricsPrediction out;
    out.n = n;
    out.percentile = options.percentile;
    out.completion = options.completion;

    const auto dr = restore_duration_stats(n, bundle, options.completion, options.range);
    out.dr_mean = dr.mean;
    out.dr_sd = dr.sd;
    const auto de = event_duration_stats(n, bundle, options.range);
    out.de_mean = de.mean;
    out.de_sd = de.sd;
    const auto hours = mean_customer_hours(n, bundle, options.range);
    out.customer_hours_mean = hours.mean;
    out.warning = hours.warning;
    out.extrapolated = dr.extrapolated;

    if (n >= 2)
    {
        const auto r = rates(n, bundle, options.range);
        out.rate_outage = r.outage;
        out.rate_restore = r.restore;
        out.dr_percentile = restore_duration_percentile(n, bundle, options.percentile, options.range);
    }
    return out;
}

} // namespace reskit
