#include "reskit/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "reskit/error.hpp"
#include "reskit/parallel.hpp"
#include "reskit/processes.hpp"

namespace reskit {

namespace {

constexpr std::size_t kPhysicalAttempts = 1000;

std::int64_t draw_customers(const SimConfig& cfg, const MomentStats& customers, std::mt19937_64& rng)
{
    if (cfg.customer_family == CustomerFamily::constant || customers.sd <= 0)
        return std::max<std::int64_t>(0, std::llround(customers.mean));
    const double x = draw_marginal(MarginalFamily::gamma, customers.mean, customers.sd, rng);
    // Stochastic rounding keeps the integer draw's mean equal to the gamma mean.
    const double whole = std::floor(x);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return static_cast<std::int64_t>(whole) + (u(rng) < x - whole ? 1 : 0);
}

EmpiricalMoment summarize(const std::vector<ReplicateMetrics>& reps, double ReplicateMetrics::*field)
{
    EmpiricalMoment m;
    const auto count = reps.size();
    if (count == 0)
        return m;
    double sum = 0;
    for (const auto& r : reps)
        sum += r.*field;
    m.mean = sum / static_cast<double>(count);
    if (count >= 2)
    {
        double ss = 0;
        for (const auto& r : reps)
            ss += (r.*field - m.mean) * (r.*field - m.mean);
        m.sd = std::sqrt(ss / static_cast<double>(count - 1));
        m.standard_error = m.sd / std::sqrt(static_cast<double>(count));
    }
    return m;
}

} // namespace

std::mt19937_64 replicate_engine(std::uint64_t seed, std::uint64_t replicate_index)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(replicate_index), static_cast<std::uint32_t>(replicate_index >> 32),
                      0x5245534bu};
    return std::mt19937_64(seq);
}

double draw_marginal(MarginalFamily family, double mean, double sd, std::mt19937_64& rng)
{
    if (!(mean > 0))
        return 0.0;
    if (!(sd > 0))
        return mean;
    const double cv2 = (sd / mean) * (sd / mean);
    if (family == MarginalFamily::gamma)
    {
        std::gamma_distribution<double> g(1.0 / cv2, mean * cv2);
        return g(rng);
    }
    const double s2 = std::log1p(cv2);
    std::lognormal_distribution<double> ln(std::log(mean) - 0.5 * s2, std::sqrt(s2));
    return ln(rng);
}

Event simulate_event(const SimConfig& cfg, const StatsBundle& bundle, std::uint64_t replicate_index)
{
    if (cfg.n < 1)
        throw std::invalid_argument("simulation needs n >= 1");
    const auto n = cfg.n;
    const auto nd = static_cast<double>(n);
    const double do_mean = bundle.outage_diff_mean(nd);
    const double do_sd = bundle.outage_diff_sd(nd);
    const double dr_mean = bundle.restore_diff_mean(nd);
    const double dr_sd = bundle.restore_diff_sd(nd);
    auto rng = replicate_engine(cfg.seed, replicate_index);

    Event e;
    e.id = static_cast<std::int64_t>(replicate_index);
    for (std::size_t attempt = 0; attempt < kPhysicalAttempts; ++attempt)
    {
        e.outage_times.assign(n, 0.0);
        e.restore_times.assign(n, 0.0);
        e.customers_out.assign(n, 0);
        for (std::size_t k = 1; k < n; ++k)
            e.outage_times[k] = e.outage_times[k - 1] + draw_marginal(cfg.marginal_family, do_mean, do_sd, rng);
        e.restore_times[0] =
            e.outage_times[0] +
            draw_marginal(cfg.marginal_family, bundle.restore_delay.mean, bundle.restore_delay.sd, rng);
        for (std::size_t k = 1; k < n; ++k)
            e.restore_times[k] = e.restore_times[k - 1] + draw_marginal(cfg.marginal_family, dr_mean, dr_sd, rng);
        for (auto& c : e.customers_out)
            c = draw_customers(cfg, bundle.customers, rng);

        if (cfg.mode == SimMode::unconstrained)
        {
            e.customers_restored = e.customers_out;
            std::shuffle(e.customers_restored.begin(), e.customers_restored.end(), rng);
            return e;
        }

        // Outstanding count must stay positive until r_n: r_k > o_{k+1}.
        bool feasible = true;
        for (std::size_t k = 0; k + 1 < n && feasible; ++k)
            feasible = e.restore_times[k] > e.outage_times[k + 1];
        if (!feasible)
            continue;

        // Each restore clears a uniformly chosen outage among those already out.
        e.customers_restored.assign(n, 0);
        std::vector<std::int64_t> open;
        std::size_t io = 0;
        for (std::size_t k = 0; k < n; ++k)
        {
            while (io < n && e.outage_times[io] <= e.restore_times[k])
                open.push_back(e.customers_out[io++]);
            std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
            const auto j = pick(rng);
            e.customers_restored[k] = open[j];
            open[j] = open.back();
            open.pop_back();
        }
        return e;
    }
    throw InfeasibleConfigError("physical-mode simulation rejected " + std::to_string(kPhysicalAttempts) +
                                " consecutive draws at n=" + std::to_string(n));
}

MonteCarloSummary monte_carlo_metrics(const SimConfig& cfg, const StatsBundle& bundle, bool keep_per_replicate)
{
    if (cfg.replicates < 1)
        throw std::invalid_argument("simulation needs at least one replicate");
    std::vector<ReplicateMetrics> reps(cfg.replicates);
    parallel_for(cfg.replicates, thread_count(cfg.threads), [&](std::size_t i) {
        const auto e = simulate_event(cfg, bundle, i);
        reps[i] = {e.restore_duration(), e.duration(), customer_hours(e).customer_hours()};
    });

    MonteCarloSummary out;
    out.replicates = cfg.replicates;
    out.restore_duration = summarize(reps, &ReplicateMetrics::restore_duration);
    out.event_duration = summarize(reps, &ReplicateMetrics::event_duration);
    out.customer_hours = summarize(reps, &ReplicateMetrics::customer_hours);
    if (keep_per_replicate)
        out.per_replicate = std::move(reps);
    return out;
}

} // namespace reskit
