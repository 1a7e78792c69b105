#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "reskit/events.hpp"
#include "reskit/fitting.hpp"

namespace reskit {

enum class SimMode
{
    unconstrained,  // independent gaps, R(t) may exceed O(t)
    physical,       // redraw until O(t) - R(t) >= 1 on [o_1, r_n)
};

enum class MarginalFamily
{
    gamma,
    lognormal,
};

enum class CustomerFamily
{
    gamma,     // moment-matched gamma, stochastically rounded to integers
    constant,  // every outage takes round(mean) customers
};

struct SimConfig
{
    std::size_t n = 1;
    std::size_t replicates = 10000;
    std::uint64_t seed = 42;
    SimMode mode = SimMode::unconstrained;
    MarginalFamily marginal_family = MarginalFamily::gamma;
    CustomerFamily customer_family = CustomerFamily::gamma;
    /// 0 = use RESILIENCE_KIT_THREADS or the hardware concurrency.
    std::size_t threads = 0;
};

/// Draw one synthetic event. Gaps are moment-matched to the bundle at cfg.n and
/// o_1 = 0. Unconstrained mode restores customers in a uniform shuffle of
/// outage order. Physical mode redraws until r_k > o_{k+1} for every k < n, so
/// the draw is a single valid event, and has each restore clear a random
/// outage that is already open.
/// Same (seed, replicate_index) always yields the same event.
///
/// Throws InfeasibleConfigError when physical mode rejects 1000 draws in a row.
Event simulate_event(const SimConfig& cfg, const StatsBundle& bundle, std::uint64_t replicate_index);

/// Per-replicate engine seeded from (seed, replicate_index) alone, so replicate
/// k draws the same numbers however the replicates are scheduled.
std::mt19937_64 replicate_engine(std::uint64_t seed, std::uint64_t replicate_index);

/// Nonnegative draw with the given mean and sd. sd == 0 returns mean.
double draw_marginal(MarginalFamily family, double mean, double sd, std::mt19937_64& rng);

struct ReplicateMetrics
{
    double restore_duration = 0;  // minutes
    double event_duration = 0;    // minutes
    double customer_hours = 0;
};

struct EmpiricalMoment
{
    double mean = 0;
    double sd = 0;
    std::optional<double> standard_error;  // absent with a single replicate
};

struct MonteCarloSummary
{
    std::size_t replicates = 0;
    EmpiricalMoment restore_duration;
    EmpiricalMoment event_duration;
    EmpiricalMoment customer_hours;
    std::vector<ReplicateMetrics> per_replicate;
    bool standard_errors_defined() const noexcept { return replicates >= 2; }
};

/// Run cfg.replicates events and return sample moments of D_R, D_E and customer
/// hours. Replicates run in parallel; the result does not depend on thread count.
MonteCarloSummary monte_carlo_metrics(const SimConfig& cfg, const StatsBundle& bundle,
                                      bool keep_per_replicate = false);

} // namespace reskit
