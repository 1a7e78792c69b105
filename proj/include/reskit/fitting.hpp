#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "reskit/error.hpp"
#include "reskit/statistics.hpp"

namespace reskit {

struct ExpTerm
{
    double amplitude = 0;  // minutes
    double decay = 0;      // per outage

    friend bool operator==(const ExpTerm&, const ExpTerm&) = default;
};

/// c + sum_i a_i exp(-b_i n), with decays kept in descending order.
struct ExpFitModel
{
    double constant = 0;
    std::vector<ExpTerm> terms;

    double operator()(double n) const;

    friend bool operator==(const ExpFitModel&, const ExpFitModel&) = default;
};

double evaluate_model(const ExpFitModel& model, double n);

/// Sort terms by decay, fastest first.
void canonicalize(ExpFitModel& model);

struct FitPoint
{
    double n = 0;
    double value = 0;
    double weight = 1;
};

struct FitOptions
{
    std::size_t max_iterations = 500;
    double xtol = 1e-8;
    /// Decay grid for multi-start, as log10 values. Pairs (b1 > b2) are drawn
    /// from this grid for two-term fits.
    std::vector<double> log10_decay_grid{-3.0, -2.5, -2.0, -1.5, -1.0};
};

struct FitResult
{
    ExpFitModel model;
    double rmse = 0;           // weighted
    double initial_rmse = 0;   // best multi-start seed before refinement
    std::size_t iterations = 0;
    bool converged = false;    // the winning run met a stopping test
};

class ConvergenceError : public Error
{
public:
    ConvergenceError(const std::string& what, FitResult best) : Error(what), best_(std::move(best)) {}
    const FitResult& best() const noexcept { return best_; }

private:
    FitResult best_;
};

/// Weighted least-squares fit of c + sum a_i exp(-b_i n), num_terms in {1, 2}.
///
/// Parameters are optimized in log space so c, a_i, b_i stay positive. Every
/// start on the decay grid gets a linear solve for (c, a) followed by
/// Levenberg-Marquardt refinement; the lowest-cost run wins.
///
/// Throws UnderdeterminedFitError with fewer than 2*num_terms + 1 distinct n,
/// and ConvergenceError if no start converges within max_iterations.
FitResult fit_exp_model(std::span<const FitPoint> points, std::size_t num_terms,
                        const FitOptions& options = {});

double weighted_rmse(const ExpFitModel& model, std::span<const FitPoint> points);

enum class FitTarget
{
    mean,
    sd,
};

/// Turn a per-n pool summary into fit points. weighted = use per-n sample
/// counts as weights, otherwise 1. Rows with fewer than min_count samples are
/// skipped.
std::vector<FitPoint> fit_points(std::span<const PoolRow> rows, FitTarget target, bool weighted = true,
                                 std::size_t min_count = 1);

/// Everything the metric formulas consume.
struct StatsBundle
{
    ExpFitModel outage_diff_mean;
    ExpFitModel outage_diff_sd;
    ExpFitModel restore_diff_mean;
    ExpFitModel restore_diff_sd;
    MomentStats restore_delay;
    MomentStats customers;
    std::size_t n_max_valid = 250;
};

/// Built-in reference fits, used when no data is at hand.
StatsBundle reference_bundle();

} // namespace reskit
