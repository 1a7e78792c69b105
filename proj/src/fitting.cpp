#include "reskit/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include <Eigen/Dense>

#include "reskit/parallel.hpp"

namespace reskit {

double ExpFitModel::operator()(double n) const
{
    double v = constant;
    for (const auto& t : terms)
        v += t.amplitude * std::exp(-t.decay * n);
    return v;
}

double evaluate_model(const ExpFitModel& model, double n)
{
    return model(n);
}

void canonicalize(ExpFitModel& model)
{
    std::stable_sort(model.terms.begin(), model.terms.end(),
                     [](const ExpTerm& a, const ExpTerm& b) { return a.decay > b.decay; });
}

double weighted_rmse(const ExpFitModel& model, std::span<const FitPoint> points)
{
    double sw = 0, ss = 0;
    for (const auto& p : points)
    {
        const double r = model(p.n) - p.value;
        ss += p.weight * r * r;
        sw += p.weight;
    }
    return sw > 0 ? std::sqrt(ss / sw) : 0.0;
}

namespace {

// Parameter vector layout: [log c, log a_1, log b_1, log a_2, log b_2, ...].
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

constexpr double kMinLog = -60.0;
constexpr double kMaxLog = 30.0;

ExpFitModel unpack(const Vec& theta, std::size_t num_terms)
{
    ExpFitModel m;
    m.constant = std::exp(theta[0]);
    for (std::size_t i = 0; i < num_terms; ++i)
        m.terms.push_back({std::exp(theta[1 + 2 * i]), std::exp(theta[2 + 2 * i])});
    return m;
}

double cost(const Vec& theta, std::size_t num_terms, std::span<const FitPoint> points)
{
    const auto m = unpack(theta, num_terms);
    double ss = 0;
    for (const auto& p : points)
    {
        const double r = m(p.n) - p.value;
        ss += p.weight * r * r;
    }
    return ss;
}

// Weighted residuals and Jacobian with respect to the log parameters.
void linearize(const Vec& theta, std::size_t num_terms, std::span<const FitPoint> points, Vec& residual, Mat& jac)
{
    const auto m = unpack(theta, num_terms);
    const auto rows = static_cast<Eigen::Index>(points.size());
    residual.resize(rows);
    jac.resize(rows, theta.size());
    for (Eigen::Index i = 0; i < rows; ++i)
    {
        const auto& p = points[static_cast<std::size_t>(i)];
        const double sw = std::sqrt(p.weight);
        residual[i] = sw * (m(p.n) - p.value);
        jac(i, 0) = sw * m.constant;
        for (std::size_t k = 0; k < num_terms; ++k)
        {
            const auto& t = m.terms[k];
            const double e = t.amplitude * std::exp(-t.decay * p.n);
            jac(i, static_cast<Eigen::Index>(1 + 2 * k)) = sw * e;
            jac(i, static_cast<Eigen::Index>(2 + 2 * k)) = -sw * e * t.decay * p.n;
        }
    }
}

// Linear weighted least squares for (c, a_i) with the decays held fixed, the
// seed of one multi-start run. Negative coefficients are lifted to a small
// positive floor so the log parameterization is defined.
Vec seed_for(const std::vector<double>& decays, std::span<const FitPoint> points, double scale)
{
    const auto k = decays.size();
    const auto rows = static_cast<Eigen::Index>(points.size());
    Mat a(rows, static_cast<Eigen::Index>(k + 1));
    Vec y(rows);
    for (Eigen::Index i = 0; i < rows; ++i)
    {
        const auto& p = points[static_cast<std::size_t>(i)];
        const double sw = std::sqrt(p.weight);
        a(i, 0) = sw;
        for (std::size_t j = 0; j < k; ++j)
            a(i, static_cast<Eigen::Index>(j + 1)) = sw * std::exp(-decays[j] * p.n);
        y[i] = sw * p.value;
    }
    const Vec coef = a.colPivHouseholderQr().solve(y);
    const double floor = 1e-6 * scale;
    Vec theta(static_cast<Eigen::Index>(1 + 2 * k));
    theta[0] = std::log(std::max(coef[0], floor));
    for (std::size_t j = 0; j < k; ++j)
    {
        theta[static_cast<Eigen::Index>(1 + 2 * j)] = std::log(std::max(coef[static_cast<Eigen::Index>(j + 1)], floor));
        theta[static_cast<Eigen::Index>(2 + 2 * j)] = std::log(decays[j]);
    }
    return theta;
}

struct Run
{
    Vec theta;
    double cost = std::numeric_limits<double>::infinity();
    double seed_cost = std::numeric_limits<double>::infinity();
    std::size_t iterations = 0;
    bool converged = false;
};

Run levenberg_marquardt(Vec theta, std::size_t num_terms, std::span<const FitPoint> points,
                        const FitOptions& options)
{
    Run run;
    double current = cost(theta, num_terms, points);
    run.seed_cost = current;
    double lambda = 1e-3;
    Vec residual;
    Mat jac;
    bool relinearize = true;
    Mat normal;
    Vec gradient;

    for (run.iterations = 0; run.iterations < options.max_iterations; ++run.iterations)
    {
        if (relinearize)
        {
            linearize(theta, num_terms, points, residual, jac);
            normal = jac.transpose() * jac;
            gradient = jac.transpose() * residual;
            relinearize = false;
            if (current == 0.0 || gradient.lpNorm<Eigen::Infinity>() <= 1e-15 * std::max(current, 1e-300))
            {
                run.converged = true;
                break;
            }
        }

        Mat damped = normal;
        for (Eigen::Index i = 0; i < damped.rows(); ++i)
            damped(i, i) += lambda * std::max(normal(i, i), 1e-12);
        const Eigen::LDLT<Mat> ldlt(damped);
        Vec step = ldlt.solve(-gradient);
        if (ldlt.info() != Eigen::Success || !step.allFinite())
        {
            lambda *= 10;
            continue;
        }

        Vec trial = (theta + step).cwiseMax(kMinLog).cwiseMin(kMaxLog);
        const double trial_cost = cost(trial, num_terms, points);
        const bool small_step = (trial - theta).norm() <= options.xtol * (theta.norm() + options.xtol);

        if (std::isfinite(trial_cost) && trial_cost < current)
        {
            theta = trial;
            current = trial_cost;
            lambda = std::max(lambda / 3, 1e-12);
            relinearize = true;
        }
        else
            lambda = std::min(lambda * 4, 1e16);

        if (small_step)
        {
            run.converged = true;
            ++run.iterations;
            break;
        }
    }

    run.theta = theta;
    run.cost = current;
    return run;
}

FitResult make_result(const Run& run, std::size_t num_terms, std::span<const FitPoint> points, double seed_rmse)
{
    FitResult r;
    r.model = unpack(run.theta, num_terms);
    canonicalize(r.model);
    r.rmse = weighted_rmse(r.model, points);
    r.initial_rmse = seed_rmse;
    r.iterations = run.iterations;
    r.converged = run.converged;
    return r;
}

} // namespace

FitResult fit_exp_model(std::span<const FitPoint> points, std::size_t num_terms, const FitOptions& options)
{
    if (num_terms < 1 || num_terms > 2)
        throw std::invalid_argument("num_terms must be 1 or 2");
    std::set<double> distinct;
    double scale = 0;
    for (const auto& p : points)
    {
        if (p.weight < 0 || !std::isfinite(p.value) || !std::isfinite(p.n))
            throw std::invalid_argument("fit points need finite values and nonnegative weights");
        if (p.weight > 0)
            distinct.insert(p.n);
        scale = std::max(scale, std::abs(p.value));
    }
    if (distinct.size() < 2 * num_terms + 1)
        throw UnderdeterminedFitError("fit with " + std::to_string(num_terms) + " terms needs at least " +
                                      std::to_string(2 * num_terms + 1) + " distinct n, got " +
                                      std::to_string(distinct.size()));
    if (scale == 0)
        scale = 1;

    std::vector<std::vector<double>> starts;
    const auto& grid = options.log10_decay_grid;
    if (num_terms == 1)
        for (const auto g : grid)
            starts.push_back({std::pow(10.0, g)});
    else
        for (std::size_t i = 0; i < grid.size(); ++i)
            for (std::size_t j = i + 1; j < grid.size(); ++j)
                starts.push_back({std::pow(10.0, std::max(grid[i], grid[j])), std::pow(10.0, std::min(grid[i], grid[j]))});

    std::vector<Run> runs(starts.size());
    parallel_for(starts.size(), thread_count(), [&](std::size_t s) {
        runs[s] = levenberg_marquardt(seed_for(starts[s], points, scale), num_terms, points, options);
    });

    double total_weight = 0;
    for (const auto& p : points)
        total_weight += p.weight;
    const auto rmse_of = [&](double c) { return total_weight > 0 ? std::sqrt(c / total_weight) : 0.0; };

    // The lowest-cost run wins even if it ran out of iterations: every run only
    // ever lowers its seed's cost, so this keeps the result no worse than the
    // best seed. Failure means no start met a stopping test at all.
    double best_seed = std::numeric_limits<double>::infinity();
    const Run* best = nullptr;
    bool any_converged = false;
    for (const auto& r : runs)
    {
        best_seed = std::min(best_seed, r.seed_cost);
        if (!best || r.cost < best->cost)
            best = &r;
        any_converged = any_converged || r.converged;
    }

    auto result = make_result(*best, num_terms, points, rmse_of(best_seed));
    if (!any_converged)
        throw ConvergenceError("exponential fit did not converge in " + std::to_string(options.max_iterations) +
                                   " iterations from any start",
                               result);
    return result;
}

std::vector<FitPoint> fit_points(std::span<const PoolRow> rows, FitTarget target, bool weighted, std::size_t min_count)
{
    std::vector<FitPoint> points;
    for (const auto& row : rows)
    {
        if (row.stats.count < min_count)
            continue;
        points.push_back({static_cast<double>(row.n), target == FitTarget::mean ? row.stats.mean : row.stats.sd,
                          weighted ? static_cast<double>(row.stats.count) : 1.0});
    }
    return points;
}

StatsBundle reference_bundle()
{
    StatsBundle b;
    b.outage_diff_mean = {7.45, {{23.3, 0.0388}, {32.2, 0.00391}}};
    b.outage_diff_sd = {25.6, {{19.5, 0.0375}, {30.9, 0.00153}}};
    b.restore_diff_mean = {7.64, {{30.8, 0.0514}, {33.8, 0.00391}}};
    b.restore_diff_sd = {35.3, {{43.7, 0.0224}}};
    // Counts: events with n >= 2 and recorded outages in the source dataset.
    b.restore_delay = {132.0, 92.4, 2617};
    b.customers = {54.0, 180.0, 32291};
    b.n_max_valid = 250;
    return b;
}

} // namespace reskit
