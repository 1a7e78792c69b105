#include <doctest.h>

#include <cmath>
#include <random>

#include "../support/oracles.hpp"
#include "reskit/error.hpp"
#include "reskit/fitting.hpp"

using namespace reskit;

namespace {

std::vector<FitPoint> sample(double c, const std::vector<std::pair<double, double>>& terms, double noise = 0,
                             std::uint64_t seed = 1)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z(0.0, 1.0);
    std::vector<FitPoint> pts;
    for (int n = 2; n <= 250; ++n)
        pts.push_back({double(n), testing::eval(c, terms, n) * (1.0 + noise * z(rng)), 1.0});
    return pts;
}

double max_error(const ExpFitModel& m, double c, const std::vector<std::pair<double, double>>& terms)
{
    double worst = 0;
    for (int n = 2; n <= 250; ++n)
        worst = std::max(worst, std::abs(m(n) - testing::eval(c, terms, n)));
    return worst;
}

} // namespace

TEST_SUITE("fitting")
{
    TEST_CASE("evaluate and canonicalize")
    {
        ExpFitModel m{1.0, {{2.0, 0.01}, {3.0, 0.5}}};
        CHECK(m(0) == doctest::Approx(6.0));
        canonicalize(m);
        CHECK(m.terms[0].decay == 0.5);
        CHECK(evaluate_model(m, 2) == doctest::Approx(1 + 2 * std::exp(-0.02) + 3 * std::exp(-1.0)));
    }

    TEST_CASE("reference bundle values")
    {
        const auto b = reference_bundle();
        CHECK(b.restore_delay.mean == 132.0);
        CHECK(b.restore_delay.sd == 92.4);
        CHECK(b.customers.mean == 54.0);
        CHECK(b.customers.sd == 180.0);
        CHECK(b.n_max_valid == 250);
        const double dr10 = 7.64 + 30.8 * std::exp(-0.514) + 33.8 * std::exp(-0.0391);
        CHECK(b.restore_diff_mean(10) == doctest::Approx(dr10).epsilon(1e-12));
        CHECK(std::abs(b.restore_diff_mean(10) - 58.6) < 0.1);
        CHECK(std::abs(b.restore_diff_sd(100) - 39.9) < 0.1);
        CHECK(b.restore_diff_mean(5000) == doctest::Approx(7.64).epsilon(1e-6));
    }

    TEST_CASE("noiseless two-term recovery")
    {
        const std::vector<std::pair<double, double>> terms{{30.8, 0.0514}, {33.8, 0.00391}};
        const auto r = fit_exp_model(sample(7.64, terms), 2);
        CHECK(r.converged);
        CHECK(max_error(r.model, 7.64, terms) < 0.1);
        CHECK(r.rmse <= r.initial_rmse);
    }

    TEST_CASE("noiseless one-term recovery")
    {
        const std::vector<std::pair<double, double>> terms{{43.7, 0.0224}};
        const auto r = fit_exp_model(sample(35.3, terms), 1);
        CHECK(max_error(r.model, 35.3, terms) < 0.1);
        CHECK(r.model.terms[0].decay == doctest::Approx(0.0224).epsilon(1e-4));
    }

    TEST_CASE("constant data")
    {
        std::vector<FitPoint> pts;
        for (int n = 2; n <= 60; ++n)
            pts.push_back({double(n), 12.5, 1});
        const auto r = fit_exp_model(pts, 1);
        for (int n = 2; n <= 60; ++n)
            CHECK(r.model(n) == doctest::Approx(12.5).epsilon(1e-6));
        CHECK(r.model.terms[0].amplitude * std::exp(-r.model.terms[0].decay * 2) < 1e-3);
    }

    TEST_CASE("errors")
    {
        const std::vector<FitPoint> few{{2, 1, 1}, {3, 1, 1}, {4, 1, 1}, {5, 1, 1}};
        CHECK_THROWS_AS(fit_exp_model(few, 2), UnderdeterminedFitError);
        CHECK_NOTHROW(fit_exp_model(few, 1));
        CHECK_THROWS_AS(fit_exp_model(few, 3), std::invalid_argument);
        CHECK_THROWS_AS(fit_exp_model(few, 0), std::invalid_argument);
        // Repeated n does not count toward the distinct-point requirement.
        const std::vector<FitPoint> dup{{2, 1, 1}, {2, 2, 1}, {3, 1, 1}, {3, 2, 1}};
        CHECK_THROWS_AS(fit_exp_model(dup, 1), UnderdeterminedFitError);
    }

    TEST_CASE("fit points from pool rows")
    {
        const std::vector<PoolRow> rows{{2, {10, 3, 40}}, {3, {8, 2, 1}}, {4, {6, 1, 5}}};
        const auto w = fit_points(rows, FitTarget::mean);
        REQUIRE(w.size() == 3);
        CHECK(w[0].weight == 40);
        const auto u = fit_points(rows, FitTarget::sd, false, 2);
        REQUIRE(u.size() == 2);
        CHECK(u[1].value == 1);
        CHECK(u[1].weight == 1);
    }

    TEST_CASE("weighted rmse by hand")
    {
        const ExpFitModel m{1.0, {{1.0, 1.0}}};
        const std::vector<FitPoint> pts{{0, 3, 1}, {0, 2, 3}};
        // residuals 1 and 0, weights 1 and 3
        CHECK(weighted_rmse(m, pts) == doctest::Approx(std::sqrt(1.0 / 4.0)));
    }

    TEST_CASE("property: scale equivariance")
    {
        const std::vector<std::pair<double, double>> terms{{23.3, 0.0388}, {32.2, 0.00391}};
        const auto pts = sample(7.45, terms, 0.01, 9);
        const auto base = fit_exp_model(pts, 2).model;
        for (const double k : {0.5, 3.0, 60.0})
        {
            auto scaled = pts;
            for (auto& p : scaled)
                p.value *= k;
            const auto m = fit_exp_model(scaled, 2).model;
            CHECK(m.constant == doctest::Approx(k * base.constant).epsilon(1e-4));
            for (std::size_t i = 0; i < 2; ++i)
            {
                CHECK(m.terms[i].amplitude == doctest::Approx(k * base.terms[i].amplitude).epsilon(1e-4));
                CHECK(m.terms[i].decay == doctest::Approx(base.terms[i].decay).epsilon(1e-4));
            }
        }
    }

    TEST_CASE("property: refinement never worsens the seed and models decrease in n")
    {
        std::mt19937_64 rng(13);
        std::uniform_real_distribution<double> u(0, 1);
        for (int trial = 0; trial < 20; ++trial)
        {
            const double c = 5 + 30 * u(rng);
            const std::vector<std::pair<double, double>> terms{{5 + 40 * u(rng), 0.02 + 0.1 * u(rng)},
                                                               {5 + 40 * u(rng), 0.001 + 0.01 * u(rng)}};
            auto pts = sample(c, terms, 0.03, trial);
            for (auto& p : pts)
                p.weight = 1 + (rng() % 50);
            const auto r = fit_exp_model(pts, 2);
            CHECK(r.rmse <= r.initial_rmse * (1 + 1e-12));
            CHECK(r.rmse == doctest::Approx(weighted_rmse(r.model, pts)));
            bool positive = r.model.terms[0].amplitude > 0 && r.model.terms[1].amplitude > 0;
            if (positive)
                for (int n = 1; n < 300; ++n)
                    CHECK(r.model(n + 1) < r.model(n));
        }
    }
}
