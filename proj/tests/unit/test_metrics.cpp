#include <doctest.h>

#include <cmath>

#include "../support/oracles.hpp"
#include "reskit/error.hpp"
#include "reskit/gamma.hpp"
#include "reskit/metrics.hpp"

using namespace reskit;
using testing::eval;

namespace {

const std::vector<std::pair<double, double>> kDrMean{{30.8, 0.0514}, {33.8, 0.00391}};
const std::vector<std::pair<double, double>> kDoMean{{23.3, 0.0388}, {32.2, 0.00391}};
const std::vector<std::pair<double, double>> kDrSd{{43.7, 0.0224}};

double dr_mean(double n)
{
    return eval(7.64, kDrMean, n);
}

} // namespace

TEST_SUITE("gamma")
{
    TEST_CASE("method of moments")
    {
        const auto g = gamma_from_moments(1, 1);
        CHECK(g.shape == doctest::Approx(1));
        CHECK(g.rate == doctest::Approx(1));
        const auto h = gamma_from_moments(527, 211);
        CHECK(h.shape == doctest::Approx(6.238).epsilon(1e-3));
        CHECK(h.rate == doctest::Approx(0.011836).epsilon(1e-4));
        CHECK(h.mean() == doctest::Approx(527).epsilon(1e-12));
        CHECK(h.sd() == doctest::Approx(211).epsilon(1e-12));
        CHECK_THROWS_AS(gamma_from_moments(0, 1), DegenerateDistributionError);
        CHECK_THROWS_AS(gamma_from_moments(1, 0), DegenerateDistributionError);
        CHECK_THROWS_AS(gamma_from_moments(-1, 2), DegenerateDistributionError);
    }

    TEST_CASE("exponential quantiles")
    {
        CHECK(std::abs(gamma_quantile({1, 1}, 0.95) - 2.995732) < 1e-6);
        CHECK(gamma_quantile({1, 1}, 0.95) == doctest::Approx(-std::log(0.05)).epsilon(1e-12));
        CHECK(gamma_quantile({1, 2}, 0.5) == doctest::Approx(std::log(2.0) / 2).epsilon(1e-12));
        CHECK_THROWS_AS(gamma_quantile({1, 1}, 0), std::invalid_argument);
        CHECK_THROWS_AS(gamma_quantile({1, 1}, 1), std::invalid_argument);
    }

    TEST_CASE("quantile at the moment-matched restore duration matches quadrature")
    {
        const double q = gamma_quantile({6.238, 0.011836}, 0.95);
        CHECK(q == doctest::Approx(testing::oracle_gamma_quantile(6.238, 0.011836, 0.95)).epsilon(1e-8));
        CHECK(q == doctest::Approx(915.1).epsilon(1e-3));
    }

    TEST_CASE("cdf complements and pdf")
    {
        for (const double a : {0.3, 1.0, 4.5, 80.0})
            for (const double x : {0.01, 0.5, 3.0, 90.0})
                CHECK(regularized_gamma_p(a, x) + regularized_gamma_q(a, x) == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(gamma_pdf({1, 2}, 0.5) == doctest::Approx(2 * std::exp(-1.0)));
        CHECK(gamma_cdf({3, 0.5}, 4) == doctest::Approx(testing::quadrature_gamma_cdf(3, 0.5, 4)).epsilon(1e-10));
    }

    TEST_CASE("quantile round trip across a wide shape range")
    {
        for (const double a : {1e-3, 0.05, 0.7, 2.0, 30.0, 1e3, 1e6})
            for (const double p : {1e-6, 0.05, 0.5, 0.95, 0.999999})
            {
                const GammaParams g{a, 0.37};
                const double x = gamma_quantile(g, p);
                CHECK(x >= 0);
                if (x > 0)
                    CHECK(gamma_cdf(g, x) == doctest::Approx(p).epsilon(1e-8));
            }
    }

    TEST_CASE("property: quantile increases in p and in the mean at fixed cv")
    {
        for (const double cv : {0.2, 0.6, 1.5})
        {
            double prev_p = 0;
            for (double p = 0.01; p < 1; p += 0.01)
            {
                const double x = gamma_quantile(gamma_from_moments(100, 100 * cv), p);
                CHECK(x > prev_p);
                prev_p = x;
            }
            double prev_m = 0;
            for (double m = 1; m < 5000; m *= 1.7)
            {
                const double x = gamma_quantile(gamma_from_moments(m, m * cv), 0.95);
                CHECK(x > prev_m);
                prev_m = x;
            }
        }
    }
}

TEST_SUITE("metrics")
{
    const auto ref = reference_bundle();

    TEST_CASE("restore duration at n=10 and n=100")
    {
        const auto d10 = restore_duration_stats(10, ref);
        CHECK(std::abs(d10.mean - 527) < 1);
        CHECK(std::abs(d10.sd - 211) < 1);
        CHECK(d10.mean == doctest::Approx(9 * dr_mean(10)).epsilon(1e-14));
        CHECK(d10.sd == doctest::Approx(3 * eval(35.3, kDrSd, 10)).epsilon(1e-14));
        const auto d100 = restore_duration_stats(100, ref);
        CHECK(std::abs(d100.mean - 3038) < 1);
        CHECK(std::abs(d100.sd - 397) < 1);
        CHECK(restore_duration_stats(1, ref).mean == 0);
        CHECK(restore_duration_stats(1, ref).sd == 0);
    }

    TEST_CASE("partial completion")
    {
        const auto d = restore_duration_stats(100, ref, 0.95);
        CHECK(d.mean == doctest::Approx(94 * dr_mean(100)).epsilon(1e-14));
        CHECK(std::abs(d.mean - 2884) < 1);
        CHECK(d.sd == doctest::Approx(std::sqrt(94.0) * eval(35.3, kDrSd, 100)).epsilon(1e-14));
        // q n an exact integer: ceil(0.5 * 10 - 1) = 4
        CHECK(restore_duration_stats(10, ref, 0.5).mean == doctest::Approx(4 * dr_mean(10)));
        CHECK(restore_duration_stats(2, ref, 0.3).mean == 0);
        CHECK_THROWS_AS(restore_duration_stats(10, ref, 0), std::invalid_argument);
        CHECK_THROWS_AS(restore_duration_stats(10, ref, 1.2), std::invalid_argument);
    }

    TEST_CASE("event duration")
    {
        const auto e10 = event_duration_stats(10, ref);
        CHECK(std::abs(e10.mean - 660) < 1);
        CHECK(std::abs(e10.sd - 230) < 1);
        const auto e100 = event_duration_stats(100, ref);
        CHECK(std::abs(e100.mean - 3171) < 2);
        CHECK(std::abs(e100.sd - 408) < 2);
        const auto e1 = event_duration_stats(1, ref);
        CHECK(e1.mean == 132);
        CHECK(e1.sd == doctest::Approx(92.4));
    }

    TEST_CASE("rates")
    {
        const auto r = rates(10, ref);
        CHECK(r.restore == doctest::Approx(1 / dr_mean(10)));
        CHECK(r.outage == doctest::Approx(1 / eval(7.45, kDoMean, 10)));
        CHECK(r.restore == doctest::Approx(0.01707).epsilon(1e-3));
        CHECK(r.outage == doctest::Approx(0.01844).epsilon(1e-3));
        CHECK_THROWS_AS(rates(1, ref), std::invalid_argument);
        double prev_o = 0, prev_r = 0;
        for (std::size_t n = 2; n <= 250; ++n)
        {
            const auto x = rates(n, ref);
            CHECK(x.outage > prev_o);
            CHECK(x.restore > prev_r);
            prev_o = x.outage;
            prev_r = x.restore;
        }
    }

    TEST_CASE("mean customer hours")
    {
        CHECK(mean_customer_hours(1, ref).mean == doctest::Approx(118.8).epsilon(1e-14));
        const auto h10 = mean_customer_hours(10, ref);
        const double oracle = (10 * 54.0 * 132.0 + 45 * 54.0 * (dr_mean(10) - eval(7.45, kDoMean, 10))) / 60.0;
        CHECK(h10.mean == doctest::Approx(oracle).epsilon(1e-13));
        CHECK(std::abs(h10.mean - 1364) < 1);
        for (std::size_t n = 1; n <= 250; ++n)
        {
            const auto h = mean_customer_hours(n, ref);
            CHECK(h.mean == doctest::Approx(h.alternative).epsilon(1e-9));
        }
    }

    TEST_CASE("negative customer hours carry a warning")
    {
        auto b = ref;
        b.outage_diff_mean = {500, {{1, 0.1}}};
        const auto h = mean_customer_hours(50, b);
        CHECK(h.mean < 0);
        CHECK(h.warning.has_value());
    }

    TEST_CASE("restore duration percentile")
    {
        const double p95 = restore_duration_percentile(10, ref);
        const auto d = restore_duration_stats(10, ref);
        const double a = (d.mean / d.sd) * (d.mean / d.sd), b = d.mean / (d.sd * d.sd);
        CHECK(p95 == doctest::Approx(testing::oracle_gamma_quantile(a, b, 0.95)).epsilon(1e-8));
        CHECK(std::abs(p95 - 914.56) < 0.01);
        CHECK(restore_duration_percentile(10, ref, 0.5) < d.mean);
        CHECK_THROWS_AS(restore_duration_percentile(1, ref), std::invalid_argument);
        double prev = 0;
        for (std::size_t n = 2; n <= 250; ++n)
        {
            const double x = restore_duration_percentile(n, ref);
            CHECK(x >= prev);
            prev = x;
        }
    }

    TEST_CASE("validated range")
    {
        CHECK_THROWS_AS(restore_duration_stats(251, ref), OutOfRangeError);
        CHECK_THROWS_AS(predict(300, ref), OutOfRangeError);
        PredictOptions opts;
        opts.range.allow_extrapolation = true;
        const auto p = predict(300, ref, opts);
        CHECK(p.extrapolated);
        CHECK_FALSE(predict(250, ref).extrapolated);
        CHECK_THROWS_AS(restore_duration_stats(0, ref), std::invalid_argument);
    }

    TEST_CASE("predict composes the pieces")
    {
        const auto p = predict(10, ref);
        CHECK(p.dr_mean == restore_duration_stats(10, ref).mean);
        CHECK(p.de_sd == event_duration_stats(10, ref).sd);
        CHECK(*p.rate_restore == rates(10, ref).restore);
        CHECK(*p.dr_percentile == restore_duration_percentile(10, ref));
        const auto one = predict(1, ref);
        CHECK_FALSE(one.rate_outage.has_value());
        CHECK_FALSE(one.dr_percentile.has_value());
        CHECK(one.de_mean == 132);
    }

    TEST_CASE("property: algebraic identities over the validated range")
    {
        for (std::size_t n = 1; n <= 250; ++n)
        {
            const auto dr = restore_duration_stats(n, ref);
            const auto de = event_duration_stats(n, ref);
            CHECK(de.mean == doctest::Approx(dr.mean + 132).epsilon(1e-12));
            CHECK(de.sd * de.sd == doctest::Approx(92.4 * 92.4 + dr.sd * dr.sd).epsilon(1e-12));
        }
    }
}
