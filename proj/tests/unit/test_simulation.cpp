#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "reskit/error.hpp"
#include "reskit/events.hpp"
#include "reskit/metrics.hpp"
#include "reskit/simulation.hpp"

using namespace reskit;

TEST_SUITE("simulation")
{
    const auto ref = reference_bundle();

    TEST_CASE("n=1 event")
    {
        SimConfig cfg;
        cfg.n = 1;
        const auto e = simulate_event(cfg, ref, 3);
        REQUIRE(e.n() == 1);
        CHECK(e.outage_times[0] == 0);
        CHECK(e.restore_times[0] >= 0);
        CHECK(e.restore_duration() == 0);
    }

    TEST_CASE("same seed and replicate give the same event")
    {
        SimConfig cfg;
        cfg.n = 25;
        CHECK(simulate_event(cfg, ref, 7) == simulate_event(cfg, ref, 7));
        CHECK_FALSE(simulate_event(cfg, ref, 7) == simulate_event(cfg, ref, 8));
        cfg.seed = 43;
        SimConfig other = cfg;
        other.seed = 44;
        CHECK_FALSE(simulate_event(cfg, ref, 7) == simulate_event(other, ref, 7));
    }

    TEST_CASE("thread count does not change results")
    {
        SimConfig cfg;
        cfg.n = 20;
        cfg.replicates = 500;
        cfg.threads = 1;
        const auto a = monte_carlo_metrics(cfg, ref, true);
        cfg.threads = 7;
        const auto b = monte_carlo_metrics(cfg, ref, true);
        CHECK(a.restore_duration.mean == b.restore_duration.mean);
        CHECK(a.customer_hours.sd == b.customer_hours.sd);
        REQUIRE(a.per_replicate.size() == 500);
        CHECK(a.per_replicate[123].event_duration == b.per_replicate[123].event_duration);
    }

    TEST_CASE("single replicate leaves standard errors undefined")
    {
        SimConfig cfg;
        cfg.n = 5;
        cfg.replicates = 1;
        const auto s = monte_carlo_metrics(cfg, ref);
        CHECK_FALSE(s.standard_errors_defined());
        CHECK_FALSE(s.restore_duration.standard_error.has_value());
        cfg.replicates = 0;
        CHECK_THROWS_AS(monte_carlo_metrics(cfg, ref), std::invalid_argument);
    }

    TEST_CASE("marginals are nonnegative and moment matched")
    {
        for (const auto family : {MarginalFamily::gamma, MarginalFamily::lognormal})
        {
            auto rng = replicate_engine(5, 0);
            const int draws = 200000;
            double sum = 0, sum2 = 0;
            for (int i = 0; i < draws; ++i)
            {
                const double x = draw_marginal(family, 58.6, 41.0, rng);
                CHECK(x >= 0);
                sum += x;
                sum2 += x * x;
            }
            const double mean = sum / draws;
            const double sd = std::sqrt((sum2 - draws * mean * mean) / (draws - 1));
            CHECK(std::abs(mean / 58.6 - 1) < 0.01);
            CHECK(std::abs(sd / 41.0 - 1) < 0.01);
        }
    }

    TEST_CASE("unconstrained means and spread at n=50, customer hours at n=10")
    {
        SimConfig cfg;
        cfg.n = 50;
        const auto s = monte_carlo_metrics(cfg, ref);
        const auto dr = restore_duration_stats(50, ref);
        CHECK(std::abs(s.restore_duration.mean - dr.mean) < 3 * *s.restore_duration.standard_error);
        CHECK(std::abs(s.restore_duration.sd / dr.sd - 1) < 0.05);

        cfg.n = 10;
        const auto t = monte_carlo_metrics(cfg, ref);
        const double a = mean_customer_hours(10, ref).mean;
        CHECK(std::abs(t.customer_hours.mean - a) < 3 * *t.customer_hours.standard_error);
    }

    TEST_CASE("physical events are valid and survive extraction")
    {
        SimConfig cfg;
        cfg.n = 30;
        cfg.mode = SimMode::physical;
        std::vector<Event> events;
        std::vector<Interval> records;
        double offset = 0;
        for (std::uint64_t i = 0; i < 40; ++i)
        {
            auto e = simulate_event(cfg, ref, i);
            CHECK_NOTHROW(validate(e));
            for (auto& t : e.outage_times)
                t += offset;
            for (auto& t : e.restore_times)
                t += offset;
            e.id = static_cast<std::int64_t>(i);
            offset = e.end() + 60;
            for (const auto& iv : to_intervals(std::vector<Event>{e}))
                records.push_back(iv);
            events.push_back(e);
        }
        const auto back = extract_events(records);
        REQUIRE(back.size() == events.size());
        for (std::size_t i = 0; i < events.size(); ++i)
        {
            CHECK(back[i].outage_times == events[i].outage_times);
            CHECK(back[i].restore_times == events[i].restore_times);
        }
    }

    TEST_CASE("physical mode gives up on infeasible bundles")
    {
        auto b = ref;
        b.restore_delay = {1, 0.5, 10};
        b.restore_diff_mean = {1, {{0.1, 0.1}}};
        b.restore_diff_sd = {0.1, {{0.1, 0.1}}};
        SimConfig cfg;
        cfg.n = 200;
        cfg.mode = SimMode::physical;
        CHECK_THROWS_AS(simulate_event(cfg, b, 0), InfeasibleConfigError);
    }
}
