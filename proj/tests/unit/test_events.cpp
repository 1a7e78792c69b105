#include <doctest.h>

#include <algorithm>
#include <random>

#include "../support/oracles.hpp"
#include "reskit/error.hpp"
#include "reskit/events.hpp"
#include "reskit/processes.hpp"

using namespace reskit;

namespace {

Event make(std::vector<Minutes> o, std::vector<Minutes> r)
{
    Event e;
    e.outage_times = std::move(o);
    e.restore_times = std::move(r);
    e.customers_out.assign(e.outage_times.size(), 1);
    e.customers_restored.assign(e.restore_times.size(), 1);
    return e;
}

} // namespace

TEST_SUITE("events")
{
    TEST_CASE("disjoint records give two events")
    {
        const std::vector<Interval> iv{{0, 10, 5}, {20, 30, 3}};
        const auto ev = extract_events(iv);
        REQUIRE(ev.size() == 2);
        CHECK(ev[0].n() == 1);
        CHECK(ev[1].n() == 1);
        CHECK(ev[1].id == 1);
    }

    TEST_CASE("overlapping records merge")
    {
        const std::vector<Interval> iv{{0, 8, 2}, {5, 12, 4}};
        const auto ev = extract_events(iv);
        REQUIRE(ev.size() == 1);
        CHECK(ev[0].outage_times == std::vector<Minutes>{0, 5});
        CHECK(ev[0].restore_times == std::vector<Minutes>{8, 12});
        CHECK(ev[0].customers_out == std::vector<std::int64_t>{2, 4});
        CHECK(ev[0].customers_restored == std::vector<std::int64_t>{2, 4});
    }

    TEST_CASE("sweep count 1,2,1,0,1,0")
    {
        const std::vector<Interval> iv{{0, 10, 1}, {5, 12, 1}, {20, 25, 1}};
        const auto ev = extract_events(iv);
        REQUIRE(ev.size() == 2);
        CHECK(ev[0].outage_times == std::vector<Minutes>{0, 5});
        CHECK(ev[0].restore_times == std::vector<Minutes>{10, 12});
        CHECK(ev[1].outage_times == std::vector<Minutes>{20});
        CHECK(ev[1].restore_times == std::vector<Minutes>{25});
    }

    TEST_CASE("restore closing to zero at the same instant as a new outage splits events")
    {
        const std::vector<Interval> iv{{0, 10, 1}, {10, 15, 1}};
        const auto ev = extract_events(iv);
        REQUIRE(ev.size() == 2);
        CHECK(ev[1].start() == 10);
    }

    TEST_CASE("zero-duration record stands alone or joins an open event")
    {
        const std::vector<Interval> alone{{5, 5, 3}};
        const auto a = extract_events(alone);
        REQUIRE(a.size() == 1);
        CHECK(a[0].duration() == 0);

        const std::vector<Interval> inside{{0, 10, 1}, {4, 4, 2}};
        const auto b = extract_events(inside);
        REQUIRE(b.size() == 1);
        CHECK(b[0].n() == 2);
        CHECK_NOTHROW(validate(b[0]));

        // An instant record at the moment the previous event ends opens a new one.
        const std::vector<Interval> edge{{0, 10, 1}, {10, 10, 2}};
        CHECK(extract_events(edge).size() == 2);
    }

    TEST_CASE("end before start is data corruption")
    {
        const std::vector<Interval> iv{{10, 0, 1}};
        CHECK_THROWS_AS(extract_events(iv), DataCorruptionError);
    }

    TEST_CASE("validate catches broken events")
    {
        CHECK_NOTHROW(validate(make({0, 5}, {8, 12})));
        CHECK_THROWS_AS(validate(make({0, 5}, {3, 12})), DataCorruptionError);
        CHECK_THROWS_AS(validate(make({5, 0}, {8, 12})), DataCorruptionError);
        CHECK_THROWS_AS(validate(make({0}, {8, 12})), DataCorruptionError);
        auto e = make({0, 5}, {8, 12});
        e.customers_restored = {1, 2};
        CHECK_THROWS_AS(validate(e), DataCorruptionError);
    }

    TEST_CASE("overlap fraction")
    {
        CHECK(overlap_fraction(make({0, 4}, {2, 10})) == doctest::Approx(0.2));
        CHECK(overlap_fraction(make({0, 1, 2}, {5, 6, 7})) == doctest::Approx(-3.0 / 7.0));
        CHECK(overlap_fraction(make({0, 1}, {0.5, 10})) == doctest::Approx(0.05));
        CHECK_THROWS_AS(overlap_fraction(make({0}, {3})), UndefinedMetricError);
        CHECK_THROWS_AS(overlap_fraction(make({0, 0}, {0, 0})), UndefinedMetricError);
    }

    TEST_CASE("property: event invariants over random logs")
    {
        std::mt19937_64 rng(3);
        for (int trial = 0; trial < 200; ++trial)
        {
            std::vector<Interval> iv;
            const auto count = 1 + rng() % 80;
            for (std::size_t i = 0; i < count; ++i)
            {
                const Minutes s = static_cast<Minutes>(rng() % 2000);
                iv.push_back({s, s + static_cast<Minutes>(rng() % 120), static_cast<std::int64_t>(rng() % 50)});
            }
            const auto ev = extract_events(iv);
            std::size_t total = 0;
            for (const auto& e : ev)
            {
                total += e.n();
                CHECK_NOTHROW(validate(e));
                if (e.n() >= 2 && e.duration() > 0)
                    CHECK(overlap_fraction(e) <= 1.0);
                CHECK(outage_process(e).final_value() == restore_process(e).final_value());
            }
            CHECK(total == iv.size());
            for (std::size_t i = 1; i < ev.size(); ++i)
                CHECK(ev[i].start() >= ev[i - 1].end());

            // Flatten and re-extract: same events.
            const auto again = extract_events(to_intervals(ev));
            CHECK(again == ev);
        }
    }

    TEST_CASE("property: count stays at least one inside every event")
    {
        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 100; ++trial)
        {
            std::vector<Interval> iv;
            for (int i = 0; i < 30; ++i)
            {
                const Minutes s = static_cast<Minutes>(rng() % 500);
                iv.push_back({s, s + static_cast<Minutes>(rng() % 40), 1});
            }
            for (const auto& e : extract_events(iv))
            {
                const auto o = outage_process(e);
                const auto r = restore_process(e);
                for (Minutes t = e.start(); t < e.end(); t += 0.5)
                    CHECK(o.value_at(t) - r.value_at(t) >= 1);
                CHECK(o.value_at(e.end()) - r.value_at(e.end()) == 0);
            }
        }
    }

    TEST_CASE("random single events extract to themselves")
    {
        std::mt19937_64 rng(17);
        for (int trial = 0; trial < 200; ++trial)
        {
            auto g = testing::random_event(rng, {1, 60});
            std::shuffle(g.records.begin(), g.records.end(), rng);
            const auto ev = extract_events(g.records);
            REQUIRE(ev.size() == 1);
            CHECK(ev[0] == g.event);
        }
    }
}
