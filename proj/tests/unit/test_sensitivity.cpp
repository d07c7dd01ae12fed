/*
 Copyright 2026 The gainfn Authors
 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      http://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "crossover_check.hpp"
#include "errors.hpp"
#include "oracles.hpp"
#include "problems.hpp"
#include "sensitivity.hpp"

using namespace gainfn;
using namespace gainfn::sensitivity;

namespace
{
    Scenario scenario(std::string label, double lud, double cost_weight)
    {
        return Scenario{std::move(label), {{"lud", lud}, {"Btree", 1.0 - lud}}, {cost_weight, 1.0 - cost_weight}};
    }

    bool bit_identical(const DecisionProblem& a, const DecisionProblem& b)
    {
        if (a.applications.size() != b.applications.size() || a.architectures.size() != b.architectures.size())
        {
            return false;
        }
        for (std::size_t j = 0; j < a.applications.size(); ++j)
        {
            if (a.applications[j].id != b.applications[j].id ||
                std::memcmp(&a.applications[j].weight, &b.applications[j].weight, sizeof(double)) != 0)
            {
                return false;
            }
        }
        for (std::size_t k = 0; k < a.architectures.size(); ++k)
        {
            if (a.architectures[k].id != b.architectures[k].id ||
                std::memcmp(&a.architectures[k].cost, &b.architectures[k].cost, sizeof(double)) != 0)
            {
                return false;
            }
        }
        return a.times.seconds.values.size() == b.times.seconds.values.size() &&
               std::memcmp(a.times.seconds.values.data(), b.times.seconds.values.data(),
                           a.times.seconds.values.size() * sizeof(double)) == 0 &&
               std::memcmp(&a.criteria, &b.criteria, sizeof(CriteriaWeights)) == 0;
    }
}

TEST_CASE("scenario_table: five weight variations")
{
    const auto p = problems::rodinia();
    const std::vector<Scenario> scenarios{scenario("equal", 0.5, 0.5), scenario("lud-first", 0.9, 0.5),
                                          scenario("btree-first", 0.1, 0.5), scenario("cost-heavy", 0.5, 0.7),
                                          scenario("perf-heavy", 0.5, 0.3)};
    const auto rows = scenario_table(p, scenarios);
    REQUIRE(rows.size() == 5);
    const char* winners[] = {"C", "C", "B", "C", "C"};
    const double printed[5][3] = {{0.26314, 0.34911, 0.38742},
                                  {0.28179, 0.30258, 0.41502},
                                  {0.24448, 0.39564, 0.35981},
                                  {0.28574, 0.33937, 0.37469},
                                  {0.24053, 0.35885, 0.40015}};
    for (std::size_t s = 0; s < 5; ++s)
    {
        CAPTURE(s);
        CHECK(rows[s].label == scenarios[s].label);
        CHECK(rows[s].report.winner == winners[s]);
        for (std::size_t k = 0; k < 3; ++k)
        {
            CHECK(std::abs(rows[s].report.gains[k] - printed[s][k]) <= 2e-3);
        }
        const auto direct = evaluate_with(p, std::vector<double>{scenarios[s].application_weights.at("lud"),
                                                                 scenarios[s].application_weights.at("Btree")},
                                          scenarios[s].criteria);
        CHECK(direct.gains == rows[s].report.gains);
    }
}

TEST_CASE("scenario_table: two-node scenarios both pick A")
{
    const auto p = problems::bioinformatics(3519.0 / 4433.0, 887.0 / 13299.0, 1855.0 / 13299.0);
    const std::vector<Scenario> scenarios{
        {"equal", {{"blast", 1.0 / 3}, {"kmeans", 1.0 / 3}, {"mum", 1.0 / 3}}, {0.5, 0.5}},
        {"judged", {{"blast", 3519.0 / 4433.0}, {"kmeans", 887.0 / 13299.0}, {"mum", 1855.0 / 13299.0}}, {0.5, 0.5}}};
    const auto rows = scenario_table(p, scenarios);
    CHECK(rows[0].report.winner == "A");
    CHECK(rows[1].report.winner == "A");
}

TEST_CASE("scenario_table: edge cases")
{
    const auto p = problems::rodinia();
    CHECK(scenario_table(p, {}).empty());

    const std::vector<Scenario> unknown{{"bad", {{"lud", 0.5}, {"Btree", 0.25}, {"nope", 0.25}}, {0.5, 0.5}}};
    try
    {
        scenario_table(p, unknown);
        FAIL("expected rejection");
    }
    catch (const InputError& e)
    {
        CHECK(e.kind() == ErrorKind::not_found);
        CHECK(std::string(e.what()).find("nope") != std::string::npos);
    }

    const std::vector<Scenario> missing{{"bad", {{"lud", 1.0}}, {0.5, 0.5}}};
    CHECK_THROWS_AS(scenario_table(p, missing), InputError);
}

TEST_CASE("crossovers: three architectures, equal weights")
{
    const auto p = problems::rodinia();
    const auto a = criteria_weight_crossovers(p);
    REQUIRE(oracle::well_formed(p, a));
    // C is both the best performer and the cheapest, so it wins throughout.
    CHECK(a.points.empty());
    REQUIRE(a.intervals.size() == 1);
    CHECK(a.intervals[0].winner == "C");
    for (double x : {0.3, 0.5, 0.7})
    {
        CHECK(evaluate_with(p, std::vector<double>{0.5, 0.5}, {x, 1 - x}).winner == "C");
    }
    CHECK(oracle::compare_with_scan(p, a, 1e-4).count == 0);
}

TEST_CASE("crossovers: a performance leader that is not the cheapest")
{
    // B is fastest, C cheapest: the winner must move from B to C.
    const auto p = problems::rodinia(0.1);
    const auto a = criteria_weight_crossovers(p);
    REQUIRE(oracle::well_formed(p, a));
    REQUIRE(a.points.size() == 1);
    CHECK(a.intervals.front().winner == "B");
    CHECK(a.intervals.back().winner == "C");
    CHECK(oracle::compare_with_scan(p, a, 1e-5).count == 0);
}

TEST_CASE("crossovers: endpoints")
{
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 300; ++trial)
    {
        const auto p = oracle::random_problem(rng, 1 + trial % 5, 2 + trial % 4);
        const auto a = criteria_weight_crossovers(p);
        const auto perf_leader = oracle::argmax(a.performance_component);
        CHECK(a.intervals.front().winner == p.architectures[perf_leader].id);
        std::size_t cheapest = 0;
        for (std::size_t k = 1; k < p.architectures.size(); ++k)
        {
            if (p.architectures[k].cost < p.architectures[cheapest].cost)
            {
                cheapest = k;
            }
        }
        CHECK(a.intervals.back().winner == p.architectures[cheapest].id);
    }
}

TEST_CASE("crossovers: permanent ties")
{
    const auto p = problems::make({{"x", 1}}, {{"a", 100}, {"b", 100}, {"c", 50}}, {{10, 10, 40}}, 0.5);
    const auto a = criteria_weight_crossovers(p);
    REQUIRE(a.permanent_ties.size() == 1);
    CHECK(a.permanent_ties[0] == std::pair<std::string, std::string>{"a", "b"});
    REQUIRE(oracle::well_formed(p, a));
    CHECK(a.intervals.front().winner == "a");
    CHECK(a.intervals.back().winner == "c");
}

TEST_CASE("property: crossovers agree with a grid scan")
{
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 60; ++trial)
    {
        const auto p = oracle::random_problem(rng, 1 + trial % 5, 2 + trial % 4);
        const auto a = criteria_weight_crossovers(p);
        REQUIRE(oracle::well_formed(p, a));
        const auto mismatch = oracle::compare_with_scan(p, a, 1e-4);
        CAPTURE(mismatch.first_at);
        REQUIRE(mismatch.count == 0);
    }
}

TEST_CASE("property: gains are affine in the cost weight")
{
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 300; ++trial)
    {
        const auto p = oracle::random_problem(rng, 1 + trial % 5, 2 + trial % 4);
        std::vector<double> w;
        for (const auto& app : p.applications)
        {
            w.push_back(app.weight);
        }
        const auto g0 = evaluate_with(p, w, {0.0, 1.0}).gains;
        const auto g1 = evaluate_with(p, w, {1.0, 0.0}).gains;
        const auto gm = evaluate_with(p, w, {0.375, 0.625}).gains;
        for (std::size_t k = 0; k < g0.size(); ++k)
        {
            REQUIRE(std::abs(gm[k] - (0.625 * g0[k] + 0.375 * g1[k])) < 1e-12);
        }
    }
}

TEST_CASE("application_weight_sweep")
{
    const auto p = problems::rodinia();
    const std::vector<double> grid{0.5, 0.9, 0.1};
    const auto rows = application_weight_sweep(p, "lud", grid);
    REQUIRE(rows.size() == 3);
    CHECK(std::abs(rows[0].report.gains[0] - 0.26314) <= 5e-5);
    CHECK(std::abs(rows[1].report.gains[0] - 0.28179) <= 5e-5);
    CHECK(std::abs(rows[2].report.gains[0] - 0.24448) <= 5e-5);
    CHECK(rows[0].report.winner == "C");
    CHECK(rows[1].report.winner == "C");
    CHECK(rows[2].report.winner == "B");
    CHECK(rows[1].report.application_weights == std::vector<double>{0.9, 1.0 - 0.9});

    CHECK(application_weight_sweep(p, "lud", {}).empty());

    const std::vector<double> outside{1.5};
    CHECK_THROWS_AS(application_weight_sweep(p, "lud", outside), InputError);
    const std::vector<double> nan{std::nan("")};
    CHECK_THROWS_AS(application_weight_sweep(p, "lud", nan), InputError);
    CHECK_THROWS_AS(application_weight_sweep(p, "nope", grid), InputError);

    const std::vector<double> full{1.0};
    CHECK(application_weight_sweep(p, "lud", full)[0].report.application_weights[1] == 0.0);

    auto single = problems::make({{"x", 1}}, {{"a", 1}, {"b", 2}}, {{1, 2}}, 0.5);
    CHECK_THROWS_AS(application_weight_sweep(single, "x", grid), InputError);
}

TEST_CASE("application_weight_sweep: zero drops the application")
{
    const auto p = problems::bioinformatics(0.5, 0.2, 0.3);
    const std::vector<double> zero{0.0};
    const auto row = application_weight_sweep(p, "kmeans", zero)[0];
    const auto reduced = evaluate(problems::make({{"blast", 0.5 / 0.8}, {"mum", 0.3 / 0.8}}, {{"A", 8900}, {"B", 8760}},
                                                 {{79341, 193515}, {42, 38}}, 0.5));
    for (std::size_t k = 0; k < 2; ++k)
    {
        CHECK(row.report.gains[k] == doctest::Approx(reduced.gains[k]).epsilon(1e-14));
    }
}

TEST_CASE("application_weight_sweep: proportional rescale does not reproduce judged weights")
{
    const auto p = problems::bioinformatics(1.0 / 3, 1.0 / 3, 1.0 / 3);
    const std::vector<double> grid{0.794};
    const auto row = application_weight_sweep(p, "blast", grid)[0];
    CHECK(row.report.application_weights[1] == doctest::Approx(row.report.application_weights[2]));
    CHECK(row.report.winner == "A");
}

TEST_CASE("breakeven: pure cost race")
{
    const auto p = problems::make({{"solver", 0.6}, {"io", 0.4}}, {{"P", 1200}, {"Q", 1500}}, {{50, 50}, {20, 20}}, 0.4);
    const auto q = breakeven_cost(p, "Q");
    CHECK(q.status == BreakEvenStatus::bounded);
    REQUIRE(q.max_cost);
    CHECK(*q.max_cost == 1200.0);
    CHECK(q.binding_competitor == std::optional<std::string>("P"));
    CHECK(q.current_cost == 1500.0);
    CHECK(*breakeven_cost(p, "P").max_cost == 1500.0);
}

TEST_CASE("breakeven: three architectures, cheapest leader")
{
    const auto p = problems::rodinia();
    const auto c = breakeven_cost(p, "C");
    REQUIRE(c.status == BreakEvenStatus::bounded);
    const double bisected = oracle::bisect_breakeven(p, 2, 1.0, 1e9);
    CHECK(std::abs(*c.max_cost - bisected) / bisected <= 1e-6);
    CHECK(*c.max_cost > 8000.0);
    CHECK(c.binding_competitor == std::optional<std::string>("B"));

    // A loses at its current cost; the answer is what it would have to cost.
    const auto a = breakeven_cost(p, "A");
    REQUIRE(a.status == BreakEvenStatus::bounded);
    CHECK(*a.max_cost < 8900.0);
}

TEST_CASE("breakeven: degenerate cases")
{
    SUBCASE("cost has zero weight")
    {
        const auto p = problems::rodinia(0.5, 0.0);
        const auto r = breakeven_cost(p, "A");
        CHECK(r.status == BreakEvenStatus::unbounded);
        CHECK(r.cost_weight_zero);
        CHECK_FALSE(r.max_cost);
        CHECK(r.explanation == "unbounded (cost has zero weight)");
    }
    SUBCASE("performance gap too large for cost to close")
    {
        const auto p = problems::make({{"x", 1}}, {{"fast", 100}, {"slow", 100}}, {{1, 1000}}, 0.1);
        const auto r = breakeven_cost(p, "slow");
        CHECK(r.status == BreakEvenStatus::infeasible);
        CHECK(r.binding_competitor == std::optional<std::string>("fast"));
        CHECK_FALSE(oracle::weakly_wins(p, 1, 1e-9));
    }
    SUBCASE("winner at any cost")
    {
        const auto p = problems::make({{"x", 1}}, {{"fast", 100}, {"slow", 100}}, {{1, 1000}}, 0.1);
        const auto r = breakeven_cost(p, "fast");
        CHECK(r.status == BreakEvenStatus::unbounded);
        CHECK_FALSE(r.cost_weight_zero);
        CHECK(oracle::weakly_wins(p, 0, 1e12));
    }
    SUBCASE("unknown architecture")
    {
        CHECK_THROWS_AS(breakeven_cost(problems::rodinia(), "Z"), InputError);
    }
}

TEST_CASE("property: breakeven agrees with bisection and brackets the tie")
{
    std::mt19937_64 rng(2024);
    int bounded = 0;
    for (int trial = 0; trial < 200; ++trial)
    {
        const auto p = oracle::random_problem(rng, 1 + trial % 5, 2 + trial % 4);
        const std::size_t k = trial % p.architectures.size();
        const auto r = breakeven_cost(p, p.architectures[k].id);
        const double lo = 1e-6;
        const double hi = 1e15;
        const double bisected = oracle::bisect_breakeven(p, k, lo, hi);
        CAPTURE(trial);
        if (r.status == BreakEvenStatus::bounded)
        {
            ++bounded;
            REQUIRE(std::abs(*r.max_cost - bisected) / bisected <= 1e-6);
            REQUIRE(oracle::weakly_wins(p, k, 0.99 * *r.max_cost));
            REQUIRE_FALSE(oracle::weakly_wins(p, k, 1.01 * *r.max_cost));
        }
        else if (r.status == BreakEvenStatus::infeasible)
        {
            REQUIRE(bisected == lo);
        }
        else
        {
            REQUIRE(bisected == hi);
        }
    }
    CHECK(bounded > 100);
}

TEST_CASE("sensitivity operations leave the problem untouched")
{
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 50; ++trial)
    {
        const auto p = oracle::random_problem(rng, 2 + trial % 4, 2 + trial % 4);
        const auto copy = p;
        criteria_weight_crossovers(p);
        const std::vector<double> grid{0.0, 0.3, 1.0};
        application_weight_sweep(p, p.applications[0].id, grid);
        breakeven_cost(p, p.architectures[0].id);
        std::map<std::string, double> w;
        for (const auto& a : p.applications)
        {
            w[a.id] = 1.0 / static_cast<double>(p.applications.size());
        }
        const std::vector<Scenario> sc{{"flat", w, {0.2, 0.8}}};
        scenario_table(p, sc);
        REQUIRE(bit_identical(p, copy));
    }
}
