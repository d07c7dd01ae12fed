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

#include <algorithm>
#include <cmath>
#include <random>

#include "errors.hpp"
#include "fixtures.hpp"
#include "ingest.hpp"

using namespace gainfn;
using namespace gainfn::ingest;
using nlohmann::json;

namespace
{
    json rodinia() { return json::parse(fixtures::read("rodinia_three_arch.json")); }

    InputError rejection(const json& doc, const LoadOptions& options = {})
    {
        try
        {
            load_problem(doc, options);
        }
        catch (const InputError& e)
        {
            return e;
        }
        FAIL("expected rejection");
        return InputError(ErrorKind::schema, "", "");
    }

    bool mentions(const std::vector<std::string>& lines, const std::string& needle)
    {
        return std::any_of(lines.begin(), lines.end(),
                           [&](const std::string& l) { return l.find(needle) != std::string::npos; });
    }
}

TEST_CASE("aggregate_runs")
{
    SUBCASE("single run")
    {
        const auto s = aggregate_runs(RunSet{"a", "b", {100}});
        CHECK(s.mean == 100);
        CHECK(s.stddev == 0);
        CHECK(s.ci_halfwidth == 0);
        CHECK(s.count == 1);
        CHECK_FALSE(s.exceeds_threshold);
    }
    SUBCASE("constant runs")
    {
        const auto s = aggregate_runs(RunSet{"a", "b", {10, 10, 10, 10}});
        CHECK(s.mean == 10);
        CHECK(s.stddev == 0);
        CHECK(s.ci_halfwidth == 0);
    }
    SUBCASE("three runs, t quantile for two degrees of freedom")
    {
        const auto s = aggregate_runs(RunSet{"a", "b", {9, 10, 11}});
        CHECK(s.mean == 10);
        CHECK(s.stddev == 1);
        CHECK(std::abs(s.ci_halfwidth - 4.3027 / std::sqrt(3.0)) <= 1e-4);
        CHECK(std::abs(s.ci_halfwidth - 2.4842) <= 1e-4);
        CHECK(s.exceeds_threshold);
    }
    SUBCASE("rejections")
    {
        CHECK_THROWS_AS(aggregate_runs(RunSet{"a", "b", {}}), InputError);
        CHECK_THROWS_AS(aggregate_runs(RunSet{"a", "b", {1, 0}}), InputError);
        CHECK_THROWS_AS(aggregate_runs(RunSet{"a", "b", {1, -2}}), InputError);
        CHECK_THROWS_AS(aggregate_runs(RunSet{"a", "b", {1, INFINITY}}), InputError);
        CHECK_THROWS_AS(aggregate_runs(RunSet{"a", "b", {1, 2}}, AggregateOptions{1.0, 0.01}), InputError);
    }
    SUBCASE("configurable level and threshold")
    {
        const RunSet r{"a", "b", {9, 10, 11}};
        const auto wide = aggregate_runs(r, AggregateOptions{0.99, 0.6});
        CHECK(wide.ci_halfwidth > aggregate_runs(r).ci_halfwidth);
        CHECK(wide.ci_level == 0.99);
        CHECK_FALSE(wide.exceeds_threshold);
    }
}

TEST_CASE("student_t_critical matches table values")
{
    CHECK(std::abs(student_t_critical(0.95, 2) - 4.302652729696142) <= 1e-9);
    CHECK(std::abs(student_t_critical(0.95, 29) - 2.0452) <= 1e-4);
    CHECK(std::abs(student_t_critical(0.99, 10) - 3.1693) <= 1e-4);
}

TEST_CASE("property: aggregation is permutation invariant")
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.1, 1000.0);
    for (int trial = 0; trial < 200; ++trial)
    {
        RunSet r{"a", "b", {}};
        for (int i = 0; i < 2 + trial % 40; ++i)
        {
            r.samples.push_back(u(rng));
        }
        const auto base = aggregate_runs(r);
        std::shuffle(r.samples.begin(), r.samples.end(), rng);
        const auto again = aggregate_runs(r);
        REQUIRE(base.mean == again.mean);
        REQUIRE(base.stddev == again.stddev);
        REQUIRE(base.ci_halfwidth == again.ci_halfwidth);
    }
}

TEST_CASE("load: three architectures with explicit weights")
{
    const auto loaded = load_problem(rodinia());
    const auto& p = loaded.problem;
    REQUIRE(p.applications.size() == 2);
    // sorted by id: "Btree" < "lud"
    CHECK(p.applications[0].id == "Btree");
    CHECK(p.applications[1].id == "lud");
    CHECK(p.architectures[2].id == "C");
    CHECK(p.times.at(1, 2) == 180);
    CHECK(p.criteria.cost_weight == 0.5);
    CHECK(loaded.warnings.empty());
    CHECK(evaluate(p).winner == "C");
}

TEST_CASE("load: judgment block for applications and criteria")
{
    const auto loaded = load_problem(fixtures::read("bioinformatics_ahp.json"));
    const auto& p = loaded.problem;
    REQUIRE(loaded.application_weights_ahp);
    REQUIRE(loaded.criteria_weights_ahp);
    CHECK(p.applications[0].id == "blast");
    CHECK(std::abs(p.applications[0].weight - 0.794) <= 1e-3);
    CHECK(std::abs(p.applications[1].weight - 0.067) <= 1e-3);
    CHECK(std::abs(p.applications[2].weight - 0.140) <= 1e-3);
    CHECK(p.criteria.cost_weight == 0.5);
    CHECK(p.criteria.performance_weight == 0.5);
    CHECK(loaded.application_weights_ahp->consistency_ratio > 0.1);
    CHECK(mentions(loaded.warnings, "consistency ratio"));
    CHECK(mentions(loaded.audit, "pairwise judgments"));
    CHECK(evaluate(p).winner == "A");
}

TEST_CASE("load: criteria judgment with performance preferred")
{
    auto doc = rodinia();
    doc["criteria"] = {{"judgment", {{"preferred", "performance"}, {"intensity", 7}}}};
    const auto p = load_problem(doc).problem;
    CHECK(p.criteria.cost_weight == 0.125);
    CHECK(p.criteria.performance_weight == 0.875);
    doc["criteria"] = {{"judgment", {{"preferred", "speed"}, {"intensity", 7}}}};
    CHECK(rejection(doc).kind() == ErrorKind::schema);
}

TEST_CASE("load: application weights that do not sum to one")
{
    const auto doc = json::parse(fixtures::read("bioinformatics_equal.json"));
    const auto e = rejection(doc);
    CHECK(e.kind() == ErrorKind::invalid);
    CHECK(std::string(e.what()).find("0.999") != std::string::npos);

    LoadOptions opt;
    opt.renormalize_application_weights = true;
    const auto loaded = load_problem(doc, opt);
    CHECK(mentions(loaded.warnings, "rescaled"));
    for (const auto& a : loaded.problem.applications)
    {
        CHECK(a.weight == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    }
}

TEST_CASE("load: missing measurement names the pair")
{
    auto doc = json::parse(fixtures::read("bioinformatics_ahp.json"));
    auto& ms = doc["measurements"];
    ms.erase(std::remove_if(ms.begin(), ms.end(),
                            [](const json& m) { return m["application"] == "kmeans" && m["architecture"] == "B"; }),
             ms.end());
    const auto e = rejection(doc);
    CHECK(e.kind() == ErrorKind::invalid);
    CHECK(std::string(e.what()).find("(kmeans, B)") != std::string::npos);
}

TEST_CASE("load: time sources")
{
    SUBCASE("both runs and mean")
    {
        auto doc = rodinia();
        doc["measurements"][0]["runs"] = {2480, 2490};
        const auto e = rejection(doc);
        CHECK(e.path() == "measurements[0]");
        CHECK(std::string(e.what()).find("(Btree, A)") != std::string::npos);
    }
    SUBCASE("neither")
    {
        auto doc = rodinia();
        doc["measurements"][0].erase("mean");
        CHECK(rejection(doc).kind() == ErrorKind::schema);
    }
    SUBCASE("the same pair twice")
    {
        auto doc = rodinia();
        doc["measurements"].push_back(doc["measurements"][0]);
        CHECK(rejection(doc).kind() == ErrorKind::schema);
    }
    SUBCASE("wrong unit")
    {
        auto doc = rodinia();
        doc["measurements"][2]["unit"] = "ms";
        CHECK(rejection(doc).path() == "measurements[2].unit");
    }
    SUBCASE("zero time")
    {
        auto doc = rodinia();
        doc["measurements"][2]["mean"] = 0;
        CHECK(rejection(doc).kind() == ErrorKind::invalid);
    }
}

TEST_CASE("load: weight sources")
{
    SUBCASE("explicit weights and judgments together")
    {
        auto doc = rodinia();
        doc["application_judgments"] = json::array({{{"more_important", "lud"}, {"less_important", "Btree"}, {"intensity", 3}}});
        CHECK(rejection(doc).kind() == ErrorKind::schema);
    }
    SUBCASE("neither")
    {
        auto doc = rodinia();
        doc["applications"][0].erase("weight");
        CHECK(rejection(doc).kind() == ErrorKind::schema);
    }
    SUBCASE("single application defaults to weight one")
    {
        auto doc = json::parse(fixtures::read("performance_only.json"));
        doc["applications"][0].erase("weight");
        const auto loaded = load_problem(doc);
        CHECK(loaded.problem.applications[0].weight == 1.0);
        CHECK(mentions(loaded.audit, "weight 1"));
    }
    SUBCASE("judgment referencing an unknown application")
    {
        auto doc = json::parse(fixtures::read("bioinformatics_ahp.json"));
        doc["application_judgments"][1]["less_important"] = "hmmer";
        const auto e = rejection(doc);
        CHECK(e.kind() == ErrorKind::not_found);
        CHECK(e.path().rfind("application_judgments[1]", 0) == 0);
    }
    SUBCASE("unjudged pair defaults to equal and is reported")
    {
        auto doc = json::parse(fixtures::read("bioinformatics_ahp.json"));
        doc["application_judgments"].erase(2);
        const auto loaded = load_problem(doc);
        CHECK(mentions(loaded.warnings, "(kmeans, mum)"));
    }
}

TEST_CASE("load: schema violations")
{
    CHECK(rejection(json::array()).kind() == ErrorKind::schema);
    auto doc = rodinia();
    doc["extra"] = 1;
    CHECK(rejection(doc).path() == "extra");
    doc = rodinia();
    doc["architectures"][1]["cost"] = "cheap";
    CHECK(rejection(doc).path() == "architectures[1].cost");
    doc = rodinia();
    doc["architectures"][1]["currency"] = "EUR";
    CHECK(rejection(doc).kind() == ErrorKind::invalid);
    doc = rodinia();
    doc["measurements"][0]["architecture"] = "Z";
    CHECK(rejection(doc).kind() == ErrorKind::not_found);
    CHECK_THROWS_AS(load_problem(std::string_view("{\"applications\": [")), InputError);
}

TEST_CASE("load: raw runs from the document and from CSV")
{
    const auto runs = parse_runs_csv(fixtures::read("runs.csv"));
    REQUIRE(runs.size() == 2);
    CHECK(runs[0].application == "Btree");
    CHECK(runs[0].architecture == "A");
    CHECK(runs[0].samples == std::vector<double>{2480, 2498, 2489});

    const auto loaded = load_problem(fixtures::read("runs_problem.json"), {}, runs);
    const auto& p = loaded.problem;
    CHECK(p.times.at(0, 0) == doctest::Approx(2489.0).epsilon(1e-15));
    CHECK(p.times.at(0, 1) == 813);
    CHECK(p.times.at(1, 0) == doctest::Approx(347.0).epsilon(1e-15));
    CHECK(p.times.at(1, 1) == 340);
    CHECK(loaded.measurements.size() == 4);
    CHECK(mentions(loaded.audit, "aggregated 5 runs"));
    CHECK(mentions(loaded.audit, "aggregated 3 runs"));

    SUBCASE("without the CSV the B+Tree pairs are missing")
    {
        const auto e = rejection(json::parse(fixtures::read("runs_problem.json")));
        CHECK(std::string(e.what()).find("(Btree, A)") != std::string::npos);
    }
    SUBCASE("CSV runs conflict with a document mean")
    {
        const std::vector<RunSet> extra{{"lud", "B", {340, 341}}};
        auto doc = json::parse(fixtures::read("runs_problem.json"));
        CHECK_THROWS_AS(load_problem(doc, {}, extra), InputError);
    }
}

TEST_CASE("parse_runs_csv rejections")
{
    CHECK_THROWS_AS(parse_runs_csv("app,arch,time\nx,y,1\n"), InputError);
    CHECK_THROWS_AS(parse_runs_csv("application,architecture,seconds\nx,y\n"), InputError);
    CHECK_THROWS_AS(parse_runs_csv("application,architecture,seconds\nx,y,fast\n"), InputError);
    CHECK_THROWS_AS(parse_runs_csv("application,architecture,seconds\nx,y,-1\n"), InputError);
    CHECK_THROWS_AS(parse_runs_csv(""), InputError);
    CHECK(parse_runs_csv("application,architecture,seconds\r\nx,y,1.5\r\n")[0].samples == std::vector<double>{1.5});
}

TEST_CASE("round trip through the canonical document")
{
    for (const char* name : {"rodinia_three_arch.json", "bioinformatics_ahp.json", "identical_pair.json"})
    {
        CAPTURE(name);
        const auto first = load_problem(fixtures::read(name)).problem;
        const auto doc = serialize_problem(first);
        const auto second = load_problem(doc.dump()).problem;
        REQUIRE(first.applications.size() == second.applications.size());
        for (std::size_t j = 0; j < first.applications.size(); ++j)
        {
            CHECK(first.applications[j].id == second.applications[j].id);
            CHECK(first.applications[j].weight == second.applications[j].weight);
        }
        for (std::size_t k = 0; k < first.architectures.size(); ++k)
        {
            CHECK(first.architectures[k].id == second.architectures[k].id);
            CHECK(first.architectures[k].cost == second.architectures[k].cost);
            CHECK(first.architectures[k].currency == second.architectures[k].currency);
        }
        CHECK(first.times.seconds == second.times.seconds);
        CHECK(first.criteria.cost_weight == second.criteria.cost_weight);
        CHECK(first.criteria.performance_weight == second.criteria.performance_weight);
        CHECK(serialize_problem(second).dump() == doc.dump());
    }
}

TEST_CASE("element order in the document does not matter")
{
    std::mt19937_64 rng(31);
    const auto base = load_problem(rodinia()).problem;
    for (int trial = 0; trial < 20; ++trial)
    {
        auto doc = rodinia();
        std::shuffle(doc["applications"].begin(), doc["applications"].end(), rng);
        std::shuffle(doc["architectures"].begin(), doc["architectures"].end(), rng);
        std::shuffle(doc["measurements"].begin(), doc["measurements"].end(), rng);
        const auto p = load_problem(doc).problem;
        CHECK(p.times.seconds == base.times.seconds);
        CHECK(evaluate(p).gains == evaluate(base).gains);
    }
}

TEST_CASE("judgment blocks and scenarios")
{
    const auto block = parse_judgment_block(json::parse(fixtures::read("bioinformatics_judgments.json")));
    CHECK(block.items == std::vector<std::string>{"blast", "mum", "kmeans"});
    CHECK(block.judgments.size() == 3);
    CHECK_THROWS_AS(parse_judgment_block(json{{"items", {"a"}}, {"judgments", json::array()}, {"x", 1}}), InputError);

    const auto scenarios = parse_scenarios(json::parse(fixtures::read("rodinia_scenarios.json")));
    REQUIRE(scenarios.size() == 5);
    CHECK(scenarios[3].label == "cost-heavy");
    CHECK(scenarios[3].criteria.cost_weight == 0.7);
    CHECK(scenarios[1].application_weights.at("lud") == 0.9);
}

TEST_CASE("parse_json maps syntax errors to schema errors")
{
    try
    {
        parse_json("{ nope");
        FAIL("expected rejection");
    }
    catch (const InputError& e)
    {
        CHECK(e.kind() == ErrorKind::schema);
    }
}
