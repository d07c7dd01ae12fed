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

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ahp.hpp"
#include "gain.hpp"
#include "sensitivity.hpp"

namespace gainfn::ingest
{
    /// Repeated timings of one application on one architecture.
    struct RunSet
    {
        std::string         application;
        std::string         architecture;
        std::vector<double> samples;
    };

    struct AggregateOptions
    {
        double ci_level = 0.95;
        /// Relative half-width above which the interval is reported as too wide.
        double ci_threshold = 0.01;
    };

    struct MeasurementSummary
    {
        double      mean = 0.0;
        double      stddev = 0.0;
        double      ci_halfwidth = 0.0;
        std::size_t count = 0;
        double      ci_level = 0.95;
        bool        exceeds_threshold = false;
    };

    /// Mean, sample standard deviation (n - 1) and the two-sided Student-t
    /// confidence half-width. Samples are summed in sorted order so the
    /// result does not depend on their order.
    MeasurementSummary aggregate_runs(const RunSet& runs, const AggregateOptions& options = {});

    /// Two-sided critical value t such that P(|T| <= t) = level for `df`
    /// degrees of freedom.
    double student_t_critical(double level, std::size_t df);

    struct LoadOptions
    {
        bool             renormalize_application_weights = false;
        AggregateOptions aggregate;
    };

    struct MeasurementRecord
    {
        std::string        application;
        std::string        architecture;
        bool               from_runs = false;
        MeasurementSummary summary;
    };

    struct WeightDerivation
    {
        ahp::WeightVector                                weights;
        double                                           consistency_ratio = 0.0;
        std::vector<std::pair<std::string, std::string>> defaulted_pairs;
    };

    struct LoadedProblem
    {
        DecisionProblem                problem;
        std::vector<MeasurementRecord> measurements;
        std::optional<WeightDerivation> application_weights_ahp;
        std::optional<WeightDerivation> criteria_weights_ahp;
        /// Things the user should look at: defaults, renormalization, wide
        /// confidence intervals, inconsistent judgments.
        std::vector<std::string> warnings;
        /// Every transformation applied to the user's numbers.
        std::vector<std::string> audit;
    };

    /// Parses and validates a problem document. `extra_runs` are raw samples
    /// imported separately (e.g. from CSV) and count as the `runs` source for
    /// their pair. Applications and architectures come out sorted by id.
    LoadedProblem load_problem(const nlohmann::json& document, const LoadOptions& options = {},
                               std::span<const RunSet> extra_runs = {});
    LoadedProblem load_problem(std::string_view document, const LoadOptions& options = {},
                               std::span<const RunSet> extra_runs = {});
    inline LoadedProblem load_problem(const std::string& document, const LoadOptions& options = {},
                                      std::span<const RunSet> extra_runs = {})
    {
        return load_problem(std::string_view(document), options, extra_runs);
    }

    /// Canonical document for a problem: explicit weights, mean times.
    nlohmann::ordered_json serialize_problem(const DecisionProblem& problem);

    /// CSV with header `application,architecture,seconds`, one sample per row.
    /// Rows for the same pair are grouped, in order of first appearance.
    std::vector<RunSet> parse_runs_csv(std::string_view text);

    struct JudgmentBlock
    {
        std::vector<std::string>  items;
        std::vector<ahp::Judgment> judgments;
    };

    /// `{ "items": [..], "judgments": [{ "more_important", "less_important", "intensity" }] }`
    JudgmentBlock parse_judgment_block(const nlohmann::json& document);

    /// `{ "scenarios": [{ "label", "application_weights": {id: w}, "criteria": {...} }] }`
    std::vector<sensitivity::Scenario> parse_scenarios(const nlohmann::json& document);

    /// Parses text as JSON, mapping syntax errors to a schema InputError.
    nlohmann::json parse_json(std::string_view text);
}
