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

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gain.hpp"

namespace gainfn::sensitivity
{
    struct Scenario
    {
        std::string label;
        /// Application id to weight; must cover exactly the problem's applications.
        std::map<std::string, double> application_weights;
        CriteriaWeights               criteria;
    };

    struct ScenarioRow
    {
        std::string label;
        GainReport  report;
    };

    std::vector<ScenarioRow> scenario_table(const DecisionProblem& problem, std::span<const Scenario> scenarios);

    struct CrossoverPoint
    {
        double      at_cost_weight = 0.0;
        std::string winner_below;
        std::string winner_above;
    };

    struct WinnerInterval
    {
        double      from_cost_weight = 0.0;
        double      to_cost_weight = 1.0;
        std::string winner;
    };

    struct CrossoverAnalysis
    {
        /// Sorted ascending; exactly the cost weights where the winner changes.
        std::vector<CrossoverPoint> points;
        /// Partition of [0, 1]; consecutive intervals have different winners.
        std::vector<WinnerInterval> intervals;
        /// Pairs whose gain is the same line in the cost weight.
        std::vector<std::pair<std::string, std::string>> permanent_ties;
        /// Weighted performance share P_k per architecture (gain at w_c = 0).
        std::vector<double> performance_component;
    };

    /// Each gain is affine in the cost weight x (with w_d = 1 - x):
    /// G_k(x) = P_k + x (C_k - P_k). The winner can only change where two of
    /// these lines cross, so the upper envelope is found by evaluating the
    /// winner between consecutive pairwise crossings.
    CrossoverAnalysis criteria_weight_crossovers(const DecisionProblem& problem);

    struct SweepRow
    {
        double     value = 0.0;
        GainReport report;
    };

    /// Sets one application's weight to each grid value and rescales the
    /// others proportionally to fill the remainder.
    std::vector<SweepRow> application_weight_sweep(const DecisionProblem& problem, const std::string& application,
                                                   std::span<const double> grid);

    enum class BreakEvenStatus
    {
        bounded,
        unbounded,  // the architecture keeps the highest gain at any cost
        infeasible, // no positive cost makes it reach the highest gain
    };

    struct BreakEvenResult
    {
        std::string                architecture;
        BreakEvenStatus            status = BreakEvenStatus::bounded;
        std::optional<double>      max_cost;
        std::optional<std::string> binding_competitor;
        double                     current_cost = 0.0;
        bool                       cost_weight_zero = false;
        std::string                explanation;
    };

    /// Largest cost at which `architecture` still matches the best gain,
    /// holding everything else fixed. Solved in closed form per competitor.
    BreakEvenResult breakeven_cost(const DecisionProblem& problem, const std::string& architecture);

    /// The problem with one architecture's cost replaced.
    DecisionProblem with_cost(const DecisionProblem& problem, std::size_t architecture, double cost);
}
