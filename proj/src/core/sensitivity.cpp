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

#include "sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "errors.hpp"

namespace gainfn::sensitivity
{
    namespace
    {
        std::vector<double> weights_of(const DecisionProblem& problem)
        {
            std::vector<double> w;
            w.reserve(problem.applications.size());
            for (const auto& a : problem.applications)
            {
                w.push_back(a.weight);
            }
            return w;
        }

        std::vector<double> performance_component(const DecisionProblem& problem, const NormalizedScores& scores)
        {
            const std::size_t n = problem.applications.size();
            const std::size_t m = problem.architectures.size();
            std::vector<double> p(m, 0.0);
            for (std::size_t k = 0; k < m; ++k)
            {
                for (std::size_t j = 0; j < n; ++j)
                {
                    p[k] += problem.applications[j].weight * scores.perf_share(j, k);
                }
            }
            return p;
        }

        CriteriaWeights at_cost_weight(double x) { return CriteriaWeights{x, 1.0 - x}; }
    }

    std::vector<ScenarioRow> scenario_table(const DecisionProblem& problem, std::span<const Scenario> scenarios)
    {
        validate(problem);
        std::vector<ScenarioRow> rows;
        rows.reserve(scenarios.size());
        for (std::size_t s = 0; s < scenarios.size(); ++s)
        {
            const Scenario& sc = scenarios[s];
            const std::string path = "scenarios[" + std::to_string(s) + "]";
            for (const auto& [id, w] : sc.application_weights)
            {
                bool known = std::any_of(problem.applications.begin(), problem.applications.end(),
                                         [&](const Application& a) { return a.id == id; });
                if (!known)
                {
                    throw_not_found(path + ".application_weights." + id,
                                    "scenario '" + sc.label + "' references unknown application '" + id + "'");
                }
            }
            std::vector<double> w;
            for (const auto& app : problem.applications)
            {
                auto it = sc.application_weights.find(app.id);
                if (it == sc.application_weights.end())
                {
                    throw_invalid(path + ".application_weights",
                                  "scenario '" + sc.label + "' has no weight for application '" + app.id + "'");
                }
                w.push_back(it->second);
            }
            try
            {
                rows.push_back(ScenarioRow{sc.label, evaluate_with(problem, w, sc.criteria)});
            }
            catch (const InputError& e)
            {
                throw InputError(e.kind(), path, "scenario '" + sc.label + "': " + e.what());
            }
        }
        return rows;
    }

    CrossoverAnalysis criteria_weight_crossovers(const DecisionProblem& problem)
    {
        validate(problem);
        const std::size_t m = problem.architectures.size();
        const NormalizedScores scores = normalize(problem);
        const std::vector<double> weights = weights_of(problem);

        CrossoverAnalysis out;
        out.performance_component = performance_component(problem, scores);
        const auto& perf = out.performance_component;
        const auto& cost = scores.cost_share;

        auto crossing = [&](std::size_t a, std::size_t b) -> std::optional<double> {
            const double dp = perf[a] - perf[b];
            const double dc = cost[a] - cost[b];
            const double denom = dp - dc;
            if (denom == 0.0)
            {
                return std::nullopt;
            }
            return dp / denom;
        };

        std::vector<double> breaks{0.0, 1.0};
        for (std::size_t a = 0; a < m; ++a)
        {
            for (std::size_t b = a + 1; b < m; ++b)
            {
                if (std::abs(perf[a] - perf[b]) <= gain_tie_tolerance && std::abs(cost[a] - cost[b]) <= gain_tie_tolerance)
                {
                    out.permanent_ties.emplace_back(problem.architectures[a].id, problem.architectures[b].id);
                    continue;
                }
                if (auto x = crossing(a, b); x && *x > 0.0 && *x < 1.0)
                {
                    breaks.push_back(*x);
                }
            }
        }
        std::sort(breaks.begin(), breaks.end());
        breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

        auto winner_at = [&](double x) { return evaluate_with(problem, weights, at_cost_weight(x)).winner; };

        for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        {
            const double lo = breaks[i];
            const double hi = breaks[i + 1];
            std::string w = winner_at(0.5 * (lo + hi));
            if (!out.intervals.empty() && out.intervals.back().winner == w)
            {
                out.intervals.back().to_cost_weight = hi;
                continue;
            }
            out.intervals.push_back(WinnerInterval{lo, hi, std::move(w)});
        }

        // Pin each boundary to the exact crossing of the two winners it separates.
        for (std::size_t i = 0; i + 1 < out.intervals.size(); ++i)
        {
            auto& left = out.intervals[i];
            auto& right = out.intervals[i + 1];
            const std::size_t a = architecture_index(problem, left.winner);
            const std::size_t b = architecture_index(problem, right.winner);
            double x = left.to_cost_weight;
            if (auto exact = crossing(a, b); exact && *exact > 0.0 && *exact < 1.0)
            {
                x = *exact;
            }
            left.to_cost_weight = x;
            right.from_cost_weight = x;
            out.points.push_back(CrossoverPoint{x, left.winner, right.winner});
        }
        return out;
    }

    std::vector<SweepRow> application_weight_sweep(const DecisionProblem& problem, const std::string& application,
                                                   std::span<const double> grid)
    {
        validate(problem);
        if (problem.applications.size() < 2)
        {
            throw_invalid("applications", "a weight sweep needs at least two applications");
        }
        const std::size_t target = application_index(problem, application);
        const std::vector<double> base = weights_of(problem);
        double rest = 0.0;
        for (std::size_t j = 0; j < base.size(); ++j)
        {
            if (j != target)
            {
                rest += base[j];
            }
        }

        std::vector<SweepRow> rows;
        rows.reserve(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i)
        {
            const double g = grid[i];
            if (!std::isfinite(g) || g < 0.0 || g > 1.0)
            {
                throw_invalid("grid[" + std::to_string(i) + "]", "sweep values must lie in [0, 1]");
            }
            std::vector<double> w(base.size());
            for (std::size_t j = 0; j < base.size(); ++j)
            {
                w[j] = j == target ? g : base[j] * (1.0 - g) / rest;
            }
            rows.push_back(SweepRow{g, evaluate_with(problem, w, problem.criteria)});
        }
        return rows;
    }

    DecisionProblem with_cost(const DecisionProblem& problem, std::size_t architecture, double cost)
    {
        DecisionProblem copy = problem;
        copy.architectures.at(architecture).cost = cost;
        return copy;
    }

    BreakEvenResult breakeven_cost(const DecisionProblem& problem, const std::string& architecture)
    {
        validate(problem);
        const std::size_t k = architecture_index(problem, architecture);
        const std::size_t m = problem.architectures.size();

        BreakEvenResult result;
        result.architecture = architecture;
        result.current_cost = problem.architectures[k].cost;

        const double wc = problem.criteria.cost_weight;
        const double wd = problem.criteria.performance_weight;
        if (wc == 0.0)
        {
            result.status = BreakEvenStatus::unbounded;
            result.cost_weight_zero = true;
            result.explanation = "unbounded (cost has zero weight)";
            return result;
        }

        const NormalizedScores scores = normalize(problem);
        const std::vector<double> perf = performance_component(problem, scores);

        double others = 0.0; // sum of reciprocal costs of the competitors
        for (std::size_t p = 0; p < m; ++p)
        {
            if (p != k)
            {
                others += 1.0 / problem.architectures[p].cost;
            }
        }

        // Against competitor p, with x = 1/c_k, the gain gap is
        // w_c (x - r_p) / (x + S) - w_d (P_p - P_k), increasing in x, so each
        // competitor imposes at most one threshold x_p = (r_p + d S) / (1 - d)
        // with d = w_d (P_p - P_k) / w_c.
        std::optional<std::size_t> binding;
        double                     best_cost = 0.0;
        std::optional<std::size_t> blocker;
        double                     worst_delta = 0.0;
        for (std::size_t p = 0; p < m; ++p)
        {
            if (p == k)
            {
                continue;
            }
            const double cp = problem.architectures[p].cost;
            const double delta = wd * (perf[p] - perf[k]) / wc;
            if (delta >= 1.0)
            {
                if (!blocker || delta > worst_delta)
                {
                    blocker = p;
                    worst_delta = delta;
                }
                continue;
            }
            if (delta <= -(1.0 / cp) / others)
            {
                continue; // k beats p at every cost
            }
            // 1/x_p, multiplied through by c_p so that delta = 0 yields c_p exactly.
            const double threshold = cp * (1.0 - delta) / (1.0 + delta * others * cp);
            if (!binding || threshold < best_cost)
            {
                binding = p;
                best_cost = threshold;
            }
        }

        if (blocker)
        {
            result.status = BreakEvenStatus::infeasible;
            result.binding_competitor = problem.architectures[*blocker].id;
            result.explanation = "infeasible: " + architecture + " cannot match the gain of " +
                                 problem.architectures[*blocker].id + " at any positive cost";
            return result;
        }
        if (!binding)
        {
            result.status = BreakEvenStatus::unbounded;
            result.explanation = "unbounded: " + architecture + " keeps the highest gain at any cost";
            return result;
        }

        result.status = BreakEvenStatus::bounded;
        result.max_cost = best_cost;
        result.binding_competitor = problem.architectures[*binding].id;
        result.explanation = "above this cost " + problem.architectures[*binding].id + " has the higher gain";

        const GainReport check = evaluate(with_cost(problem, k, best_cost));
        if (std::abs(check.gains[k] - check.gains[*binding]) > 1e-9)
        {
            throw std::logic_error("break-even threshold does not reproduce a gain tie");
        }
        return result;
    }
}
