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

#include "gain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>

#include "errors.hpp"

namespace gainfn
{
    namespace
    {
        std::string fmt(double v)
        {
            std::ostringstream os;
            os.precision(17);
            os << v;
            return os.str();
        }

        void check_criteria(const CriteriaWeights& c)
        {
            for (double w : {c.cost_weight, c.performance_weight})
            {
                if (!std::isfinite(w) || w < 0.0 || w > 1.0)
                {
                    throw_invalid("criteria", "criteria weights must lie in [0, 1]");
                }
            }
            if (std::abs(c.cost_weight + c.performance_weight - 1.0) > criteria_weight_tolerance)
            {
                throw_invalid("criteria", "cost and performance weights sum to " +
                                              fmt(c.cost_weight + c.performance_weight) + ", not 1");
            }
        }

        double weight_sum(std::span<const double> w)
        {
            return std::accumulate(w.begin(), w.end(), 0.0);
        }

        /// Index of the first element whose id repeats an earlier one.
        template <class T>
        std::optional<std::size_t> first_duplicate(const std::vector<T>& items)
        {
            if (items.size() <= 16)
            {
                for (std::size_t i = 1; i < items.size(); ++i)
                {
                    for (std::size_t j = 0; j < i; ++j)
                    {
                        if (items[i].id == items[j].id)
                        {
                            return i;
                        }
                    }
                }
                return std::nullopt;
            }
            std::vector<std::size_t> order(items.size());
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return items[a].id != items[b].id ? items[a].id < items[b].id : a < b;
            });
            std::optional<std::size_t> found;
            for (std::size_t i = 1; i < order.size(); ++i)
            {
                if (items[order[i]].id == items[order[i - 1]].id && (!found || order[i] < *found))
                {
                    found = order[i];
                }
            }
            return found;
        }

        void check_costs(std::span<const Architecture> architectures)
        {
            for (std::size_t k = 0; k < architectures.size(); ++k)
            {
                const double c = architectures[k].cost;
                if (!std::isfinite(c) || c <= 0.0)
                {
                    throw_invalid("architectures[" + std::to_string(k) + "].cost",
                                  "cost of architecture '" + architectures[k].id + "' must be positive and finite");
                }
            }
        }

        void check_times(const TimeMatrix& times)
        {
            for (std::size_t j = 0; j < times.seconds.rows; ++j)
            {
                for (std::size_t k = 0; k < times.seconds.cols; ++k)
                {
                    const double t = times.at(j, k);
                    if (std::isfinite(t) && t > 0.0)
                    {
                        continue;
                    }
                    const std::string pair = "(" + times.applications[j] + ", " + times.architectures[k] + ")";
                    if (std::isnan(t))
                    {
                        throw_invalid("measurements", "no execution time for " + pair);
                    }
                    throw_invalid("measurements", "execution time for " + pair + " must be positive and finite");
                }
            }
        }

        GainReport compute(const DecisionProblem& problem, std::vector<double> app_weights,
                           const CriteriaWeights& criteria)
        {
            const std::size_t n = problem.applications.size();
            const std::size_t m = problem.architectures.size();

            GainReport report;
            report.scores = normalize(problem);
            report.criteria = criteria;
            report.application_weights = std::move(app_weights);
            report.architectures.reserve(m);
            for (const auto& a : problem.architectures)
            {
                report.architectures.push_back(a.id);
            }

            report.gains.assign(m, 0.0);
            for (std::size_t k = 0; k < m; ++k)
            {
                double perf = 0.0;
                for (std::size_t j = 0; j < n; ++j)
                {
                    perf += report.application_weights[j] * report.scores.perf_share(j, k);
                }
                report.gains[k] = criteria.performance_weight * perf + criteria.cost_weight * report.scores.cost_share[k];
            }

            report.per_application_gains = Matrix(n, m);
            for (std::size_t j = 0; j < n; ++j)
            {
                for (std::size_t k = 0; k < m; ++k)
                {
                    report.per_application_gains(j, k) = criteria.cost_weight * report.scores.cost_share[k] +
                                                          criteria.performance_weight * report.scores.perf_share(j, k);
                }
            }

            const auto& archs = problem.architectures;
            auto by_cost_then_id = [&](std::size_t a, std::size_t b) {
                if (archs[a].cost != archs[b].cost)
                {
                    return archs[a].cost < archs[b].cost;
                }
                return archs[a].id < archs[b].id;
            };

            std::vector<std::size_t> order(m);
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                if (report.gains[a] != report.gains[b])
                {
                    return report.gains[a] > report.gains[b];
                }
                return by_cost_then_id(a, b);
            });

            // Chain near-equal neighbours into tie groups and order each group
            // by the tie-break rule.
            std::size_t start = 0;
            while (start < m)
            {
                std::size_t end = start + 1;
                while (end < m && report.gains[order[end - 1]] - report.gains[order[end]] <= gain_tie_tolerance)
                {
                    ++end;
                }
                if (end - start > 1)
                {
                    std::sort(order.begin() + static_cast<std::ptrdiff_t>(start),
                              order.begin() + static_cast<std::ptrdiff_t>(end), by_cost_then_id);
                    std::vector<std::string> group;
                    for (std::size_t i = start; i < end; ++i)
                    {
                        group.push_back(archs[order[i]].id);
                    }
                    if (start == 0)
                    {
                        report.winner_tied = true;
                    }
                    report.ties.push_back(std::move(group));
                }
                start = end;
            }

            report.ranking.reserve(m);
            for (std::size_t k : order)
            {
                report.ranking.push_back(archs[k].id);
            }
            report.winner = report.ranking.front();
            if (report.winner_tied)
            {
                std::string names;
                for (const auto& id : report.ties.front())
                {
                    names += (names.empty() ? "" : ", ") + id;
                }
                report.warnings.push_back("tie for the highest gain between " + names + "; " + report.winner +
                                          " selected by lower cost, then id");
            }
            return report;
        }
    }

    void validate_structure(const DecisionProblem& problem)
    {
        if (problem.applications.empty())
        {
            throw_invalid("applications", "at least one application is required");
        }
        if (problem.architectures.size() < 2)
        {
            throw_invalid("architectures", "at least two architectures are required to make a decision");
        }

        for (std::size_t j = 0; j < problem.applications.size(); ++j)
        {
            const auto& app = problem.applications[j];
            if (app.id.empty())
            {
                throw_invalid("applications[" + std::to_string(j) + "].id", "application id must not be empty");
            }
            if (!std::isfinite(app.weight) || app.weight <= 0.0)
            {
                throw_invalid("applications[" + std::to_string(j) + "].weight",
                              "weight of application '" + app.id + "' must be positive");
            }
        }
        if (auto dup = first_duplicate(problem.applications))
        {
            throw_invalid("applications[" + std::to_string(*dup) + "].id",
                          "duplicate application '" + problem.applications[*dup].id + "'");
        }
        for (std::size_t k = 0; k < problem.architectures.size(); ++k)
        {
            if (problem.architectures[k].id.empty())
            {
                throw_invalid("architectures[" + std::to_string(k) + "].id", "architecture id must not be empty");
            }
        }
        if (auto dup = first_duplicate(problem.architectures))
        {
            throw_invalid("architectures[" + std::to_string(*dup) + "].id",
                          "duplicate architecture '" + problem.architectures[*dup].id + "'");
        }
        check_costs(problem.architectures);

        const auto& t = problem.times;
        const bool labels_match =
            t.applications.size() == problem.applications.size() &&
            t.architectures.size() == problem.architectures.size() &&
            std::equal(t.applications.begin(), t.applications.end(), problem.applications.begin(),
                       [](const std::string& a, const Application& b) { return a == b.id; }) &&
            std::equal(t.architectures.begin(), t.architectures.end(), problem.architectures.begin(),
                       [](const std::string& a, const Architecture& b) { return a == b.id; });
        if (!labels_match || t.seconds.rows != t.applications.size() || t.seconds.cols != t.architectures.size())
        {
            throw_invalid("measurements", "time matrix does not match the application and architecture lists");
        }
        check_times(t);
        check_criteria(problem.criteria);
    }

    void validate(const DecisionProblem& problem)
    {
        validate_structure(problem);
        std::vector<double> w;
        for (const auto& a : problem.applications)
        {
            w.push_back(a.weight);
        }
        const double sum = weight_sum(w);
        if (std::abs(sum - 1.0) > application_weight_tolerance)
        {
            throw_invalid("applications", "application weights sum to " + fmt(sum) + ", not 1");
        }
    }

    std::vector<double> normalize_costs(std::span<const Architecture> architectures)
    {
        check_costs(architectures);
        std::vector<double> share(architectures.size());
        double total = 0.0;
        for (std::size_t k = 0; k < architectures.size(); ++k)
        {
            share[k] = 1.0 / architectures[k].cost;
            total += share[k];
        }
        for (double& s : share)
        {
            s /= total;
        }
        return share;
    }

    Matrix normalize_times(const TimeMatrix& times)
    {
        check_times(times);
        const std::size_t n = times.seconds.rows;
        const std::size_t m = times.seconds.cols;
        Matrix share(n, m);
        for (std::size_t j = 0; j < n; ++j)
        {
            double total = 0.0;
            for (std::size_t k = 0; k < m; ++k)
            {
                share(j, k) = 1.0 / times.at(j, k);
                total += share(j, k);
            }
            for (std::size_t k = 0; k < m; ++k)
            {
                share(j, k) /= total;
            }
        }
        return share;
    }

    NormalizedScores normalize(const DecisionProblem& problem)
    {
        NormalizedScores s;
        s.cost_share = normalize_costs(problem.architectures);
        s.reciprocal_cost.reserve(problem.architectures.size());
        for (const auto& a : problem.architectures)
        {
            s.reciprocal_cost.push_back(1.0 / a.cost);
        }
        s.perf_share = normalize_times(problem.times);
        s.reciprocal_time = Matrix(problem.times.seconds.rows, problem.times.seconds.cols);
        for (std::size_t i = 0; i < s.reciprocal_time.values.size(); ++i)
        {
            s.reciprocal_time.values[i] = 1.0 / problem.times.seconds.values[i];
        }
        return s;
    }

    Matrix per_application_gain(const DecisionProblem& problem, const NormalizedScores& scores)
    {
        const auto& c = problem.criteria;
        Matrix g(scores.perf_share.rows, scores.perf_share.cols);
        for (std::size_t j = 0; j < g.rows; ++j)
        {
            for (std::size_t k = 0; k < g.cols; ++k)
            {
                g(j, k) = c.cost_weight * scores.cost_share[k] + c.performance_weight * scores.perf_share(j, k);
            }
        }
        return g;
    }

    GainReport evaluate(const DecisionProblem& problem, const EvaluateOptions& options)
    {
        validate_structure(problem);
        std::vector<double> w;
        for (const auto& a : problem.applications)
        {
            w.push_back(a.weight);
        }
        const double sum = weight_sum(w);
        std::string renormalized;
        if (std::abs(sum - 1.0) > application_weight_tolerance)
        {
            if (!options.renormalize_application_weights)
            {
                throw_invalid("applications", "application weights sum to " + fmt(sum) + ", not 1");
            }
            for (double& x : w)
            {
                x /= sum;
            }
            renormalized = "application weights summed to " + fmt(sum) + "; rescaled proportionally to sum 1";
        }
        GainReport report = compute(problem, std::move(w), problem.criteria);
        if (!renormalized.empty())
        {
            report.warnings.insert(report.warnings.begin(), renormalized);
        }
        return report;
    }

    GainReport evaluate_with(const DecisionProblem& problem, std::span<const double> application_weights,
                             const CriteriaWeights& criteria)
    {
        validate_structure(problem);
        check_criteria(criteria);
        if (application_weights.size() != problem.applications.size())
        {
            throw_invalid("applications", "expected one weight per application");
        }
        for (std::size_t j = 0; j < application_weights.size(); ++j)
        {
            const double w = application_weights[j];
            if (!std::isfinite(w) || w < 0.0 || w > 1.0)
            {
                throw_invalid("applications[" + std::to_string(j) + "].weight",
                              "weight of application '" + problem.applications[j].id + "' must lie in [0, 1]");
            }
        }
        const double sum = weight_sum(application_weights);
        if (std::abs(sum - 1.0) > application_weight_tolerance)
        {
            throw_invalid("applications", "application weights sum to " + fmt(sum) + ", not 1");
        }
        return compute(problem, {application_weights.begin(), application_weights.end()}, criteria);
    }

    const std::string& select(const GainReport& report) { return report.winner; }

    std::size_t architecture_index(const DecisionProblem& problem, const std::string& id)
    {
        for (std::size_t k = 0; k < problem.architectures.size(); ++k)
        {
            if (problem.architectures[k].id == id)
            {
                return k;
            }
        }
        throw_not_found("architecture", "unknown architecture '" + id + "'");
    }

    std::size_t application_index(const DecisionProblem& problem, const std::string& id)
    {
        for (std::size_t j = 0; j < problem.applications.size(); ++j)
        {
            if (problem.applications[j].id == id)
            {
                return j;
            }
        }
        throw_not_found("application", "unknown application '" + id + "'");
    }
}
