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

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace gainfn
{
    inline constexpr double application_weight_tolerance = 1e-9;
    inline constexpr double criteria_weight_tolerance = 1e-12;
    /// Gains closer than this are treated as equal when ranking.
    inline constexpr double gain_tie_tolerance = 1e-12;

    struct Application
    {
        std::string id;
        double      weight = 0.0;
    };

    struct Architecture
    {
        std::string id;
        double      cost = 0.0;
        std::string currency = "USD";
    };

    struct CriteriaWeights
    {
        double cost_weight = 0.5;
        double performance_weight = 0.5;
    };

    /// Dense row-major matrix of doubles.
    struct Matrix
    {
        std::size_t         rows = 0;
        std::size_t         cols = 0;
        std::vector<double> values;

        Matrix() = default;
        Matrix(std::size_t r, std::size_t c, double fill = 0.0)
            : rows(r)
            , cols(c)
            , values(r * c, fill)
        {
        }

        double&       operator()(std::size_t r, std::size_t c) { return values[r * cols + c]; }
        double        operator()(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
        std::span<const double> row(std::size_t r) const { return {values.data() + r * cols, cols}; }

        friend bool operator==(const Matrix&, const Matrix&) = default;
    };

    /// Execution times in seconds, one row per application and one column per
    /// architecture. A missing measurement is stored as NaN.
    struct TimeMatrix
    {
        std::vector<std::string> applications;
        std::vector<std::string> architectures;
        Matrix                   seconds;

        TimeMatrix() = default;
        TimeMatrix(std::vector<std::string> apps, std::vector<std::string> archs)
            : applications(std::move(apps))
            , architectures(std::move(archs))
            , seconds(applications.size(), architectures.size(), std::numeric_limits<double>::quiet_NaN())
        {
        }

        double& at(std::size_t app, std::size_t arch) { return seconds(app, arch); }
        double  at(std::size_t app, std::size_t arch) const { return seconds(app, arch); }
    };

    struct DecisionProblem
    {
        std::vector<Application>  applications;
        std::vector<Architecture> architectures;
        TimeMatrix                times;
        CriteriaWeights           criteria;
    };

    /// Throws InputError for any violated problem invariant: empty or
    /// duplicate ids, fewer than two architectures, bad costs or times,
    /// mismatched matrix labels, non-normalized weights.
    void validate(const DecisionProblem& problem);

    /// Same checks as validate() except that application weights are
    /// allowed to sum to something other than one.
    void validate_structure(const DecisionProblem& problem);

    struct NormalizedScores
    {
        std::vector<double> reciprocal_cost; // 1 / c_k
        std::vector<double> cost_share;      // reciprocal cost over its sum
        Matrix              reciprocal_time; // 1 / t(j,k)
        Matrix              perf_share;      // reciprocal time over its row sum
    };

    std::vector<double> normalize_costs(std::span<const Architecture> architectures);
    Matrix              normalize_times(const TimeMatrix& times);
    NormalizedScores    normalize(const DecisionProblem& problem);

    /// g(j,k) = w_c * cost_share[k] + w_d * perf_share(j,k).
    Matrix per_application_gain(const DecisionProblem& problem, const NormalizedScores& scores);

    struct GainReport
    {
        std::vector<std::string> architectures; // problem order
        std::vector<double>      application_weights; // weights actually used
        CriteriaWeights          criteria;
        std::vector<double>      gains;
        Matrix                   per_application_gains;
        std::vector<std::string> ranking;
        std::string              winner;
        /// Groups of architectures whose gains agree within the tie
        /// tolerance, each ordered as ranked. Only groups of two or more.
        std::vector<std::vector<std::string>> ties;
        bool                     winner_tied = false;
        NormalizedScores         scores;
        std::vector<std::string> warnings;
    };

    struct EvaluateOptions
    {
        /// Rescale application weights that do not sum to one instead of
        /// rejecting the problem. The rescale is reported as a warning.
        bool renormalize_application_weights = false;
    };

    GainReport evaluate(const DecisionProblem& problem, const EvaluateOptions& options = {});

    /// Evaluates with substituted weights. Application weights must be
    /// non-negative and sum to one; zero weights are allowed so that a sweep
    /// can drop an application entirely.
    GainReport evaluate_with(const DecisionProblem& problem, std::span<const double> application_weights,
                             const CriteriaWeights& criteria);

    /// Highest gain; ties go to the cheaper architecture, then the smaller id.
    const std::string& select(const GainReport& report);

    std::size_t architecture_index(const DecisionProblem& problem, const std::string& id);
    std::size_t application_index(const DecisionProblem& problem, const std::string& id);
}
