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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace gainfn::ahp
{
    /// Largest comparison matrix accepted. The random-index table used by the
    /// consistency ratio is defined up to this size.
    inline constexpr std::size_t max_items = 10;

    /// Conventional acceptance bound for the consistency ratio.
    inline constexpr double consistency_warning_threshold = 0.1;

    /// A value on the 1..9 pairwise-comparison scale or the reciprocal of one.
    class JudgmentIntensity
    {
    public:
        /// Throws InputError(invalid) unless `value` is k or 1/k for k in 1..9.
        explicit JudgmentIntensity(Rational value);

        /// Accepts integers 1..9 and their reciprocals, the latter matched to
        /// within 1e-9 so that a decimal such as 0.142857142857 reads as 1/7.
        static JudgmentIntensity from_number(double value);

        /// Accepts "k" or "1/k".
        static JudgmentIntensity from_string(const std::string& text);

        const Rational& value() const noexcept { return m_value; }

    private:
        Rational m_value;
    };

    struct Judgment
    {
        std::string       row;    // the item judged more (or less) important
        std::string       column; // the item it is compared against
        JudgmentIntensity intensity;
    };

    class ComparisonMatrix
    {
    public:
        /// Validates the reciprocal-matrix invariants: unit diagonal, exact
        /// reciprocity, off-diagonal entries within [1/9, 9], distinct labels,
        /// 2 <= size <= max_items.
        ComparisonMatrix(std::vector<std::string> labels, std::vector<Rational> entries);

        std::size_t size() const noexcept { return m_labels.size(); }
        const std::vector<std::string>& labels() const noexcept { return m_labels; }
        const Rational& at(std::size_t row, std::size_t col) const { return m_entries[row * size() + col]; }

    private:
        std::vector<std::string> m_labels;
        std::vector<Rational>    m_entries;
    };

    struct BuiltMatrix
    {
        ComparisonMatrix matrix;
        /// Unordered pairs (in label order) that received no judgment and
        /// were filled with equal importance.
        std::vector<std::pair<std::string, std::string>> defaulted_pairs;
    };

    struct WeightVector
    {
        std::vector<std::string> labels;
        std::vector<double>      weights;
    };

    BuiltMatrix build_comparison_matrix(std::vector<std::string> labels, std::span<const Judgment> judgments);

    /// Normalizes every column to sum 1 and averages each row. The
    /// normalization runs in exact rational arithmetic so each weight is the
    /// correctly rounded value of the exact row average.
    WeightVector derive_weights(const ComparisonMatrix& matrix);

    /// Saaty's random consistency index for an m-item matrix.
    double random_index(std::size_t m);

    /// CI/RI with lambda_max estimated as the mean of (A w)_i / w_i over the
    /// derived weights. Zero for matrices of two items and for consistent
    /// matrices (small negative estimates are clamped to zero).
    double consistency_ratio(const ComparisonMatrix& matrix);
}
