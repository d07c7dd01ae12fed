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

#include "ahp.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "errors.hpp"

namespace gainfn::ahp
{
    namespace
    {
        bool on_scale(const Rational& r)
        {
            const auto n = r.num();
            const auto d = r.den();
            return (d == 1 && n >= 1 && n <= 9) || (n == 1 && d >= 1 && d <= 9);
        }

        std::int64_t parse_int(const std::string& text, const std::string& whole)
        {
            std::int64_t value = 0;
            const char*  first = text.data();
            const char*  last = text.data() + text.size();
            auto [ptr, ec] = std::from_chars(first, last, value);
            if (ec != std::errc() || ptr != last)
            {
                throw_invalid("", "intensity '" + whole + "' is not of the form k or 1/k");
            }
            return value;
        }
    }

    JudgmentIntensity::JudgmentIntensity(Rational value)
        : m_value(value)
    {
        if (value < Rational(1, 9) || value > Rational(9))
        {
            throw_invalid("", "intensity " + value.to_string() + " is outside [1/9, 9]");
        }
        if (!on_scale(value))
        {
            throw_invalid("", "intensity " + value.to_string() + " is not on the 1..9 scale or its reciprocals");
        }
    }

    JudgmentIntensity JudgmentIntensity::from_number(double value)
    {
        if (!std::isfinite(value) || value <= 0.0)
        {
            throw_invalid("", "intensity must be a positive finite number");
        }
        if (value < 1.0 / 9.0 - 1e-9 || value > 9.0)
        {
            throw_invalid("", "intensity " + std::to_string(value) + " is outside [1/9, 9]");
        }
        for (std::int64_t k = 1; k <= 9; ++k)
        {
            if (value == static_cast<double>(k))
            {
                return JudgmentIntensity(Rational(k));
            }
            if (std::abs(value - 1.0 / static_cast<double>(k)) <= 1e-9)
            {
                return JudgmentIntensity(Rational(1, k));
            }
        }
        throw_invalid("", "intensity " + std::to_string(value) + " is not on the 1..9 scale or its reciprocals");
    }

    JudgmentIntensity JudgmentIntensity::from_string(const std::string& text)
    {
        const auto slash = text.find('/');
        if (slash == std::string::npos)
        {
            return JudgmentIntensity(Rational(parse_int(text, text)));
        }
        const auto num = parse_int(text.substr(0, slash), text);
        const auto den = parse_int(text.substr(slash + 1), text);
        if (den <= 0 || num <= 0)
        {
            throw_invalid("", "intensity '" + text + "' must be positive");
        }
        return JudgmentIntensity(Rational(num, den));
    }

    ComparisonMatrix::ComparisonMatrix(std::vector<std::string> labels, std::vector<Rational> entries)
        : m_labels(std::move(labels))
        , m_entries(std::move(entries))
    {
        const std::size_t m = m_labels.size();
        if (m < 2)
        {
            throw_invalid("", "a comparison matrix needs at least two items");
        }
        if (m > max_items)
        {
            throw_invalid("", "a comparison matrix supports at most " + std::to_string(max_items) + " items");
        }
        if (m_entries.size() != m * m)
        {
            throw_invalid("", "comparison matrix entries do not match its labels");
        }
        std::set<std::string> seen;
        for (const auto& label : m_labels)
        {
            if (!seen.insert(label).second)
            {
                throw_invalid("", "duplicate item '" + label + "'");
            }
        }
        const Rational lo(1, 9);
        const Rational hi(9);
        for (std::size_t i = 0; i < m; ++i)
        {
            if (at(i, i) != Rational(1))
            {
                throw_invalid("", "diagonal entry for '" + m_labels[i] + "' must be 1");
            }
            for (std::size_t j = i + 1; j < m; ++j)
            {
                const Rational& a = at(i, j);
                if (a <= Rational(0) || a < lo || a > hi)
                {
                    throw_invalid("", "entry (" + m_labels[i] + ", " + m_labels[j] + ") is outside [1/9, 9]");
                }
                if (a * at(j, i) != Rational(1))
                {
                    throw_invalid("", "entries (" + m_labels[i] + ", " + m_labels[j] + ") are not reciprocal");
                }
            }
        }
    }

    BuiltMatrix build_comparison_matrix(std::vector<std::string> labels, std::span<const Judgment> judgments)
    {
        const std::size_t m = labels.size();
        std::map<std::string, std::size_t> index;
        for (std::size_t i = 0; i < m; ++i)
        {
            if (!index.emplace(labels[i], i).second)
            {
                throw_invalid("", "duplicate item '" + labels[i] + "'");
            }
        }

        std::vector<Rational> entries(m * m, Rational(1));
        std::vector<bool>     judged(m * m, false);
        for (std::size_t n = 0; n < judgments.size(); ++n)
        {
            const Judgment& jd = judgments[n];
            const std::string path = "judgments[" + std::to_string(n) + "]";
            const auto row = index.find(jd.row);
            if (row == index.end())
            {
                throw_not_found(path, "judgment references unknown item '" + jd.row + "'");
            }
            const auto col = index.find(jd.column);
            if (col == index.end())
            {
                throw_not_found(path, "judgment references unknown item '" + jd.column + "'");
            }
            const std::size_t i = row->second;
            const std::size_t j = col->second;
            const Rational& value = jd.intensity.value();
            if (i == j)
            {
                if (value != Rational(1))
                {
                    throw_invalid(path, "item '" + jd.row + "' compared with itself must have intensity 1");
                }
                continue;
            }
            if (judged[i * m + j])
            {
                if (entries[i * m + j] != value)
                {
                    throw_invalid(path, "pair (" + jd.row + ", " + jd.column + ") judged twice with conflicting intensities");
                }
                continue;
            }
            entries[i * m + j] = value;
            entries[j * m + i] = value.reciprocal();
            judged[i * m + j] = judged[j * m + i] = true;
        }

        std::vector<std::pair<std::string, std::string>> defaulted;
        for (std::size_t i = 0; i < m; ++i)
        {
            for (std::size_t j = i + 1; j < m; ++j)
            {
                if (!judged[i * m + j])
                {
                    defaulted.emplace_back(labels[i], labels[j]);
                }
            }
        }
        return BuiltMatrix{ComparisonMatrix(std::move(labels), std::move(entries)), std::move(defaulted)};
    }

    WeightVector derive_weights(const ComparisonMatrix& matrix)
    {
        const std::size_t m = matrix.size();
        WeightVector out{matrix.labels(), std::vector<double>(m, 0.0)};
        try
        {
            std::vector<Rational> column_sum(m, Rational(0));
            for (std::size_t j = 0; j < m; ++j)
            {
                for (std::size_t i = 0; i < m; ++i)
                {
                    column_sum[j] += matrix.at(i, j);
                }
            }
            const Rational inv_m(1, static_cast<std::int64_t>(m));
            for (std::size_t i = 0; i < m; ++i)
            {
                Rational row(0);
                for (std::size_t j = 0; j < m; ++j)
                {
                    row += matrix.at(i, j) / column_sum[j];
                }
                out.weights[i] = (row * inv_m).to_double();
            }
        }
        catch (const std::overflow_error&)
        {
            // Entries with large coprime denominators; fall back to binary64.
            std::vector<double> column_sum(m, 0.0);
            for (std::size_t j = 0; j < m; ++j)
            {
                for (std::size_t i = 0; i < m; ++i)
                {
                    column_sum[j] += matrix.at(i, j).to_double();
                }
            }
            for (std::size_t i = 0; i < m; ++i)
            {
                double row = 0.0;
                for (std::size_t j = 0; j < m; ++j)
                {
                    row += matrix.at(i, j).to_double() / column_sum[j];
                }
                out.weights[i] = row / static_cast<double>(m);
            }
        }
        return out;
    }

    double random_index(std::size_t m)
    {
        static constexpr std::array<double, 11> table = {0.0, 0.0, 0.0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49};
        if (m >= table.size())
        {
            throw std::out_of_range("no random index for " + std::to_string(m) + " items");
        }
        return table[m];
    }

    double consistency_ratio(const ComparisonMatrix& matrix)
    {
        const std::size_t m = matrix.size();
        if (m <= 2)
        {
            return 0.0;
        }
        const auto w = derive_weights(matrix).weights;
        double lambda = 0.0;
        for (std::size_t i = 0; i < m; ++i)
        {
            double aw = 0.0;
            for (std::size_t j = 0; j < m; ++j)
            {
                aw += matrix.at(i, j).to_double() * w[j];
            }
            lambda += aw / w[i];
        }
        lambda /= static_cast<double>(m);
        const double ci = (lambda - static_cast<double>(m)) / static_cast<double>(m - 1);
        return std::max(0.0, ci / random_index(m));
    }
}
