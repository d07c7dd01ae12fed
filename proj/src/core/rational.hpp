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

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gainfn
{
    __extension__ using wide_int = __int128;

    /// Exact fraction with a positive denominator, always stored in lowest
    /// terms. Arithmetic throws std::overflow_error instead of wrapping.
    class Rational
    {
    public:
        constexpr Rational() = default;
        constexpr Rational(std::int64_t value)
            : m_num(value)
        {
        }
        Rational(std::int64_t num, std::int64_t den)
        {
            if (den == 0)
            {
                throw std::domain_error("rational with zero denominator");
            }
            assign(static_cast<wide_int>(num), static_cast<wide_int>(den));
        }

        std::int64_t num() const noexcept { return m_num; }
        std::int64_t den() const noexcept { return m_den; }

        double to_double() const noexcept
        {
            return static_cast<double>(m_num) / static_cast<double>(m_den);
        }

        Rational reciprocal() const
        {
            if (m_num == 0)
            {
                throw std::domain_error("reciprocal of zero");
            }
            return Rational(m_den, m_num);
        }

        friend Rational operator+(const Rational& a, const Rational& b)
        {
            Rational r;
            r.assign(static_cast<wide_int>(a.m_num) * b.m_den + static_cast<wide_int>(b.m_num) * a.m_den,
                     static_cast<wide_int>(a.m_den) * b.m_den);
            return r;
        }

        friend Rational operator*(const Rational& a, const Rational& b)
        {
            Rational r;
            r.assign(static_cast<wide_int>(a.m_num) * b.m_num, static_cast<wide_int>(a.m_den) * b.m_den);
            return r;
        }

        friend Rational operator/(const Rational& a, const Rational& b) { return a * b.reciprocal(); }

        Rational& operator+=(const Rational& other) { return *this = *this + other; }

        friend bool operator==(const Rational&, const Rational&) = default;

        friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
        {
            return static_cast<wide_int>(a.m_num) * b.m_den <=> static_cast<wide_int>(b.m_num) * a.m_den;
        }

        std::string to_string() const
        {
            return m_den == 1 ? std::to_string(m_num) : std::to_string(m_num) + "/" + std::to_string(m_den);
        }

    private:
        void assign(wide_int num, wide_int den)
        {
            if (den < 0)
            {
                num = -num;
                den = -den;
            }
            wide_int a = num < 0 ? -num : num;
            wide_int b = den;
            while (b != 0)
            {
                wide_int t = a % b;
                a = b;
                b = t;
            }
            if (a > 1)
            {
                num /= a;
                den /= a;
            }
            constexpr wide_int lo = INT64_MIN;
            constexpr wide_int hi = INT64_MAX;
            if (num < lo || num > hi || den > hi)
            {
                throw std::overflow_error("rational overflow");
            }
            m_num = static_cast<std::int64_t>(num);
            m_den = static_cast<std::int64_t>(den);
        }

        std::int64_t m_num = 0;
        std::int64_t m_den = 1;
    };
}
