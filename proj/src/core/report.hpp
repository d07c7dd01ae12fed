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

#include <string>
#include <string_view>
#include <vector>

#include "gain.hpp"
#include "ingest.hpp"
#include "sensitivity.hpp"

#ifndef GAINFN_VERSION
#define GAINFN_VERSION "0.0.0"
#endif

namespace gainfn::report
{
    inline constexpr std::string_view tool_name = "gainfn";
    inline constexpr std::string_view tool_version = GAINFN_VERSION;

    enum class Format
    {
        json,
        table,
    };

    /// Fixed five-decimal rendering used by every human table. Rounds the
    /// exact binary value half-to-even.
    std::string round5(double value);

    // Every renderer returns a complete document ending in a newline. JSON
    // documents carry full binary64 precision with a fixed key order.

    std::string render_evaluation(const ingest::LoadedProblem& loaded, const GainReport& report, Format format);

    struct WeightsResult
    {
        ingest::WeightDerivation derivation;
        std::vector<std::string> warnings;
    };

    WeightsResult derive_block_weights(const ingest::JudgmentBlock& block);
    std::string   render_weights(const WeightsResult& result, Format format);

    std::string render_crossovers(const ingest::LoadedProblem& loaded, const sensitivity::CrossoverAnalysis& analysis,
                                  Format format);

    std::string render_scenarios(const ingest::LoadedProblem& loaded, const std::vector<sensitivity::ScenarioRow>& rows,
                                 Format format);

    std::string render_sweep(const ingest::LoadedProblem& loaded, const std::string& application,
                             const std::vector<sensitivity::SweepRow>& rows, Format format);

    std::string render_breakeven(const ingest::LoadedProblem& loaded, const sensitivity::BreakEvenResult& result,
                                 Format format);

    /// Warnings carried by a GainReport plus those raised while loading.
    std::vector<std::string> collect_warnings(const ingest::LoadedProblem& loaded, const GainReport* report = nullptr);
}
