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

#include "report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "ahp.hpp"

namespace gainfn::report
{
    using ojson = nlohmann::ordered_json;

    namespace
    {
        ojson header(std::string_view command)
        {
            ojson doc;
            doc["tool"] = {{"name", tool_name}, {"version", tool_version}};
            doc["command"] = command;
            return doc;
        }

        std::string finish(const ojson& doc) { return doc.dump(2) + "\n"; }

        ojson keyed(const std::vector<std::string>& keys, const std::vector<double>& values)
        {
            ojson o = ojson::object();
            for (std::size_t i = 0; i < keys.size(); ++i)
            {
                o[keys[i]] = values[i];
            }
            return o;
        }

        ojson keyed(const std::vector<std::string>& rows, const std::vector<std::string>& cols, const Matrix& m)
        {
            ojson o = ojson::object();
            for (std::size_t r = 0; r < rows.size(); ++r)
            {
                ojson inner = ojson::object();
                for (std::size_t c = 0; c < cols.size(); ++c)
                {
                    inner[cols[c]] = m(r, c);
                }
                o[rows[r]] = std::move(inner);
            }
            return o;
        }

        std::vector<std::string> app_ids(const DecisionProblem& p)
        {
            std::vector<std::string> ids;
            for (const auto& a : p.applications)
            {
                ids.push_back(a.id);
            }
            return ids;
        }

        ojson derivation_json(const std::optional<ingest::WeightDerivation>& d)
        {
            if (!d)
            {
                return nullptr;
            }
            ojson pairs = ojson::array();
            for (const auto& [a, b] : d->defaulted_pairs)
            {
                pairs.push_back({a, b});
            }
            return {{"weights", keyed(d->weights.labels, d->weights.weights)},
                    {"consistency_ratio", d->consistency_ratio},
                    {"defaulted_pairs", pairs}};
        }

        ojson gain_summary(const GainReport& r)
        {
            ojson o;
            o["gains"] = keyed(r.architectures, r.gains);
            o["ranking"] = r.ranking;
            o["winner"] = r.winner;
            o["ties"] = r.ties;
            return o;
        }

        ojson strings(const std::vector<std::string>& v) { return v.empty() ? ojson::array() : ojson(v); }

        /// Fixed-width text table: first column left-aligned, the rest right-aligned.
        class TextTable
        {
        public:
            void add(std::vector<std::string> row) { m_rows.push_back(std::move(row)); }

            void section(std::string title) { m_rows.push_back({std::move(title)}); }

            std::string str() const
            {
                std::vector<std::size_t> width;
                for (const auto& row : m_rows)
                {
                    if (row.size() < 2)
                    {
                        continue;
                    }
                    width.resize(std::max(width.size(), row.size()), 0);
                    for (std::size_t i = 0; i < row.size(); ++i)
                    {
                        width[i] = std::max(width[i], row[i].size());
                    }
                }
                std::ostringstream os;
                for (const auto& row : m_rows)
                {
                    if (row.size() < 2)
                    {
                        os << (row.empty() ? "" : row[0]) << "\n";
                        continue;
                    }
                    os << "  " << row[0] << std::string(width[0] - row[0].size(), ' ');
                    for (std::size_t i = 1; i < row.size(); ++i)
                    {
                        os << "  " << std::string(width[i] - row[i].size(), ' ') << row[i];
                    }
                    os << "\n";
                }
                return os.str();
            }

        private:
            std::vector<std::vector<std::string>> m_rows;
        };

        std::string winner_line(const GainReport& r)
        {
            std::string line = "Winner: " + r.winner;
            if (r.winner_tied)
            {
                std::string others;
                for (const auto& id : r.ties.front())
                {
                    if (id != r.winner)
                    {
                        others += (others.empty() ? "" : ", ") + id;
                    }
                }
                line += " (tied with " + others + "; broken by lower cost, then id)";
            }
            return line + "\n";
        }
    }

    std::string round5(double value)
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.5f", value);
        return buf;
    }

    std::vector<std::string> collect_warnings(const ingest::LoadedProblem& loaded, const GainReport* report)
    {
        std::vector<std::string> out = loaded.warnings;
        if (report)
        {
            out.insert(out.end(), report->warnings.begin(), report->warnings.end());
        }
        return out;
    }

    std::string render_evaluation(const ingest::LoadedProblem& loaded, const GainReport& r, Format format)
    {
        const DecisionProblem& p = loaded.problem;
        const auto apps = app_ids(p);
        if (format == Format::json)
        {
            ojson doc = header("evaluate");
            doc["problem"] = ingest::serialize_problem(p);
            ojson meas = ojson::array();
            for (const auto& m : loaded.measurements)
            {
                meas.push_back({{"application", m.application},
                                {"architecture", m.architecture},
                                {"source", m.from_runs ? "runs" : "mean"},
                                {"count", m.summary.count},
                                {"mean", m.summary.mean},
                                {"stddev", m.summary.stddev},
                                {"ci_halfwidth", m.summary.ci_halfwidth},
                                {"ci_level", m.summary.ci_level}});
            }
            doc["measurements"] = meas;
            doc["weight_derivation"] = {{"applications", derivation_json(loaded.application_weights_ahp)},
                                        {"criteria", derivation_json(loaded.criteria_weights_ahp)}};
            doc["application_weights"] = keyed(apps, r.application_weights);
            doc["criteria"] = {{"cost_weight", r.criteria.cost_weight},
                               {"performance_weight", r.criteria.performance_weight}};
            doc["scores"] = {{"reciprocal_cost", keyed(r.architectures, r.scores.reciprocal_cost)},
                             {"cost_share", keyed(r.architectures, r.scores.cost_share)},
                             {"reciprocal_time", keyed(apps, r.architectures, r.scores.reciprocal_time)},
                             {"perf_share", keyed(apps, r.architectures, r.scores.perf_share)}};
            doc["per_application_gains"] = keyed(apps, r.architectures, r.per_application_gains);
            doc.update(gain_summary(r));
            doc["warnings"] = strings(collect_warnings(loaded, &r));
            doc["audit"] = strings(loaded.audit);
            return finish(doc);
        }

        TextTable t;
        t.section("Weights");
        for (std::size_t j = 0; j < apps.size(); ++j)
        {
            t.add({"w_" + apps[j], round5(r.application_weights[j])});
        }
        t.add({"w_c", round5(r.criteria.cost_weight)});
        t.add({"w_d", round5(r.criteria.performance_weight)});
        t.section("Gain(k)");
        for (std::size_t k = 0; k < r.architectures.size(); ++k)
        {
            t.add({"Gain(" + r.architectures[k] + ")", round5(r.gains[k])});
        }
        return t.str() + winner_line(r);
    }

    WeightsResult derive_block_weights(const ingest::JudgmentBlock& block)
    {
        const ahp::BuiltMatrix built = ahp::build_comparison_matrix(block.items, block.judgments);
        WeightsResult out;
        out.derivation.weights = ahp::derive_weights(built.matrix);
        out.derivation.consistency_ratio = ahp::consistency_ratio(built.matrix);
        out.derivation.defaulted_pairs = built.defaulted_pairs;
        for (const auto& [a, b] : built.defaulted_pairs)
        {
            out.warnings.push_back("pair (" + a + ", " + b + ") not judged; assumed equal importance");
        }
        if (out.derivation.consistency_ratio > ahp::consistency_warning_threshold)
        {
            std::ostringstream os;
            os.precision(17);
            os << "consistency ratio " << out.derivation.consistency_ratio << " is above 0.1";
            out.warnings.push_back(os.str());
        }
        return out;
    }

    std::string render_weights(const WeightsResult& result, Format format)
    {
        const auto& d = result.derivation;
        if (format == Format::json)
        {
            ojson doc = header("weights");
            doc["weights"] = keyed(d.weights.labels, d.weights.weights);
            doc["consistency_ratio"] = d.consistency_ratio;
            ojson pairs = ojson::array();
            for (const auto& [a, b] : d.defaulted_pairs)
            {
                pairs.push_back({a, b});
            }
            doc["defaulted_pairs"] = pairs;
            doc["warnings"] = strings(result.warnings);
            return finish(doc);
        }
        TextTable t;
        t.section("Weights");
        for (std::size_t i = 0; i < d.weights.labels.size(); ++i)
        {
            t.add({d.weights.labels[i], round5(d.weights.weights[i])});
        }
        t.section("Consistency");
        t.add({"CR", round5(d.consistency_ratio)});
        return t.str();
    }

    std::string render_crossovers(const ingest::LoadedProblem& loaded, const sensitivity::CrossoverAnalysis& a,
                                  Format format)
    {
        const DecisionProblem& p = loaded.problem;
        std::vector<std::string> archs;
        for (const auto& x : p.architectures)
        {
            archs.push_back(x.id);
        }
        const auto cost_share = normalize_costs(p.architectures);
        if (format == Format::json)
        {
            ojson doc = header("sensitivity.crossover");
            doc["performance_component"] = keyed(archs, a.performance_component);
            doc["cost_share"] = keyed(archs, cost_share);
            ojson points = ojson::array();
            for (const auto& c : a.points)
            {
                points.push_back({{"at_cost_weight", c.at_cost_weight},
                                  {"winner_below", c.winner_below},
                                  {"winner_above", c.winner_above}});
            }
            doc["crossovers"] = points;
            ojson intervals = ojson::array();
            for (const auto& i : a.intervals)
            {
                intervals.push_back({{"from_cost_weight", i.from_cost_weight},
                                     {"to_cost_weight", i.to_cost_weight},
                                     {"winner", i.winner}});
            }
            doc["intervals"] = intervals;
            ojson ties = ojson::array();
            for (const auto& [x, y] : a.permanent_ties)
            {
                ties.push_back({x, y});
            }
            doc["permanent_ties"] = ties;
            doc["warnings"] = strings(loaded.warnings);
            return finish(doc);
        }
        TextTable t;
        t.section("Winner by cost weight w_c");
        for (const auto& i : a.intervals)
        {
            t.add({"[" + round5(i.from_cost_weight) + ", " + round5(i.to_cost_weight) + "]", i.winner});
        }
        t.section("Crossover points");
        if (a.points.empty())
        {
            t.section("  none");
        }
        for (const auto& c : a.points)
        {
            t.add({"w_c = " + round5(c.at_cost_weight), c.winner_below + " -> " + c.winner_above});
        }
        for (const auto& [x, y] : a.permanent_ties)
        {
            t.section("Permanent tie: " + x + " and " + y);
        }
        return t.str();
    }

    std::string render_scenarios(const ingest::LoadedProblem& loaded, const std::vector<sensitivity::ScenarioRow>& rows,
                                 Format format)
    {
        const DecisionProblem& p = loaded.problem;
        const auto apps = app_ids(p);
        if (format == Format::json)
        {
            ojson doc = header("sensitivity.scenarios");
            ojson list = ojson::array();
            std::vector<std::string> warnings = loaded.warnings;
            for (const auto& row : rows)
            {
                ojson s;
                s["label"] = row.label;
                s["application_weights"] = keyed(apps, row.report.application_weights);
                s["criteria"] = {{"cost_weight", row.report.criteria.cost_weight},
                                 {"performance_weight", row.report.criteria.performance_weight}};
                s.update(gain_summary(row.report));
                list.push_back(std::move(s));
                for (const auto& w : row.report.warnings)
                {
                    warnings.push_back(row.label + ": " + w);
                }
            }
            doc["scenarios"] = list;
            doc["warnings"] = strings(warnings);
            return finish(doc);
        }
        if (rows.empty())
        {
            return "No scenarios\n";
        }
        TextTable t;
        std::vector<std::string> head{""};
        for (const auto& row : rows)
        {
            head.push_back(row.label);
        }
        t.add(head);
        t.section("Weights");
        for (std::size_t j = 0; j < apps.size(); ++j)
        {
            std::vector<std::string> line{"w_" + apps[j]};
            for (const auto& row : rows)
            {
                line.push_back(round5(row.report.application_weights[j]));
            }
            t.add(line);
        }
        std::vector<std::string> wc{"w_c"};
        std::vector<std::string> wd{"w_d"};
        for (const auto& row : rows)
        {
            wc.push_back(round5(row.report.criteria.cost_weight));
            wd.push_back(round5(row.report.criteria.performance_weight));
        }
        t.add(wc);
        t.add(wd);
        t.section("Gain(k)");
        for (std::size_t k = 0; k < p.architectures.size(); ++k)
        {
            std::vector<std::string> line{"Gain(" + p.architectures[k].id + ")"};
            for (const auto& row : rows)
            {
                line.push_back(round5(row.report.gains[k]));
            }
            t.add(line);
        }
        std::vector<std::string> win{"Winner"};
        for (const auto& row : rows)
        {
            win.push_back(row.report.winner);
        }
        t.add(win);
        return t.str();
    }

    std::string render_sweep(const ingest::LoadedProblem& loaded, const std::string& application,
                             const std::vector<sensitivity::SweepRow>& rows, Format format)
    {
        const DecisionProblem& p = loaded.problem;
        const auto apps = app_ids(p);
        if (format == Format::json)
        {
            ojson doc = header("sensitivity.sweep");
            doc["application"] = application;
            ojson list = ojson::array();
            for (const auto& row : rows)
            {
                ojson s;
                s["value"] = row.value;
                s["application_weights"] = keyed(apps, row.report.application_weights);
                s.update(gain_summary(row.report));
                list.push_back(std::move(s));
            }
            doc["rows"] = list;
            doc["warnings"] = strings(loaded.warnings);
            return finish(doc);
        }
        if (rows.empty())
        {
            return "No sweep values\n";
        }
        TextTable t;
        std::vector<std::string> head{"w_" + application};
        for (const auto& a : p.architectures)
        {
            head.push_back("Gain(" + a.id + ")");
        }
        head.push_back("Winner");
        t.add(head);
        for (const auto& row : rows)
        {
            std::vector<std::string> line{round5(row.value)};
            for (double g : row.report.gains)
            {
                line.push_back(round5(g));
            }
            line.push_back(row.report.winner);
            t.add(line);
        }
        return t.str();
    }

    std::string render_breakeven(const ingest::LoadedProblem& loaded, const sensitivity::BreakEvenResult& r,
                                 Format format)
    {
        using sensitivity::BreakEvenStatus;
        const char* status = r.status == BreakEvenStatus::bounded     ? "bounded"
                             : r.status == BreakEvenStatus::unbounded ? "unbounded"
                                                                      : "infeasible";
        if (format == Format::json)
        {
            ojson doc = header("breakeven");
            doc["architecture"] = r.architecture;
            doc["status"] = status;
            doc["max_cost"] = r.max_cost ? ojson(*r.max_cost) : ojson(nullptr);
            doc["binding_competitor"] = r.binding_competitor ? ojson(*r.binding_competitor) : ojson(nullptr);
            doc["current_cost"] = r.current_cost;
            doc["currency"] = loaded.problem.architectures.front().currency;
            doc["cost_weight_zero"] = r.cost_weight_zero;
            doc["explanation"] = r.explanation;
            doc["warnings"] = strings(loaded.warnings);
            return finish(doc);
        }
        std::ostringstream os;
        os << "Architecture: " << r.architecture << "\n";
        os << "Current cost: " << round5(r.current_cost) << " " << loaded.problem.architectures.front().currency << "\n";
        if (r.status == BreakEvenStatus::bounded)
        {
            os << "Break-even cost: " << round5(*r.max_cost) << " " << loaded.problem.architectures.front().currency
               << "\n";
            os << "Binding competitor: " << *r.binding_competitor << "\n";
        }
        else
        {
            os << "Break-even cost: " << r.explanation << "\n";
        }
        return os.str();
    }
}
