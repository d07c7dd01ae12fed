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

#include "ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <boost/math/distributions/students_t.hpp>

#include "errors.hpp"

namespace gainfn::ingest
{
    using nlohmann::json;

    namespace
    {
        std::string fmt(double v)
        {
            std::ostringstream os;
            os.precision(17);
            os << v;
            return os.str();
        }

        std::string index_path(const std::string& base, std::size_t i)
        {
            return base + "[" + std::to_string(i) + "]";
        }

        const json& require_key(const json& obj, const std::string& path, const char* key)
        {
            auto it = obj.find(key);
            if (it == obj.end())
            {
                throw_schema(path.empty() ? key : path + "." + key, std::string("missing required key '") + key + "'");
            }
            return *it;
        }

        void require_object(const json& v, const std::string& path)
        {
            if (!v.is_object())
            {
                throw_schema(path, "expected an object");
            }
        }

        void require_array(const json& v, const std::string& path)
        {
            if (!v.is_array())
            {
                throw_schema(path, "expected an array");
            }
        }

        void allow_keys(const json& obj, const std::string& path, std::initializer_list<const char*> keys)
        {
            for (auto it = obj.begin(); it != obj.end(); ++it)
            {
                bool ok = std::any_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; });
                if (!ok)
                {
                    throw_schema(path.empty() ? it.key() : path + "." + it.key(), "unknown key '" + it.key() + "'");
                }
            }
        }

        std::string get_string(const json& v, const std::string& path)
        {
            if (!v.is_string())
            {
                throw_schema(path, "expected a string");
            }
            return v.get<std::string>();
        }

        double get_number(const json& v, const std::string& path)
        {
            if (!v.is_number())
            {
                throw_schema(path, "expected a number");
            }
            return v.get<double>();
        }

        ahp::JudgmentIntensity get_intensity(const json& v, const std::string& path)
        {
            try
            {
                if (v.is_number())
                {
                    return ahp::JudgmentIntensity::from_number(v.get<double>());
                }
                if (v.is_string())
                {
                    return ahp::JudgmentIntensity::from_string(v.get<std::string>());
                }
            }
            catch (const InputError& e)
            {
                throw InputError(e.kind(), path, e.what());
            }
            throw_schema(path, "intensity must be a number or a string such as \"1/7\"");
        }

        std::vector<ahp::Judgment> parse_judgments(const json& arr, const std::string& path)
        {
            require_array(arr, path);
            std::vector<ahp::Judgment> out;
            for (std::size_t i = 0; i < arr.size(); ++i)
            {
                const std::string p = index_path(path, i);
                const json& j = arr[i];
                require_object(j, p);
                allow_keys(j, p, {"more_important", "less_important", "intensity"});
                out.push_back(ahp::Judgment{get_string(require_key(j, p, "more_important"), p + ".more_important"),
                                            get_string(require_key(j, p, "less_important"), p + ".less_important"),
                                            get_intensity(require_key(j, p, "intensity"), p + ".intensity")});
            }
            return out;
        }

        WeightDerivation derive(std::vector<std::string> labels, std::span<const ahp::Judgment> judgments,
                                const std::string& path)
        {
            ahp::BuiltMatrix built = [&] {
                try
                {
                    return ahp::build_comparison_matrix(std::move(labels), judgments);
                }
                catch (const InputError& e)
                {
                    const auto bracket = e.path().find('[');
                    throw InputError(e.kind(), bracket == std::string::npos ? path : path + e.path().substr(bracket),
                                     e.what());
                }
            }();
            WeightDerivation d;
            d.weights = ahp::derive_weights(built.matrix);
            d.consistency_ratio = ahp::consistency_ratio(built.matrix);
            d.defaulted_pairs = std::move(built.defaulted_pairs);
            return d;
        }

        void report_derivation(const WeightDerivation& d, const std::string& what, LoadedProblem& out)
        {
            for (const auto& [a, b] : d.defaulted_pairs)
            {
                out.warnings.push_back(what + " pair (" + a + ", " + b + ") not judged; assumed equal importance");
            }
            if (d.consistency_ratio > ahp::consistency_warning_threshold)
            {
                out.warnings.push_back(what + " judgments have consistency ratio " + fmt(d.consistency_ratio) +
                                       " (above 0.1)");
            }
            std::string list;
            for (std::size_t i = 0; i < d.weights.labels.size(); ++i)
            {
                list += (i ? ", " : "") + d.weights.labels[i] + " = " + fmt(d.weights.weights[i]);
            }
            out.audit.push_back(what + " weights derived from pairwise judgments: " + list);
        }

        std::string pair_name(const std::string& app, const std::string& arch)
        {
            return "(" + app + ", " + arch + ")";
        }
    }

    double student_t_critical(double level, std::size_t df)
    {
        if (!(level > 0.0 && level < 1.0))
        {
            throw_invalid("ci_level", "confidence level must lie in (0, 1)");
        }
        boost::math::students_t dist(static_cast<double>(df));
        return boost::math::quantile(dist, 0.5 + level / 2.0);
    }

    MeasurementSummary aggregate_runs(const RunSet& runs, const AggregateOptions& options)
    {
        const std::string pair = pair_name(runs.application, runs.architecture);
        if (runs.samples.empty())
        {
            throw_invalid("runs", "no samples for " + pair);
        }
        std::vector<double> s = runs.samples;
        for (double v : s)
        {
            if (!std::isfinite(v) || v <= 0.0)
            {
                throw_invalid("runs", "sample " + fmt(v) + " for " + pair + " must be positive and finite");
            }
        }
        std::sort(s.begin(), s.end());

        MeasurementSummary out;
        out.count = s.size();
        out.ci_level = options.ci_level;
        const double n = static_cast<double>(s.size());
        out.mean = std::accumulate(s.begin(), s.end(), 0.0) / n;
        if (s.size() > 1)
        {
            double ss = 0.0;
            for (double v : s)
            {
                ss += (v - out.mean) * (v - out.mean);
            }
            out.stddev = std::sqrt(ss / (n - 1.0));
            out.ci_halfwidth = student_t_critical(options.ci_level, s.size() - 1) * out.stddev / std::sqrt(n);
        }
        out.exceeds_threshold = out.ci_halfwidth / out.mean > options.ci_threshold;
        return out;
    }

    json parse_json(std::string_view text)
    {
        try
        {
            return json::parse(text.begin(), text.end());
        }
        catch (const json::parse_error& e)
        {
            throw_schema("", std::string("malformed JSON: ") + e.what());
        }
    }

    LoadedProblem load_problem(std::string_view document, const LoadOptions& options, std::span<const RunSet> extra_runs)
    {
        return load_problem(parse_json(document), options, extra_runs);
    }

    LoadedProblem load_problem(const json& doc, const LoadOptions& options, std::span<const RunSet> extra_runs)
    {
        require_object(doc, "");
        allow_keys(doc, "",
                   {"name", "description", "applications", "architectures", "measurements", "application_judgments",
                    "criteria"});

        LoadedProblem out;
        DecisionProblem& problem = out.problem;

        // applications
        const json& apps = require_key(doc, "", "applications");
        require_array(apps, "applications");
        std::size_t with_weight = 0;
        for (std::size_t i = 0; i < apps.size(); ++i)
        {
            const std::string p = index_path("applications", i);
            require_object(apps[i], p);
            allow_keys(apps[i], p, {"id", "weight"});
            Application app;
            app.id = get_string(require_key(apps[i], p, "id"), p + ".id");
            if (auto w = apps[i].find("weight"); w != apps[i].end())
            {
                app.weight = get_number(*w, p + ".weight");
                if (!std::isfinite(app.weight) || app.weight <= 0.0)
                {
                    throw_invalid(p + ".weight", "weight of application '" + app.id + "' must be positive");
                }
                ++with_weight;
            }
            problem.applications.push_back(std::move(app));
        }

        // architectures
        const json& archs = require_key(doc, "", "architectures");
        require_array(archs, "architectures");
        for (std::size_t i = 0; i < archs.size(); ++i)
        {
            const std::string p = index_path("architectures", i);
            require_object(archs[i], p);
            allow_keys(archs[i], p, {"id", "cost", "currency"});
            Architecture arch;
            arch.id = get_string(require_key(archs[i], p, "id"), p + ".id");
            arch.cost = get_number(require_key(archs[i], p, "cost"), p + ".cost");
            if (auto c = archs[i].find("currency"); c != archs[i].end())
            {
                arch.currency = get_string(*c, p + ".currency");
            }
            if (!std::isfinite(arch.cost) || arch.cost <= 0.0)
            {
                throw_invalid(p + ".cost", "cost of architecture '" + arch.id + "' must be positive and finite");
            }
            if (!problem.architectures.empty() && problem.architectures.front().currency != arch.currency)
            {
                throw_invalid(p + ".currency", "all architectures must share one currency");
            }
            problem.architectures.push_back(std::move(arch));
        }

        auto by_id = [](const auto& a, const auto& b) { return a.id < b.id; };
        std::sort(problem.applications.begin(), problem.applications.end(), by_id);
        std::sort(problem.architectures.begin(), problem.architectures.end(), by_id);
        for (std::size_t i = 1; i < problem.applications.size(); ++i)
        {
            if (problem.applications[i].id == problem.applications[i - 1].id)
            {
                throw_invalid("applications", "duplicate application '" + problem.applications[i].id + "'");
            }
        }
        for (std::size_t i = 1; i < problem.architectures.size(); ++i)
        {
            if (problem.architectures[i].id == problem.architectures[i - 1].id)
            {
                throw_invalid("architectures", "duplicate architecture '" + problem.architectures[i].id + "'");
            }
        }
        if (problem.applications.empty())
        {
            throw_invalid("applications", "at least one application is required");
        }
        if (problem.architectures.size() < 2)
        {
            throw_invalid("architectures", "at least two architectures are required to make a decision");
        }

        std::vector<std::string> app_ids;
        std::vector<std::string> arch_ids;
        for (const auto& a : problem.applications)
        {
            app_ids.push_back(a.id);
        }
        for (const auto& a : problem.architectures)
        {
            arch_ids.push_back(a.id);
        }
        auto app_pos = [&](const std::string& id) -> std::optional<std::size_t> {
            auto it = std::lower_bound(app_ids.begin(), app_ids.end(), id);
            if (it == app_ids.end() || *it != id)
            {
                return std::nullopt;
            }
            return static_cast<std::size_t>(it - app_ids.begin());
        };
        auto arch_pos = [&](const std::string& id) -> std::optional<std::size_t> {
            auto it = std::lower_bound(arch_ids.begin(), arch_ids.end(), id);
            if (it == arch_ids.end() || *it != id)
            {
                return std::nullopt;
            }
            return static_cast<std::size_t>(it - arch_ids.begin());
        };

        // measurements
        problem.times = TimeMatrix(app_ids, arch_ids);
        std::vector<std::optional<MeasurementRecord>> records(app_ids.size() * arch_ids.size());
        auto place = [&](const std::string& path, const std::string& app, const std::string& arch) -> std::size_t {
            auto j = app_pos(app);
            if (!j)
            {
                throw_not_found(path + ".application", "measurement references unknown application '" + app + "'");
            }
            auto k = arch_pos(arch);
            if (!k)
            {
                throw_not_found(path + ".architecture", "measurement references unknown architecture '" + arch + "'");
            }
            const std::size_t slot = *j * arch_ids.size() + *k;
            if (records[slot])
            {
                throw_schema(path, "more than one time source for " + pair_name(app, arch));
            }
            return slot;
        };

        const json& meas = require_key(doc, "", "measurements");
        require_array(meas, "measurements");
        for (std::size_t i = 0; i < meas.size(); ++i)
        {
            const std::string p = index_path("measurements", i);
            const json& m = meas[i];
            require_object(m, p);
            allow_keys(m, p, {"application", "architecture", "unit", "runs", "mean"});
            const std::string app = get_string(require_key(m, p, "application"), p + ".application");
            const std::string arch = get_string(require_key(m, p, "architecture"), p + ".architecture");
            const std::string unit = get_string(require_key(m, p, "unit"), p + ".unit");
            if (unit != "seconds")
            {
                throw_schema(p + ".unit", "unit must be \"seconds\", got \"" + unit + "\"");
            }
            const bool has_runs = m.contains("runs");
            const bool has_mean = m.contains("mean");
            if (has_runs == has_mean)
            {
                throw_schema(p, "exactly one of 'runs' or 'mean' is required for " + pair_name(app, arch));
            }
            const std::size_t slot = place(p, app, arch);
            MeasurementRecord rec{app, arch, has_runs, {}};
            if (has_runs)
            {
                const json& runs = m["runs"];
                require_array(runs, p + ".runs");
                RunSet set{app, arch, {}};
                for (std::size_t r = 0; r < runs.size(); ++r)
                {
                    set.samples.push_back(get_number(runs[r], index_path(p + ".runs", r)));
                }
                try
                {
                    rec.summary = aggregate_runs(set, options.aggregate);
                }
                catch (const InputError& e)
                {
                    throw InputError(e.kind(), p + ".runs", e.what());
                }
            }
            else
            {
                const double mean = get_number(m["mean"], p + ".mean");
                if (!std::isfinite(mean) || mean <= 0.0)
                {
                    throw_invalid(p + ".mean", "execution time for " + pair_name(app, arch) + " must be positive and finite");
                }
                rec.summary.mean = mean;
                rec.summary.count = 1;
                rec.summary.ci_level = options.aggregate.ci_level;
            }
            records[slot] = std::move(rec);
        }
        for (std::size_t i = 0; i < extra_runs.size(); ++i)
        {
            const RunSet& set = extra_runs[i];
            const std::string p = index_path("runs_csv", i);
            const std::size_t slot = place(p, set.application, set.architecture);
            MeasurementRecord rec{set.application, set.architecture, true, {}};
            try
            {
                rec.summary = aggregate_runs(set, options.aggregate);
            }
            catch (const InputError& e)
            {
                throw InputError(e.kind(), p, e.what());
            }
            records[slot] = std::move(rec);
        }
        for (std::size_t j = 0; j < app_ids.size(); ++j)
        {
            for (std::size_t k = 0; k < arch_ids.size(); ++k)
            {
                auto& rec = records[j * arch_ids.size() + k];
                if (!rec)
                {
                    throw_invalid("measurements", "no execution time for " + pair_name(app_ids[j], arch_ids[k]));
                }
                problem.times.at(j, k) = rec->summary.mean;
                if (rec->from_runs)
                {
                    out.audit.push_back("aggregated " + std::to_string(rec->summary.count) + " runs for " +
                                        pair_name(rec->application, rec->architecture) + " to mean " +
                                        fmt(rec->summary.mean) + " s");
                    if (rec->summary.exceeds_threshold)
                    {
                        out.warnings.push_back("confidence interval for " + pair_name(rec->application, rec->architecture) +
                                               " is " + fmt(100.0 * rec->summary.ci_halfwidth / rec->summary.mean) +
                                               "% of the mean (threshold " +
                                               fmt(100.0 * options.aggregate.ci_threshold) + "%)");
                    }
                }
                out.measurements.push_back(std::move(*rec));
            }
        }

        // application weights
        const bool has_judgments = doc.contains("application_judgments");
        if (has_judgments && with_weight > 0)
        {
            throw_schema("application_judgments", "application weights given both explicitly and as judgments");
        }
        if (has_judgments)
        {
            auto judgments = parse_judgments(doc["application_judgments"], "application_judgments");
            WeightDerivation d = derive(app_ids, judgments, "application_judgments");
            for (std::size_t j = 0; j < app_ids.size(); ++j)
            {
                problem.applications[j].weight = d.weights.weights[j];
            }
            report_derivation(d, "application", out);
            out.application_weights_ahp = std::move(d);
        }
        else if (with_weight == 0 && problem.applications.size() == 1)
        {
            problem.applications[0].weight = 1.0;
            out.audit.push_back("single application '" + app_ids[0] + "' given weight 1");
        }
        else if (with_weight != problem.applications.size())
        {
            throw_schema("applications", "every application needs a weight, or supply application_judgments");
        }

        double sum = 0.0;
        for (const auto& a : problem.applications)
        {
            sum += a.weight;
        }
        if (std::abs(sum - 1.0) > application_weight_tolerance)
        {
            if (!options.renormalize_application_weights)
            {
                throw_invalid("applications", "application weights sum to " + fmt(sum) +
                                                  ", not 1 (enable renormalization to rescale them)");
            }
            for (auto& a : problem.applications)
            {
                a.weight /= sum;
            }
            out.warnings.push_back("application weights summed to " + fmt(sum) + "; rescaled proportionally to sum 1");
        }

        // criteria
        const json& crit = require_key(doc, "", "criteria");
        require_object(crit, "criteria");
        if (crit.contains("judgment"))
        {
            allow_keys(crit, "criteria", {"judgment"});
            const json& jd = crit["judgment"];
            require_object(jd, "criteria.judgment");
            allow_keys(jd, "criteria.judgment", {"preferred", "intensity"});
            const std::string preferred = get_string(require_key(jd, "criteria.judgment", "preferred"), "criteria.judgment.preferred");
            if (preferred != "cost" && preferred != "performance")
            {
                throw_schema("criteria.judgment.preferred", "preferred must be \"cost\" or \"performance\"");
            }
            const auto intensity = get_intensity(require_key(jd, "criteria.judgment", "intensity"), "criteria.judgment.intensity");
            const std::string other = preferred == "cost" ? "performance" : "cost";
            const ahp::Judgment judgment{preferred, other, intensity};
            WeightDerivation d = derive({"cost", "performance"}, std::span(&judgment, 1), "criteria.judgment");
            problem.criteria = CriteriaWeights{d.weights.weights[0], d.weights.weights[1]};
            report_derivation(d, "criteria", out);
            out.criteria_weights_ahp = std::move(d);
        }
        else
        {
            allow_keys(crit, "criteria", {"cost_weight", "performance_weight"});
            problem.criteria.cost_weight = get_number(require_key(crit, "criteria", "cost_weight"), "criteria.cost_weight");
            problem.criteria.performance_weight =
                get_number(require_key(crit, "criteria", "performance_weight"), "criteria.performance_weight");
        }

        validate(problem);
        return out;
    }

    nlohmann::ordered_json serialize_problem(const DecisionProblem& problem)
    {
        nlohmann::ordered_json doc;
        doc["applications"] = nlohmann::ordered_json::array();
        for (const auto& a : problem.applications)
        {
            doc["applications"].push_back({{"id", a.id}, {"weight", a.weight}});
        }
        doc["architectures"] = nlohmann::ordered_json::array();
        for (const auto& a : problem.architectures)
        {
            doc["architectures"].push_back({{"id", a.id}, {"cost", a.cost}, {"currency", a.currency}});
        }
        doc["measurements"] = nlohmann::ordered_json::array();
        for (std::size_t j = 0; j < problem.applications.size(); ++j)
        {
            for (std::size_t k = 0; k < problem.architectures.size(); ++k)
            {
                doc["measurements"].push_back({{"application", problem.applications[j].id},
                                               {"architecture", problem.architectures[k].id},
                                               {"unit", "seconds"},
                                               {"mean", problem.times.at(j, k)}});
            }
        }
        doc["criteria"] = {{"cost_weight", problem.criteria.cost_weight},
                           {"performance_weight", problem.criteria.performance_weight}};
        return doc;
    }

    std::vector<RunSet> parse_runs_csv(std::string_view text)
    {
        auto trim = [](std::string_view s) {
            while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
            {
                s.remove_prefix(1);
            }
            while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
            {
                s.remove_suffix(1);
            }
            return s;
        };

        std::vector<RunSet> out;
        std::map<std::pair<std::string, std::string>, std::size_t> index;
        bool         header_seen = false;
        std::size_t  line_no = 0;
        while (!text.empty())
        {
            const auto eol = text.find('\n');
            std::string_view line = trim(text.substr(0, eol));
            text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
            ++line_no;
            if (line.empty())
            {
                continue;
            }
            const std::string path = "csv line " + std::to_string(line_no);

            std::vector<std::string_view> fields;
            std::size_t start = 0;
            while (true)
            {
                const auto comma = line.find(',', start);
                fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
                if (comma == std::string_view::npos)
                {
                    break;
                }
                start = comma + 1;
            }

            if (!header_seen)
            {
                if (fields.size() != 3 || fields[0] != "application" || fields[1] != "architecture" ||
                    fields[2] != "seconds")
                {
                    throw_schema(path, "expected header 'application,architecture,seconds'");
                }
                header_seen = true;
                continue;
            }
            if (fields.size() != 3 || fields[0].empty() || fields[1].empty())
            {
                throw_schema(path, "expected three fields: application,architecture,seconds");
            }
            double value = 0.0;
            auto [ptr, ec] = std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(), value);
            if (ec != std::errc() || ptr != fields[2].data() + fields[2].size())
            {
                throw_schema(path, "'" + std::string(fields[2]) + "' is not a number");
            }
            if (!std::isfinite(value) || value <= 0.0)
            {
                throw_invalid(path, "sample must be positive and finite");
            }
            auto key = std::make_pair(std::string(fields[0]), std::string(fields[1]));
            auto [it, inserted] = index.emplace(key, out.size());
            if (inserted)
            {
                out.push_back(RunSet{key.first, key.second, {}});
            }
            out[it->second].samples.push_back(value);
        }
        if (!header_seen)
        {
            throw_schema("csv line 1", "expected header 'application,architecture,seconds'");
        }
        return out;
    }

    JudgmentBlock parse_judgment_block(const json& doc)
    {
        require_object(doc, "");
        allow_keys(doc, "", {"items", "judgments"});
        const json& items = require_key(doc, "", "items");
        require_array(items, "items");
        JudgmentBlock block;
        for (std::size_t i = 0; i < items.size(); ++i)
        {
            block.items.push_back(get_string(items[i], index_path("items", i)));
        }
        if (auto j = doc.find("judgments"); j != doc.end())
        {
            block.judgments = parse_judgments(*j, "judgments");
        }
        return block;
    }

    std::vector<sensitivity::Scenario> parse_scenarios(const json& doc)
    {
        require_object(doc, "");
        const json& list = require_key(doc, "", "scenarios");
        require_array(list, "scenarios");
        std::vector<sensitivity::Scenario> out;
        for (std::size_t i = 0; i < list.size(); ++i)
        {
            const std::string p = index_path("scenarios", i);
            const json& s = list[i];
            require_object(s, p);
            allow_keys(s, p, {"label", "application_weights", "criteria"});
            sensitivity::Scenario sc;
            sc.label = get_string(require_key(s, p, "label"), p + ".label");
            const json& w = require_key(s, p, "application_weights");
            require_object(w, p + ".application_weights");
            for (auto it = w.begin(); it != w.end(); ++it)
            {
                sc.application_weights[it.key()] = get_number(it.value(), p + ".application_weights." + it.key());
            }
            const json& c = require_key(s, p, "criteria");
            require_object(c, p + ".criteria");
            allow_keys(c, p + ".criteria", {"cost_weight", "performance_weight"});
            sc.criteria.cost_weight = get_number(require_key(c, p + ".criteria", "cost_weight"), p + ".criteria.cost_weight");
            sc.criteria.performance_weight =
                get_number(require_key(c, p + ".criteria", "performance_weight"), p + ".criteria.performance_weight");
            out.push_back(std::move(sc));
        }
        return out;
    }
}
