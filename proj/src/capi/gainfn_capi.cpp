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

#include "gainfn/gainfn.h"

#include <memory>
#include <new>
#include <string>
#include <vector>

#include "errors.hpp"
#include "ingest.hpp"
#include "report.hpp"
#include "sensitivity.hpp"

struct gf_options
{
    gainfn::ingest::LoadOptions load;
};

struct gf_problem
{
    std::shared_ptr<const gainfn::ingest::LoadedProblem> loaded;
};

struct gf_report
{
    std::shared_ptr<const gainfn::ingest::LoadedProblem> loaded;
    gainfn::GainReport                                   report;
};

struct gf_output
{
    std::string              text;
    std::vector<std::string> warnings;
};

struct gf_error
{
    gf_status   status = GF_ERR_INTERNAL;
    std::string message;
    std::string path;
};

namespace
{
    using gainfn::report::Format;

    gf_status fail(gf_error** error, gf_status status, std::string message, std::string path = {})
    {
        if (error)
        {
            *error = new (std::nothrow) gf_error{status, std::move(message), std::move(path)};
        }
        return status;
    }

    gf_status from_kind(gainfn::ErrorKind kind)
    {
        switch (kind)
        {
        case gainfn::ErrorKind::schema: return GF_ERR_SCHEMA;
        case gainfn::ErrorKind::invalid: return GF_ERR_INVALID;
        case gainfn::ErrorKind::not_found: return GF_ERR_NOT_FOUND;
        }
        return GF_ERR_INTERNAL;
    }

    template <typename Fn>
    gf_status guarded(gf_error** error, Fn&& fn) noexcept
    {
        if (error)
        {
            *error = nullptr;
        }
        try
        {
            fn();
            return GF_OK;
        }
        catch (const gainfn::InputError& e)
        {
            return fail(error, from_kind(e.kind()), e.what(), e.path());
        }
        catch (const std::bad_alloc&)
        {
            return fail(error, GF_ERR_INTERNAL, "out of memory");
        }
        catch (const std::exception& e)
        {
            return fail(error, GF_ERR_INTERNAL, e.what());
        }
        catch (...)
        {
            return fail(error, GF_ERR_INTERNAL, "unknown failure");
        }
    }

    bool to_format(gf_format f, Format& out)
    {
        switch (f)
        {
        case GF_FORMAT_JSON: out = Format::json; return true;
        case GF_FORMAT_TABLE: out = Format::table; return true;
        }
        return false;
    }

    gf_status emit(gf_output** output, std::string text, std::vector<std::string> warnings)
    {
        *output = new gf_output{std::move(text), std::move(warnings)};
        return GF_OK;
    }

    template <typename T>
    const T* at_or_null(const std::vector<T>& v, size_t i)
    {
        return i < v.size() ? &v[i] : nullptr;
    }
}

extern "C" {

const char* gf_version(void) { return GAINFN_VERSION; }

const char* gf_status_name(gf_status status)
{
    switch (status)
    {
    case GF_OK: return "ok";
    case GF_ERR_ARGUMENT: return "argument";
    case GF_ERR_SCHEMA: return "schema";
    case GF_ERR_INVALID: return "invalid";
    case GF_ERR_NOT_FOUND: return "not_found";
    case GF_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

gf_status gf_error_status(const gf_error* error) { return error ? error->status : GF_ERR_ARGUMENT; }
const char* gf_error_message(const gf_error* error) { return error ? error->message.c_str() : ""; }
const char* gf_error_path(const gf_error* error) { return error ? error->path.c_str() : ""; }
void gf_error_free(gf_error* error) { delete error; }

gf_options* gf_options_new(void) { return new (std::nothrow) gf_options{}; }
void gf_options_free(gf_options* options) { delete options; }

gf_status gf_options_set_renormalize(gf_options* options, int enabled)
{
    if (!options)
    {
        return GF_ERR_ARGUMENT;
    }
    options->load.renormalize_application_weights = enabled != 0;
    return GF_OK;
}

gf_status gf_options_set_ci_level(gf_options* options, double level)
{
    if (!options || !(level > 0.0 && level < 1.0))
    {
        return GF_ERR_ARGUMENT;
    }
    options->load.aggregate.ci_level = level;
    return GF_OK;
}

gf_status gf_options_set_ci_threshold(gf_options* options, double threshold)
{
    if (!options || !(threshold >= 0.0))
    {
        return GF_ERR_ARGUMENT;
    }
    options->load.aggregate.ci_threshold = threshold;
    return GF_OK;
}

gf_status gf_problem_load(const char* document_json, const char* runs_csv, const gf_options* options,
                          gf_problem** problem, gf_error** error)
{
    if (!document_json || !problem)
    {
        return fail(error, GF_ERR_ARGUMENT, "document and output handle are required");
    }
    *problem = nullptr;
    return guarded(error, [&] {
        const gainfn::ingest::LoadOptions load = options ? options->load : gainfn::ingest::LoadOptions{};
        std::vector<gainfn::ingest::RunSet> runs;
        if (runs_csv)
        {
            runs = gainfn::ingest::parse_runs_csv(runs_csv);
        }
        auto loaded = std::make_shared<const gainfn::ingest::LoadedProblem>(
            gainfn::ingest::load_problem(std::string_view(document_json), load, runs));
        *problem = new gf_problem{std::move(loaded)};
    });
}

void gf_problem_free(gf_problem* problem) { delete problem; }

size_t gf_problem_application_count(const gf_problem* p) { return p ? p->loaded->problem.applications.size() : 0; }

const char* gf_problem_application_id(const gf_problem* p, size_t i)
{
    const auto* a = p ? at_or_null(p->loaded->problem.applications, i) : nullptr;
    return a ? a->id.c_str() : nullptr;
}

double gf_problem_application_weight(const gf_problem* p, size_t i)
{
    const auto* a = p ? at_or_null(p->loaded->problem.applications, i) : nullptr;
    return a ? a->weight : 0.0;
}

size_t gf_problem_architecture_count(const gf_problem* p) { return p ? p->loaded->problem.architectures.size() : 0; }

const char* gf_problem_architecture_id(const gf_problem* p, size_t i)
{
    const auto* a = p ? at_or_null(p->loaded->problem.architectures, i) : nullptr;
    return a ? a->id.c_str() : nullptr;
}

double gf_problem_architecture_cost(const gf_problem* p, size_t i)
{
    const auto* a = p ? at_or_null(p->loaded->problem.architectures, i) : nullptr;
    return a ? a->cost : 0.0;
}

double gf_problem_time(const gf_problem* p, size_t application, size_t architecture)
{
    if (!p)
    {
        return 0.0;
    }
    const auto& t = p->loaded->problem.times;
    if (application >= t.seconds.rows || architecture >= t.seconds.cols)
    {
        return 0.0;
    }
    return t.at(application, architecture);
}

double gf_problem_cost_weight(const gf_problem* p) { return p ? p->loaded->problem.criteria.cost_weight : 0.0; }

size_t gf_problem_warning_count(const gf_problem* p) { return p ? p->loaded->warnings.size() : 0; }

const char* gf_problem_warning(const gf_problem* p, size_t i)
{
    const auto* w = p ? at_or_null(p->loaded->warnings, i) : nullptr;
    return w ? w->c_str() : nullptr;
}

gf_status gf_problem_serialize(const gf_problem* problem, gf_output** output, gf_error** error)
{
    if (!problem || !output)
    {
        return fail(error, GF_ERR_ARGUMENT, "problem and output handle are required");
    }
    *output = nullptr;
    return guarded(error, [&] {
        emit(output, gainfn::ingest::serialize_problem(problem->loaded->problem).dump(2) + "\n", {});
    });
}

gf_status gf_evaluate(const gf_problem* problem, gf_report** report, gf_error** error)
{
    if (!problem || !report)
    {
        return fail(error, GF_ERR_ARGUMENT, "problem and report handle are required");
    }
    *report = nullptr;
    return guarded(error, [&] {
        auto r = gainfn::evaluate(problem->loaded->problem);
        *report = new gf_report{problem->loaded, std::move(r)};
    });
}

void gf_report_free(gf_report* report) { delete report; }

size_t gf_report_architecture_count(const gf_report* r) { return r ? r->report.gains.size() : 0; }

double gf_report_gain(const gf_report* r, size_t k)
{
    const double* g = r ? at_or_null(r->report.gains, k) : nullptr;
    return g ? *g : 0.0;
}

const char* gf_report_ranked(const gf_report* r, size_t position)
{
    const auto* id = r ? at_or_null(r->report.ranking, position) : nullptr;
    return id ? id->c_str() : nullptr;
}

const char* gf_report_winner(const gf_report* r) { return r ? r->report.winner.c_str() : nullptr; }

int gf_report_winner_tied(const gf_report* r) { return r && r->report.winner_tied ? 1 : 0; }

gf_status gf_report_render(const gf_report* report, gf_format format, gf_output** output, gf_error** error)
{
    Format f{};
    if (!report || !output || !to_format(format, f))
    {
        return fail(error, GF_ERR_ARGUMENT, "report, output handle and a valid format are required");
    }
    *output = nullptr;
    return guarded(error, [&] {
        emit(output, gainfn::report::render_evaluation(*report->loaded, report->report, f),
             gainfn::report::collect_warnings(*report->loaded, &report->report));
    });
}

gf_status gf_weights(const char* judgments_json, gf_format format, gf_output** output, gf_error** error)
{
    Format f{};
    if (!judgments_json || !output || !to_format(format, f))
    {
        return fail(error, GF_ERR_ARGUMENT, "judgments, output handle and a valid format are required");
    }
    *output = nullptr;
    return guarded(error, [&] {
        const auto block = gainfn::ingest::parse_judgment_block(gainfn::ingest::parse_json(judgments_json));
        auto result = gainfn::report::derive_block_weights(block);
        emit(output, gainfn::report::render_weights(result, f), result.warnings);
    });
}

gf_status gf_crossovers(const gf_problem* problem, gf_format format, gf_output** output, gf_error** error)
{
    Format f{};
    if (!problem || !output || !to_format(format, f))
    {
        return fail(error, GF_ERR_ARGUMENT, "problem, output handle and a valid format are required");
    }
    *output = nullptr;
    return guarded(error, [&] {
        const auto& loaded = *problem->loaded;
        const auto analysis = gainfn::sensitivity::criteria_weight_crossovers(loaded.problem);
        emit(output, gainfn::report::render_crossovers(loaded, analysis, f), loaded.warnings);
    });
}

gf_status gf_scenarios(const gf_problem* problem, const char* scenarios_json, gf_format format, gf_output** output,
                       gf_error** error)
{
    Format f{};
    if (!problem || !scenarios_json || !output || !to_format(format, f))
    {
        return fail(error, GF_ERR_ARGUMENT, "problem, scenarios, output handle and a valid format are required");
    }
    *output = nullptr;
    return guarded(error, [&] {
        const auto& loaded = *problem->loaded;
        const auto scenarios = gainfn::ingest::parse_scenarios(gainfn::ingest::parse_json(scenarios_json));
        const auto rows = gainfn::sensitivity::scenario_table(loaded.problem, scenarios);
        std::vector<std::string> warnings = loaded.warnings;
        for (const auto& row : rows)
        {
            for (const auto& w : row.report.warnings)
            {
                warnings.push_back(row.label + ": " + w);
            }
        }
        emit(output, gainfn::report::render_scenarios(loaded, rows, f), std::move(warnings));
    });
}

gf_status gf_sweep(const gf_problem* problem, const char* application, const double* grid, size_t grid_size,
                   gf_format format, gf_output** output, gf_error** error)
{
    Format f{};
    if (!problem || !application || (!grid && grid_size > 0) || !output || !to_format(format, f))
    {
        return fail(error, GF_ERR_ARGUMENT, "problem, application, grid, output handle and a valid format are required");
    }
    *output = nullptr;
    return guarded(error, [&] {
        const auto& loaded = *problem->loaded;
        const std::span<const double> values(grid, grid_size);
        const auto rows = gainfn::sensitivity::application_weight_sweep(loaded.problem, application, values);
        emit(output, gainfn::report::render_sweep(loaded, application, rows, f), loaded.warnings);
    });
}

gf_status gf_breakeven(const gf_problem* problem, const char* architecture, gf_format format, gf_output** output,
                       gf_error** error)
{
    Format f{};
    if (!problem || !architecture || !output || !to_format(format, f))
    {
        return fail(error, GF_ERR_ARGUMENT, "problem, architecture, output handle and a valid format are required");
    }
    *output = nullptr;
    return guarded(error, [&] {
        const auto& loaded = *problem->loaded;
        const auto result = gainfn::sensitivity::breakeven_cost(loaded.problem, architecture);
        emit(output, gainfn::report::render_breakeven(loaded, result, f), loaded.warnings);
    });
}

const char* gf_output_text(const gf_output* output) { return output ? output->text.c_str() : ""; }
size_t gf_output_size(const gf_output* output) { return output ? output->text.size() : 0; }
size_t gf_output_warning_count(const gf_output* output) { return output ? output->warnings.size() : 0; }

const char* gf_output_warning(const gf_output* output, size_t index)
{
    const auto* w = output ? at_or_null(output->warnings, index) : nullptr;
    return w ? w->c_str() : nullptr;
}

void gf_output_free(gf_output* output) { delete output; }

} // extern "C"
