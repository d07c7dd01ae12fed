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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gainfn/gainfn.h"
#include "service.hpp"

namespace
{
    enum Exit
    {
        exit_ok = 0,
        exit_usage = 1,
        exit_validation = 2,
        exit_internal = 3,
    };

    struct Globals
    {
        std::string format = "table";
        bool        quiet = false;
    };

    struct LoadFlags
    {
        std::string runs_csv;
        bool        renormalize = false;
        double      ci_level = 0.95;
        double      ci_threshold = 0.01;
    };

    template <typename T, void (*Free)(T*)>
    struct Owned
    {
        T* ptr = nullptr;
        ~Owned() { Free(ptr); }
    };

    struct UsageError
    {
        std::string message;
    };

    std::string read_file(const std::string& path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
        {
            throw UsageError{"cannot read '" + path + "'"};
        }
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    }

    int report_error(gf_status status, const gf_error* error)
    {
        const std::string path = gf_error_path(error);
        std::cerr << "error: " << (path.empty() ? "" : path + ": ") << gf_error_message(error) << "\n";
        switch (status)
        {
        case GF_ERR_SCHEMA:
        case GF_ERR_INVALID:
        case GF_ERR_NOT_FOUND: return exit_validation;
        default: return exit_internal;
        }
    }

    void print_warnings(const Globals& g, const gf_output* out)
    {
        if (g.quiet)
        {
            return;
        }
        for (std::size_t i = 0; i < gf_output_warning_count(out); ++i)
        {
            std::cerr << "warning: " << gf_output_warning(out, i) << "\n";
        }
    }

    int emit(const Globals& g, gf_status status, const Owned<gf_output, gf_output_free>& out,
             const Owned<gf_error, gf_error_free>& error)
    {
        if (status != GF_OK)
        {
            return report_error(status, error.ptr);
        }
        print_warnings(g, out.ptr);
        std::fwrite(gf_output_text(out.ptr), 1, gf_output_size(out.ptr), stdout);
        std::fflush(stdout);
        return exit_ok;
    }

    gf_format format_of(const Globals& g) { return g.format == "json" ? GF_FORMAT_JSON : GF_FORMAT_TABLE; }

    /// Loads a problem document; returns an exit code on failure.
    std::optional<int> load(const std::string& path, const LoadFlags& flags, Owned<gf_problem, gf_problem_free>& problem)
    {
        const std::string document = read_file(path);
        std::optional<std::string> csv;
        if (!flags.runs_csv.empty())
        {
            csv = read_file(flags.runs_csv);
        }
        Owned<gf_options, gf_options_free> options{gf_options_new()};
        gf_options_set_renormalize(options.ptr, flags.renormalize ? 1 : 0);
        if (gf_options_set_ci_level(options.ptr, flags.ci_level) != GF_OK ||
            gf_options_set_ci_threshold(options.ptr, flags.ci_threshold) != GF_OK)
        {
            throw UsageError{"confidence level must lie in (0, 1) and the threshold must be non-negative"};
        }
        Owned<gf_error, gf_error_free> error;
        const gf_status s =
            gf_problem_load(document.c_str(), csv ? csv->c_str() : nullptr, options.ptr, &problem.ptr, &error.ptr);
        if (s != GF_OK)
        {
            return report_error(s, error.ptr);
        }
        return std::nullopt;
    }

    void add_load_flags(CLI::App* cmd, LoadFlags& flags)
    {
        cmd->add_option("--runs", flags.runs_csv, "CSV of raw runs (application,architecture,seconds)");
        cmd->add_flag("--renormalize", flags.renormalize,
                      "Rescale application weights that do not sum to 1 instead of rejecting them");
        cmd->add_option("--ci-level", flags.ci_level, "Confidence level for aggregated runs")->capture_default_str();
        cmd->add_option("--ci-threshold", flags.ci_threshold, "Relative CI half-width that triggers a warning")
            ->capture_default_str();
    }

    std::vector<double> parse_grid(const std::string& text)
    {
        std::vector<double> grid;
        std::stringstream   ss(text);
        std::string         item;
        while (std::getline(ss, item, ','))
        {
            const auto first = item.find_first_not_of(" \t");
            if (first == std::string::npos)
            {
                continue;
            }
            std::size_t used = 0;
            double      value = 0.0;
            try
            {
                value = std::stod(item, &used);
            }
            catch (const std::exception&)
            {
                throw UsageError{"grid value '" + item + "' is not a number"};
            }
            if (item.find_first_not_of(" \t", used) != std::string::npos)
            {
                throw UsageError{"grid value '" + item + "' is not a number"};
            }
            grid.push_back(value);
        }
        return grid;
    }
}

int main(int argc, char** argv)
{
    CLI::App app{"Rank candidate architectures by a cost/performance gain function", "gainfn"};
    app.set_version_flag("--version", gf_version());
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"table", "json"}))->capture_default_str();
    app.add_flag("--quiet", g.quiet, "Suppress warnings on standard error");

    std::string problem_path;
    LoadFlags   flags;

    auto* evaluate = app.add_subcommand("evaluate", "Compute gains and the winning architecture");
    evaluate->add_option("problem", problem_path, "Problem document (JSON)")->required();
    add_load_flags(evaluate, flags);

    std::string judgments_path;
    auto* weights = app.add_subcommand("weights", "Derive weights from pairwise judgments");
    weights->add_option("judgments", judgments_path, "Judgment document (JSON)")->required();

    std::string mode;
    std::string scenarios_path;
    std::string sweep_app;
    std::string grid_text;
    bool        grid_given = false;
    auto* sens = app.add_subcommand("sensitivity", "What-if analyses over the weights");
    sens->add_option("problem", problem_path, "Problem document (JSON)")->required();
    sens->add_option("--mode", mode, "scenarios | crossover | sweep")
        ->required()
        ->check(CLI::IsMember({"scenarios", "crossover", "sweep"}));
    sens->add_option("--scenarios", scenarios_path, "Scenario document (JSON), for --mode scenarios");
    sens->add_option("--application", sweep_app, "Application to sweep, for --mode sweep");
    auto* grid_opt = sens->add_option("--grid", grid_text, "Comma-separated weights in [0, 1], for --mode sweep");
    add_load_flags(sens, flags);

    std::string arch;
    auto* breakeven = app.add_subcommand("breakeven", "Highest cost at which an architecture still wins");
    breakeven->add_option("problem", problem_path, "Problem document (JSON)")->required();
    breakeven->add_option("architecture", arch, "Architecture id")->required();
    add_load_flags(breakeven, flags);

    gainfn::service::Config config;
    bool no_cors = false;
    auto* serve = app.add_subcommand("serve", "Start the HTTP service");
    serve->add_option("--host", config.host, "Listen address")->capture_default_str();
    serve->add_option("--port", config.port, "Listen port (0 picks a free one)")->capture_default_str();
    serve->add_flag("--no-cors", no_cors, "Do not send cross-origin headers");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForVersion& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return exit_usage;
    }
    grid_given = grid_opt->count() > 0;

    try
    {
        Owned<gf_output, gf_output_free> out;
        Owned<gf_error, gf_error_free>   error;

        if (weights->parsed())
        {
            const std::string doc = read_file(judgments_path);
            return emit(g, gf_weights(doc.c_str(), format_of(g), &out.ptr, &error.ptr), out, error);
        }

        if (serve->parsed())
        {
            config.cors = !no_cors;
            gainfn::service::Server server(config);
            if (!server.bind())
            {
                std::cerr << "error: cannot listen on " << config.host << ":" << config.port << "\n";
                return exit_usage;
            }
            std::cerr << "gainfn " << gf_version() << " listening on http://" << config.host << ":" << server.port()
                      << "\n";
            return server.listen() ? exit_ok : exit_internal;
        }

        if (sens->parsed())
        {
            if (mode == "scenarios" && scenarios_path.empty())
            {
                throw UsageError{"--mode scenarios requires --scenarios FILE"};
            }
            if (mode == "sweep" && (sweep_app.empty() || !grid_given))
            {
                throw UsageError{"--mode sweep requires --application ID and --grid VALUES"};
            }
        }

        Owned<gf_problem, gf_problem_free> problem;
        if (auto code = load(problem_path, flags, problem))
        {
            return *code;
        }

        if (evaluate->parsed())
        {
            Owned<gf_report, gf_report_free> report;
            if (gf_status s = gf_evaluate(problem.ptr, &report.ptr, &error.ptr); s != GF_OK)
            {
                return report_error(s, error.ptr);
            }
            return emit(g, gf_report_render(report.ptr, format_of(g), &out.ptr, &error.ptr), out, error);
        }
        if (breakeven->parsed())
        {
            return emit(g, gf_breakeven(problem.ptr, arch.c_str(), format_of(g), &out.ptr, &error.ptr), out, error);
        }
        if (mode == "crossover")
        {
            return emit(g, gf_crossovers(problem.ptr, format_of(g), &out.ptr, &error.ptr), out, error);
        }
        if (mode == "scenarios")
        {
            const std::string doc = read_file(scenarios_path);
            return emit(g, gf_scenarios(problem.ptr, doc.c_str(), format_of(g), &out.ptr, &error.ptr), out, error);
        }
        const std::vector<double> grid = parse_grid(grid_text);
        return emit(g,
                    gf_sweep(problem.ptr, sweep_app.c_str(), grid.data(), grid.size(), format_of(g), &out.ptr,
                             &error.ptr),
                    out, error);
    }
    catch (const UsageError& e)
    {
        std::cerr << "error: " << e.message << "\n";
        return exit_usage;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: internal: " << e.what() << "\n";
        return exit_internal;
    }
}
