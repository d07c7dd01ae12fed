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

#include "service.hpp"

#include <atomic>
#include <cstdio>
#include <iostream>
#include <random>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "gainfn/gainfn.h"

namespace gainfn::service
{
    namespace
    {
        using nlohmann::json;

        template <typename T, void (*Free)(T*)>
        struct Handle
        {
            T* ptr = nullptr;
            ~Handle() { Free(ptr); }
        };

        using ErrorHandle = Handle<gf_error, gf_error_free>;
        using OutputHandle = Handle<gf_output, gf_output_free>;
        using ProblemHandle = Handle<gf_problem, gf_problem_free>;
        using ReportHandle = Handle<gf_report, gf_report_free>;
        using OptionsHandle = Handle<gf_options, gf_options_free>;

        std::string next_fault_id()
        {
            static const std::uint64_t      prefix = std::random_device{}();
            static std::atomic<std::uint64_t> counter{0};
            char buf[40];
            std::snprintf(buf, sizeof buf, "%08llx-%06llx", static_cast<unsigned long long>(prefix & 0xffffffffu),
                          static_cast<unsigned long long>(++counter));
            return buf;
        }

        Response error_response(int status, const std::string& kind, const std::string& path, const std::string& message)
        {
            json err;
            err["error"] = {{"kind", kind}, {"path", path}, {"message", message}};
            return Response{status, err.dump(2) + "\n"};
        }

        Response from_error(gf_status status, const gf_error* error)
        {
            const std::string message = error ? gf_error_message(error) : "";
            const std::string path = error ? gf_error_path(error) : "";
            switch (status)
            {
            case GF_ERR_SCHEMA:
            case GF_ERR_ARGUMENT: return error_response(400, gf_status_name(status), path, message);
            case GF_ERR_INVALID:
            case GF_ERR_NOT_FOUND: return error_response(422, gf_status_name(status), path, message);
            default: break;
            }
            const std::string id = next_fault_id();
            std::cerr << "gainfn service: internal fault " << id << ": " << message << "\n";
            json err;
            err["error"] = {{"kind", "internal"}, {"id", id}};
            return Response{500, err.dump(2) + "\n"};
        }

        bool query_flag(const Query& q, const char* key)
        {
            auto it = q.find(key);
            return it != q.end() && (it->second == "1" || it->second == "true");
        }

        /// Builds load options from query parameters; returns an error response on bad values.
        std::optional<Response> make_options(const Query& q, OptionsHandle& options)
        {
            options.ptr = gf_options_new();
            gf_options_set_renormalize(options.ptr, query_flag(q, "renormalize"));
            for (const char* key : {"ci_level", "ci_threshold"})
            {
                auto it = q.find(key);
                if (it == q.end())
                {
                    continue;
                }
                double value = 0.0;
                try
                {
                    value = std::stod(it->second);
                }
                catch (const std::exception&)
                {
                    return error_response(400, "argument", key, "expected a number");
                }
                const gf_status s = std::string(key) == "ci_level" ? gf_options_set_ci_level(options.ptr, value)
                                                                   : gf_options_set_ci_threshold(options.ptr, value);
                if (s != GF_OK)
                {
                    return error_response(400, "argument", key, "value out of range");
                }
            }
            return std::nullopt;
        }

        std::optional<Response> load(const std::string& document, const Query& q, ProblemHandle& problem)
        {
            OptionsHandle options;
            if (auto bad = make_options(q, options))
            {
                return bad;
            }
            ErrorHandle error;
            const gf_status s = gf_problem_load(document.c_str(), nullptr, options.ptr, &problem.ptr, &error.ptr);
            if (s != GF_OK)
            {
                return from_error(s, error.ptr);
            }
            return std::nullopt;
        }

        /// Splits a {"problem": {...}, <key>: ...} envelope.
        std::optional<Response> unwrap(const std::string& body, const char* key, std::string& problem, json& value)
        {
            json doc;
            try
            {
                doc = json::parse(body);
            }
            catch (const json::parse_error& e)
            {
                return error_response(400, "schema", "", std::string("malformed JSON: ") + e.what());
            }
            if (!doc.is_object() || !doc.contains("problem"))
            {
                return error_response(400, "schema", "problem", "missing required key 'problem'");
            }
            if (!doc.contains(key))
            {
                return error_response(400, "schema", key, std::string("missing required key '") + key + "'");
            }
            problem = doc["problem"].dump();
            value = doc[key];
            return std::nullopt;
        }

        Response ok_output(gf_status s, const OutputHandle& out, const ErrorHandle& error)
        {
            if (s != GF_OK)
            {
                return from_error(s, error.ptr);
            }
            return Response{200, std::string(gf_output_text(out.ptr), gf_output_size(out.ptr))};
        }

        Response health()
        {
            json doc;
            doc["status"] = "ok";
            doc["name"] = "gainfn";
            doc["version"] = gf_version();
            return Response{200, doc.dump(2) + "\n"};
        }

        Response weights(const std::string& body)
        {
            OutputHandle out;
            ErrorHandle  error;
            return ok_output(gf_weights(body.c_str(), GF_FORMAT_JSON, &out.ptr, &error.ptr), out, error);
        }

        Response evaluate(const std::string& body, const Query& q)
        {
            ProblemHandle problem;
            if (auto bad = load(body, q, problem))
            {
                return *bad;
            }
            ReportHandle report;
            ErrorHandle  error;
            if (gf_status s = gf_evaluate(problem.ptr, &report.ptr, &error.ptr); s != GF_OK)
            {
                return from_error(s, error.ptr);
            }
            OutputHandle out;
            return ok_output(gf_report_render(report.ptr, GF_FORMAT_JSON, &out.ptr, &error.ptr), out, error);
        }

        Response crossover(const std::string& body, const Query& q)
        {
            ProblemHandle problem;
            if (auto bad = load(body, q, problem))
            {
                return *bad;
            }
            OutputHandle out;
            ErrorHandle  error;
            return ok_output(gf_crossovers(problem.ptr, GF_FORMAT_JSON, &out.ptr, &error.ptr), out, error);
        }

        Response scenarios(const std::string& body, const Query& q)
        {
            std::string document;
            json        list;
            if (auto bad = unwrap(body, "scenarios", document, list))
            {
                return *bad;
            }
            ProblemHandle problem;
            if (auto bad = load(document, q, problem))
            {
                return *bad;
            }
            const std::string wrapped = json{{"scenarios", list}}.dump();
            OutputHandle out;
            ErrorHandle  error;
            return ok_output(gf_scenarios(problem.ptr, wrapped.c_str(), GF_FORMAT_JSON, &out.ptr, &error.ptr), out,
                             error);
        }

        Response breakeven(const std::string& body, const Query& q)
        {
            std::string document;
            json        arch;
            if (auto bad = unwrap(body, "architecture", document, arch))
            {
                return *bad;
            }
            if (!arch.is_string())
            {
                return error_response(400, "schema", "architecture", "expected a string");
            }
            ProblemHandle problem;
            if (auto bad = load(document, q, problem))
            {
                return *bad;
            }
            OutputHandle out;
            ErrorHandle  error;
            const std::string id = arch.get<std::string>();
            return ok_output(gf_breakeven(problem.ptr, id.c_str(), GF_FORMAT_JSON, &out.ptr, &error.ptr), out, error);
        }
    }

    Response dispatch(const std::string& method, const std::string& path, const Query& query, const std::string& body)
    {
        struct Route
        {
            const char* method;
            const char* path;
        };
        static constexpr Route routes[] = {
            {"GET", "/api/health"},
            {"POST", "/api/weights"},
            {"POST", "/api/evaluate"},
            {"POST", "/api/sensitivity/crossover"},
            {"POST", "/api/sensitivity/scenarios"},
            {"POST", "/api/breakeven"},
        };
        bool known_path = false;
        for (const auto& r : routes)
        {
            if (path != r.path)
            {
                continue;
            }
            known_path = true;
            if (method != r.method)
            {
                continue;
            }
            try
            {
                if (path == "/api/health")
                {
                    return health();
                }
                if (path == "/api/weights")
                {
                    return weights(body);
                }
                if (path == "/api/evaluate")
                {
                    return evaluate(body, query);
                }
                if (path == "/api/sensitivity/crossover")
                {
                    return crossover(body, query);
                }
                if (path == "/api/sensitivity/scenarios")
                {
                    return scenarios(body, query);
                }
                return breakeven(body, query);
            }
            catch (const std::exception&)
            {
                return from_error(GF_ERR_INTERNAL, nullptr);
            }
        }
        if (known_path)
        {
            return error_response(405, "method", path, "method " + method + " not allowed");
        }
        return error_response(404, "not_found", path, "no such route");
    }

    struct Server::Impl
    {
        httplib::Server http;
    };

    Server::Server(Config config)
        : m_config(std::move(config))
        , m_impl(std::make_unique<Impl>())
    {
        const bool cors = m_config.cors;
        auto handler = [cors](const httplib::Request& req, httplib::Response& res) {
            Query query(req.params.begin(), req.params.end());
            Response r = dispatch(req.method, req.path, query, req.body);
            res.status = r.status;
            res.set_content(r.body, "application/json; charset=utf-8");
            if (cors)
            {
                res.set_header("Access-Control-Allow-Origin", "*");
            }
        };
        auto& http = m_impl->http;
        http.Get(".*", handler);
        http.Post(".*", handler);
        http.Put(".*", handler);
        http.Delete(".*", handler);
        http.Options(".*", [cors](const httplib::Request&, httplib::Response& res) {
            res.status = 204;
            if (cors)
            {
                res.set_header("Access-Control-Allow-Origin", "*");
                res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
                res.set_header("Access-Control-Allow-Headers", "Content-Type");
            }
        });
    }

    Server::~Server() { stop(); }

    bool Server::bind()
    {
        auto& http = m_impl->http;
        if (m_config.port == 0)
        {
            m_port = http.bind_to_any_port(m_config.host);
            return m_port > 0;
        }
        if (!http.bind_to_port(m_config.host, m_config.port))
        {
            return false;
        }
        m_port = m_config.port;
        return true;
    }

    bool Server::listen() { return m_impl->http.listen_after_bind(); }

    void Server::wait_until_ready() const
    {
        while (!m_impl->http.is_running())
        {
            std::this_thread::sleep_for(std::chrono::milliseconds(1));
        }
    }

    void Server::stop()
    {
        if (m_impl && m_impl->http.is_running())
        {
            m_impl->http.stop();
        }
    }
}
