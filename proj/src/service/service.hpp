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

#include <map>
#include <memory>
#include <string>

namespace gainfn::service
{
    struct Config
    {
        std::string host = "127.0.0.1";
        int         port = 8710;
        /// Send permissive cross-origin headers so a locally served UI can call in.
        bool        cors = true;
    };

    struct Response
    {
        int         status = 200;
        std::string body;
    };

    using Query = std::multimap<std::string, std::string>;

    /// Routes one request. Pure function of its arguments; the HTTP server
    /// below only adapts transport to this call.
    Response dispatch(const std::string& method, const std::string& path, const Query& query, const std::string& body);

    class Server
    {
    public:
        explicit Server(Config config);
        ~Server();

        Server(const Server&) = delete;
        Server& operator=(const Server&) = delete;

        /// Binds the socket. With port 0 an ephemeral port is chosen; see port().
        bool bind();
        int  port() const noexcept { return m_port; }

        /// Serves until stop() is called. Requires a successful bind().
        bool listen();
        /// Blocks until listen() is accepting connections.
        void wait_until_ready() const;
        void stop();

    private:
        struct Impl;
        Config                m_config;
        int                   m_port = 0;
        std::unique_ptr<Impl> m_impl;
    };
}
