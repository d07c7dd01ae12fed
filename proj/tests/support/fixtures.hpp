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

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#ifndef GAINFN_FIXTURE_DIR
#error "GAINFN_FIXTURE_DIR must point at tests/fixtures"
#endif

namespace fixtures
{
    inline std::string path(const std::string& name) { return std::string(GAINFN_FIXTURE_DIR) + "/" + name; }

    inline std::string read(const std::string& name)
    {
        std::ifstream in(path(name), std::ios::binary);
        if (!in)
        {
            throw std::runtime_error("missing fixture " + name);
        }
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    }
}
