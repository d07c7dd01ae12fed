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

#include <stdexcept>
#include <string>
#include <utility>

namespace gainfn
{
    /// Classifies why an input was rejected. `schema` covers documents that
    /// cannot be read as the expected shape at all; `invalid` covers
    /// well-formed inputs that break a domain rule; `not_found` is a
    /// reference to an application or architecture id that does not exist.
    enum class ErrorKind
    {
        schema,
        invalid,
        not_found,
    };

    class InputError : public std::runtime_error
    {
    public:
        InputError(ErrorKind kind, std::string path, const std::string& message)
            : std::runtime_error(message)
            , m_kind(kind)
            , m_path(std::move(path))
        {
        }

        ErrorKind kind() const noexcept { return m_kind; }

        /// Location of the offending element, e.g. `measurements[3].runs[0]`.
        /// Empty when the error is not tied to one element.
        const std::string& path() const noexcept { return m_path; }

    private:
        ErrorKind   m_kind;
        std::string m_path;
    };

    [[noreturn]] inline void throw_schema(std::string path, const std::string& message)
    {
        throw InputError(ErrorKind::schema, std::move(path), message);
    }

    [[noreturn]] inline void throw_invalid(std::string path, const std::string& message)
    {
        throw InputError(ErrorKind::invalid, std::move(path), message);
    }

    [[noreturn]] inline void throw_not_found(std::string path, const std::string& message)
    {
        throw InputError(ErrorKind::not_found, std::move(path), message);
    }
}
