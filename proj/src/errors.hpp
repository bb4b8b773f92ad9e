// Copyright 2026 The treelint Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace treelint {

// Error kinds map one-to-one onto CLI exit codes: config errors exit 2,
// input errors exit 3, anything else exits 4.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad configuration or parameters: tier configs, model orders, cutoffs.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Unreadable or malformed input data: XML documents, corpus files, ARPA
// models, gold lists.
class InputError : public Error {
public:
    using Error::Error;
};

}  // namespace treelint
