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

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace treelint {

// All report numbers are printed with seven digits after the decimal point.
std::string format_fixed(double value, int decimals = 7);

std::vector<std::string> split(std::string_view text, char sep);

// Splits on runs of spaces and tabs, dropping empty fields.
std::vector<std::string> split_ws(std::string_view text);

std::string join(std::span<const std::string> tokens, char sep = ' ');

uint64_t fnv1a64(std::string_view data);
std::string hex64(uint64_t value);

// Whole-file IO. Both raise InputError on failure.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view data);

// Non-fatal diagnostics are routed through a process-wide handler so that
// library embedders can capture them. The default handler writes
// "treelint: warning: ..." to stderr.
void warn(const std::string& message);
void set_warning_handler(std::function<void(const std::string&)> handler);

}  // namespace treelint
