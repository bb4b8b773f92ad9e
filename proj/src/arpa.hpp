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

#include <string>
#include <string_view>

#include "ngram_model.hpp"

namespace treelint {

// Serializes a model in the ARPA n-gram file format: a `\data\` header
// declaring per-order entry counts, one `\k-grams:` section per order with
// `LOGPROB<TAB>tokens[<TAB>BACKOFF]` lines in lexicographic token order,
// and a closing `\end\`. Log values are printed with seven decimals.
std::string write_arpa(const NGramModel& model);

// Parses ARPA text back into a model. Declared counts must match the
// section contents; violations raise InputError with a line number.
NGramModel read_arpa(std::string_view text);

}  // namespace treelint
