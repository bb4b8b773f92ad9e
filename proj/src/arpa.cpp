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

#include "arpa.hpp"

#include <cstdlib>
#include <map>
#include <vector>

#include "errors.hpp"
#include "util.hpp"

namespace treelint {

namespace {

[[noreturn]] void fail(size_t line_no, const std::string& message) {
    throw InputError("ARPA line " + std::to_string(line_no) + ": " + message);
}

double parse_log_value(const std::string& field, size_t line_no) {
    char* end = nullptr;
    double value = std::strtod(field.c_str(), &end);
    if (end == field.c_str() || *end != '\0') fail(line_no, "bad log value '" + field + "'");
    return value;
}

}  // namespace

std::string write_arpa(const NGramModel& model) {
    std::string out;
    out += "\\data\\\n";
    for (int k = 1; k <= model.order(); ++k) {
        out += "ngram " + std::to_string(k) + "=" + std::to_string(model.logprob(k).size()) + "\n";
    }
    for (int k = 1; k <= model.order(); ++k) {
        out += "\n\\" + std::to_string(k) + "-grams:\n";
        const auto* bows = k < model.order() ? &model.backoff(k) : nullptr;
        for (const auto& [key, lp] : model.logprob(k)) {
            out += format_fixed(lp);
            out += '\t';
            out += key;
            if (bows != nullptr) {
                auto it = bows->find(key);
                if (it != bows->end()) {
                    out += '\t';
                    out += format_fixed(it->second);
                }
            }
            out += '\n';
        }
    }
    out += "\n\\end\\\n";
    return out;
}

NGramModel read_arpa(std::string_view text) {
    std::vector<std::string> lines = split(std::string(text), '\n');
    for (size_t n = 0; n < lines.size(); ++n) {
        if (!lines[n].empty() && lines[n].back() == '\r')
            fail(n + 1, "carriage-return line ending");
    }
    size_t i = 0;
    auto next_content = [&]() -> bool {
        while (i < lines.size() && lines[i].empty()) ++i;
        return i < lines.size();
    };

    if (!next_content() || lines[i] != "\\data\\") fail(i + 1, "expected \\data\\ header");
    ++i;

    // Declared per-order counts, `ngram k=COUNT`, contiguous from 1.
    std::vector<size_t> declared;
    while (i < lines.size() && lines[i].rfind("ngram ", 0) == 0) {
        const std::string& line = lines[i];
        size_t eq = line.find('=');
        if (eq == std::string::npos) fail(i + 1, "bad count declaration '" + line + "'");
        int k = std::atoi(line.substr(6, eq - 6).c_str());
        if (k != static_cast<int>(declared.size()) + 1)
            fail(i + 1, "count declarations must run 1.." + std::to_string(kMaxOrder) +
                            " without gaps");
        char* end = nullptr;
        unsigned long long n = std::strtoull(line.c_str() + eq + 1, &end, 10);
        if (*end != '\0') fail(i + 1, "bad count declaration '" + line + "'");
        declared.push_back(static_cast<size_t>(n));
        ++i;
    }
    if (declared.empty()) fail(i + 1, "no ngram count declarations after \\data\\");
    if (declared.size() > static_cast<size_t>(kMaxOrder))
        fail(i, "order " + std::to_string(declared.size()) + " exceeds the supported maximum " +
                    std::to_string(kMaxOrder));
    const int order = static_cast<int>(declared.size());

    std::vector<std::map<std::string, double>> logprob(order);
    std::vector<std::map<std::string, double>> backoff(order > 0 ? order - 1 : 0);

    for (int k = 1; k <= order; ++k) {
        std::string header = "\\" + std::to_string(k) + "-grams:";
        if (!next_content() || lines[i] != header) fail(i + 1, "expected " + header + " section");
        ++i;
        auto& table = logprob[k - 1];
        while (next_content() && lines[i][0] != '\\') {
            std::vector<std::string> fields = split(lines[i], '\t');
            if (fields.size() < 2 || fields.size() > 3)
                fail(i + 1, "expected 2 or 3 tab-separated fields");
            if (fields.size() == 3 && k == order)
                fail(i + 1, "back-off weight on a highest-order entry");
            double lp = parse_log_value(fields[0], i + 1);
            const std::string& key = fields[1];
            if (static_cast<int>(split_ws(key).size()) != k)
                fail(i + 1, "expected " + std::to_string(k) + " tokens, got '" + key + "'");
            if (!table.emplace(key, lp).second) fail(i + 1, "duplicate entry '" + key + "'");
            if (fields.size() == 3) backoff[k - 1][key] = parse_log_value(fields[2], i + 1);
            ++i;
        }
        if (table.size() != declared[k - 1])
            fail(i + 1, "section " + header + " lists " + std::to_string(table.size()) +
                            " entries but the header declared " + std::to_string(declared[k - 1]));
    }

    if (!next_content() || lines[i] != "\\end\\") fail(i + 1, "expected \\end\\ terminator");
    ++i;
    if (next_content()) fail(i + 1, "content after \\end\\");

    return NGramModel::from_tables(order, std::move(logprob), std::move(backoff));
}

}  // namespace treelint
