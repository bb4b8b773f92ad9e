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

#include "scoring.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "arpa.hpp"
#include "errors.hpp"
#include "util.hpp"

namespace treelint {

namespace {

const char kReportHeader[] = "rank\tentry_ref\tn_tokens\tlogprob\tppw\tppwet";

// Sums conditional log probabilities of events[first..] within the given
// token stream, each conditioned on up to order−1 preceding stream tokens.
double sum_events(const NGramModel& model, const std::vector<std::string>& stream, size_t first) {
    const size_t max_context = static_cast<size_t>(model.order()) - 1;
    double total = 0.0;
    for (size_t i = first; i < stream.size(); ++i) {
        size_t len = std::min(i, max_context);
        std::span<const std::string> context(stream.data() + (i - len), len);
        total += model.cond_logprob(context, stream[i]);
    }
    return total;
}

}  // namespace

Direction direction_for(Measure measure) {
    return measure == Measure::logprob ? Direction::ascending : Direction::descending;
}

std::string measure_name(Measure measure) {
    switch (measure) {
        case Measure::logprob: return "logprob";
        case Measure::ppw: return "ppw";
        case Measure::ppwet: return "ppwet";
    }
    return "logprob";
}

Measure parse_measure(const std::string& name) {
    if (name == "logprob") return Measure::logprob;
    if (name == "ppw") return Measure::ppw;
    if (name == "ppwet") return Measure::ppwet;
    throw ConfigError("unknown measure '" + name + "' (expected logprob, ppw, or ppwet)");
}

double score_logprob(const NGramModel& model, const TagSentence& sentence) {
    std::vector<std::string> padded;
    padded.reserve(sentence.tokens.size() + 2);
    padded.push_back(kStartToken);
    padded.insert(padded.end(), sentence.tokens.begin(), sentence.tokens.end());
    padded.push_back(kEndToken);
    return sum_events(model, padded, 1);
}

std::optional<double> score_ppwet(const NGramModel& model, const TagSentence& sentence) {
    const size_t n = sentence.tokens.size();
    if (n == 0) return std::nullopt;
    double lp = score_logprob(model, sentence);
    return std::pow(10.0, -lp / static_cast<double>(n + 1));
}

std::optional<double> score_ppw(const NGramModel& model, const TagSentence& sentence) {
    const size_t n = sentence.tokens.size();
    const size_t first = model.order() == 1 ? 0 : 1;
    if (n <= first) return std::nullopt;
    double total = sum_events(model, sentence.tokens, first);
    return std::pow(10.0, -total / static_cast<double>(n - first));
}

ScoreRecord score_sentence(const NGramModel& model, const TagSentence& sentence) {
    ScoreRecord record;
    record.entry = sentence.entry;
    record.n_tokens = sentence.tokens.size();
    record.logprob = score_logprob(model, sentence);
    record.ppw = score_ppw(model, sentence);
    record.ppwet = score_ppwet(model, sentence);
    return record;
}

std::vector<ScoreRecord> score_corpus(const NGramModel& model, const TagCorpus& corpus) {
    bool overlap = false;
    for (const auto& token : corpus.vocabulary()) {
        if (model.vocabulary().count(token) > 0) {
            overlap = true;
            break;
        }
    }
    if (!overlap && !corpus.vocabulary().empty())
        warn("model and corpus vocabularies are disjoint; every event scores at the floor");

    std::vector<ScoreRecord> records;
    records.reserve(corpus.size());
    for (const auto& sentence : corpus.sentences()) records.push_back(score_sentence(model, sentence));
    return records;
}

RankedReport rank(std::vector<ScoreRecord> records, Measure measure, Direction direction,
                  std::string model_id) {
    if (records.empty()) throw ConfigError("cannot rank an empty record list");
    if (direction != direction_for(measure))
        throw ConfigError("measure " + measure_name(measure) + " must be ranked " +
                          (direction_for(measure) == Direction::ascending ? "ascending"
                                                                          : "descending"));

    auto key = [measure](const ScoreRecord& r) -> std::optional<double> {
        switch (measure) {
            case Measure::logprob: return r.logprob;
            case Measure::ppw: return r.ppw;
            case Measure::ppwet: return r.ppwet;
        }
        return r.logprob;
    };
    const bool ascending = direction == Direction::ascending;
    std::sort(records.begin(), records.end(),
              [&](const ScoreRecord& a, const ScoreRecord& b) {
                  std::optional<double> ka = key(a);
                  std::optional<double> kb = key(b);
                  if (ka.has_value() != kb.has_value()) return ka.has_value();  // unscorable last
                  if (ka && *ka != *kb) return ascending ? *ka < *kb : *ka > *kb;
                  return a.entry.ordinal < b.entry.ordinal;
              });

    RankedReport report;
    report.measure = measure;
    report.direction = direction;
    report.model_id = std::move(model_id);
    report.entries = std::move(records);
    return report;
}

std::string model_id_of(const NGramModel& model) {
    return hex64(fnv1a64(write_arpa(model)));
}

std::string report_to_text(const RankedReport& report, size_t top) {
    size_t rows = report.entries.size();
    if (top > 0 && top < rows) rows = top;

    std::string out;
    out += kReportHeader;
    out += '\n';
    for (size_t i = 0; i < rows; ++i) {
        const ScoreRecord& r = report.entries[i];
        out += std::to_string(i + 1);
        out += '\t';
        out += r.entry.to_string();
        out += '\t';
        out += std::to_string(r.n_tokens);
        out += '\t';
        out += format_fixed(r.logprob);
        out += '\t';
        out += r.ppw ? format_fixed(*r.ppw) : "NA";
        out += '\t';
        out += r.ppwet ? format_fixed(*r.ppwet) : "NA";
        out += '\n';
    }
    return out;
}

namespace {

[[noreturn]] void report_fail(size_t line_no, const std::string& message) {
    throw InputError("ranked report line " + std::to_string(line_no) + ": " + message);
}

double parse_double_field(const std::string& field, size_t line_no) {
    char* end = nullptr;
    double value = std::strtod(field.c_str(), &end);
    if (end == field.c_str() || *end != '\0') report_fail(line_no, "bad number '" + field + "'");
    return value;
}

std::optional<double> parse_optional_field(const std::string& field, size_t line_no) {
    if (field == "NA") return std::nullopt;
    return parse_double_field(field, line_no);
}

}  // namespace

RankedReport report_from_text(std::string_view text) {
    std::vector<std::string> lines = split(std::string(text), '\n');
    if (lines.empty() || lines[0] != kReportHeader)
        report_fail(1, "expected header '" + std::string(kReportHeader) + "'");

    RankedReport report;
    for (size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        std::vector<std::string> fields = split(lines[i], '\t');
        if (fields.size() != 6) report_fail(i + 1, "expected 6 tab-separated fields");
        char* end = nullptr;
        unsigned long long rank_no = std::strtoull(fields[0].c_str(), &end, 10);
        if (*end != '\0' || rank_no != report.entries.size() + 1)
            report_fail(i + 1, "rank column must count 1,2,… without gaps");

        ScoreRecord record;
        try {
            record.entry = EntryRef::parse(fields[1]);
        } catch (const Error& e) {
            report_fail(i + 1, e.what());
        }
        record.n_tokens = static_cast<size_t>(std::strtoull(fields[2].c_str(), &end, 10));
        if (*end != '\0') report_fail(i + 1, "bad token count '" + fields[2] + "'");
        record.logprob = parse_double_field(fields[3], i + 1);
        record.ppw = parse_optional_field(fields[4], i + 1);
        record.ppwet = parse_optional_field(fields[5], i + 1);
        report.entries.push_back(std::move(record));
    }
    return report;
}

}  // namespace treelint
