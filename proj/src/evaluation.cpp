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

#include "evaluation.hpp"

#include <cmath>
#include <optional>

#include <json.hpp>

#include "errors.hpp"
#include "rng.hpp"
#include "util.hpp"

namespace treelint {

using nlohmann::json;

namespace {

std::string strip_comment_and_space(const std::string& line) {
    std::string s = line.substr(0, line.find('#'));
    size_t begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    size_t end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

GoldErrorSet load_gold(std::string_view text, const std::string& tier_name) {
    GoldErrorSet gold;
    gold.tier_name = tier_name;
    std::vector<std::string> lines = split(std::string(text), '\n');
    for (size_t i = 0; i < lines.size(); ++i) {
        std::string ref_text = strip_comment_and_space(lines[i]);
        if (ref_text.empty()) continue;
        EntryRef ref;
        try {
            ref = EntryRef::parse(ref_text);
        } catch (const Error& e) {
            throw InputError("gold line " + std::to_string(i + 1) + ": " + e.what());
        }
        if (ref.tier_name == tier_name) gold.refs.insert(std::move(ref));
    }
    if (gold.refs.empty())
        warn("gold list contains no references for tier '" + tier_name + "'");
    return gold;
}

std::string gold_to_text(const GoldErrorSet& gold) {
    std::string out;
    for (const EntryRef& ref : gold.refs) {
        out += ref.to_string();
        out += '\n';
    }
    return out;
}

PrecisionTable precision_at(const RankedReport& report, const GoldErrorSet& gold,
                            const std::vector<size_t>& cutoffs) {
    if (cutoffs.empty()) throw ConfigError("at least one cutoff is required");
    for (size_t i = 0; i < cutoffs.size(); ++i) {
        if (cutoffs[i] == 0) throw ConfigError("cutoffs must be positive");
        if (i > 0 && cutoffs[i] <= cutoffs[i - 1])
            throw ConfigError("cutoffs must be strictly increasing");
        if (cutoffs[i] > report.entries.size())
            throw ConfigError("cutoff " + std::to_string(cutoffs[i]) +
                              " exceeds the report size " + std::to_string(report.entries.size()));
    }
    for (const ScoreRecord& record : report.entries) {
        if (record.entry.tier_name != gold.tier_name)
            throw ConfigError("report entry tier '" + record.entry.tier_name +
                              "' does not match gold tier '" + gold.tier_name + "'");
    }

    PrecisionTable table;
    size_t hits = 0;
    size_t next = 0;
    for (size_t i = 0; i < cutoffs.back(); ++i) {
        if (gold.refs.count(report.entries[i].entry) > 0) ++hits;
        if (i + 1 == cutoffs[next]) {
            PrecisionRow row;
            row.r = cutoffs[next];
            row.hits = hits;
            row.precision = static_cast<double>(hits) / static_cast<double>(row.r);
            table.rows.push_back(row);
            ++next;
        }
    }
    double sum = 0.0;
    for (const PrecisionRow& row : table.rows) sum += row.precision;
    table.average = sum / static_cast<double>(table.rows.size());
    return table;
}

std::string precision_to_text(const PrecisionTable& table, bool paper_style) {
    const int decimals = paper_style ? 2 : 4;
    std::string out = "R\thits\tprecision\n";
    for (const PrecisionRow& row : table.rows) {
        out += std::to_string(row.r);
        out += '\t';
        out += std::to_string(row.hits);
        out += '\t';
        out += format_fixed(row.precision, decimals);
        out += '\n';
    }
    out += "AVG\t\t" + format_fixed(table.average, decimals) + "\n";
    return out;
}

TemplateGrammar parse_grammar(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("grammar is not valid JSON: ") + e.what());
    }
    if (!root.is_object() || !root.contains("templates"))
        throw ConfigError("grammar: missing key 'templates'");
    if (!root["templates"].is_array() || root["templates"].empty())
        throw ConfigError("grammar: key 'templates' must be a non-empty array");

    TemplateGrammar grammar;
    grammar.tier_name = "SYN";
    if (root.contains("tier")) {
        if (!root["tier"].is_string() || root["tier"].get<std::string>().empty())
            throw ConfigError("grammar: key 'tier' must be a non-empty string");
        grammar.tier_name = root["tier"].get<std::string>();
    }

    for (size_t i = 0; i < root["templates"].size(); ++i) {
        std::string where = "grammar template " + std::to_string(i);
        const json& node = root["templates"][i];
        if (!node.is_object() || !node.contains("tokens") || !node["tokens"].is_array() ||
            node["tokens"].empty())
            throw ConfigError(where + ": key 'tokens' must be a non-empty array");
        SentenceTemplate tmpl;
        for (const json& item : node["tokens"]) {
            if (!item.is_string() || item.get<std::string>().empty())
                throw ConfigError(where + ": tokens must be non-empty strings");
            tmpl.tokens.push_back(item.get<std::string>());
        }
        if (node.contains("weight")) {
            if (!node["weight"].is_number())
                throw ConfigError(where + ": key 'weight' must be a number");
            tmpl.weight = node["weight"].get<double>();
        }
        if (!(tmpl.weight > 0.0) || !std::isfinite(tmpl.weight))
            throw ConfigError(where + ": weight must be positive and finite");
        grammar.templates.push_back(std::move(tmpl));
    }
    return grammar;
}

TagCorpus generate_synthetic_corpus(const TemplateGrammar& grammar, size_t size, uint64_t seed) {
    if (grammar.templates.empty()) throw ConfigError("grammar has no templates");
    if (size == 0) throw ConfigError("synthetic corpus size must be at least 1");
    std::vector<double> weights;
    weights.reserve(grammar.templates.size());
    for (const SentenceTemplate& tmpl : grammar.templates) {
        if (!(tmpl.weight > 0.0) || !std::isfinite(tmpl.weight))
            throw ConfigError("template weights must be positive and finite");
        weights.push_back(tmpl.weight);
    }

    Rng rng(seed);
    std::vector<std::vector<std::string>> token_lists;
    token_lists.reserve(size);
    for (size_t i = 0; i < size; ++i)
        token_lists.push_back(grammar.templates[rng.weighted(weights)].tokens);
    return TagCorpus::from_sentences(grammar.tier_name, std::move(token_lists));
}

std::string inject_op_name(InjectOp op) {
    switch (op) {
        case InjectOp::swap_adjacent: return "swap_adjacent";
        case InjectOp::delete_token: return "delete_token";
        case InjectOp::insert_random_token: return "insert_random_token";
        case InjectOp::replace_token: return "replace_token";
        case InjectOp::move_subtree_token: return "move_subtree_token";
    }
    return "swap_adjacent";
}

namespace {

InjectOp parse_op_name(const std::string& name) {
    if (name == "swap_adjacent") return InjectOp::swap_adjacent;
    if (name == "delete_token") return InjectOp::delete_token;
    if (name == "insert_random_token") return InjectOp::insert_random_token;
    if (name == "replace_token") return InjectOp::replace_token;
    if (name == "move_subtree_token") return InjectOp::move_subtree_token;
    throw ConfigError("unknown injection operation '" + name + "'");
}

// One attempted application of the operation to the token list. Returns
// nothing when the operation cannot change this sentence (the caller then
// re-draws); a returned list always differs from the input.
std::optional<std::vector<std::string>> apply_op(Rng& rng, InjectOp op,
                                                 const std::vector<std::string>& tokens,
                                                 const std::vector<std::string>& vocab) {
    const size_t len = tokens.size();
    std::vector<std::string> out = tokens;
    switch (op) {
        case InjectOp::swap_adjacent: {
            std::vector<size_t> positions;
            for (size_t i = 0; i + 1 < len; ++i) {
                if (tokens[i] != tokens[i + 1]) positions.push_back(i);
            }
            if (positions.empty()) return std::nullopt;
            size_t i = positions[rng.below(positions.size())];
            std::swap(out[i], out[i + 1]);
            return out;
        }
        case InjectOp::delete_token: {
            if (len < 2) return std::nullopt;  // deletion must keep the sentence non-empty
            out.erase(out.begin() + static_cast<ptrdiff_t>(rng.below(len)));
            return out;
        }
        case InjectOp::insert_random_token: {
            if (vocab.empty()) return std::nullopt;
            size_t at = rng.below(len + 1);
            const std::string& token = vocab[rng.below(vocab.size())];
            out.insert(out.begin() + static_cast<ptrdiff_t>(at), token);
            return out;
        }
        case InjectOp::replace_token: {
            if (len == 0) return std::nullopt;
            size_t at = rng.below(len);
            std::vector<const std::string*> choices;
            for (const std::string& token : vocab) {
                if (token != tokens[at]) choices.push_back(&token);
            }
            if (choices.empty()) return std::nullopt;
            out[at] = *choices[rng.below(choices.size())];
            return out;
        }
        case InjectOp::move_subtree_token: {
            if (len < 2) return std::nullopt;
            // Enumerate every (source, destination) whose result differs
            // from the original, so the draw is uniform over real changes.
            std::vector<std::pair<size_t, size_t>> moves;
            for (size_t from = 0; from < len; ++from) {
                std::vector<std::string> removed = tokens;
                removed.erase(removed.begin() + static_cast<ptrdiff_t>(from));
                for (size_t to = 0; to < len; ++to) {
                    if (to == from) continue;
                    std::vector<std::string> candidate = removed;
                    candidate.insert(candidate.begin() + static_cast<ptrdiff_t>(to), tokens[from]);
                    if (candidate != tokens) moves.emplace_back(from, to);
                }
            }
            if (moves.empty()) return std::nullopt;
            auto [from, to] = moves[rng.below(moves.size())];
            out.erase(out.begin() + static_cast<ptrdiff_t>(from));
            out.insert(out.begin() + static_cast<ptrdiff_t>(to), tokens[from]);
            return out;
        }
    }
    return std::nullopt;
}

}  // namespace

std::vector<std::pair<InjectOp, double>> default_op_weights() {
    return {{InjectOp::swap_adjacent, 1.0},
            {InjectOp::delete_token, 1.0},
            {InjectOp::insert_random_token, 1.0},
            {InjectOp::replace_token, 1.0},
            {InjectOp::move_subtree_token, 1.0}};
}

std::vector<std::pair<InjectOp, double>> parse_op_weights(const std::string& text) {
    std::vector<std::pair<InjectOp, double>> ops;
    std::set<InjectOp> seen;
    for (const std::string& part : split(text, ',')) {
        if (part.empty()) throw ConfigError("operation list has an empty element");
        size_t eq = part.find('=');
        InjectOp op = parse_op_name(part.substr(0, eq));
        double weight = 1.0;
        if (eq != std::string::npos) {
            try {
                size_t used = 0;
                weight = std::stod(part.substr(eq + 1), &used);
                if (used != part.size() - eq - 1) throw std::invalid_argument(part);
            } catch (const std::exception&) {
                throw ConfigError("bad weight in operation '" + part + "'");
            }
        }
        if (!(weight > 0.0) || !std::isfinite(weight))
            throw ConfigError("operation '" + part + "': weight must be positive and finite");
        if (!seen.insert(op).second)
            throw ConfigError("operation '" + inject_op_name(op) + "' listed twice");
        ops.emplace_back(op, weight);
    }
    if (ops.empty()) throw ConfigError("operation list is empty");
    return ops;
}

InjectionResult inject_errors(const TagCorpus& corpus, const InjectionSpec& spec) {
    if (!(spec.rate > 0.0) || !(spec.rate < 1.0))
        throw ConfigError("injection rate must be in (0,1)");
    if (spec.operations.empty()) throw ConfigError("injection needs at least one operation");
    for (const auto& [op, weight] : spec.operations) {
        if (!(weight > 0.0) || !std::isfinite(weight))
            throw ConfigError("operation '" + inject_op_name(op) +
                              "': weight must be positive and finite");
    }
    const size_t n = corpus.size();
    if (n == 0) throw InputError("cannot inject errors into an empty corpus");
    double scaled = spec.rate * static_cast<double>(n);
    if (scaled < 1.0 - 1e-9)
        throw ConfigError("rate " + format_fixed(spec.rate, 4) + " selects no entry at corpus size " +
                          std::to_string(n));
    // ceil with a tolerance so rates like 0.05 hit their exact decimal
    // product (0.05·10000 must be 500, not 501).
    const size_t targets = static_cast<size_t>(std::ceil(scaled - 1e-9));

    std::vector<double> weights;
    weights.reserve(spec.operations.size());
    for (const auto& [op, weight] : spec.operations) weights.push_back(weight);
    std::vector<std::string> vocab(corpus.vocabulary().begin(), corpus.vocabulary().end());

    Rng rng(spec.seed);
    std::vector<TagSentence> sentences = corpus.sentences();
    std::vector<bool> chosen(n, false);
    GoldErrorSet gold;
    gold.tier_name = corpus.tier_name();

    constexpr int kMaxAttempts = 10000;
    for (size_t slot = 0; slot < targets; ++slot) {
        bool placed = false;
        for (int attempt = 0; attempt < kMaxAttempts && !placed; ++attempt) {
            size_t t = static_cast<size_t>(rng.below(n));
            if (chosen[t]) continue;
            InjectOp op = spec.operations[rng.weighted(weights)].first;
            auto mutated = apply_op(rng, op, sentences[t].tokens, vocab);
            if (!mutated) continue;
            sentences[t].tokens = std::move(*mutated);
            chosen[t] = true;
            gold.refs.insert(sentences[t].entry);
            placed = true;
        }
        if (!placed) {
            // The random search stalled (nearly every sentence corrupted
            // already, or most are incompatible); fall back to the first
            // remaining sentence that supports any configured operation.
            for (size_t t = 0; t < n && !placed; ++t) {
                if (chosen[t]) continue;
                for (const auto& [op, weight] : spec.operations) {
                    auto mutated = apply_op(rng, op, sentences[t].tokens, vocab);
                    if (!mutated) continue;
                    sentences[t].tokens = std::move(*mutated);
                    chosen[t] = true;
                    gold.refs.insert(sentences[t].entry);
                    placed = true;
                    break;
                }
            }
        }
        if (!placed)
            throw InputError("unable to place corruption " + std::to_string(slot + 1) + " of " +
                             std::to_string(targets) +
                             ": no remaining sentence supports any configured operation");
    }

    InjectionResult result;
    result.corpus = TagCorpus(corpus.tier_name(), std::move(sentences));
    result.gold = std::move(gold);
    return result;
}

}  // namespace treelint
