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
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "corpus.hpp"
#include "scoring.hpp"

namespace treelint {

// References of the entries known to be errorful, all from one tier.
struct GoldErrorSet {
    std::string tier_name;
    std::set<EntryRef> refs;
};

// Parses a gold list: one `TIER:ordinal[:source_id]` per line, `#` starts a
// comment. References of other tiers are filtered out; an empty result
// after filtering warns but is not an error.
GoldErrorSet load_gold(std::string_view text, const std::string& tier_name);
std::string gold_to_text(const GoldErrorSet& gold);

struct PrecisionRow {
    size_t r = 0;
    size_t hits = 0;
    double precision = 0.0;
};

struct PrecisionTable {
    std::vector<PrecisionRow> rows;  // cutoffs in strictly increasing order
    double average = 0.0;            // mean of the row precisions
};

// Precision at rank: for each cutoff R, the fraction of the R highest-ranked
// entries that appear in the gold set. Cutoffs must be strictly increasing
// and must not exceed the report size.
PrecisionTable precision_at(const RankedReport& report, const GoldErrorSet& gold,
                            const std::vector<size_t>& cutoffs);

// Precision report format: TSV `R	hits	precision` plus a final AVG row.
// Four decimal places by default; two with paper_style.
std::string precision_to_text(const PrecisionTable& table, bool paper_style = false);

// A weighted set of fixed token sequences to sample synthetic corpora from.
struct SentenceTemplate {
    std::vector<std::string> tokens;
    double weight = 1.0;
};

struct TemplateGrammar {
    std::string tier_name;  // tier assigned to generated entries
    std::vector<SentenceTemplate> templates;
};

// Grammar file format:
//   {"tier": "SYN", "templates": [{"tokens": ["form", "sense"], "weight": 9.0}, …]}
// tier defaults to SYN and weight to 1; weights must be positive and finite.
TemplateGrammar parse_grammar(const std::string& json_text);

// Draws `size` sentences i.i.d. from the weighted templates with a seeded
// deterministic generator; entries get ordinals 0..size−1.
TagCorpus generate_synthetic_corpus(const TemplateGrammar& grammar, size_t size, uint64_t seed);

// The corruption operations. Each rewrites one tag sentence in a way the
// original corpus may never have produced; delete keeps the sentence
// non-empty, and every operation is guaranteed to change the sentence.
enum class InjectOp {
    swap_adjacent,
    delete_token,
    insert_random_token,
    replace_token,
    move_subtree_token,
};

std::string inject_op_name(InjectOp op);

// Parses "op=weight,op=weight" (weight defaults to 1 when omitted).
std::vector<std::pair<InjectOp, double>> parse_op_weights(const std::string& text);
std::vector<std::pair<InjectOp, double>> default_op_weights();

struct InjectionSpec {
    double rate = 0.05;  // fraction of entries corrupted, in (0,1)
    std::vector<std::pair<InjectOp, double>> operations = default_op_weights();
    uint64_t seed = 0;
};

struct InjectionResult {
    TagCorpus corpus;
    GoldErrorSet gold;  // exactly the corrupted refs
};

// Corrupts ⌈rate·N⌉ distinct sentences, each with one operation drawn by
// weight. Targets incompatible with the drawn operation (too short, or no
// change possible) are re-drawn. Raises InputError when the corpus cannot
// host the requested number of corruptions.
InjectionResult inject_errors(const TagCorpus& corpus, const InjectionSpec& spec);

}  // namespace treelint
