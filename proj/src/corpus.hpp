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

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tier.hpp"
#include "xml_scan.hpp"

namespace treelint {

// Tokens an extraction can never produce; they are reserved for sentence
// padding and the unseen-event convention.
inline constexpr const char* kStartToken = "<s>";
inline constexpr const char* kEndToken = "</s>";
inline constexpr const char* kUnkToken = "<unk>";

bool is_reserved_token(std::string_view token);

// Stable identity of one extracted entry. Identity is (tier_name, ordinal);
// source_id is carried along for human reference when the entry element had
// an xml:id-style attribute.
struct EntryRef {
    std::string tier_name;
    size_t ordinal = 0;
    std::string source_id;  // empty = absent

    std::string to_string() const;              // TIER:ordinal[:source_id]
    static EntryRef parse(std::string_view text);

    friend bool operator==(const EntryRef& a, const EntryRef& b) {
        return a.tier_name == b.tier_name && a.ordinal == b.ordinal;
    }
    friend bool operator<(const EntryRef& a, const EntryRef& b) {
        if (a.tier_name != b.tier_name) return a.tier_name < b.tier_name;
        return a.ordinal < b.ordinal;
    }
};

struct TagSentence {
    EntryRef entry;
    std::vector<std::string> tokens;
};

// An ordered list of tag sentences plus the token vocabulary. Construction
// validates the representation (consecutive ordinals, one tier, legal
// tokens), so every corpus in the system satisfies the same invariants.
class TagCorpus {
public:
    TagCorpus() = default;
    TagCorpus(std::string tier_name, std::vector<TagSentence> sentences);

    static TagCorpus from_sentences(std::string tier_name,
                                    std::vector<std::vector<std::string>> token_lists);

    const std::string& tier_name() const { return tier_name_; }
    const std::vector<TagSentence>& sentences() const { return sentences_; }
    const std::set<std::string>& vocabulary() const { return vocabulary_; }
    size_t size() const { return sentences_.size(); }

private:
    std::string tier_name_;
    std::vector<TagSentence> sentences_;
    std::set<std::string> vocabulary_;
};

// Builds the token for one element under the given attribute policy:
//   none             -> name
//   names            -> name@a1,a2           (attribute names sorted)
//   names_and_values -> name@a1=v1,a2=v2     (whitespace in values -> '_')
// An allowlist of nullptr admits every attribute.
std::string tokenize_element(const std::string& name, const std::vector<XmlAttribute>& attrs,
                             AttributePolicy policy, const std::set<std::string>* allowlist);

// Flattens every entry subtree of the document into one tag sentence, in
// document order. Collapsed elements keep their token but contribute no
// descendants. Raises InputError when no element matches the tier's
// entry_element.
TagCorpus extract_sentences(std::string_view xml_text, const TierSpec& tier);

// Corpus file format: one line per sentence, "TIER:ordinal[:source_id]" +
// TAB + space-separated tokens.
std::string corpus_to_text(const TagCorpus& corpus);
TagCorpus corpus_from_text(const std::string& text);

}  // namespace treelint
