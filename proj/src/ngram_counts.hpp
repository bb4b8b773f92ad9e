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
#include <map>
#include <set>
#include <string>
#include <vector>

#include "corpus.hpp"

namespace treelint {

inline constexpr int kMinOrder = 1;
inline constexpr int kMaxOrder = 7;

// Exact integer n-gram counts over a corpus of padded tag sentences.
//
// Keys are space-joined token sequences. Tokens contain no whitespace and no
// bytes below 0x20, so byte order on joined keys equals token-wise
// lexicographic order; the sorted maps therefore iterate in the order ARPA
// files are written.
class NGramCounts {
public:
    // Pads each non-empty sentence as "<s> t1 .. tN </s>" and counts every
    // k-gram window for k = 1..order, excluding the window consisting of
    // "<s>" alone. Empty sentences contribute nothing.
    static NGramCounts from_corpus(const TagCorpus& corpus, int order);

    int order() const { return order_; }
    uint64_t sentence_count() const { return sentence_count_; }  // non-empty sentences
    uint64_t total_events() const { return total_events_; }      // sum of unigram counts

    const std::map<std::string, uint64_t>& grams(int k) const;
    uint64_t count(int k, const std::string& key) const;  // 0 when absent

    // Denominator for conditional estimates. "" is the empty context (total
    // events); "<s>" is special-cased to the sentence count because the
    // lone start tag is excluded from counting.
    uint64_t context_count(const std::string& key) const;

    const std::set<std::string>& vocabulary() const { return vocabulary_; }  // incl. <s>, </s>

    // Debug dump: "k<TAB>tok1 .. tokk<TAB>count", sorted by (k, key).
    std::string to_tsv() const;

private:
    int order_ = 0;
    uint64_t sentence_count_ = 0;
    uint64_t total_events_ = 0;
    std::vector<std::map<std::string, uint64_t>> grams_;  // index k-1
    std::set<std::string> vocabulary_;
};

}  // namespace treelint
