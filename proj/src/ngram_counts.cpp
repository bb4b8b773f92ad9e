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

#include "ngram_counts.hpp"

#include "errors.hpp"
#include "util.hpp"

namespace treelint {

NGramCounts NGramCounts::from_corpus(const TagCorpus& corpus, int order) {
    if (order < kMinOrder || order > kMaxOrder)
        throw ConfigError("model order must be in [" + std::to_string(kMinOrder) + "," +
                          std::to_string(kMaxOrder) + "], got " + std::to_string(order));

    NGramCounts counts;
    counts.order_ = order;
    counts.grams_.resize(order);

    std::vector<std::string> padded;
    for (const TagSentence& sentence : corpus.sentences()) {
        if (sentence.tokens.empty()) continue;
        ++counts.sentence_count_;
        padded.clear();
        padded.push_back(kStartToken);
        padded.insert(padded.end(), sentence.tokens.begin(), sentence.tokens.end());
        padded.push_back(kEndToken);

        for (int k = 1; k <= order; ++k) {
            if (padded.size() < static_cast<size_t>(k)) continue;
            for (size_t i = 0; i + k <= padded.size(); ++i) {
                if (k == 1 && padded[i] == kStartToken) continue;
                std::span<const std::string> window(&padded[i], static_cast<size_t>(k));
                ++counts.grams_[k - 1][join(window)];
            }
        }
    }
    if (counts.sentence_count_ == 0)
        throw InputError("corpus has no non-empty sentences; nothing to train on");

    for (const auto& [token, n] : counts.grams_[0]) {
        counts.total_events_ += n;
        counts.vocabulary_.insert(token);
    }
    counts.vocabulary_.insert(kStartToken);
    return counts;
}

const std::map<std::string, uint64_t>& NGramCounts::grams(int k) const {
    if (k < 1 || k > order_) throw ConfigError("n-gram length out of range: " + std::to_string(k));
    return grams_[k - 1];
}

uint64_t NGramCounts::count(int k, const std::string& key) const {
    const auto& table = grams(k);
    auto it = table.find(key);
    return it == table.end() ? 0 : it->second;
}

uint64_t NGramCounts::context_count(const std::string& key) const {
    if (key.empty()) return total_events_;
    if (key == kStartToken) return sentence_count_;
    size_t k = 1;
    for (char c : key) {
        if (c == ' ') ++k;
    }
    if (k > static_cast<size_t>(order_)) throw ConfigError("context longer than model order");
    return count(static_cast<int>(k), key);
}

std::string NGramCounts::to_tsv() const {
    std::string out;
    for (int k = 1; k <= order_; ++k) {
        for (const auto& [key, n] : grams_[k - 1]) {
            out += std::to_string(k);
            out.push_back('\t');
            out += key;
            out.push_back('\t');
            out += std::to_string(n);
            out.push_back('\n');
        }
    }
    return out;
}

}  // namespace treelint
