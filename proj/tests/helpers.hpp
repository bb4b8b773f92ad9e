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

// Shared fixtures and independent oracles for the library test suites.

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "cli_helpers.hpp"
#include "corpus.hpp"
#include "ngram_counts.hpp"
#include "ngram_model.hpp"
#include "rng.hpp"
#include "util.hpp"

namespace treelint::test {

// Builds a random corpus over a vocabulary of `vocab` synthetic tokens.
// Sentence lengths are drawn in [0, max_len]; the first sentence is forced
// non-empty so counting always has at least one event.
inline TagCorpus random_corpus(Rng& rng, std::size_t n_sentences, std::size_t vocab,
                               std::size_t max_len, const std::string& tier = "RND") {
    std::vector<std::string> words;
    for (std::size_t i = 0; i < vocab; ++i) words.push_back("t" + std::to_string(i));
    std::vector<std::vector<std::string>> sentences;
    for (std::size_t s = 0; s < n_sentences; ++s) {
        std::size_t len = rng.below(max_len + 1);
        if (s == 0 && len == 0) len = 1;
        std::vector<std::string> sentence;
        for (std::size_t i = 0; i < len; ++i) {
            sentence.push_back(words[rng.below(words.size())]);
        }
        sentences.push_back(std::move(sentence));
    }
    return TagCorpus::from_sentences(tier, sentences);
}

// Brute-force k-gram counter: pads every non-empty sentence, slides a window
// of width k over it, and drops the lone start-of-sentence unigram. Used to
// cross-check the real counting code.
inline std::map<std::string, std::uint64_t> naive_counts(const TagCorpus& corpus, int k) {
    std::map<std::string, std::uint64_t> out;
    for (const TagSentence& sentence : corpus.sentences()) {
        if (sentence.tokens.empty()) continue;
        std::vector<std::string> padded;
        padded.push_back("<s>");
        padded.insert(padded.end(), sentence.tokens.begin(), sentence.tokens.end());
        padded.push_back("</s>");
        if (padded.size() < static_cast<std::size_t>(k)) continue;
        for (std::size_t i = 0; i + k <= padded.size(); ++i) {
            std::vector<std::string> gram(padded.begin() + i, padded.begin() + i + k);
            if (k == 1 && gram[0] == "<s>") continue;
            out[join(gram)] += 1;
        }
    }
    return out;
}

// Collects warnings for the duration of a scope and restores the default
// handler afterwards.
class WarningCapture {
public:
    WarningCapture() {
        set_warning_handler([this](const std::string& msg) { messages.push_back(msg); });
    }
    ~WarningCapture() { set_warning_handler({}); }
    WarningCapture(const WarningCapture&) = delete;
    WarningCapture& operator=(const WarningCapture&) = delete;

    std::vector<std::string> messages;
};

// Sum of conditional probabilities over the closed vocabulary plus the end
// token, given a fixed context. Should be 1 for any properly normalized model
// whose context was observed in training.
inline double distribution_sum(const NGramModel& model, const TagCorpus& corpus,
                               const std::vector<std::string>& context) {
    std::vector<std::string> targets;
    for (const std::string& word : corpus.vocabulary()) {
        if (word == "<s>") continue;
        targets.push_back(word);
    }
    if (std::find(targets.begin(), targets.end(), "</s>") == targets.end()) {
        targets.push_back("</s>");
    }
    double sum = 0.0;
    for (const std::string& word : targets) {
        sum += std::pow(10.0, model.cond_logprob(context, word));
    }
    return sum;
}

}  // namespace treelint::test
