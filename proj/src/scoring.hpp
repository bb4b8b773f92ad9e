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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "corpus.hpp"
#include "ngram_model.hpp"

namespace treelint {

// The three anomaly measures. Each is tied to one sort direction: low log
// probability means anomalous, high perplexity means anomalous.
enum class Measure { logprob, ppw, ppwet };
enum class Direction { ascending, descending };

Direction direction_for(Measure measure);
std::string measure_name(Measure measure);
Measure parse_measure(const std::string& name);

// Scores for one sentence. A missing perplexity means the sentence had no
// events for that measure (printed as NA in reports).
struct ScoreRecord {
    EntryRef entry;
    size_t n_tokens = 0;
    double logprob = 0.0;
    std::optional<double> ppw;
    std::optional<double> ppwet;
};

// Log10 probability of the padded sentence `<s> t1 … tN </s>`: the sum of
// conditional log probabilities of t1..tN and `</s>`, each conditioned on
// up to order−1 preceding padded tokens. An empty sentence scores the
// single event `</s>` after `<s>`.
double score_logprob(const NGramModel& model, const TagSentence& sentence);

// Average perplexity per event including the end tag:
// 10^(−logprob/(N+1)). Empty sentences are unscorable.
std::optional<double> score_ppwet(const NGramModel& model, const TagSentence& sentence);

// Average perplexity over events among real tokens only (no padding): for
// order ≥ 2 the events are t2..tN, each conditioned on preceding real
// tokens; for order 1 every token is an event. No events → unscorable.
std::optional<double> score_ppw(const NGramModel& model, const TagSentence& sentence);

ScoreRecord score_sentence(const NGramModel& model, const TagSentence& sentence);

// Scores every sentence, in corpus order. Warns when the model and corpus
// vocabularies are disjoint (everything scores at the floor).
std::vector<ScoreRecord> score_corpus(const NGramModel& model, const TagCorpus& corpus);

// Records in anomaly order: most anomalous first, ties broken by ordinal.
// A report parsed back from a file knows its row order but not the measure
// it was ranked under, hence the optional metadata.
struct RankedReport {
    std::optional<Measure> measure;
    std::optional<Direction> direction;
    std::string model_id;  // hash of the model's serialized form; empty if unknown
    std::vector<ScoreRecord> entries;
};

// Sorts the records under the given measure. The direction must be the
// measure's fixed partner (ascending for logprob, descending for the
// perplexities); anything else is a configuration error. Unscorable
// records sort after all scorable ones.
RankedReport rank(std::vector<ScoreRecord> records, Measure measure, Direction direction,
                  std::string model_id);

// Fingerprint of a model: hash of its serialized text form.
std::string model_id_of(const NGramModel& model);

// Report file format: TSV with header
//   rank	entry_ref	n_tokens	logprob	ppw	ppwet
// one row per entry, 1-based ranks, seven-decimal values, NA for
// unscorable measures. `top` > 0 truncates to the first `top` rows.
std::string report_to_text(const RankedReport& report, size_t top = 0);
RankedReport report_from_text(std::string_view text);

}  // namespace treelint
