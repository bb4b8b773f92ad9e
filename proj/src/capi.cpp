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

#include "treelint/treelint.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "arpa.hpp"
#include "corpus.hpp"
#include "errors.hpp"
#include "evaluation.hpp"
#include "ngram_counts.hpp"
#include "ngram_model.hpp"
#include "scoring.hpp"
#include "tier.hpp"
#include "util.hpp"

// Each handle owns one core object by value.
struct tl_tierset {
    std::vector<treelint::TierSpec> tiers;
};
struct tl_corpus {
    treelint::TagCorpus value;
};
struct tl_counts {
    treelint::NGramCounts value;
};
struct tl_model {
    treelint::NGramModel value;
};
struct tl_report {
    treelint::RankedReport value;
};
struct tl_gold {
    treelint::GoldErrorSet value;
};
struct tl_precision {
    treelint::PrecisionTable value;
};

namespace {

thread_local std::string t_last_error;

// Runs the body and maps the error taxonomy onto status codes.
template <typename Fn>
tl_status guarded(Fn&& fn) {
    try {
        fn();
        return TL_OK;
    } catch (const treelint::ConfigError& e) {
        t_last_error = e.what();
        return TL_ERROR_CONFIG;
    } catch (const treelint::InputError& e) {
        t_last_error = e.what();
        return TL_ERROR_INPUT;
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return TL_ERROR_INTERNAL;
    } catch (...) {
        t_last_error = "unknown error";
        return TL_ERROR_INTERNAL;
    }
}

void require(const void* pointer, const char* name) {
    if (pointer == nullptr) throw treelint::ConfigError(std::string(name) + " must not be NULL");
}

char* copy_string(const std::string& text) {
    char* out = static_cast<char*>(std::malloc(text.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

}  // namespace

extern "C" {

const char* tl_version(void) { return "1.0.0"; }

const char* tl_last_error(void) { return t_last_error.c_str(); }

void tl_set_warning_handler(tl_warning_fn handler, void* user_data) {
    if (handler == nullptr) {
        treelint::set_warning_handler(nullptr);
        return;
    }
    treelint::set_warning_handler(
        [handler, user_data](const std::string& message) { handler(message.c_str(), user_data); });
}

void tl_string_free(char* text) { std::free(text); }

/* ---- Tier configuration -------------------------------------------- */

tl_status tl_tierset_parse(const char* json_text, tl_tierset** out) {
    return guarded([&] {
        require(json_text, "json_text");
        require(out, "out");
        auto tiers = treelint::parse_tier_config(json_text);
        *out = new tl_tierset{std::move(tiers)};
    });
}

void tl_tierset_free(tl_tierset* tierset) { delete tierset; }

/* ---- Corpus -------------------------------------------------------- */

tl_status tl_corpus_extract(const char* xml_text, const tl_tierset* tierset,
                            const char* tier_name, tl_corpus** out) {
    return guarded([&] {
        require(xml_text, "xml_text");
        require(tierset, "tierset");
        require(tier_name, "tier_name");
        require(out, "out");
        const treelint::TierSpec& tier = treelint::find_tier(tierset->tiers, tier_name);
        *out = new tl_corpus{treelint::extract_sentences(xml_text, tier)};
    });
}

tl_status tl_corpus_from_text(const char* text, tl_corpus** out) {
    return guarded([&] {
        require(text, "text");
        require(out, "out");
        *out = new tl_corpus{treelint::corpus_from_text(text)};
    });
}

tl_status tl_corpus_to_text(const tl_corpus* corpus, char** out_text) {
    return guarded([&] {
        require(corpus, "corpus");
        require(out_text, "out_text");
        *out_text = copy_string(treelint::corpus_to_text(corpus->value));
    });
}

tl_status tl_corpus_generate(const char* grammar_json, size_t size, uint64_t seed,
                             tl_corpus** out) {
    return guarded([&] {
        require(grammar_json, "grammar_json");
        require(out, "out");
        treelint::TemplateGrammar grammar = treelint::parse_grammar(grammar_json);
        *out = new tl_corpus{treelint::generate_synthetic_corpus(grammar, size, seed)};
    });
}

tl_status tl_corpus_inject(const tl_corpus* corpus, double rate, const char* operations,
                           uint64_t seed, tl_corpus** out_corpus, tl_gold** out_gold) {
    return guarded([&] {
        require(corpus, "corpus");
        require(out_corpus, "out_corpus");
        require(out_gold, "out_gold");
        treelint::InjectionSpec spec;
        spec.rate = rate;
        spec.seed = seed;
        if (operations != nullptr) spec.operations = treelint::parse_op_weights(operations);
        treelint::InjectionResult result = treelint::inject_errors(corpus->value, spec);
        *out_corpus = new tl_corpus{std::move(result.corpus)};
        *out_gold = new tl_gold{std::move(result.gold)};
    });
}

size_t tl_corpus_size(const tl_corpus* corpus) {
    return corpus == nullptr ? 0 : corpus->value.size();
}

size_t tl_corpus_vocab_size(const tl_corpus* corpus) {
    return corpus == nullptr ? 0 : corpus->value.vocabulary().size();
}

const char* tl_corpus_tier_name(const tl_corpus* corpus) {
    return corpus == nullptr ? nullptr : corpus->value.tier_name().c_str();
}

void tl_corpus_free(tl_corpus* corpus) { delete corpus; }

/* ---- Counting ------------------------------------------------------ */

tl_status tl_counts_build(const tl_corpus* corpus, int order, tl_counts** out) {
    return guarded([&] {
        require(corpus, "corpus");
        require(out, "out");
        *out = new tl_counts{treelint::NGramCounts::from_corpus(corpus->value, order)};
    });
}

tl_status tl_counts_gram_types(const tl_counts* counts, int k, size_t* out) {
    return guarded([&] {
        require(counts, "counts");
        require(out, "out");
        *out = counts->value.grams(k).size();
    });
}

tl_status tl_counts_to_tsv(const tl_counts* counts, char** out_text) {
    return guarded([&] {
        require(counts, "counts");
        require(out_text, "out_text");
        *out_text = copy_string(counts->value.to_tsv());
    });
}

int tl_counts_order(const tl_counts* counts) {
    return counts == nullptr ? 0 : counts->value.order();
}

uint64_t tl_counts_sentences(const tl_counts* counts) {
    return counts == nullptr ? 0 : counts->value.sentence_count();
}

uint64_t tl_counts_events(const tl_counts* counts) {
    return counts == nullptr ? 0 : counts->value.total_events();
}

void tl_counts_free(tl_counts* counts) { delete counts; }

/* ---- Models -------------------------------------------------------- */

tl_status tl_model_estimate_mle(const tl_counts* counts, tl_model** out) {
    return guarded([&] {
        require(counts, "counts");
        require(out, "out");
        *out = new tl_model{treelint::NGramModel::estimate_mle(counts->value)};
    });
}

tl_status tl_model_estimate_katz(const tl_counts* counts, int gtmax, tl_model** out) {
    return guarded([&] {
        require(counts, "counts");
        require(out, "out");
        *out = new tl_model{treelint::NGramModel::estimate_katz(counts->value, gtmax)};
    });
}

tl_status tl_model_write_arpa(const tl_model* model, char** out_text) {
    return guarded([&] {
        require(model, "model");
        require(out_text, "out_text");
        *out_text = copy_string(treelint::write_arpa(model->value));
    });
}

tl_status tl_model_read_arpa(const char* text, tl_model** out) {
    return guarded([&] {
        require(text, "text");
        require(out, "out");
        *out = new tl_model{treelint::read_arpa(text)};
    });
}

tl_status tl_model_cond_logprob(const tl_model* model, const char* const* context,
                                size_t context_len, const char* token, double* out) {
    return guarded([&] {
        require(model, "model");
        require(token, "token");
        require(out, "out");
        if (context_len > 0) require(context, "context");
        std::vector<std::string> tokens;
        tokens.reserve(context_len);
        for (size_t i = 0; i < context_len; ++i) {
            require(context[i], "context[i]");
            tokens.emplace_back(context[i]);
        }
        *out = model->value.cond_logprob(tokens, token);
    });
}

int tl_model_order(const tl_model* model) {
    return model == nullptr ? 0 : model->value.order();
}

void tl_model_free(tl_model* model) { delete model; }

/* ---- Ranking ------------------------------------------------------- */

tl_status tl_report_rank(const tl_model* model, const tl_corpus* corpus, const char* measure,
                         tl_report** out) {
    return guarded([&] {
        require(model, "model");
        require(corpus, "corpus");
        require(measure, "measure");
        require(out, "out");
        if (corpus->value.size() == 0) throw treelint::InputError("corpus is empty");
        treelint::Measure m = treelint::parse_measure(measure);
        std::vector<treelint::ScoreRecord> records =
            treelint::score_corpus(model->value, corpus->value);
        *out = new tl_report{treelint::rank(std::move(records), m, treelint::direction_for(m),
                                            treelint::model_id_of(model->value))};
    });
}

tl_status tl_report_to_text(const tl_report* report, size_t top, char** out_text) {
    return guarded([&] {
        require(report, "report");
        require(out_text, "out_text");
        *out_text = copy_string(treelint::report_to_text(report->value, top));
    });
}

tl_status tl_report_from_text(const char* text, tl_report** out) {
    return guarded([&] {
        require(text, "text");
        require(out, "out");
        *out = new tl_report{treelint::report_from_text(text)};
    });
}

size_t tl_report_size(const tl_report* report) {
    return report == nullptr ? 0 : report->value.entries.size();
}

const char* tl_report_tier_name(const tl_report* report) {
    if (report == nullptr || report->value.entries.empty()) return nullptr;
    return report->value.entries.front().entry.tier_name.c_str();
}

void tl_report_free(tl_report* report) { delete report; }

/* ---- Evaluation ---------------------------------------------------- */

tl_status tl_gold_load(const char* text, const char* tier_name, tl_gold** out) {
    return guarded([&] {
        require(text, "text");
        require(tier_name, "tier_name");
        require(out, "out");
        *out = new tl_gold{treelint::load_gold(text, tier_name)};
    });
}

tl_status tl_gold_to_text(const tl_gold* gold, char** out_text) {
    return guarded([&] {
        require(gold, "gold");
        require(out_text, "out_text");
        *out_text = copy_string(treelint::gold_to_text(gold->value));
    });
}

size_t tl_gold_size(const tl_gold* gold) {
    return gold == nullptr ? 0 : gold->value.refs.size();
}

void tl_gold_free(tl_gold* gold) { delete gold; }

tl_status tl_precision_compute(const tl_report* report, const tl_gold* gold,
                               const size_t* cutoffs, size_t n_cutoffs, tl_precision** out) {
    return guarded([&] {
        require(report, "report");
        require(gold, "gold");
        require(out, "out");
        if (n_cutoffs > 0) require(cutoffs, "cutoffs");
        std::vector<size_t> rs(cutoffs, cutoffs + n_cutoffs);
        *out = new tl_precision{treelint::precision_at(report->value, gold->value, rs)};
    });
}

tl_status tl_precision_to_text(const tl_precision* table, int paper_style, char** out_text) {
    return guarded([&] {
        require(table, "table");
        require(out_text, "out_text");
        *out_text = copy_string(treelint::precision_to_text(table->value, paper_style != 0));
    });
}

void tl_precision_free(tl_precision* table) { delete table; }

} /* extern "C" */
