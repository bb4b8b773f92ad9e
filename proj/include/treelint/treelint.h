/* Copyright 2026 The treelint Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* treelint — structural anomaly detection for XML dictionaries.
 *
 * The pipeline: flatten each dictionary entry into a "tag sentence" of
 * element tokens, train an n-gram model over those sentences, score every
 * sentence against the model, and rank entries so the most structurally
 * unusual ones surface first.
 *
 * Conventions:
 *   - Every fallible function returns tl_status and writes its result
 *     through out-parameters, which are left untouched on failure.
 *   - tl_last_error() describes the most recent failure on the calling
 *     thread.
 *   - Strings returned through char** out-parameters are heap-allocated;
 *     release them with tl_string_free(). Objects returned through handle
 *     out-parameters are released with their matching *_free function.
 *   - All text is UTF-8.
 */

#ifndef TREELINT_TREELINT_H_
#define TREELINT_TREELINT_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. The nonzero values double as CLI exit codes. */
typedef enum tl_status {
    TL_OK = 0,
    TL_ERROR_CONFIG = 2,  /* invalid configuration or parameters */
    TL_ERROR_INPUT = 3,   /* malformed or unusable input data */
    TL_ERROR_INTERNAL = 4 /* unexpected failure inside the library */
} tl_status;

/* Opaque handles. */
typedef struct tl_tierset tl_tierset;     /* parsed tier configuration */
typedef struct tl_corpus tl_corpus;       /* tag-sentence corpus */
typedef struct tl_counts tl_counts;       /* n-gram counts */
typedef struct tl_model tl_model;         /* n-gram language model */
typedef struct tl_report tl_report;       /* ranked anomaly report */
typedef struct tl_gold tl_gold;           /* gold error set */
typedef struct tl_precision tl_precision; /* precision-at-rank table */

/* Library version, e.g. "1.0.0". */
const char* tl_version(void);

/* Message of the last failure observed on this thread; empty string if no
 * failure has occurred. The pointer stays valid until the next failing
 * call on the same thread. */
const char* tl_last_error(void);

/* Non-fatal diagnostics (degenerate discounting, empty gold sets, …) are
 * reported through the warning handler; the default prints to stderr.
 * Passing NULL restores the default. The handler is global. */
typedef void (*tl_warning_fn)(const char* message, void* user_data);
void tl_set_warning_handler(tl_warning_fn handler, void* user_data);

/* Releases a string returned by this library. NULL is ignored. */
void tl_string_free(char* text);

/* ---- Tier configuration -------------------------------------------- */

/* Parses a tier configuration from JSON:
 *   {"tiers": [{"name": "ENTRY", "entry_element": "entry",
 *               "collapse": ["form", "sense"],
 *               "attribute_policy": "none|names|names_and_values",
 *               "attribute_allowlist": ["type"] | null,
 *               "keep_prefix": false}, …]}
 */
tl_status tl_tierset_parse(const char* json_text, tl_tierset** out);
void tl_tierset_free(tl_tierset* tierset);

/* ---- Corpus -------------------------------------------------------- */

/* Extracts one tag sentence per entry element from an XML document, in
 * document order, under the named tier's flattening rules. */
tl_status tl_corpus_extract(const char* xml_text, const tl_tierset* tierset,
                            const char* tier_name, tl_corpus** out);

/* Corpus file format: one line per sentence,
 * "TIER:ordinal[:source_id]" + TAB + space-separated tokens. */
tl_status tl_corpus_from_text(const char* text, tl_corpus** out);
tl_status tl_corpus_to_text(const tl_corpus* corpus, char** out_text);

/* Samples `size` sentences from a weighted template grammar:
 *   {"tier": "SYN", "templates": [{"tokens": ["form"], "weight": 9.0}, …]}
 * Deterministic for a fixed seed. */
tl_status tl_corpus_generate(const char* grammar_json, size_t size, uint64_t seed,
                             tl_corpus** out);

/* Corrupts ceil(rate·N) distinct sentences and returns the corrupted
 * corpus together with the gold set naming exactly those entries.
 * `operations` is "op" or "op=weight" comma-separated over
 * {swap_adjacent, delete_token, insert_random_token, replace_token,
 * move_subtree_token}; NULL selects all five with equal weight. */
tl_status tl_corpus_inject(const tl_corpus* corpus, double rate, const char* operations,
                           uint64_t seed, tl_corpus** out_corpus, tl_gold** out_gold);

/* Accessors; a NULL handle yields 0 / NULL. */
size_t tl_corpus_size(const tl_corpus* corpus);
size_t tl_corpus_vocab_size(const tl_corpus* corpus);
const char* tl_corpus_tier_name(const tl_corpus* corpus);

void tl_corpus_free(tl_corpus* corpus);

/* ---- Counting ------------------------------------------------------ */

/* Counts all 1..order-gram windows over the padded sentences. Order must
 * be in [1,7]; a corpus with no non-empty sentence is an input error. */
tl_status tl_counts_build(const tl_corpus* corpus, int order, tl_counts** out);

/* Number of distinct k-grams; k outside [1,order] is an error. */
tl_status tl_counts_gram_types(const tl_counts* counts, int k, size_t* out);

/* Debug dump: TSV "k<TAB>tok1 … tokk<TAB>count". */
tl_status tl_counts_to_tsv(const tl_counts* counts, char** out_text);

/* Accessors; a NULL handle yields 0. */
int tl_counts_order(const tl_counts* counts);
uint64_t tl_counts_sentences(const tl_counts* counts);
uint64_t tl_counts_events(const tl_counts* counts);

void tl_counts_free(tl_counts* counts);

/* ---- Models -------------------------------------------------------- */

/* Maximum-likelihood model: no discounting, no back-off weights. */
tl_status tl_model_estimate_mle(const tl_counts* counts, tl_model** out);

/* Good-Turing discounted model with Katz back-off. Counts above gtmax are
 * not discounted; gtmax must be in [1,10] (7 is the usual default). */
tl_status tl_model_estimate_katz(const tl_counts* counts, int gtmax, tl_model** out);

/* ARPA text format: \data\ header, per-order \k-grams: sections of
 * "LOGPROB<TAB>tokens[<TAB>BACKOFF]" lines, \end\ terminator. */
tl_status tl_model_write_arpa(const tl_model* model, char** out_text);
tl_status tl_model_read_arpa(const char* text, tl_model** out);

/* Log10 probability of `token` after `context` (most recent token last).
 * The context may hold at most order−1 tokens. Unseen events resolve
 * through back-off or the −99 floor. */
tl_status tl_model_cond_logprob(const tl_model* model, const char* const* context,
                                size_t context_len, const char* token, double* out);

/* Accessor; a NULL handle yields 0. */
int tl_model_order(const tl_model* model);

void tl_model_free(tl_model* model);

/* ---- Ranking ------------------------------------------------------- */

/* Scores every sentence and sorts entries most-anomalous-first under the
 * given measure: "logprob" (ascending), "ppw" or "ppwet" (descending).
 * The measure fixes the direction; sentences a measure cannot score sort
 * last. */
tl_status tl_report_rank(const tl_model* model, const tl_corpus* corpus, const char* measure,
                         tl_report** out);

/* Report file format: TSV with header
 * "rank<TAB>entry_ref<TAB>n_tokens<TAB>logprob<TAB>ppw<TAB>ppwet"; `top`
 * of 0 writes all rows, otherwise only the first `top`. */
tl_status tl_report_to_text(const tl_report* report, size_t top, char** out_text);
tl_status tl_report_from_text(const char* text, tl_report** out);

/* Accessors; a NULL or empty report yields 0 / NULL. The tier name is the
 * tier of the report's entries, e.g. for pairing with a gold list. */
size_t tl_report_size(const tl_report* report);
const char* tl_report_tier_name(const tl_report* report);

void tl_report_free(tl_report* report);

/* ---- Evaluation ---------------------------------------------------- */

/* Gold file format: one "TIER:ordinal[:source_id]" per line, `#` starts a
 * comment. References of other tiers are dropped; an empty result warns. */
tl_status tl_gold_load(const char* text, const char* tier_name, tl_gold** out);
tl_status tl_gold_to_text(const tl_gold* gold, char** out_text);

/* Accessor; a NULL handle yields 0. */
size_t tl_gold_size(const tl_gold* gold);

void tl_gold_free(tl_gold* gold);

/* Precision at rank for strictly increasing cutoffs, none exceeding the
 * report size: hits(R)/R per cutoff plus their mean. */
tl_status tl_precision_compute(const tl_report* report, const tl_gold* gold,
                               const size_t* cutoffs, size_t n_cutoffs, tl_precision** out);

/* Precision file format: TSV "R<TAB>hits<TAB>precision" rows plus an AVG
 * row; four decimals, or two when paper_style is nonzero. */
tl_status tl_precision_to_text(const tl_precision* table, int paper_style, char** out_text);

void tl_precision_free(tl_precision* table);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TREELINT_TREELINT_H_ */
