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

#include "ngram_model.hpp"

#include <cmath>

#include "errors.hpp"
#include "util.hpp"

namespace treelint {

namespace {

constexpr double kMassEpsilon = 1e-12;

// Splits a joined key into its context prefix and final token.
void split_last(const std::string& key, std::string& context, std::string& word) {
    size_t space = key.rfind(' ');
    if (space == std::string::npos) {
        context.clear();
        word = key;
    } else {
        context = key.substr(0, space);
        word = key.substr(space + 1);
    }
}

std::string drop_first(const std::string& key) {
    size_t space = key.find(' ');
    return space == std::string::npos ? std::string() : key.substr(space + 1);
}

std::string join_with(const std::string& context, const std::string& token) {
    if (context.empty()) return token;
    return context + " " + token;
}

}  // namespace

NGramModel NGramModel::estimate_mle(const NGramCounts& counts) {
    NGramModel model;
    model.order_ = counts.order();
    model.smoothing_ = Smoothing::none;
    model.logprob_.resize(counts.order());
    model.backoff_.resize(counts.order() > 0 ? counts.order() - 1 : 0);

    std::string context, word;
    for (int k = 1; k <= counts.order(); ++k) {
        for (const auto& [key, n] : counts.grams(k)) {
            split_last(key, context, word);
            uint64_t denom = counts.context_count(context);
            model.logprob_[k - 1][key] =
                std::log10(static_cast<double>(n) / static_cast<double>(denom));
        }
    }
    model.derive_vocabulary();
    return model;
}

NGramModel NGramModel::estimate_katz(const NGramCounts& counts, int gtmax) {
    if (gtmax < 1 || gtmax > 10)
        throw ConfigError("gtmax must be in [1,10], got " + std::to_string(gtmax));

    const int order = counts.order();
    NGramModel model;
    model.order_ = order;
    model.smoothing_ = Smoothing::good_turing_katz;
    model.gtmax_ = gtmax;
    model.logprob_.resize(order);
    model.backoff_.resize(order > 0 ? order - 1 : 0);

    // Discount ratios d_r per order; empty vector means discounting is
    // disabled for that order.
    std::vector<std::vector<double>> discounts(order + 1);
    for (int k = 1; k <= order; ++k) {
        std::vector<uint64_t> n_r(gtmax + 2, 0);
        for (const auto& [key, n] : counts.grams(k)) {
            if (n <= static_cast<uint64_t>(gtmax + 1)) ++n_r[n];
        }
        bool degenerate = false;
        for (int r = 1; r <= gtmax + 1; ++r) {
            if (n_r[r] == 0) degenerate = true;
        }
        std::vector<double> d(gtmax + 1, 1.0);
        if (!degenerate) {
            double a = static_cast<double>(gtmax + 1) * static_cast<double>(n_r[gtmax + 1]) /
                       static_cast<double>(n_r[1]);
            if (a <= 0.0 || a >= 1.0) {
                degenerate = true;
            } else {
                for (int r = 1; r <= gtmax && !degenerate; ++r) {
                    double rstar = static_cast<double>(r + 1) * static_cast<double>(n_r[r + 1]) /
                                   static_cast<double>(n_r[r]);
                    d[r] = (rstar / r - a) / (1.0 - a);
                    if (!(d[r] > 0.0 && d[r] <= 1.0)) degenerate = true;
                }
            }
        }
        if (degenerate) {
            warn("order " + std::to_string(k) +
                 ": Good-Turing discounting disabled (degenerate count-of-counts); using "
                 "undiscounted estimates for this order");
            discounts[k].clear();
        } else {
            discounts[k] = std::move(d);
        }
    }

    // Discounted probabilities, kept linear until the back-off weights are
    // settled.
    std::vector<std::map<std::string, double>> pstar(order + 1);
    std::string context, word;
    for (int k = 1; k <= order; ++k) {
        for (const auto& [key, n] : counts.grams(k)) {
            double d = 1.0;
            if (!discounts[k].empty() && n <= static_cast<uint64_t>(gtmax))
                d = discounts[k][n];
            split_last(key, context, word);
            pstar[k][key] = d * static_cast<double>(n) / static_cast<double>(counts.context_count(context));
        }
    }

    // Every vocabulary token and </s> is an observed unigram, so the
    // unigram distribution is saturated: leftover discount mass has no
    // unseen event to flow to and is scaled back in (closed-vocabulary
    // renormalization).
    {
        double total = 0.0;
        for (const auto& [key, p] : pstar[1]) total += p;
        double leftover = 1.0 - total;
        if (leftover > kMassEpsilon) {
            double scale = 1.0 / total;
            for (auto& [key, p] : pstar[1]) p *= scale;
        }
    }

    // Back-off weights for contexts of length m, walking orders upward so
    // each level is final before it serves as the lower distribution of the
    // next one. Contexts are contiguous key ranges because the maps are
    // prefix-ordered.
    for (int m = 1; m < order; ++m) {
        auto& hi = pstar[m + 1];
        const auto& lo = pstar[m];
        auto it = hi.begin();
        while (it != hi.end()) {
            split_last(it->first, context, word);
            std::string prefix = context + " ";
            double sum_hi = 0.0;
            double sum_lo = 0.0;
            auto run_begin = it;
            while (it != hi.end() && it->first.compare(0, prefix.size(), prefix) == 0) {
                sum_hi += it->second;
                auto lo_it = lo.find(drop_first(it->first));
                if (lo_it != lo.end()) sum_lo += lo_it->second;
                ++it;
            }
            double numerator = 1.0 - sum_hi;
            if (numerator < 0.0) numerator = numerator > -1e-9 ? 0.0 : numerator;
            if (numerator < 0.0) {
                warn("back-off numerator below zero for context '" + context + "'");
                numerator = 0.0;
            }
            double denominator = 1.0 - sum_lo;
            if (denominator <= kMassEpsilon) {
                // The observed continuations cover the whole lower
                // distribution; scale their probabilities so the context
                // still sums to one and leave the weight neutral.
                if (numerator > kMassEpsilon) {
                    double scale = 1.0 / sum_hi;
                    for (auto fix = run_begin; fix != it; ++fix) fix->second *= scale;
                }
                model.backoff_[m - 1][context] = 0.0;
            } else {
                double alpha = numerator / denominator;
                model.backoff_[m - 1][context] =
                    alpha <= 0.0 ? kLogProbFloor : std::log10(alpha);
            }
        }
    }

    for (int k = 1; k <= order; ++k) {
        for (const auto& [key, p] : pstar[k]) model.logprob_[k - 1][key] = std::log10(p);
    }
    // The lone start tag is never a predicted event but carries a back-off
    // weight, so it needs a floor-probability unigram entry.
    if (order >= 2) model.logprob_[0][kStartToken] = kLogProbFloor;

    model.derive_vocabulary();
    return model;
}

NGramModel NGramModel::from_tables(int order, std::vector<std::map<std::string, double>> logprob,
                                   std::vector<std::map<std::string, double>> backoff) {
    if (order < 1 || static_cast<int>(logprob.size()) != order)
        throw ConfigError("model tables do not match the declared order");
    NGramModel model;
    model.order_ = order;
    model.logprob_ = std::move(logprob);
    backoff.resize(order > 0 ? order - 1 : 0);
    model.backoff_ = std::move(backoff);
    model.smoothing_ = Smoothing::none;
    for (const auto& table : model.backoff_) {
        if (!table.empty()) model.smoothing_ = Smoothing::good_turing_katz;
    }
    model.derive_vocabulary();
    return model;
}

void NGramModel::derive_vocabulary() {
    vocabulary_.clear();
    if (logprob_.empty()) return;
    for (const auto& [token, p] : logprob_[0]) {
        if (!is_reserved_token(token)) vocabulary_.insert(token);
    }
}

const std::map<std::string, double>& NGramModel::logprob(int k) const {
    if (k < 1 || k > order_) throw ConfigError("n-gram length out of range: " + std::to_string(k));
    return logprob_[k - 1];
}

const std::map<std::string, double>& NGramModel::backoff(int k) const {
    if (k < 1 || k >= order_)
        throw ConfigError("back-off context length out of range: " + std::to_string(k));
    return backoff_[k - 1];
}

double NGramModel::cond_logprob(std::span<const std::string> context,
                                const std::string& token) const {
    if (context.size() > static_cast<size_t>(order_ - 1))
        throw ConfigError("context of " + std::to_string(context.size()) +
                          " tokens exceeds order-" + std::to_string(order_) + " model");
    return smoothing_ == Smoothing::good_turing_katz ? query_katz(context, token)
                                                     : query_mle(context, token);
}

double NGramModel::query_katz(std::span<const std::string> context,
                              const std::string& token) const {
    std::string key = join_with(join(context), token);
    const auto& table = logprob_[context.size()];
    auto it = table.find(key);
    if (it != table.end()) return it->second;
    if (context.empty()) return kLogProbFloor;  // out of vocabulary

    double bow = 0.0;
    const auto& bows = backoff_[context.size() - 1];
    auto bit = bows.find(join(context));
    if (bit != bows.end()) bow = bit->second;
    return bow + query_katz(context.subspan(1), token);
}

double NGramModel::query_mle(std::span<const std::string> context, const std::string& token) const {
    std::string key = join_with(join(context), token);
    const auto& table = logprob_[context.size()];
    auto it = table.find(key);
    if (it != table.end()) return it->second;
    if (context.empty()) return kLogProbFloor;       // out of vocabulary
    if (context_observed(context)) return kLogProbFloor;  // the event has probability zero
    return query_mle(context.subspan(1), token);
}

bool NGramModel::context_observed(std::span<const std::string> context) const {
    if (context.empty()) return true;
    if (context.size() == 1 && context[0] == kStartToken) return true;
    return logprob_[context.size() - 1].count(join(context)) > 0;
}

}  // namespace treelint
