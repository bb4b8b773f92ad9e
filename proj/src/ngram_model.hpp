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

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ngram_counts.hpp"

namespace treelint {

enum class Smoothing { none, good_turing_katz };

// Unseen events carry this log10 probability instead of -inf so scores stay
// totally ordered and averageable.
inline constexpr double kLogProbFloor = -99.0;
inline constexpr int kDefaultGtMax = 7;

// Conditional log10-probability tables for orders 1..n, with back-off
// weights when smoothed. Immutable once built; concurrent queries are safe.
class NGramModel {
public:
    // Maximum-likelihood estimates: log10(count(c.w) / count(c)) for every
    // counted n-gram, no back-off weights, nothing stored for unseen events.
    static NGramModel estimate_mle(const NGramCounts& counts);

    // Good-Turing discounting with Katz back-off. Counts r <= gtmax are
    // discounted by d_r = (r*/r - A) / (1 - A) with r* = (r+1) n_{r+1} / n_r
    // and A = (gtmax+1) n_{gtmax+1} / n_1; leftover mass goes to unseen
    // events through back-off weights. Orders whose count-of-counts cannot
    // support the formula fall back to undiscounted estimates with a
    // warning.
    static NGramModel estimate_katz(const NGramCounts& counts, int gtmax = kDefaultGtMax);

    // Rebuilds a model from raw tables (the ARPA reader). Smoothing is
    // inferred: any back-off entry means Katz-style querying.
    static NGramModel from_tables(int order,
                                  std::vector<std::map<std::string, double>> logprob,
                                  std::vector<std::map<std::string, double>> backoff);

    int order() const { return order_; }
    Smoothing smoothing() const { return smoothing_; }
    int gtmax() const { return gtmax_; }

    // P(token | context) in log10, with context of length <= order-1.
    // Smoothed models follow the Katz recursion through back-off weights.
    // Unsmoothed models return the floor for unseen events under an
    // observed context and only recurse (with weight 1) when the context
    // itself was never observed.
    double cond_logprob(std::span<const std::string> context, const std::string& token) const;
    double cond_logprob(const std::vector<std::string>& context, const std::string& token) const {
        return cond_logprob(std::span<const std::string>(context), token);
    }

    const std::map<std::string, double>& logprob(int k) const;  // k in 1..order
    const std::map<std::string, double>& backoff(int k) const;  // k in 1..order-1
    const std::set<std::string>& vocabulary() const { return vocabulary_; }  // real tokens only

private:
    NGramModel() = default;

    double query_katz(std::span<const std::string> context, const std::string& token) const;
    double query_mle(std::span<const std::string> context, const std::string& token) const;
    bool context_observed(std::span<const std::string> context) const;
    void derive_vocabulary();

    int order_ = 0;
    Smoothing smoothing_ = Smoothing::none;
    int gtmax_ = kDefaultGtMax;
    std::vector<std::map<std::string, double>> logprob_;  // index k-1, k = 1..order
    std::vector<std::map<std::string, double>> backoff_;  // index k-1, k = 1..order-1
    std::set<std::string> vocabulary_;
};

}  // namespace treelint
