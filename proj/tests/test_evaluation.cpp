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

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "evaluation.hpp"
#include "helpers.hpp"
#include "ngram_counts.hpp"
#include "ngram_model.hpp"
#include "scoring.hpp"

using namespace treelint;
using treelint::test::WarningCapture;

namespace {

// A report whose rows are given ordinals of tier T, in that order.
RankedReport report_of(const std::vector<size_t>& ordinals) {
    RankedReport report;
    for (size_t ordinal : ordinals) {
        ScoreRecord record;
        record.entry = EntryRef{"T", ordinal, ""};
        record.n_tokens = 1;
        record.logprob = -1.0;
        report.entries.push_back(record);
    }
    return report;
}

GoldErrorSet gold_of(const std::vector<size_t>& ordinals, const std::string& tier = "T") {
    GoldErrorSet gold;
    gold.tier_name = tier;
    for (size_t ordinal : ordinals) gold.refs.insert(EntryRef{tier, ordinal, ""});
    return gold;
}

std::multiset<std::string> bag_of(const std::vector<std::string>& tokens) {
    return {tokens.begin(), tokens.end()};
}

bool is_subsequence(const std::vector<std::string>& needle,
                    const std::vector<std::string>& haystack) {
    size_t i = 0;
    for (const std::string& token : haystack) {
        if (i < needle.size() && needle[i] == token) ++i;
    }
    return i == needle.size();
}

}  // namespace

TEST_SUITE("evaluation") {

TEST_CASE("gold lists parse with comments and tier filtering") {
    WarningCapture warnings;
    GoldErrorSet gold = load_gold(
        "# full-line comment\n"
        "T:0\n"
        "  T:2:src9  # trailing comment\r\n"
        "U:7\n"
        "T:2\n"
        "\n",
        "T");
    CHECK(gold.tier_name == "T");
    CHECK(gold.refs == std::set<EntryRef>{EntryRef{"T", 0, ""}, EntryRef{"T", 2, ""}});
    CHECK(warnings.messages.empty());
    CHECK(gold_to_text(gold) == "T:0\nT:2:src9\n");

    // Round trip through the text form.
    GoldErrorSet back = load_gold(gold_to_text(gold), "T");
    CHECK(back.refs == gold.refs);
}

TEST_CASE("a gold list with nothing for the tier warns") {
    WarningCapture warnings;
    GoldErrorSet gold = load_gold("U:1\nU:2\n", "T");
    CHECK(gold.refs.empty());
    REQUIRE(warnings.messages.size() == 1);
    CHECK(warnings.messages[0].find("tier 'T'") != std::string::npos);
}

TEST_CASE("malformed gold lines carry their line number") {
    CHECK_THROWS_WITH_AS(load_gold("T:0\nT:x\n", "T"), doctest::Contains("gold line 2"),
                         InputError);
}

TEST_CASE("precision at rank matches the worked example") {
    // Ranked order e3, e5, e1, e2 with errors at e1 and e3: the top 2 hold
    // one error, the top 4 hold both.
    RankedReport report = report_of({3, 5, 1, 2});
    GoldErrorSet gold = gold_of({1, 3});
    PrecisionTable table = precision_at(report, gold, {2, 4});

    REQUIRE(table.rows.size() == 2);
    CHECK(table.rows[0].r == 2);
    CHECK(table.rows[0].hits == 1);
    CHECK(table.rows[0].precision == doctest::Approx(0.5));
    CHECK(table.rows[1].r == 4);
    CHECK(table.rows[1].hits == 2);
    CHECK(table.rows[1].precision == doctest::Approx(0.5));
    CHECK(table.average == doctest::Approx(0.5));

    CHECK(precision_to_text(table) ==
          "R\thits\tprecision\n"
          "2\t1\t0.5000\n"
          "4\t2\t0.5000\n"
          "AVG\t\t0.5000\n");
    CHECK(precision_to_text(table, true) ==
          "R\thits\tprecision\n"
          "2\t1\t0.50\n"
          "4\t2\t0.50\n"
          "AVG\t\t0.50\n");
}

TEST_CASE("precision extremes") {
    RankedReport report = report_of({0, 1, 2, 3});

    PrecisionTable all = precision_at(report, gold_of({0, 1, 2, 3}), {1, 4});
    CHECK(all.rows[0].precision == doctest::Approx(1.0));
    CHECK(all.rows[1].precision == doctest::Approx(1.0));
    CHECK(all.average == doctest::Approx(1.0));

    WarningCapture warnings;  // empty gold set warns on load, not here
    PrecisionTable none = precision_at(report, gold_of({}), {2});
    CHECK(none.rows[0].hits == 0);
    CHECK(none.average == doctest::Approx(0.0));
}

TEST_CASE("precision agrees with a brute-force recount") {
    Rng rng(47);
    for (int round = 0; round < 1000; ++round) {
        size_t n = 5 + rng.below(56);
        std::vector<size_t> order;
        for (size_t i = 0; i < n; ++i) order.push_back(i);
        for (size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
        RankedReport report = report_of(order);

        std::vector<size_t> gold_ordinals;
        for (size_t i = 0; i < n; ++i) {
            if (rng.below(3) == 0) gold_ordinals.push_back(i);
        }
        GoldErrorSet gold = gold_of(gold_ordinals);

        std::set<size_t> cutoff_set;
        size_t n_cutoffs = 1 + rng.below(4);
        while (cutoff_set.size() < n_cutoffs) cutoff_set.insert(1 + rng.below(n));
        std::vector<size_t> cutoffs(cutoff_set.begin(), cutoff_set.end());

        PrecisionTable table = precision_at(report, gold, cutoffs);
        REQUIRE(table.rows.size() == cutoffs.size());
        double expected_avg = 0.0;
        for (size_t c = 0; c < cutoffs.size(); ++c) {
            size_t hits = 0;
            for (size_t i = 0; i < cutoffs[c]; ++i) {
                if (gold.refs.count(report.entries[i].entry) > 0) ++hits;
            }
            CHECK(table.rows[c].r == cutoffs[c]);
            CHECK(table.rows[c].hits == hits);
            CHECK(table.rows[c].precision ==
                  doctest::Approx(static_cast<double>(hits) / cutoffs[c]).epsilon(1e-12));
            expected_avg += table.rows[c].precision;
        }
        CHECK(table.average ==
              doctest::Approx(expected_avg / cutoffs.size()).epsilon(1e-12));
    }
}

TEST_CASE("precision cutoffs are validated") {
    RankedReport report = report_of({0, 1, 2});
    GoldErrorSet gold = gold_of({0});

    CHECK_THROWS_WITH_AS(precision_at(report, gold, {}), doctest::Contains("at least one"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(precision_at(report, gold, {0, 2}), doctest::Contains("positive"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(precision_at(report, gold, {2, 2}),
                         doctest::Contains("strictly increasing"), ConfigError);
    CHECK_THROWS_WITH_AS(precision_at(report, gold, {3, 1}),
                         doctest::Contains("strictly increasing"), ConfigError);
    CHECK_THROWS_WITH_AS(precision_at(report, gold, {1, 9}),
                         doctest::Contains("cutoff 9 exceeds the report size 3"), ConfigError);
    CHECK_THROWS_WITH_AS(precision_at(report, gold_of({0}, "U"), {1}),
                         doctest::Contains("does not match gold tier"), ConfigError);
}

TEST_CASE("grammars parse with defaults") {
    TemplateGrammar grammar = parse_grammar(
        R"({"templates":[{"tokens":["form","sense"]},
                          {"tokens":["form"],"weight":3.5}]})");
    CHECK(grammar.tier_name == "SYN");
    REQUIRE(grammar.templates.size() == 2);
    CHECK(grammar.templates[0].tokens == std::vector<std::string>{"form", "sense"});
    CHECK(grammar.templates[0].weight == doctest::Approx(1.0));
    CHECK(grammar.templates[1].weight == doctest::Approx(3.5));

    TemplateGrammar named = parse_grammar(
        R"({"tier":"ENTRY","templates":[{"tokens":["a"]}]})");
    CHECK(named.tier_name == "ENTRY");
}

TEST_CASE("grammar validation errors") {
    CHECK_THROWS_AS(parse_grammar("nonsense"), ConfigError);
    CHECK_THROWS_AS(parse_grammar("{}"), ConfigError);
    CHECK_THROWS_AS(parse_grammar(R"({"templates":[]})"), ConfigError);
    CHECK_THROWS_AS(parse_grammar(R"({"templates":[{"tokens":[]}]})"), ConfigError);
    CHECK_THROWS_AS(parse_grammar(R"({"templates":[{"tokens":["a"],"weight":0}]})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_grammar(R"({"templates":[{"tokens":["a"],"weight":-2}]})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_grammar(R"({"templates":[{"tokens":["a"],"weight":"x"}]})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_grammar(R"({"tier":7,"templates":[{"tokens":["a"]}]})"),
                    ConfigError);
}

TEST_CASE("a one-template grammar generates identical sentences") {
    TemplateGrammar grammar;
    grammar.tier_name = "SYN";
    grammar.templates.push_back({{"form", "sense", "sense"}, 1.0});
    TagCorpus corpus = generate_synthetic_corpus(grammar, 5, 99);
    REQUIRE(corpus.size() == 5);
    for (size_t i = 0; i < corpus.size(); ++i) {
        CHECK(corpus.sentences()[i].tokens ==
              std::vector<std::string>{"form", "sense", "sense"});
        CHECK(corpus.sentences()[i].entry.ordinal == i);
        CHECK(corpus.sentences()[i].entry.tier_name == "SYN");
    }
}

TEST_CASE("generation is deterministic in the seed") {
    TemplateGrammar grammar;
    grammar.templates.push_back({{"a", "b"}, 2.0});
    grammar.templates.push_back({{"c"}, 1.0});
    grammar.tier_name = "SYN";

    std::string first = corpus_to_text(generate_synthetic_corpus(grammar, 200, 5));
    std::string second = corpus_to_text(generate_synthetic_corpus(grammar, 200, 5));
    std::string other = corpus_to_text(generate_synthetic_corpus(grammar, 200, 6));
    CHECK(first == second);
    CHECK(first != other);
}

TEST_CASE("template draws honor their weights") {
    TemplateGrammar grammar;
    grammar.tier_name = "SYN";
    grammar.templates.push_back({{"common"}, 9.0});
    grammar.templates.push_back({{"rare"}, 1.0});
    TagCorpus corpus = generate_synthetic_corpus(grammar, 10000, 42);

    size_t rare = 0;
    for (const TagSentence& s : corpus.sentences()) {
        if (s.tokens[0] == "rare") ++rare;
    }
    // Binomial(10000, 0.1): mean 1000, sd 30; 2.58 sd keeps the seeded draw
    // inside [922, 1078].
    CHECK(rare >= 922);
    CHECK(rare <= 1078);
}

TEST_CASE("generation size and weights are validated") {
    TemplateGrammar grammar;
    grammar.templates.push_back({{"a"}, 1.0});
    CHECK_THROWS_AS(generate_synthetic_corpus(grammar, 0, 1), ConfigError);
    grammar.templates[0].weight = 0.0;
    CHECK_THROWS_AS(generate_synthetic_corpus(grammar, 5, 1), ConfigError);
    CHECK_THROWS_AS(generate_synthetic_corpus(TemplateGrammar{}, 5, 1), ConfigError);
}

TEST_CASE("operation lists parse names and weights") {
    auto defaults = default_op_weights();
    CHECK(defaults.size() == 5);

    auto ops = parse_op_weights("swap_adjacent,delete_token=2.5");
    REQUIRE(ops.size() == 2);
    CHECK(ops[0].first == InjectOp::swap_adjacent);
    CHECK(ops[0].second == doctest::Approx(1.0));
    CHECK(ops[1].first == InjectOp::delete_token);
    CHECK(ops[1].second == doctest::Approx(2.5));

    CHECK(inject_op_name(InjectOp::move_subtree_token) == "move_subtree_token");

    CHECK_THROWS_AS(parse_op_weights("shuffle"), ConfigError);
    CHECK_THROWS_AS(parse_op_weights("swap_adjacent,swap_adjacent"), ConfigError);
    CHECK_THROWS_AS(parse_op_weights("swap_adjacent=zero"), ConfigError);
    CHECK_THROWS_AS(parse_op_weights("swap_adjacent=0"), ConfigError);
    CHECK_THROWS_AS(parse_op_weights("swap_adjacent=1.5x"), ConfigError);
    CHECK_THROWS_AS(parse_op_weights("swap_adjacent,,delete_token"), ConfigError);
    CHECK_THROWS_AS(parse_op_weights(""), ConfigError);
}

TEST_CASE("injection corrupts the requested number of entries") {
    TemplateGrammar grammar;
    grammar.tier_name = "SYN";
    grammar.templates.push_back({{"a", "b", "c"}, 1.0});
    grammar.templates.push_back({{"a", "b"}, 1.0});
    TagCorpus corpus = generate_synthetic_corpus(grammar, 40, 3);

    InjectionSpec spec;
    spec.rate = 0.1;
    spec.seed = 17;
    InjectionResult result = inject_errors(corpus, spec);

    CHECK(result.gold.refs.size() == 4);  // ceil(0.1 * 40)
    CHECK(result.corpus.size() == corpus.size());
    CHECK(result.gold.tier_name == "SYN");

    for (size_t i = 0; i < corpus.size(); ++i) {
        const TagSentence& before = corpus.sentences()[i];
        const TagSentence& after = result.corpus.sentences()[i];
        CHECK(after.entry == before.entry);
        if (result.gold.refs.count(before.entry) > 0) {
            CHECK(after.tokens != before.tokens);
        } else {
            CHECK(after.tokens == before.tokens);
        }
    }
}

TEST_CASE("a five-percent rate on ten thousand entries selects exactly five hundred") {
    TemplateGrammar grammar;
    grammar.tier_name = "SYN";
    grammar.templates.push_back({{"a", "b", "c", "d"}, 1.0});
    TagCorpus corpus = generate_synthetic_corpus(grammar, 10000, 1);

    InjectionSpec spec;
    spec.rate = 0.05;
    spec.seed = 42;
    InjectionResult result = inject_errors(corpus, spec);
    CHECK(result.gold.refs.size() == 500);
}

TEST_CASE("injection is deterministic in the seed") {
    TemplateGrammar grammar;
    grammar.tier_name = "SYN";
    grammar.templates.push_back({{"a", "b", "c"}, 1.0});
    grammar.templates.push_back({{"b", "c"}, 1.0});
    TagCorpus corpus = generate_synthetic_corpus(grammar, 100, 9);

    InjectionSpec spec;
    spec.rate = 0.2;
    spec.seed = 31;
    InjectionResult one = inject_errors(corpus, spec);
    InjectionResult two = inject_errors(corpus, spec);
    CHECK(corpus_to_text(one.corpus) == corpus_to_text(two.corpus));
    CHECK(gold_to_text(one.gold) == gold_to_text(two.gold));

    spec.seed = 32;
    InjectionResult three = inject_errors(corpus, spec);
    CHECK(corpus_to_text(one.corpus) != corpus_to_text(three.corpus));
}

TEST_CASE("each operation leaves its structural fingerprint") {
    TemplateGrammar grammar;
    grammar.tier_name = "SYN";
    grammar.templates.push_back({{"a", "b", "c", "d"}, 1.0});
    grammar.templates.push_back({{"b", "a", "d"}, 1.0});
    TagCorpus corpus = generate_synthetic_corpus(grammar, 60, 13);

    auto corrupted_pairs = [&](InjectOp op) {
        InjectionSpec spec;
        spec.rate = 0.5;
        spec.seed = 77;
        spec.operations = {{op, 1.0}};
        InjectionResult result = inject_errors(corpus, spec);
        std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> pairs;
        for (size_t i = 0; i < corpus.size(); ++i) {
            if (result.gold.refs.count(corpus.sentences()[i].entry) > 0) {
                pairs.emplace_back(corpus.sentences()[i].tokens,
                                   result.corpus.sentences()[i].tokens);
            }
        }
        REQUIRE(pairs.size() == 30);
        return pairs;
    };

    SUBCASE("swap keeps length and bag of tokens") {
        for (const auto& [before, after] : corrupted_pairs(InjectOp::swap_adjacent)) {
            CHECK(after.size() == before.size());
            CHECK(bag_of(after) == bag_of(before));
            size_t diffs = 0;
            for (size_t i = 0; i < before.size(); ++i) {
                if (before[i] != after[i]) ++diffs;
            }
            CHECK(diffs == 2);  // exactly one adjacent transposition
        }
    }

    SUBCASE("delete removes one token and keeps the rest in order") {
        for (const auto& [before, after] : corrupted_pairs(InjectOp::delete_token)) {
            CHECK(after.size() == before.size() - 1);
            CHECK(!after.empty());
            CHECK(is_subsequence(after, before));
        }
    }

    SUBCASE("insert adds one vocabulary token") {
        for (const auto& [before, after] : corrupted_pairs(InjectOp::insert_random_token)) {
            CHECK(after.size() == before.size() + 1);
            CHECK(is_subsequence(before, after));
            for (const std::string& token : after) {
                CHECK(corpus.vocabulary().count(token) == 1);
            }
        }
    }

    SUBCASE("replace changes exactly one position") {
        for (const auto& [before, after] : corrupted_pairs(InjectOp::replace_token)) {
            REQUIRE(after.size() == before.size());
            size_t diffs = 0;
            for (size_t i = 0; i < before.size(); ++i) {
                if (before[i] != after[i]) ++diffs;
            }
            CHECK(diffs == 1);
        }
    }

    SUBCASE("move keeps the bag of tokens but changes the order") {
        for (const auto& [before, after] : corrupted_pairs(InjectOp::move_subtree_token)) {
            CHECK(after.size() == before.size());
            CHECK(bag_of(after) == bag_of(before));
            CHECK(after != before);
        }
    }
}

TEST_CASE("injection parameter validation") {
    TagCorpus corpus = TagCorpus::from_sentences("T", {{"a", "b"}, {"a", "b"}});
    InjectionSpec spec;

    spec.rate = 0.0;
    CHECK_THROWS_AS(inject_errors(corpus, spec), ConfigError);
    spec.rate = 1.0;
    CHECK_THROWS_AS(inject_errors(corpus, spec), ConfigError);
    spec.rate = -0.1;
    CHECK_THROWS_AS(inject_errors(corpus, spec), ConfigError);

    // A rate too small to select a single entry is a configuration error.
    spec.rate = 0.05;
    CHECK_THROWS_WITH_AS(inject_errors(corpus, spec), doctest::Contains("selects no entry"),
                         ConfigError);

    spec.rate = 0.5;
    spec.operations.clear();
    CHECK_THROWS_AS(inject_errors(corpus, spec), ConfigError);

    CHECK_THROWS_AS(inject_errors(TagCorpus(), InjectionSpec{}), Error);
}

TEST_CASE("impossible corruptions are reported") {
    // Every sentence is "A A": no adjacent pair differs, so swapping can
    // never change anything.
    TagCorpus corpus =
        TagCorpus::from_sentences("T", {{"A", "A"}, {"A", "A"}, {"A", "A"}, {"A", "A"}});
    InjectionSpec spec;
    spec.rate = 0.5;
    spec.operations = {{InjectOp::swap_adjacent, 1.0}};
    CHECK_THROWS_WITH_AS(inject_errors(corpus, spec), doctest::Contains("unable to place"),
                         InputError);

    // Replacement has no alternative token in a one-word vocabulary.
    spec.operations = {{InjectOp::replace_token, 1.0}};
    CHECK_THROWS_AS(inject_errors(corpus, spec), InputError);

    // Insertion always works on the same corpus.
    spec.operations = {{InjectOp::insert_random_token, 1.0}};
    CHECK(inject_errors(corpus, spec).gold.refs.size() == 2);
}

TEST_CASE("deletion never empties a sentence") {
    TagCorpus corpus = TagCorpus::from_sentences(
        "T", {{"a", "b"}, {"b", "a"}, {"a", "a"}, {"b", "b"}, {"a", "b"}});
    InjectionSpec spec;
    spec.rate = 0.9;
    spec.seed = 3;
    spec.operations = {{InjectOp::delete_token, 1.0}};
    InjectionResult result = inject_errors(corpus, spec);
    CHECK(result.gold.refs.size() == 5);
    for (const TagSentence& s : result.corpus.sentences()) {
        CHECK(s.tokens.size() == 1);
    }
}

TEST_CASE("a single corrupted entry ranks first under every measure") {
    std::vector<std::vector<std::string>> sentences(1000, {"a", "b", "c", "d"});
    TagCorpus clean = TagCorpus::from_sentences("SYN", sentences);

    InjectionSpec spec;
    spec.rate = 0.001;
    spec.seed = 8;
    spec.operations = {{InjectOp::swap_adjacent, 1.0}};
    InjectionResult result = inject_errors(clean, spec);
    REQUIRE(result.gold.refs.size() == 1);
    const EntryRef corrupted = *result.gold.refs.begin();

    NGramModel model =
        NGramModel::estimate_mle(NGramCounts::from_corpus(result.corpus, 2));
    std::vector<ScoreRecord> records = score_corpus(model, result.corpus);

    for (Measure measure : {Measure::logprob, Measure::ppw, Measure::ppwet}) {
        RankedReport report = rank(records, measure, direction_for(measure), "");
        CHECK(report.entries.front().entry == corrupted);
    }
}

}  // TEST_SUITE
