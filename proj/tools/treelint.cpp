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

// Command-line pipeline over the treelint C API. Stages pass their results
// through files (corpus text, ARPA model, TSV reports) so every
// intermediate artifact is inspectable and each stage is reproducible on
// its own.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "treelint/treelint.h"

namespace {

// A failed stage: message for stderr plus the process exit code
// (2 = configuration, 3 = input, 4 = internal — the tl_status values).
struct CommandError {
    int code;
    std::string message;
};

void check(tl_status status) {
    if (status != TL_OK) throw CommandError{static_cast<int>(status), tl_last_error()};
}

template <typename T, void (*Free)(T*)>
struct FreeDeleter {
    void operator()(T* p) const { Free(p); }
};
template <typename T, void (*Free)(T*)>
using Owned = std::unique_ptr<T, FreeDeleter<T, Free>>;

using OwnedTierset = Owned<tl_tierset, tl_tierset_free>;
using OwnedCorpus = Owned<tl_corpus, tl_corpus_free>;
using OwnedCounts = Owned<tl_counts, tl_counts_free>;
using OwnedModel = Owned<tl_model, tl_model_free>;
using OwnedReport = Owned<tl_report, tl_report_free>;
using OwnedGold = Owned<tl_gold, tl_gold_free>;
using OwnedPrecision = Owned<tl_precision, tl_precision_free>;
using OwnedText = Owned<char, tl_string_free>;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CommandError{TL_ERROR_INPUT, "cannot open file: " + path};
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw CommandError{TL_ERROR_INPUT, "cannot read file: " + path};
    return buf.str();
}

void write_file(const std::string& path, const char* data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw CommandError{TL_ERROR_INPUT, "cannot open file for writing: " + path};
    out << data;
    out.flush();
    if (!out) throw CommandError{TL_ERROR_INPUT, "cannot write file: " + path};
}

std::vector<size_t> parse_cutoffs(const std::string& text) {
    std::vector<size_t> cutoffs;
    std::stringstream stream(text);
    std::string part;
    while (std::getline(stream, part, ',')) {
        try {
            size_t used = 0;
            unsigned long long value = std::stoull(part, &used);
            if (used != part.size()) throw std::invalid_argument(part);
            cutoffs.push_back(static_cast<size_t>(value));
        } catch (const std::exception&) {
            throw CommandError{TL_ERROR_CONFIG, "bad cutoff '" + part + "' in --cutoffs"};
        }
    }
    if (cutoffs.empty()) throw CommandError{TL_ERROR_CONFIG, "--cutoffs must list at least one rank"};
    return cutoffs;
}

// ---- pipeline stages, shared by the subcommands and run-all ----------

OwnedCorpus stage_extract(const std::string& input_path, const std::string& tiers_path,
                          const std::string& tier_name) {
    std::string xml = read_file(input_path);
    std::string tiers_json = read_file(tiers_path);
    tl_tierset* tierset_raw = nullptr;
    check(tl_tierset_parse(tiers_json.c_str(), &tierset_raw));
    OwnedTierset tierset(tierset_raw);
    tl_corpus* corpus_raw = nullptr;
    check(tl_corpus_extract(xml.c_str(), tierset.get(), tier_name.c_str(), &corpus_raw));
    OwnedCorpus corpus(corpus_raw);
    std::printf("tier %s: %zu entries, %zu unique tokens\n", tl_corpus_tier_name(corpus.get()),
                tl_corpus_size(corpus.get()), tl_corpus_vocab_size(corpus.get()));
    return corpus;
}

OwnedCorpus load_corpus(const std::string& path) {
    std::string text = read_file(path);
    tl_corpus* corpus_raw = nullptr;
    check(tl_corpus_from_text(text.c_str(), &corpus_raw));
    return OwnedCorpus(corpus_raw);
}

void save_corpus(const tl_corpus* corpus, const std::string& path) {
    char* text_raw = nullptr;
    check(tl_corpus_to_text(corpus, &text_raw));
    OwnedText text(text_raw);
    write_file(path, text.get());
}

OwnedModel stage_train(const tl_corpus* corpus, int order, const std::string& smoothing,
                       int gtmax, const std::string& dump_counts_path) {
    tl_counts* counts_raw = nullptr;
    check(tl_counts_build(corpus, order, &counts_raw));
    OwnedCounts counts(counts_raw);

    std::printf("corpus: %llu sentences, %llu events\n",
                static_cast<unsigned long long>(tl_counts_sentences(counts.get())),
                static_cast<unsigned long long>(tl_counts_events(counts.get())));
    for (int k = 1; k <= order; ++k) {
        size_t types = 0;
        check(tl_counts_gram_types(counts.get(), k, &types));
        std::printf("%d-grams: %zu\n", k, types);
    }
    if (!dump_counts_path.empty()) {
        char* tsv_raw = nullptr;
        check(tl_counts_to_tsv(counts.get(), &tsv_raw));
        OwnedText tsv(tsv_raw);
        write_file(dump_counts_path, tsv.get());
    }

    tl_model* model_raw = nullptr;
    if (smoothing == "none") {
        check(tl_model_estimate_mle(counts.get(), &model_raw));
    } else {
        check(tl_model_estimate_katz(counts.get(), gtmax, &model_raw));
    }
    return OwnedModel(model_raw);
}

OwnedReport stage_rank(const tl_model* model, const tl_corpus* corpus,
                       const std::string& measure) {
    tl_report* report_raw = nullptr;
    check(tl_report_rank(model, corpus, measure.c_str(), &report_raw));
    OwnedReport report(report_raw);
    std::printf("ranked %zu entries by %s (%s)\n", tl_report_size(report.get()), measure.c_str(),
                measure == "logprob" ? "ascending" : "descending");
    return report;
}

OwnedPrecision stage_eval(const tl_report* report, const std::string& gold_text,
                          const std::vector<size_t>& cutoffs) {
    const char* tier = tl_report_tier_name(report);
    if (tier == nullptr) throw CommandError{TL_ERROR_INPUT, "ranked report has no entries"};
    tl_gold* gold_raw = nullptr;
    check(tl_gold_load(gold_text.c_str(), tier, &gold_raw));
    OwnedGold gold(gold_raw);
    tl_precision* table_raw = nullptr;
    check(tl_precision_compute(report, gold.get(), cutoffs.data(), cutoffs.size(), &table_raw));
    return OwnedPrecision(table_raw);
}

// ---- subcommand drivers ----------------------------------------------

struct ExtractArgs {
    std::string input, tiers, tier, out;
};

void run_extract(const ExtractArgs& args) {
    OwnedCorpus corpus = stage_extract(args.input, args.tiers, args.tier);
    save_corpus(corpus.get(), args.out);
}

struct TrainArgs {
    std::string corpus, smoothing = "none", dump_counts, out;
    int order = 2;
    int gtmax = 7;
};

void run_train(const TrainArgs& args) {
    OwnedCorpus corpus = load_corpus(args.corpus);
    OwnedModel model = stage_train(corpus.get(), args.order, args.smoothing, args.gtmax,
                                   args.dump_counts);
    char* arpa_raw = nullptr;
    check(tl_model_write_arpa(model.get(), &arpa_raw));
    OwnedText arpa(arpa_raw);
    write_file(args.out, arpa.get());
}

struct RankArgs {
    std::string corpus, model, measure = "logprob", out;
    size_t top = 0;
};

void run_rank(const RankArgs& args) {
    OwnedCorpus corpus = load_corpus(args.corpus);
    std::string arpa = read_file(args.model);
    tl_model* model_raw = nullptr;
    check(tl_model_read_arpa(arpa.c_str(), &model_raw));
    OwnedModel model(model_raw);
    OwnedReport report = stage_rank(model.get(), corpus.get(), args.measure);
    char* text_raw = nullptr;
    check(tl_report_to_text(report.get(), args.top, &text_raw));
    OwnedText text(text_raw);
    write_file(args.out, text.get());
}

struct EvalArgs {
    std::string ranked, gold, cutoffs = "15,30,50,100,500,1000", out;
    bool paper_style = false;
};

void run_eval(const EvalArgs& args) {
    std::string report_text = read_file(args.ranked);
    tl_report* report_raw = nullptr;
    check(tl_report_from_text(report_text.c_str(), &report_raw));
    OwnedReport report(report_raw);
    OwnedPrecision table =
        stage_eval(report.get(), read_file(args.gold), parse_cutoffs(args.cutoffs));
    char* text_raw = nullptr;
    check(tl_precision_to_text(table.get(), args.paper_style ? 1 : 0, &text_raw));
    OwnedText text(text_raw);
    std::fputs(text.get(), stdout);
    write_file(args.out, text.get());
}

struct InjectArgs {
    std::string corpus, grammar, ops, out_corpus, out_gold;
    size_t size = 0;
    double rate = 0.05;
    uint64_t seed = 0;
};

void run_inject(const InjectArgs& args) {
    OwnedCorpus clean;
    if (!args.grammar.empty()) {
        if (args.size == 0)
            throw CommandError{TL_ERROR_CONFIG, "--size is required with --grammar"};
        std::string grammar_json = read_file(args.grammar);
        tl_corpus* corpus_raw = nullptr;
        check(tl_corpus_generate(grammar_json.c_str(), args.size, args.seed, &corpus_raw));
        clean = OwnedCorpus(corpus_raw);
    } else {
        clean = load_corpus(args.corpus);
    }

    tl_corpus* corrupted_raw = nullptr;
    tl_gold* gold_raw = nullptr;
    check(tl_corpus_inject(clean.get(), args.rate, args.ops.empty() ? nullptr : args.ops.c_str(),
                           args.seed, &corrupted_raw, &gold_raw));
    OwnedCorpus corrupted(corrupted_raw);
    OwnedGold gold(gold_raw);

    std::printf("seed: %llu\n", static_cast<unsigned long long>(args.seed));
    std::printf("corrupted %zu of %zu entries\n", tl_gold_size(gold.get()),
                tl_corpus_size(corrupted.get()));

    save_corpus(corrupted.get(), args.out_corpus);
    char* gold_text_raw = nullptr;
    check(tl_gold_to_text(gold.get(), &gold_text_raw));
    OwnedText gold_text(gold_text_raw);
    write_file(args.out_gold, gold_text.get());
}

struct RunAllArgs {
    std::string input, tiers, tier, smoothing = "none", measure = "logprob";
    std::string gold, cutoffs = "15,30,50,100,500,1000", outdir;
    int order = 2;
    int gtmax = 7;
    size_t top = 0;
    bool paper_style = false;
};

void run_all(const RunAllArgs& args) {
    std::error_code ec;
    std::filesystem::create_directories(args.outdir, ec);
    if (ec)
        throw CommandError{TL_ERROR_INPUT,
                           "cannot create output directory " + args.outdir + ": " + ec.message()};
    const std::string base = args.outdir + "/";

    OwnedCorpus corpus = stage_extract(args.input, args.tiers, args.tier);
    save_corpus(corpus.get(), base + "corpus.txt");

    OwnedModel model = stage_train(corpus.get(), args.order, args.smoothing, args.gtmax, "");
    char* arpa_raw = nullptr;
    check(tl_model_write_arpa(model.get(), &arpa_raw));
    OwnedText arpa(arpa_raw);
    write_file(base + "model.arpa", arpa.get());

    OwnedReport report = stage_rank(model.get(), corpus.get(), args.measure);
    char* report_text_raw = nullptr;
    check(tl_report_to_text(report.get(), args.top, &report_text_raw));
    OwnedText report_text(report_text_raw);
    write_file(base + "ranked.tsv", report_text.get());

    if (!args.gold.empty()) {
        // Evaluate the report exactly as written (--top truncation included).
        tl_report* written_raw = nullptr;
        check(tl_report_from_text(report_text.get(), &written_raw));
        OwnedReport written(written_raw);
        OwnedPrecision table =
            stage_eval(written.get(), read_file(args.gold), parse_cutoffs(args.cutoffs));
        char* text_raw = nullptr;
        check(tl_precision_to_text(table.get(), args.paper_style ? 1 : 0, &text_raw));
        OwnedText text(text_raw);
        std::fputs(text.get(), stdout);
        write_file(base + "precision.tsv", text.get());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"structural anomaly detection for XML dictionaries"};
    app.require_subcommand(1);

    ExtractArgs extract_args;
    CLI::App* extract = app.add_subcommand("extract", "flatten XML entries into a tag-sentence corpus");
    extract->add_option("--input", extract_args.input, "XML dictionary file")->required();
    extract->add_option("--tiers", extract_args.tiers, "tier configuration (JSON)")->required();
    extract->add_option("--tier", extract_args.tier, "tier name to extract")->required();
    extract->add_option("--out", extract_args.out, "corpus file to write")->required();
    extract->callback([&] { run_extract(extract_args); });

    TrainArgs train_args;
    CLI::App* train = app.add_subcommand("train", "train an n-gram model over a corpus");
    train->add_option("--corpus", train_args.corpus, "corpus file")->required();
    train->add_option("--order", train_args.order, "n-gram order (1..7)")->required();
    train->add_option("--smoothing", train_args.smoothing, "none or good-turing")
        ->check(CLI::IsMember({"none", "good-turing"}));
    train->add_option("--gtmax", train_args.gtmax, "largest discounted count (good-turing)");
    train->add_option("--dump-counts", train_args.dump_counts, "write raw counts as TSV");
    train->add_option("--out", train_args.out, "ARPA model file to write")->required();
    train->callback([&] { run_train(train_args); });

    RankArgs rank_args;
    CLI::App* rank = app.add_subcommand("rank", "rank entries most-anomalous-first");
    rank->add_option("--corpus", rank_args.corpus, "corpus file")->required();
    rank->add_option("--model", rank_args.model, "ARPA model file")->required();
    rank->add_option("--measure", rank_args.measure, "logprob, ppw, or ppwet")
        ->check(CLI::IsMember({"logprob", "ppw", "ppwet"}));
    rank->add_option("--top", rank_args.top, "write only the first R rows");
    rank->add_option("--out", rank_args.out, "ranked report file to write")->required();
    rank->callback([&] { run_rank(rank_args); });

    EvalArgs eval_args;
    CLI::App* eval = app.add_subcommand("eval", "precision at rank against a gold error list");
    eval->add_option("--ranked", eval_args.ranked, "ranked report file")->required();
    eval->add_option("--gold", eval_args.gold, "gold error list file")->required();
    eval->add_option("--cutoffs", eval_args.cutoffs, "comma-separated ranks (default 15,30,50,100,500,1000)");
    eval->add_flag("--paper-style", eval_args.paper_style, "print two decimals instead of four");
    eval->add_option("--out", eval_args.out, "precision table file to write")->required();
    eval->callback([&] { run_eval(eval_args); });

    InjectArgs inject_args;
    CLI::App* inject = app.add_subcommand("inject", "corrupt entries to create a gold error set");
    CLI::Option* from_corpus = inject->add_option("--corpus", inject_args.corpus, "corpus file to corrupt");
    CLI::Option* from_grammar =
        inject->add_option("--grammar", inject_args.grammar, "template grammar (JSON) to sample from");
    from_corpus->excludes(from_grammar);
    inject->add_option("--size", inject_args.size, "sentences to generate (with --grammar)");
    inject->add_option("--rate", inject_args.rate, "fraction of entries to corrupt, in (0,1)")
        ->required();
    inject->add_option("--seed", inject_args.seed, "generator seed")->required();
    inject->add_option("--ops", inject_args.ops,
                       "operations as op[=weight],… (default: all five, equal weight)");
    inject->add_option("--out-corpus", inject_args.out_corpus, "corrupted corpus file")->required();
    inject->add_option("--out-gold", inject_args.out_gold, "gold error list file")->required();
    inject->callback([&] {
        if (inject_args.corpus.empty() && inject_args.grammar.empty())
            throw CommandError{TL_ERROR_CONFIG, "inject needs --corpus or --grammar"};
        run_inject(inject_args);
    });

    RunAllArgs all_args;
    CLI::App* all = app.add_subcommand("run-all", "extract, train, rank, and optionally eval");
    all->add_option("--input", all_args.input, "XML dictionary file")->required();
    all->add_option("--tiers", all_args.tiers, "tier configuration (JSON)")->required();
    all->add_option("--tier", all_args.tier, "tier name to extract")->required();
    all->add_option("--order", all_args.order, "n-gram order (1..7)")->required();
    all->add_option("--smoothing", all_args.smoothing, "none or good-turing")
        ->check(CLI::IsMember({"none", "good-turing"}));
    all->add_option("--gtmax", all_args.gtmax, "largest discounted count (good-turing)");
    all->add_option("--measure", all_args.measure, "logprob, ppw, or ppwet")
        ->check(CLI::IsMember({"logprob", "ppw", "ppwet"}));
    all->add_option("--top", all_args.top, "write only the first R report rows");
    all->add_option("--gold", all_args.gold, "gold error list (enables the eval stage)");
    all->add_option("--cutoffs", all_args.cutoffs, "comma-separated ranks for eval");
    all->add_flag("--paper-style", all_args.paper_style, "print two decimals instead of four");
    all->add_option("--outdir", all_args.outdir, "directory for all stage outputs")->required();
    all->callback([&] { run_all(all_args); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : TL_ERROR_CONFIG;  // bad flags are configuration errors
    } catch (const CommandError& e) {
        std::fprintf(stderr, "treelint: error: %s\n", e.message.c_str());
        return e.code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "treelint: error: %s\n", e.what());
        return TL_ERROR_INTERNAL;
    }
    return 0;
}
