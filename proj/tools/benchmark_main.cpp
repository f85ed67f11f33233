// Compares the serial reference drivers against the OpenMP-parallel ones on
// synthetic workloads and verifies both produce identical output. Each
// variant is timed as the best of `reps` runs after a shared warm-up.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stpipe/corpus_prep.hpp"
#include "stpipe/parallel.hpp"
#include "stpipe/pipeline.hpp"

using namespace stpipe;

namespace {

template <typename Fn>
double best_of(int reps, Fn&& fn) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        best = std::min(best, ms);
    }
    return best;
}

std::vector<Utterance> synth_talk(std::size_t utterances, std::size_t tokens_per_utt,
                                  std::uint64_t seed) {
    const std::vector<std::string> words = {"w1", "w2", "w3", "w4", "w5", "w6",
                                            "w7", "w8", "w9", "w10"};
    std::vector<Utterance> talk(utterances);
    for (std::size_t u = 0; u < utterances; ++u) {
        std::mt19937_64 rng(seed + u);
        std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
        std::uniform_int_distribution<int> comma(0, 7);
        Utterance utt;
        utt.id = "u" + std::to_string(u);
        for (std::size_t t = 0; t < tokens_per_utt; ++t) {
            Token tok;
            tok.surface = t + 1 == tokens_per_utt ? "。"
                          : comma(rng) == 0       ? "，"
                                                  : words[pick(rng)];
            tok.ts_ms = static_cast<std::int64_t>(t) * 100;
            tok.index = t;
            utt.tokens.push_back(std::move(tok));
        }
        talk[u] = std::move(utt);
    }
    return talk;
}

PipelineContext synth_context() {
    PipelineContext ctx;
    ctx.normalize = true;
    ctx.normalizer.filler_lexicon = {"w9"};
    ctx.detector.scorer = std::make_shared<PunctuationBoundaryScorer>();
    std::map<std::string, std::string> lexicon;
    for (int i = 1; i <= 10; ++i) lexicon["w" + std::to_string(i)] = "t" + std::to_string(i);
    lexicon["，"] = ",";
    lexicon["。"] = ".";
    ctx.oracle = std::make_shared<ToyLexiconOracle>(std::move(lexicon));
    ctx.policy = PolicyConfig::context_aware(1);
    return ctx;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs OpenMP pipeline benchmark"};
    std::size_t utterances = 2000;
    std::size_t tokens = 60;
    std::size_t pairs = 4000;
    int reps = 3;
    app.add_option("--utterances", utterances, "synthetic utterance count");
    app.add_option("--tokens", tokens, "tokens per utterance");
    app.add_option("--pairs", pairs, "sentence pairs for the extraction benchmark");
    app.add_option("--reps", reps, "timed repetitions per variant");
    CLI11_PARSE(app, argc, argv);

    std::printf("threads available: %d\n\n", max_threads());

    {
        const auto talk = synth_talk(utterances, tokens, 42);
        const auto ctx = synth_context();

        const auto serial_result = run_talk_serial(ctx, talk);   // warm-up + reference
        const auto parallel_result = run_talk_parallel(ctx, talk);

        const double serial_ms = best_of(reps, [&] { run_talk_serial(ctx, talk); });
        const double parallel_ms = best_of(reps, [&] { run_talk_parallel(ctx, talk); });

        std::printf("pipeline: %zu utterances x %zu tokens (context_aware, k_discard=1)\n",
                    utterances, tokens);
        std::printf("  serial:   %9.1f ms\n", serial_ms);
        std::printf("  parallel: %9.1f ms  (speedup %.2fx)\n", parallel_ms,
                    serial_ms / parallel_ms);
        std::printf("  identical output: %s\n\n",
                    render_report(serial_result, ctx, nullptr) ==
                            render_report(parallel_result, ctx, nullptr)
                        ? "yes"
                        : "NO");
    }

    {
        // Diagonal alignments with a comma mid-sentence.
        std::vector<std::vector<std::string>> sources(pairs), targets(pairs);
        std::vector<std::string> aligns(pairs);
        for (std::size_t i = 0; i < pairs; ++i) {
            const std::size_t n = 12 + i % 5;
            std::string align;
            for (std::size_t t = 0; t < n; ++t) {
                sources[i].push_back(t == n / 2 ? "，" : "s" + std::to_string(t));
                targets[i].push_back(t == n / 2 ? "," : "t" + std::to_string(t));
                if (t) align += ' ';
                align += std::to_string(t) + "-" + std::to_string(t);
            }
            aligns[i] = std::move(align);
        }

        PrepareStats stats;
        const auto serial_records = build_partial_corpus(sources, targets, aligns, false, &stats);
        const auto parallel_records = build_partial_corpus(sources, targets, aligns, true, &stats);

        const double serial_ms =
            best_of(reps, [&] { build_partial_corpus(sources, targets, aligns, false, nullptr); });
        const double parallel_ms =
            best_of(reps, [&] { build_partial_corpus(sources, targets, aligns, true, nullptr); });

        std::printf("pair extraction: %zu sentence pairs (%s)\n", pairs, stats.summary().c_str());
        std::printf("  serial:   %9.1f ms\n", serial_ms);
        std::printf("  parallel: %9.1f ms  (speedup %.2fx)\n", parallel_ms,
                    serial_ms / parallel_ms);
        std::printf("  identical output: %s\n",
                    serial_records == parallel_records ? "yes" : "NO");
    }
    return 0;
}
