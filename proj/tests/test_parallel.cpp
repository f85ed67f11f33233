#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "stpipe/corpus_prep.hpp"
#include "stpipe/errors.hpp"
#include "stpipe/pipeline.hpp"

using namespace stpipe;

namespace {

PipelineContext toy_context() {
    PipelineContext ctx;
    ctx.normalizer.filler_lexicon = {"d"};
    ctx.detector.scorer = std::make_shared<PunctuationBoundaryScorer>();
    ctx.oracle = std::make_shared<ToyLexiconOracle>(std::map<std::string, std::string>{
        {"a", "A"}, {"b", "B"}, {"c", "C"}, {"，", ","}, {"。", "."}});
    ctx.policy = PolicyConfig::context_aware(1);
    return ctx;
}

std::vector<Utterance> random_talk(std::mt19937_64& rng, std::size_t n) {
    std::vector<Utterance> talk(n);
    for (std::size_t i = 0; i < n; ++i) {
        talk[i].id = "u" + std::to_string(i);
        talk[i].tokens = testutil::random_stream(rng, 20);
    }
    return talk;
}

} // namespace

TEST_CASE("parallel and serial pipeline drivers agree byte for byte") {
    std::mt19937_64 rng(97);
    const auto ctx = toy_context();
    for (int trial = 0; trial < 10; ++trial) {
        const auto talk = random_talk(rng, 64);
        const auto serial = run_talk_serial(ctx, talk);
        const auto parallel = run_talk_parallel(ctx, talk);
        CHECK(render_report(serial, ctx, nullptr) == render_report(parallel, ctx, nullptr));
    }
}

TEST_CASE("parallel and serial corpus extraction agree") {
    std::vector<std::vector<std::string>> sources, targets;
    std::vector<std::string> aligns;
    for (int i = 0; i < 200; ++i) {
        const int n = 3 + i % 6;
        std::vector<std::string> src, tgt;
        std::string align;
        for (int t = 0; t < n; ++t) {
            src.push_back(t == n / 2 ? "，" : "s" + std::to_string(t));
            tgt.push_back("t" + std::to_string(t));
            if (t) align += ' ';
            align += std::to_string(t) + "-" + std::to_string(t);
        }
        sources.push_back(src);
        targets.push_back(tgt);
        aligns.push_back(align);
    }
    PrepareStats serial_stats, parallel_stats;
    const auto serial = build_partial_corpus(sources, targets, aligns, false, &serial_stats);
    const auto parallel = build_partial_corpus(sources, targets, aligns, true, &parallel_stats);
    CHECK(serial == parallel);
    CHECK(serial_stats.summary() == parallel_stats.summary());
}

TEST_CASE("worker failures surface as the same first error in both drivers") {
    auto ctx = toy_context();
    std::vector<Utterance> talk;
    // Utterance u1 ends mid-stream but u3 carries a token the detector
    // cannot break on; make the oracle fail on a marker token instead.
    struct MarkerOracle final : TranslationOracle {
        std::vector<std::string> generate(std::span<const std::string> source,
                                          std::span<const std::string> prefix) const override {
            for (const auto& s : source)
                if (s == "boom") throw std::runtime_error("marker hit");
            std::vector<std::string> out(prefix.begin(), prefix.end());
            for (std::size_t i = prefix.size(); i < source.size(); ++i)
                out.push_back(source[i]);
            return out;
        }
    };
    ctx.oracle = std::make_shared<MarkerOracle>();
    talk.push_back({"ok0", testutil::toks({"a", "。"})});
    talk.push_back({"bad1", testutil::toks({"boom", "。"})});
    talk.push_back({"bad2", testutil::toks({"boom", "boom", "。"})});

    std::string serial_what, parallel_what;
    try {
        run_talk_serial(ctx, talk);
    } catch (const PipelineError& e) {
        serial_what = e.what();
    }
    try {
        run_talk_parallel(ctx, talk);
    } catch (const PipelineError& e) {
        parallel_what = e.what();
    }
    CHECK(serial_what == parallel_what);
    CHECK(serial_what.find("utt bad1") != std::string::npos);
}
