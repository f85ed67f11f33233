// Acceptance suite: one line per criterion, nonzero exit on any failure.
//
// Each criterion pins its tolerances in code; oracles here are independent
// re-implementations, never calls back into the code path under test.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "stpipe/alignment.hpp"
#include "stpipe/beam.hpp"
#include "stpipe/iu_detector.hpp"
#include "stpipe/latency.hpp"
#include "stpipe/normalize.hpp"
#include "stpipe/oracle.hpp"
#include "stpipe/pipeline.hpp"
#include "stpipe/policies.hpp"
#include "stpipe/stream_io.hpp"

using namespace stpipe;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail = "") {
    std::printf("criterion %d %s: %s%s%s\n", id, pass ? "PASS" : "FAIL", name.c_str(),
                detail.empty() ? "" : " — ", detail.c_str());
    if (!pass) ++g_failures;
}

template <typename Fn>
void criterion(int id, const std::string& name, Fn&& fn) {
    try {
        std::string detail;
        const bool pass = fn(detail);
        report(id, name, pass, detail);
    } catch (const std::exception& e) {
        report(id, name, false, std::string("exception: ") + e.what());
    }
}

std::string testdata(const std::string& name) {
    return std::string(STPIPE_TESTDATA) + "/" + name;
}

// ---- criterion 1: EE anchored check + straight-line oracle --------------

double inverse_ee_oracle(const std::vector<SegmentLen>& segs, double r) {
    const std::size_t n = segs.size();
    double best = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double sum = 0.0;
        for (std::size_t i = j; i + 1 < n; ++i)
            sum += r * (segs[i].target_len - segs[i + 1].source_len);
        best = std::max(best, sum);
    }
    return best + segs[n - 1].target_len;
}

bool crit_ee(std::string& detail) {
    const auto start = std::chrono::steady_clock::now();
    for (int lx : {1, 3, 8, 20}) {
        for (double r : {0.1, 0.3, 1.0}) {
            const std::vector<SegmentLen> single = {{lx, 8}};
            if (equilibrium_efficiency(single, r) != 0.125) {
                detail = "single-segment EE != 1/8 exactly";
                return false;
            }
        }
    }
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> count(1, 10);
    std::uniform_int_distribution<int> lx(1, 30);
    std::uniform_int_distribution<int> ly(0, 30);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<SegmentLen> segs(static_cast<std::size_t>(count(rng)));
        for (auto& s : segs) {
            s.source_len = lx(rng);
            s.target_len = ly(rng);
        }
        if (segs.back().target_len == 0) segs.back().target_len = 1;
        for (double r : {0.1, 0.3, 1.0}) {
            const double got = inverse_ee(segs, r);
            const double want = inverse_ee_oracle(segs, r);
            if (std::abs(got - want) > 1e-12 * std::max(1.0, std::abs(want))) {
                detail = "recursion disagrees with the straight-line oracle";
                return false;
            }
        }
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char buf[96];
    std::snprintf(buf, sizeof(buf), "1000 traces x 3 r values in %.3fs", elapsed);
    detail = buf;
    return elapsed < 1.0;
}

// ---- criterion 2: negative-lag counterexample ----------------------------

bool crit_al(std::string& detail) {
    const double lag = lag_term(4, 6, 1.0);
    detail = "g(t)=4, t=6 -> lag " + std::to_string(lag);
    return lag == -1.0;
}

// ---- criterion 3: detector protocol --------------------------------------

struct ContextFirmingScorer final : BoundaryScorer {
    double score(std::span<const Token> prefix, std::size_t,
                 std::span<const Token> context) const override {
        if (prefix.back().surface == "姬") return context.size() >= 2 ? 0.8 : 0.4;
        return 0.0;
    }
};

std::vector<std::vector<std::string>> unit_surfaces(const std::vector<InformationUnit>& units) {
    std::vector<std::vector<std::string>> out;
    for (const auto& u : units)
        out.push_back(surfaces(u.tokens));
    return out;
}

bool crit_detector(std::string& detail) {
    DetectorConfig cfg;
    cfg.delta1 = 0.7;
    cfg.delta2 = 0.3;
    cfg.scorer = std::make_shared<PunctuationBoundaryScorer>();

    std::mt19937_64 rng(555);
    const std::vector<std::string> alphabet = {"a", "b", "c", "d", "，", "。"};
    std::uniform_int_distribution<std::size_t> len(1, 24);
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<Token> tokens;
        const std::size_t n = len(rng);
        for (std::size_t i = 0; i < n; ++i)
            tokens.push_back({alphabet[pick(rng)], static_cast<std::int64_t>(i), i});

        IuDetector streaming(cfg);
        std::vector<InformationUnit> streamed;
        for (const auto& t : tokens) {
            auto emitted = streaming.feed(t);
            streamed.insert(streamed.end(), emitted.begin(), emitted.end());
        }
        if (auto last = streaming.flush()) streamed.push_back(*last);

        const auto batch = detect_units(cfg, tokens);
        if (unit_surfaces(streamed) != unit_surfaces(batch)) {
            detail = "streaming vs batch divergence at trial " + std::to_string(trial);
            return false;
        }
        std::vector<std::string> flat;
        for (const auto& u : streamed)
            for (const auto& t : u.tokens)
                flat.push_back(t.surface);
        if (flat != surfaces(tokens)) {
            detail = "no-loss violated at trial " + std::to_string(trial);
            return false;
        }
    }

    // Threshold trace: 0.4 stays undetermined, 0.8 emits at the anchor.
    DetectorConfig firming = cfg;
    firming.scorer = std::make_shared<ContextFirmingScorer>();
    IuDetector det(firming);
    bool ok = det.feed({"姬", 0, 0}).empty();
    ok = ok && det.feed({"这", 1, 1}).empty();
    const auto emitted = det.feed({"个", 2, 2});
    ok = ok && emitted.size() == 1 && surfaces(emitted[0].tokens) == std::vector<std::string>{"姬"};
    if (!ok) {
        detail = "threshold trace (0.4 wait, 0.8 emit) not reproduced";
        return false;
    }
    detail = "500 random streams, streaming == batch, no loss";
    return true;
}

// ---- criterion 4: pair extraction vs brute force --------------------------

bool boundary_oracle(int i, int j, const AlignmentSet& a) {
    if (!a.contains(i, j)) return false;
    for (const auto& [la, lb] : a.links) {
        const bool prefix_block = la <= i && lb <= j;
        const bool suffix_block = la > i && lb > j;
        if (!prefix_block && !suffix_block) return false;
    }
    return true;
}

bool crit_extraction(std::string& detail) {
    std::mt19937_64 rng(777);
    std::uniform_int_distribution<int> dim(1, 10);
    for (int trial = 0; trial < 10000; ++trial) {
        const int n = dim(rng);
        const int m = dim(rng);
        AlignedPair pair;
        for (int i = 1; i <= n; ++i)
            pair.source.push_back(i == (n + 1) / 2 ? "，" : "s" + std::to_string(i));
        for (int j = 1; j <= m; ++j)
            pair.target.push_back("t" + std::to_string(j));
        std::uniform_int_distribution<int> links(0, n + m);
        std::uniform_int_distribution<int> si(1, n), tj(1, m);
        const int k = links(rng);
        for (int t = 0; t < k; ++t)
            pair.alignment.links.insert({si(rng), tj(rng)});

        std::vector<std::pair<int, int>> brute;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= m; ++j)
                if (boundary_oracle(i, j, pair.alignment)) brute.emplace_back(i, j);

        const auto got = extract_pairs(pair);
        if (got.size() != brute.size()) {
            detail = "boundary count mismatch at trial " + std::to_string(trial);
            return false;
        }
        for (std::size_t b = 0; b < brute.size(); ++b) {
            if (got[b].i != brute[b].first || got[b].j != brute[b].second) {
                detail = "boundary mismatch at trial " + std::to_string(trial);
                return false;
            }
            if (b > 0 && !(got[b - 1].i < got[b].i && got[b - 1].j < got[b].j)) {
                detail = "crossing boundaries at trial " + std::to_string(trial);
                return false;
            }
        }
    }
    detail = "10000 random instances, n,m <= 10";
    return true;
}

// ---- criterion 5: context-aware decoding contract -------------------------

// Records every generate() call to audit the forced-prefix contract from
// outside the implementation.
struct SpyOracle final : TranslationOracle {
    const TranslationOracle* inner;
    mutable int checked = 0;
    mutable int violations = 0;

    std::vector<std::string> generate(std::span<const std::string> source,
                                      std::span<const std::string> forced_prefix) const override {
        auto out = inner->generate(source, forced_prefix);
        ++checked;
        if (out.size() < forced_prefix.size() ||
            !std::equal(forced_prefix.begin(), forced_prefix.end(), out.begin()))
            ++violations;
        return out;
    }
};

struct FinalOnlyScorer final : BoundaryScorer {
    double score(std::span<const Token> prefix, std::size_t,
                 std::span<const Token>) const override {
        return is_sentence_final_token(prefix.back().surface) ? 1.0 : 0.0;
    }
};

bool crit_context_aware(std::string& detail) {
    const auto lexicon = ToyLexiconOracle::from_file(testdata("lexicon.tsv"));
    const auto utts = group_by_utterance(parse_stream_file(testdata("talk.txt")));

    DetectorConfig punct;
    punct.scorer = std::make_shared<PunctuationBoundaryScorer>();

    SpyOracle spy;
    spy.inner = &lexicon;
    for (int k : {0, 1, 2, 3}) {
        for (const auto& u : utts) {
            const auto run = translate_stream(u, punct, spy, PolicyConfig::context_aware(k));
            for (const auto& seg : run.timeline.segments) {
                if (seg.retracted_before > k) {
                    detail = "retraction exceeded k_discard";
                    return false;
                }
            }
        }
    }
    if (spy.checked == 0 || spy.violations != 0) {
        detail = "forced-prefix contract violations: " + std::to_string(spy.violations);
        return false;
    }

    // Whole-sentence units with k_discard = 0 equal the full-sentence policy.
    DetectorConfig whole;
    whole.scorer = std::make_shared<FinalOnlyScorer>();
    for (const auto& u : utts) {
        const auto reduced = translate_stream(u, whole, lexicon, PolicyConfig::context_aware(0));
        const auto full = translate_stream(u, whole, lexicon, PolicyConfig::full());
        if (reduced.timeline.committed_target != full.timeline.committed_target) {
            detail = "reduction to the full-sentence policy failed on " + u.id;
            return false;
        }
    }
    detail = std::to_string(spy.checked) + " generate() calls audited on the toy corpus";
    return true;
}

// ---- criterion 6: wait-k schedule -----------------------------------------

bool crit_wait_k(std::string& detail) {
    const auto lexicon = ToyLexiconOracle::from_file(testdata("lexicon.tsv"));
    DetectorConfig punct;
    punct.scorer = std::make_shared<PunctuationBoundaryScorer>();

    std::vector<Utterance> fixtures = group_by_utterance(parse_stream_file(testdata("talk.txt")));
    const auto clean = group_by_utterance(parse_stream_file(testdata("talk_clean.txt")));
    fixtures.insert(fixtures.end(), clean.begin(), clean.end());

    for (int k : {1, 3, 5, 7, 9}) {
        for (const auto& u : fixtures) {
            const auto run = translate_stream(u, punct, lexicon, PolicyConfig::wait_k(k));
            // The fixtures keep one sentence per utterance, so the schedule
            // spans the whole utterance.
            const int n = static_cast<int>(u.tokens.size());
            const auto g = read_counts(run.timeline);
            if (static_cast<int>(g.size()) != n) {
                detail = "wait-k emitted an unexpected target length on " + u.id;
                return false;
            }
            for (int t = 1; t <= n; ++t) {
                if (g[static_cast<std::size_t>(t) - 1] != std::min(t + k - 1, n)) {
                    detail = "g(t) != min(t+k-1, n) on " + u.id + " k=" + std::to_string(k);
                    return false;
                }
            }
        }
    }
    detail = "k in {1,3,5,7,9} over all fixture utterances";
    return true;
}

// ---- criterion 7: normalization -------------------------------------------

std::vector<std::string> collapse_oracle(std::vector<std::string> t,
                                         const std::set<std::vector<std::string>>& whitelist) {
    for (;;) {
        bool collapsed = false;
        for (std::size_t i = 0; i < t.size() && !collapsed; ++i) {
            for (std::size_t len = 1; i + 2 * len <= t.size() && !collapsed; ++len) {
                if (!std::equal(t.begin() + static_cast<long>(i),
                                t.begin() + static_cast<long>(i + len),
                                t.begin() + static_cast<long>(i + len)))
                    continue;
                const std::vector<std::string> span(t.begin() + static_cast<long>(i),
                                                    t.begin() + static_cast<long>(i + 2 * len));
                if (whitelist.count(span)) continue;
                t.erase(t.begin() + static_cast<long>(i + len),
                        t.begin() + static_cast<long>(i + 2 * len));
                collapsed = true;
            }
        }
        if (!collapsed) return t;
    }
}

bool crit_normalization(std::string& detail) {
    std::mt19937_64 rng(999);
    const std::vector<std::string> alphabet = {"a", "b", "c", "d", "e"};
    std::uniform_int_distribution<std::size_t> len(0, 12);
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    NormalizerConfig plain;
    NormalizerConfig listed;
    listed.whitelist = {{"a", "b", "a", "b"}};
    for (int trial = 0; trial < 10000; ++trial) {
        std::vector<std::string> input(len(rng));
        for (auto& s : input)
            s = alphabet[pick(rng)];
        const NormalizerConfig& cfg = trial % 2 ? listed : plain;
        std::vector<Token> tokens;
        for (std::size_t i = 0; i < input.size(); ++i)
            tokens.push_back({input[i], static_cast<std::int64_t>(i), i});
        const auto got = surfaces(remove_repetitions(tokens, cfg));
        if (got != collapse_oracle(input, cfg.whitelist)) {
            detail = "collapse oracle mismatch at trial " + std::to_string(trial);
            return false;
        }
        std::vector<Token> again;
        for (std::size_t i = 0; i < got.size(); ++i)
            again.push_back({got[i], static_cast<std::int64_t>(i), i});
        if (surfaces(remove_repetitions(again, cfg)) != got) {
            detail = "not idempotent at trial " + std::to_string(trial);
            return false;
        }
    }

    // The whitelisted repetition passes through unchanged.
    NormalizerConfig guard;
    guard.whitelist = load_whitelist(testdata("whitelist.txt"));
    const std::vector<std::string> sentence = {"他", "必须", "分成", "很多", "个",   "小格",
                                               "，", "一个", "小格", "一个", "小格", "完成"};
    std::vector<Token> tokens;
    for (std::size_t i = 0; i < sentence.size(); ++i)
        tokens.push_back({sentence[i], static_cast<std::int64_t>(i), i});
    if (surfaces(remove_repetitions(tokens, guard)) != sentence) {
        detail = "whitelist sentence was modified";
        return false;
    }

    // xi-monotone drops on fixture models.
    NGramLM lm(3, 0.1);
    lm.train({{"食油", "很", "贵"}, {"今天", "天气", "很", "好"}});
    const std::vector<std::string> probe = {"石油", "很", "贵", "今天", "好"};
    std::vector<Token> probe_tokens;
    for (std::size_t i = 0; i < probe.size(); ++i)
        probe_tokens.push_back({probe[i], static_cast<std::int64_t>(i), i});
    std::vector<std::size_t> prev;
    for (double xi : {0.0, 0.01, 0.03, 0.05, 0.1, 0.2, 0.5, 0.9}) {
        const auto result = filter_abnormal(probe_tokens, lm, xi);
        if (!std::includes(result.dropped_positions.begin(), result.dropped_positions.end(),
                           prev.begin(), prev.end())) {
            detail = "drops are not monotone in xi";
            return false;
        }
        prev = result.dropped_positions;
    }
    detail = "10000 random strings + whitelist fixture + xi monotone";
    return true;
}

// ---- criterion 8: constrained beam vs exhaustive ---------------------------

struct HashScorer final : StepScorer {
    int vocab = 3;
    std::uint64_t seed = 1;
    int vocab_size() const override { return vocab; }
    int eos_id() const override { return vocab - 1; }
    std::vector<double> next_scores(std::span<const int> prefix) const override {
        std::uint64_t h = seed * 0x9e3779b97f4a7c15ull;
        for (int t : prefix)
            h = (h ^ static_cast<std::uint64_t>(t + 1)) * 0xbf58476d1ce4e5b9ull;
        std::vector<double> row(static_cast<std::size_t>(vocab));
        for (int v = 0; v < vocab; ++v) {
            std::uint64_t x = (h ^ (static_cast<std::uint64_t>(v) << 17)) * 0x94d049bb133111ebull;
            x ^= x >> 31;
            row[static_cast<std::size_t>(v)] = -0.25 * static_cast<double>(x % 8);
        }
        return row;
    }
};

bool hyp_better(const std::vector<int>& at, double as, const std::vector<int>& bt, double bs) {
    if (as != bs) return as > bs;
    return std::lexicographical_compare(at.begin(), at.end(), bt.begin(), bt.end());
}

bool contains_phrase(const std::vector<int>& seq, const std::vector<int>& phrase) {
    return std::search(seq.begin(), seq.end(), phrase.begin(), phrase.end()) != seq.end();
}

std::optional<BeamHypothesis> exhaustive(const StepScorer& scorer, const ConstraintSet& cs,
                                         int max_len) {
    std::optional<BeamHypothesis> best;
    const int vocab = scorer.vocab_size();
    const int eos = scorer.eos_id();
    auto feasible = [&](const std::vector<int>& seq) {
        for (const auto& p : cs.positive)
            if (!contains_phrase(seq, p)) return false;
        for (const auto& p : cs.negative)
            if (contains_phrase(seq, p)) return false;
        return true;
    };
    std::vector<int> seq;
    auto rec = [&](auto&& self, double score) -> void {
        const auto row = scorer.next_scores(seq);
        auto offer = [&](double s) {
            if (!feasible(seq)) return;
            if (!best || hyp_better(seq, s, best->tokens, best->score))
                best = BeamHypothesis{seq, s};
        };
        if (static_cast<int>(seq.size()) == max_len) {
            offer(score);
            return;
        }
        offer(score + row[static_cast<std::size_t>(eos)]);
        for (int v = 0; v < vocab; ++v) {
            if (v == eos) continue;
            seq.push_back(v);
            self(self, score + row[static_cast<std::size_t>(v)]);
            seq.pop_back();
        }
    };
    rec(rec, 0.0);
    return best;
}

std::optional<BeamHypothesis> plain_beam(const StepScorer& scorer, int beam_size, int max_len) {
    struct Hyp {
        std::vector<int> tokens;
        double score;
    };
    std::vector<Hyp> live = {{{}, 0.0}};
    std::vector<Hyp> finished;
    for (int step = 0; step < max_len && !live.empty(); ++step) {
        std::vector<Hyp> candidates;
        for (const auto& h : live) {
            const auto row = scorer.next_scores(h.tokens);
            for (int v = 0; v < scorer.vocab_size(); ++v) {
                if (v == scorer.eos_id()) {
                    finished.push_back({h.tokens, h.score + row[static_cast<std::size_t>(v)]});
                    continue;
                }
                auto tokens = h.tokens;
                tokens.push_back(v);
                candidates.push_back(
                    {std::move(tokens), h.score + row[static_cast<std::size_t>(v)]});
            }
        }
        std::sort(candidates.begin(), candidates.end(), [](const Hyp& a, const Hyp& b) {
            return hyp_better(a.tokens, a.score, b.tokens, b.score);
        });
        if (static_cast<int>(candidates.size()) > beam_size) candidates.resize(beam_size);
        live = std::move(candidates);
    }
    for (const auto& h : live)
        finished.push_back(h);
    std::optional<BeamHypothesis> best;
    for (const auto& f : finished)
        if (!best || hyp_better(f.tokens, f.score, best->tokens, best->score))
            best = BeamHypothesis{f.tokens, f.score};
    return best;
}

bool crit_beam(std::string& detail) {
    std::mt19937_64 rng(444);
    int instances = 0;
    for (int vocab = 2; vocab <= 5; ++vocab) {
        for (int max_len = 2; max_len <= 6; ++max_len) {
            for (int variant = 0; variant < 4; ++variant) {
                HashScorer scorer;
                scorer.vocab = vocab;
                scorer.seed = rng();
                ConstraintSet cs;
                std::uniform_int_distribution<int> tok(0, std::max(0, vocab - 2));
                if (vocab >= 2 && (variant == 1 || variant == 3))
                    cs.positive.push_back({tok(rng)});
                if (vocab >= 3 && variant >= 2) cs.negative.push_back({tok(rng), tok(rng)});
                if (vocab >= 4 && variant == 3) cs.positive.push_back({tok(rng), tok(rng)});
                // De-duplicate accidental clashes.
                if (cs.positive.size() == 2 && cs.positive[0] == cs.positive[1])
                    cs.positive.pop_back();

                int states = 1;
                for (int i = 0; i < max_len; ++i)
                    states *= vocab;
                const auto got = beam_search(scorer, cs, states, max_len);
                const auto want = exhaustive(scorer, cs, max_len);
                ++instances;
                if (got.has_value() != want.has_value()) {
                    detail = "feasibility disagreement (vocab " + std::to_string(vocab) +
                             ", max_len " + std::to_string(max_len) + ")";
                    return false;
                }
                if (got) {
                    if (got->tokens != want->tokens || got->score != want->score) {
                        detail = "optimum mismatch (vocab " + std::to_string(vocab) +
                                 ", max_len " + std::to_string(max_len) + ")";
                        return false;
                    }
                    for (const auto& p : cs.negative)
                        if (contains_phrase(got->tokens, p)) {
                            detail = "negative phrase leaked into the result";
                            return false;
                        }
                    for (const auto& p : cs.positive)
                        if (!contains_phrase(got->tokens, p)) {
                            detail = "positive phrase missing from the result";
                            return false;
                        }
                }

                // Plain reduction, bit-exact, at assorted beam widths.
                if (cs.positive.empty() && cs.negative.empty()) {
                    for (int beam : {1, 2, 4, 9}) {
                        const auto reduced = beam_search(scorer, {}, beam, max_len);
                        const auto reference = plain_beam(scorer, beam, max_len);
                        if (!reduced || !reference || reduced->tokens != reference->tokens ||
                            reduced->score != reference->score) {
                            detail = "empty constraints do not reduce to plain beam search";
                            return false;
                        }
                    }
                }
            }
        }
    }
    detail = std::to_string(instances) + " instances, vocab <= 5, max_len <= 6";
    return true;
}

// ---- criterion 9: end-to-end determinism -----------------------------------

std::string strip_cr(std::string s) {
    s.erase(std::remove(s.begin(), s.end(), '\r'), s.end());
    return s;
}

bool crit_golden(std::string& detail, const std::string& stpipe_bin) {
    if (stpipe_bin.empty()) {
        detail = "missing --stpipe-bin";
        return false;
    }
    const auto tmp = std::filesystem::temp_directory_path();
    const std::string r1 = (tmp / "stpipe_accept_report1.txt").string();
    const std::string r2 = (tmp / "stpipe_accept_report2.txt").string();
    for (const auto& out : {r1, r2}) {
        const std::string cmd = "cd '" + std::string(STPIPE_TESTDATA) + "' && '" + stpipe_bin +
                                "' run --config run.cfg --report '" + out + "'";
        if (std::system(cmd.c_str()) != 0) {
            detail = "stpipe run exited nonzero";
            return false;
        }
    }
    const std::string a = read_file(r1);
    const std::string b = read_file(r2);
    if (a != b) {
        detail = "two invocations differ";
        return false;
    }
    const std::string golden = read_file(testdata("golden_report.txt"));
    if (strip_cr(a) != strip_cr(golden)) {
        detail = "report differs from the committed golden file";
        return false;
    }
    std::filesystem::remove(r1);
    std::filesystem::remove(r2);
    detail = "byte-identical across two invocations and vs the golden file";
    return true;
}

} // namespace

int main(int argc, char** argv) {
    std::string stpipe_bin;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--stpipe-bin") stpipe_bin = argv[i + 1];

    criterion(1, "EE anchored check and straight-line oracle", crit_ee);
    criterion(2, "negative-lag counterexample", crit_al);
    criterion(3, "detector protocol streaming/batch agreement", crit_detector);
    criterion(4, "pair extraction equals brute force", crit_extraction);
    criterion(5, "context-aware decoding contract", crit_context_aware);
    criterion(6, "wait-k schedule", crit_wait_k);
    criterion(7, "normalization properties", crit_normalization);
    criterion(8, "constrained beam vs exhaustive search", crit_beam);
    criterion(9, "end-to-end determinism",
              [&](std::string& d) { return crit_golden(d, stpipe_bin); });

    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
