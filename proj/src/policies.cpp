#include "stpipe/policies.hpp"

#include <algorithm>

#include "stpipe/errors.hpp"

namespace stpipe {

std::string to_string(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::full: return "full";
        case PolicyKind::subsentence: return "subsentence";
        case PolicyKind::wait_k: return "wait_k";
        case PolicyKind::context_aware: return "context_aware";
    }
    return "?";
}

PolicyKind policy_kind_from_string(std::string_view name) {
    if (name == "full") return PolicyKind::full;
    if (name == "subsentence") return PolicyKind::subsentence;
    if (name == "wait_k") return PolicyKind::wait_k;
    if (name == "context_aware") return PolicyKind::context_aware;
    throw ConfigError("unknown policy kind '" + std::string(name) + "'");
}

PolicyConfig PolicyConfig::full() { return {PolicyKind::full, 1, 0}; }
PolicyConfig PolicyConfig::subsentence() { return {PolicyKind::subsentence, 1, 0}; }
PolicyConfig PolicyConfig::wait_k(int k) { return {PolicyKind::wait_k, k, 0}; }
PolicyConfig PolicyConfig::context_aware(int k_discard) {
    return {PolicyKind::context_aware, 1, k_discard};
}

void PolicyConfig::validate() const {
    if (kind == PolicyKind::wait_k && k_wait < 1)
        throw ConfigError("wait_k policy requires k_wait >= 1");
    if (kind == PolicyKind::context_aware && k_discard < 0)
        throw ConfigError("context_aware policy requires k_discard >= 0");
}

std::vector<std::string> context_aware_continue(std::span<const std::string> source_context,
                                                std::span<const std::string> prev_translation,
                                                int k_discard, const TranslationOracle& oracle) {
    if (k_discard < 0) throw PipelineError("k_discard must be >= 0");
    // When k_discard exceeds the committed length the whole prefix goes
    // (happens for 1-token first units).
    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(k_discard),
                                                prev_translation.size());
    const auto forced = prev_translation.subspan(0, prev_translation.size() - k);
    auto out = oracle.generate(source_context, forced);
    if (out.size() < forced.size() || !std::equal(forced.begin(), forced.end(), out.begin()))
        throw PipelineError("oracle output does not extend the forced prefix");
    return out;
}

namespace {

std::vector<std::vector<const InformationUnit*>>
group_sentences(const std::vector<InformationUnit>& units) {
    std::vector<std::vector<const InformationUnit*>> sentences;
    for (const auto& u : units) {
        if (sentences.empty() || sentences.back().back()->sentence_id != u.sentence_id)
            sentences.emplace_back();
        sentences.back().push_back(&u);
    }
    return sentences;
}

struct SegmentSink {
    TranslationTimeline* timeline;
    std::vector<std::string> displayed;

    void add(int sentence_id, int lx, std::vector<std::string> written, int retracted,
             std::int64_t read_end) {
        displayed.resize(displayed.size() - static_cast<std::size_t>(retracted));
        displayed.insert(displayed.end(), written.begin(), written.end());
        TimelineSegment seg;
        seg.sentence_id = sentence_id;
        seg.source_len = lx;
        seg.target_len = static_cast<int>(written.size());
        seg.retracted_before = retracted;
        seg.written = std::move(written);
        seg.read_end_ms = read_end;
        seg.write_end_ms = read_end;
        timeline->segments.push_back(std::move(seg));
    }
};

template <typename Fn>
auto with_segment_context(std::size_t segment_index, Fn&& fn) {
    try {
        return fn();
    } catch (const PipelineError& e) {
        throw PipelineError("segment " + std::to_string(segment_index + 1) + ": " + e.what());
    } catch (const std::exception& e) {
        throw PipelineError("segment " + std::to_string(segment_index + 1) + ": oracle: " +
                            e.what());
    }
}

void run_full(const std::vector<std::vector<const InformationUnit*>>& sentences,
              const TranslationOracle& oracle, SegmentSink& sink) {
    for (const auto& sent : sentences) {
        std::vector<std::string> src;
        std::int64_t read_end = 0;
        for (const auto* u : sent) {
            for (const auto& t : u->tokens) src.push_back(t.surface);
            read_end = u->tokens.back().ts_ms;
        }
        auto out = with_segment_context(sink.timeline->segments.size(), [&] {
            return oracle.generate(src, {});
        });
        sink.add(sent.front()->sentence_id, static_cast<int>(src.size()), std::move(out), 0,
                 read_end);
    }
}

void run_subsentence(const std::vector<std::vector<const InformationUnit*>>& sentences,
                     const TranslationOracle& oracle, SegmentSink& sink) {
    for (const auto& sent : sentences) {
        for (const auto* u : sent) {
            auto src = surfaces(u->tokens);
            auto out = with_segment_context(sink.timeline->segments.size(), [&] {
                return oracle.generate(src, {});
            });
            sink.add(u->sentence_id, static_cast<int>(src.size()), std::move(out), 0,
                     u->tokens.back().ts_ms);
        }
    }
}

void run_context_aware(const std::vector<std::vector<const InformationUnit*>>& sentences,
                       const TranslationOracle& oracle, const PolicyConfig& policy,
                       SegmentSink& sink) {
    for (const auto& sent : sentences) {
        std::vector<std::string> committed_sentence;
        std::vector<std::string> source_so_far;
        for (std::size_t i = 0; i < sent.size(); ++i) {
            const auto* u = sent[i];
            for (const auto& t : u->tokens) source_so_far.push_back(t.surface);
            const std::size_t segment_index = sink.timeline->segments.size();
            std::vector<std::string> out;
            int retracted = 0;
            if (i == 0) {
                // Sentence-initial unit: plain partial generation.
                out = with_segment_context(segment_index, [&] {
                    return oracle.generate(source_so_far, {});
                });
            } else {
                retracted = static_cast<int>(std::min<std::size_t>(
                    static_cast<std::size_t>(policy.k_discard), committed_sentence.size()));
                out = with_segment_context(segment_index, [&] {
                    return context_aware_continue(source_so_far, committed_sentence,
                                                  policy.k_discard, oracle);
                });
            }
            const std::size_t keep = committed_sentence.size() - static_cast<std::size_t>(retracted);
            std::vector<std::string> written(out.begin() + static_cast<long>(keep), out.end());
            committed_sentence = std::move(out);
            sink.add(u->sentence_id, static_cast<int>(u->tokens.size()), std::move(written),
                     retracted, u->tokens.back().ts_ms);
        }
        // Sentence done: its translation is sealed, the next sentence starts
        // with a fresh prefix, so no retraction ever crosses this point.
    }
}

void run_wait_k(const std::vector<std::vector<const InformationUnit*>>& sentences,
                const TranslationOracle& oracle, const PolicyConfig& policy, SegmentSink& sink) {
    for (const auto& sent : sentences) {
        std::vector<Token> tokens;
        for (const auto* u : sent)
            tokens.insert(tokens.end(), u->tokens.begin(), u->tokens.end());
        std::vector<std::string> src = surfaces(tokens);
        const int n = static_cast<int>(src.size());
        const int sid = sent.front()->sentence_id;
        const std::size_t cap = static_cast<std::size_t>(4 * n + 16);

        std::vector<std::string> committed_sentence;
        int read = 0;
        int pending_lx = 0;
        std::int64_t pending_read_end = 0;
        std::vector<std::string> pending_written;
        bool have_pending = false;

        auto close_pending = [&] {
            if (have_pending)
                sink.add(sid, pending_lx, std::move(pending_written), 0, pending_read_end);
            pending_written.clear();
            pending_lx = 0;
            have_pending = false;
        };

        for (int t = 1;; ++t) {
            const int g = std::min(t + policy.k_wait - 1, n);
            if (g > read) {
                close_pending();
                pending_lx = g - read;
                pending_read_end = tokens[static_cast<std::size_t>(g) - 1].ts_ms;
                have_pending = true;
                read = g;
            }
            const std::span<const std::string> visible(src.data(), static_cast<std::size_t>(g));
            auto out = with_segment_context(sink.timeline->segments.size(), [&] {
                return oracle.generate(visible, committed_sentence);
            });
            if (out.size() <= committed_sentence.size()) break;
            if (committed_sentence.size() >= cap)
                throw PipelineError("oracle keeps extending the translation");
            pending_written.push_back(out[committed_sentence.size()]);
            committed_sentence.push_back(out[committed_sentence.size()]);
        }
        // Source tokens left unread when the translation finished early
        // still belong to this sentence's final burst.
        if (read < n) {
            if (!have_pending) have_pending = true;
            pending_lx += n - read;
            pending_read_end = tokens[static_cast<std::size_t>(n) - 1].ts_ms;
        }
        close_pending();
    }
}

} // namespace

TranslationRun translate_stream(const Utterance& utt, const DetectorConfig& detector,
                                const TranslationOracle& oracle, const PolicyConfig& policy) {
    policy.validate();
    TranslationRun run;
    run.units = detect_units(detector, utt.tokens);
    run.timeline.utt_id = utt.id;

    const auto sentences = group_sentences(run.units);
    SegmentSink sink{&run.timeline, {}};
    switch (policy.kind) {
        case PolicyKind::full: run_full(sentences, oracle, sink); break;
        case PolicyKind::subsentence: run_subsentence(sentences, oracle, sink); break;
        case PolicyKind::wait_k: run_wait_k(sentences, oracle, policy, sink); break;
        case PolicyKind::context_aware: run_context_aware(sentences, oracle, policy, sink); break;
    }
    run.timeline.committed_target = std::move(sink.displayed);
    run.timeline.validate();
    return run;
}

} // namespace stpipe
