#include "stpipe/beam.hpp"

#include <algorithm>
#include <cmath>

#include "stpipe/errors.hpp"

namespace stpipe {

int ConstraintSet::total_positive_tokens() const {
    int n = 0;
    for (const auto& p : positive)
        n += static_cast<int>(p.size());
    return n;
}

void ConstraintSet::validate() const {
    for (const auto& p : positive)
        if (p.empty()) throw PipelineError("empty positive constraint phrase");
    for (const auto& p : negative)
        if (p.empty()) throw PipelineError("empty negative constraint phrase");
    for (std::size_t i = 0; i < positive.size(); ++i)
        for (std::size_t j = i + 1; j < positive.size(); ++j)
            if (positive[i] == positive[j])
                throw PipelineError("duplicate positive constraint phrase");
    if (positive.size() > 32)
        throw PipelineError("at most 32 positive constraint phrases are supported");
}

PhraseMatcher::Pattern PhraseMatcher::compile(const std::vector<int>& phrase) {
    Pattern p;
    p.tokens = phrase;
    p.fail.assign(phrase.size(), 0);
    for (std::size_t i = 1; i < phrase.size(); ++i) {
        int q = p.fail[i - 1];
        while (q > 0 && phrase[i] != phrase[static_cast<std::size_t>(q)])
            q = p.fail[static_cast<std::size_t>(q) - 1];
        if (phrase[i] == phrase[static_cast<std::size_t>(q)]) ++q;
        p.fail[i] = q;
    }
    return p;
}

int PhraseMatcher::step(const Pattern& p, int q, int token) {
    const int len = static_cast<int>(p.tokens.size());
    if (q == len) q = p.fail[static_cast<std::size_t>(len) - 1];
    while (q > 0 && p.tokens[static_cast<std::size_t>(q)] != token)
        q = p.fail[static_cast<std::size_t>(q) - 1];
    if (p.tokens[static_cast<std::size_t>(q)] == token) ++q;
    return q;
}

PhraseMatcher::PhraseMatcher(const ConstraintSet& constraints) {
    constraints.validate();
    for (const auto& p : constraints.positive)
        positive_.push_back(compile(p));
    for (const auto& p : constraints.negative)
        negative_.push_back(compile(p));
    total_positive_tokens_ = constraints.total_positive_tokens();
}

MatchState PhraseMatcher::initial() const {
    MatchState s;
    s.positive_progress.assign(positive_.size(), 0);
    s.negative_progress.assign(negative_.size(), 0);
    return s;
}

PhraseMatcher::Advance PhraseMatcher::advance(const MatchState& state, int token) const {
    Advance adv;
    adv.state = state;
    for (std::size_t i = 0; i < positive_.size(); ++i) {
        const int q = step(positive_[i], state.positive_progress[i], token);
        adv.state.positive_progress[i] = q;
        if (q == static_cast<int>(positive_[i].tokens.size())) {
            adv.completed_positive.push_back(static_cast<int>(i));
            adv.state.completed_mask |= (1u << i);
        }
    }
    for (std::size_t i = 0; i < negative_.size(); ++i) {
        const int q = step(negative_[i], state.negative_progress[i], token);
        adv.state.negative_progress[i] = q;
        if (q == static_cast<int>(negative_[i].tokens.size())) adv.violated = true;
    }
    return adv;
}

int PhraseMatcher::satisfied_tokens(const MatchState& state) const {
    int n = 0;
    for (std::size_t i = 0; i < positive_.size(); ++i)
        if (state.completed_mask & (1u << i)) n += static_cast<int>(positive_[i].tokens.size());
    return n;
}

int PhraseMatcher::progress_tokens(const MatchState& state) const {
    int n = 0;
    for (std::size_t i = 0; i < positive_.size(); ++i) {
        if (state.completed_mask & (1u << i))
            n += static_cast<int>(positive_[i].tokens.size());
        else
            n += state.positive_progress[i];
    }
    return std::min(n, total_positive_tokens_);
}

bool PhraseMatcher::all_satisfied(const MatchState& state) const {
    return satisfied_tokens(state) == total_positive_tokens_;
}

PhraseMatcher::Advance match_state_advance(const MatchState& state, int token,
                                           const PhraseMatcher& matcher) {
    return matcher.advance(state, token);
}

namespace {

struct Hyp {
    std::vector<int> tokens;
    double score = 0.0;
    MatchState match;
};

// score desc, token sequence lex asc: the fixed total order everywhere.
bool better(const std::vector<int>& at, double as, const std::vector<int>& bt, double bs) {
    if (as != bs) return as > bs;
    return std::lexicographical_compare(at.begin(), at.end(), bt.begin(), bt.end());
}

bool hyp_better(const Hyp& a, const Hyp& b) {
    return better(a.tokens, a.score, b.tokens, b.score);
}

} // namespace

std::optional<BeamHypothesis> beam_search(const StepScorer& scorer,
                                          const ConstraintSet& constraints, int beam_size,
                                          int max_len) {
    if (beam_size < 1) throw PipelineError("beam_size must be >= 1");
    if (max_len < 1) throw PipelineError("max_len must be >= 1");
    const int vocab = scorer.vocab_size();
    const int eos = scorer.eos_id();
    if (vocab < 1 || eos < 0 || eos >= vocab)
        throw PipelineError("step scorer exposes an invalid vocabulary");

    const PhraseMatcher matcher(constraints);
    const int banks = constraints.total_positive_tokens() + 1;

    std::vector<Hyp> live;
    live.push_back({{}, 0.0, matcher.initial()});

    struct Finished {
        std::vector<int> tokens;
        double score;
        bool feasible;
    };
    std::vector<Finished> finished;

    for (int step = 0; step < max_len && !live.empty(); ++step) {
        std::vector<std::vector<Hyp>> banked(static_cast<std::size_t>(banks));
        for (const Hyp& h : live) {
            const auto scores = scorer.next_scores(h.tokens);
            if (static_cast<int>(scores.size()) != vocab)
                throw PipelineError("step scorer returned a wrong-width score row");
            for (int v = 0; v < vocab; ++v) {
                if (!std::isfinite(scores[static_cast<std::size_t>(v)]))
                    throw PipelineError("step scorer returned a non-finite score");
                if (v == eos) {
                    finished.push_back({h.tokens, h.score + scores[static_cast<std::size_t>(v)],
                                        matcher.all_satisfied(h.match)});
                    continue;
                }
                const auto adv = matcher.advance(h.match, v);
                if (adv.violated) continue; // hard prune: forbidden content
                Hyp next;
                next.tokens = h.tokens;
                next.tokens.push_back(v);
                next.score = h.score + scores[static_cast<std::size_t>(v)];
                next.match = std::move(adv.state);
                banked[static_cast<std::size_t>(matcher.progress_tokens(next.match))]
                    .push_back(std::move(next));
            }
        }

        for (auto& bank : banked)
            std::sort(bank.begin(), bank.end(), hyp_better);

        // Even split, spare slots to the banks closest to completion.
        std::vector<int> quota(static_cast<std::size_t>(banks), beam_size / banks);
        for (int r = 0; r < beam_size % banks; ++r)
            quota[static_cast<std::size_t>(banks - 1 - r)] += 1;

        live.clear();
        std::vector<Hyp> leftovers;
        for (int b = 0; b < banks; ++b) {
            auto& bank = banked[static_cast<std::size_t>(b)];
            const std::size_t take =
                std::min<std::size_t>(bank.size(), static_cast<std::size_t>(quota[static_cast<std::size_t>(b)]));
            for (std::size_t i = 0; i < bank.size(); ++i) {
                if (i < take)
                    live.push_back(std::move(bank[i]));
                else
                    leftovers.push_back(std::move(bank[i]));
            }
        }
        if (static_cast<int>(live.size()) < beam_size && !leftovers.empty()) {
            std::sort(leftovers.begin(), leftovers.end(), hyp_better);
            for (auto& h : leftovers) {
                if (static_cast<int>(live.size()) >= beam_size) break;
                live.push_back(std::move(h));
            }
        }
    }

    // Hypotheses alive at max_len are finished without an eos score.
    for (const Hyp& h : live)
        finished.push_back({h.tokens, h.score, matcher.all_satisfied(h.match)});

    const Finished* best = nullptr;
    for (const Finished& f : finished) {
        if (!f.feasible) continue;
        if (!best || better(f.tokens, f.score, best->tokens, best->score)) best = &f;
    }
    if (!best) return std::nullopt;
    return BeamHypothesis{best->tokens, best->score};
}

} // namespace stpipe
