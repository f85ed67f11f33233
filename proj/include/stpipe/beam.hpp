#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace stpipe {

// Target phrases over a token-id vocabulary: `positive` must all appear as
// contiguous subsequences of the output, `negative` must never appear.
struct ConstraintSet {
    std::vector<std::vector<int>> positive;
    std::vector<std::vector<int>> negative;

    bool empty() const { return positive.empty() && negative.empty(); }
    int total_positive_tokens() const;

    // Phrases non-empty, positive phrases pairwise distinct (each completed
    // phrase banks its own tokens; overlap of partial matches is fine).
    void validate() const;
};

// One decoding step of the pluggable model: a finite deterministic score
// for every vocabulary token given the hypothesis prefix. eos_id marks the
// end-of-sequence token.
struct StepScorer {
    virtual ~StepScorer() = default;
    virtual int vocab_size() const = 0;
    virtual int eos_id() const = 0;
    virtual std::vector<double> next_scores(std::span<const int> prefix) const = 0;
};

// Incremental multi-pattern match progress (one KMP automaton per phrase).
struct MatchState {
    std::vector<int> positive_progress;
    std::vector<int> negative_progress;
    std::uint32_t completed_mask = 0; // positive phrases completed so far

    bool operator==(const MatchState&) const = default;
};

class PhraseMatcher {
public:
    explicit PhraseMatcher(const ConstraintSet& constraints);

    MatchState initial() const;

    struct Advance {
        MatchState state;
        std::vector<int> completed_positive; // indices completed by this token
        bool violated = false;               // some negative phrase completed
    };
    Advance advance(const MatchState& state, int token) const;

    // Tokens of completed positive phrases; partial progress counts nothing.
    int satisfied_tokens(const MatchState& state) const;
    // satisfied_tokens plus the partial progress of still-open phrases —
    // the bank index, so a hypothesis mid-phrase keeps its protected slot.
    int progress_tokens(const MatchState& state) const;
    bool all_satisfied(const MatchState& state) const;

private:
    struct Pattern {
        std::vector<int> tokens;
        std::vector<int> fail;
    };
    static Pattern compile(const std::vector<int>& phrase);
    static int step(const Pattern& p, int q, int token);

    std::vector<Pattern> positive_;
    std::vector<Pattern> negative_;
    int total_positive_tokens_ = 0;
};

// Free-function form of one matcher transition.
PhraseMatcher::Advance match_state_advance(const MatchState& state, int token,
                                           const PhraseMatcher& matcher);

struct BeamHypothesis {
    std::vector<int> tokens; // content tokens, end-of-sequence not included
    double score = 0.0;
};

// Constrained beam search with grouped slot allocation: hypotheses are
// banked by the number of constraint tokens covered (completed phrases
// plus open-phrase progress) and beam slots are split evenly across banks
// (spare slots go to the banks closest to completion, then unfilled slots
// are handed back to the globally best leftovers). A hypothesis completing
// a negative phrase is pruned at expansion time. A hypothesis ends by emitting eos (scored) or by
// reaching max_len. Returns the best feasible hypothesis under
// (score desc, tokens lexicographically asc); nullopt when the constraints
// are infeasible within max_len — never a silent fallback.
//
// With empty constraints this is exactly plain beam search.
std::optional<BeamHypothesis> beam_search(const StepScorer& scorer,
                                          const ConstraintSet& constraints, int beam_size,
                                          int max_len);

} // namespace stpipe
