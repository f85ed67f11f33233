#pragma once

#include <set>
#include <string>
#include <vector>

#include "stpipe/ngram_lm.hpp"
#include "stpipe/token.hpp"

namespace stpipe {

struct NormalizerConfig {
    std::set<std::string> filler_lexicon;
    // Full repeated spans (both copies) that are legitimate and must never
    // be collapsed.
    std::set<std::vector<std::string>> whitelist;
    double xi = 1e-4; // abnormality threshold, in (0,1)

    void validate() const;
};

// One entry per line; whitelist entries are whitespace-separated token
// sequences.
std::set<std::string> load_token_set(const std::string& path);
std::set<std::vector<std::string>> load_whitelist(const std::string& path);

// Drops every token in the filler lexicon, order preserved.
std::vector<Token> remove_fillers(const std::vector<Token>& tokens,
                                  const NormalizerConfig& config);

// Collapses adjacent repeated token blocks to one copy, repeatedly, always
// taking the leftmost shortest repeat first; whitelisted spans are left
// intact. Idempotent.
std::vector<Token> remove_repetitions(const std::vector<Token>& tokens,
                                      const NormalizerConfig& config);

struct AbnormalFilterResult {
    std::vector<Token> kept;
    std::vector<std::size_t> dropped_positions; // indices into the input
};

// Scans left to right and drops any token whose conditional probability
// under the model falls below xi; later conditionals are computed over the
// kept prefix, so one outlier does not cascade.
AbnormalFilterResult filter_abnormal(const std::vector<Token>& tokens, const NGramLM& lm,
                                     double xi);

struct NormalizeStats {
    std::size_t fillers_removed = 0;
    std::size_t repeat_tokens_removed = 0;
    std::size_t abnormal_removed = 0;
};

// Filler removal, then repetition collapse, then the LM filter when a model
// is supplied. The result is re-indexed 0..n-1 so downstream units see a
// contiguous stream; timestamps are preserved.
std::vector<Token> normalize_utterance(const std::vector<Token>& tokens,
                                       const NormalizerConfig& config, const NGramLM* lm,
                                       NormalizeStats* stats);

} // namespace stpipe
