#pragma once

#include <span>
#include <string>
#include <vector>

#include "stpipe/iu_detector.hpp"
#include "stpipe/oracle.hpp"
#include "stpipe/timeline.hpp"
#include "stpipe/token.hpp"

namespace stpipe {

enum class PolicyKind { full, subsentence, wait_k, context_aware };

std::string to_string(PolicyKind kind);
PolicyKind policy_kind_from_string(std::string_view name);

struct PolicyConfig {
    PolicyKind kind = PolicyKind::context_aware;
    int k_wait = 3;    // wait_k: source-token head start, >= 1
    int k_discard = 1; // context_aware: committed tokens retracted per boundary, >= 0

    static PolicyConfig full();
    static PolicyConfig subsentence();
    static PolicyConfig wait_k(int k);
    static PolicyConfig context_aware(int k_discard);

    void validate() const;
};

struct TranslationRun {
    std::vector<InformationUnit> units;
    TranslationTimeline timeline;
};

// Continues a translation given the source read so far and the previously
// committed translation: the last min(k_discard, len) committed tokens are
// discarded and the rest is forced as the prefix of a fresh generation.
// Throws PipelineError when the oracle output does not extend the prefix.
std::vector<std::string> context_aware_continue(std::span<const std::string> source_context,
                                                std::span<const std::string> prev_translation,
                                                int k_discard, const TranslationOracle& oracle);

// Runs detection over one utterance and translates the unit stream under
// the configured policy:
//   full          translate each sentence once, at its end
//   subsentence   translate each unit independently and concatenate
//   wait_k        token-level schedule g(t) = min(t + k_wait - 1, |source|)
//   context_aware sentence-initial unit by plain generation, later units by
//                 forced-prefix continuation with discard-k; forced prefixes
//                 cover all previous units of the current sentence and never
//                 reach back across a finished sentence
// Oracle failures are rethrown as PipelineError tagged with the utterance
// id and segment index.
TranslationRun translate_stream(const Utterance& utt, const DetectorConfig& detector,
                                const TranslationOracle& oracle, const PolicyConfig& policy);

} // namespace stpipe
