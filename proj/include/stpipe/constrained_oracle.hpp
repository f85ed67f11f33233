#pragma once

#include <string>
#include <vector>

#include "stpipe/beam.hpp"
#include "stpipe/oracle.hpp"

namespace stpipe {

// Phrase file: one phrase per line, tokens space-separated.
std::vector<std::vector<std::string>> load_phrases(const std::string& path);

// Lexicon backend decoded through the constrained beam search instead of
// direct lookup. The per-step scorer keeps the plain lexicon output as the
// zero-cost path and charges one point per diverging position, so
// must-include phrases are spliced in at the cheapest spot and forbidden
// phrases are avoided by the nearest substitution. Infeasible constraints
// raise PipelineError rather than falling back to unconstrained output.
class ConstrainedLexiconOracle final : public TranslationOracle {
public:
    ConstrainedLexiconOracle(ToyLexiconOracle base,
                             std::vector<std::vector<std::string>> must_include,
                             std::vector<std::vector<std::string>> forbid, int beam_size = 16);

    std::vector<std::string> generate(std::span<const std::string> source,
                                      std::span<const std::string> forced_prefix) const override;

private:
    ToyLexiconOracle base_;
    std::vector<std::vector<std::string>> must_include_;
    std::vector<std::vector<std::string>> forbid_;
    int beam_size_;
};

} // namespace stpipe
