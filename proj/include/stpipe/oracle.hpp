#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

namespace stpipe {

// Pluggable translation backend. Implementations must be deterministic,
// safe for concurrent read-only use, and must return a sequence that begins
// with `forced_prefix` exactly.
struct TranslationOracle {
    virtual ~TranslationOracle() = default;

    virtual std::vector<std::string> generate(std::span<const std::string> source,
                                              std::span<const std::string> forced_prefix) const = 0;
};

// Reference backend: token-for-token lexicon lookup with passthrough for
// unknown tokens. The continuation beyond a forced prefix of p tokens
// translates source positions p.. — length-preserving over the non-forced
// region, which makes hand traces and reduction checks exact.
class ToyLexiconOracle final : public TranslationOracle {
public:
    ToyLexiconOracle() = default;
    explicit ToyLexiconOracle(std::map<std::string, std::string> lexicon);

    // Two-column tab-separated file: `source TAB target`.
    static ToyLexiconOracle from_file(const std::string& path);

    std::vector<std::string> generate(std::span<const std::string> source,
                                      std::span<const std::string> forced_prefix) const override;

    const std::map<std::string, std::string>& lexicon() const { return lexicon_; }

private:
    std::map<std::string, std::string> lexicon_;
};

} // namespace stpipe
