#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stpipe/token.hpp"

namespace stpipe {

// Scores the probability that the prefix ending at the anchor token is a
// complete information unit, given the dynamic context read beyond it.
// Implementations must be deterministic for fixed inputs and safe for
// concurrent read-only use.
struct BoundaryScorer {
    virtual ~BoundaryScorer() = default;

    // prefix = x_1..x_t with the anchor last, anchor_index = t-1 within the
    // current detection window, context = x_{t+1}..x_n (may be empty).
    virtual double score(std::span<const Token> prefix, std::size_t anchor_index,
                         std::span<const Token> context) const = 0;
};

// 1.0 when the anchor is punctuation, 0.0 otherwise. Splits exactly at
// comma and sentence-final tokens.
struct PunctuationBoundaryScorer final : BoundaryScorer {
    double score(std::span<const Token> prefix, std::size_t anchor_index,
                 std::span<const Token> context) const override;
};

// Reserved separator injected between prefix and context in the
// training-sample format.
inline constexpr std::string_view kSampleSeparator = "SEP";

struct TrainingSample {
    std::vector<std::string> prefix;  // tokens before SEP, anchor last
    std::vector<std::string> context; // tokens after SEP, at least one
    bool positive = false;

    bool operator==(const TrainingSample&) const = default;
};

// Training-sample generation for a sentence with known sub-sentence
// boundaries (a boundary b splits tokens[0..b) from tokens[b..n)). For each
// boundary, the part since the previous boundary is paired with every token
// of the sentence remainder as a positive sample; every proper prefix of
// that part together with its next token becomes a negative sample.
// Throws DataError when a boundary is out of range or unsorted.
std::vector<TrainingSample>
make_training_samples(const std::vector<std::string>& sentence,
                      const std::vector<std::size_t>& boundaries);

// Sample file: one sample per line, `label TAB tok tok ... SEP tok ...`
// with label 1 (positive) or 0 (negative).
std::string serialize_samples(const std::vector<TrainingSample>& samples);
std::vector<TrainingSample> parse_samples(std::string_view content);

// Deterministic count-based scorer: relative boundary frequencies looked up
// at the most specific seen level, (anchor, first context token) then
// anchor then corpus prior. Pure ratios keep the scorer invariant under
// corpus duplication.
class FrequencyBoundaryScorer final : public BoundaryScorer {
public:
    double score(std::span<const Token> prefix, std::size_t anchor_index,
                 std::span<const Token> context) const override;

    // Throws DataError on an empty corpus.
    static FrequencyBoundaryScorer train(const std::vector<TrainingSample>& corpus);

    // Versioned flat file of feature counts.
    void save(const std::string& path) const;
    static FrequencyBoundaryScorer load(const std::string& path);

    bool operator==(const FrequencyBoundaryScorer& other) const {
        return pair_counts_ == other.pair_counts_ && anchor_counts_ == other.anchor_counts_ &&
               total_ == other.total_;
    }

private:
    struct Counts {
        long long pos = 0;
        long long neg = 0;
        bool operator==(const Counts&) const = default;
    };

    std::map<std::pair<std::string, std::string>, Counts> pair_counts_;
    std::map<std::string, Counts> anchor_counts_;
    Counts total_;
};

} // namespace stpipe
