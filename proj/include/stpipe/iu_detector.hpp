#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "stpipe/boundary_scorer.hpp"
#include "stpipe/token.hpp"

namespace stpipe {

struct DetectorConfig {
    double delta1 = 0.7; // complete threshold: emit when p >= delta1
    double delta2 = 0.3; // incomplete threshold: advance when p < delta2
    std::size_t max_dynamic_context = 5; // forced-decision bound
    std::shared_ptr<const BoundaryScorer> scorer;

    // Requires 0 < delta1 <= 1, 0 <= delta2 < 1, delta2 < delta1, scorer set.
    void validate() const;
};

// Incremental information-unit boundary detector.
//
// For the current read window x_1..x_n with anchor x_t the boundary score
// p decides:
//   p >= delta1  -> x_1..x_t is complete: emit it, restart on x_{t+1}..x_n
//   p <  delta2  -> incomplete: x_{t+1} becomes the anchor
//   otherwise    -> undetermined: wait for x_{n+1} as extra dynamic context
// The dynamic context is every token read beyond the anchor. When it has
// grown to max_dynamic_context and the score is still in the undetermined
// band, the decision is forced to the more probable side (emit iff
// p >= 0.5) so a stalled scorer cannot hold the stream back forever.
// Emission is irrevocable.
class IuDetector {
public:
    explicit IuDetector(DetectorConfig config);

    // Appends one token and runs the protocol to quiescence. May emit any
    // number of units, including zero.
    std::vector<InformationUnit> feed(const Token& token);

    // Stream ended: the residual buffer, if any, becomes a final unit.
    std::optional<InformationUnit> flush();

    const std::vector<Token>& buffer() const { return buffer_; }

private:
    InformationUnit take_prefix(std::size_t end_inclusive, bool force_final);

    DetectorConfig config_;
    std::vector<Token> buffer_;
    // anchor_ == buffer_.size() means the next arriving token becomes the
    // anchor (the last one was judged incomplete with nothing after it).
    std::size_t anchor_ = 0;
    int sentence_id_ = 0;
    int iu_index_ = 0;
};

// Batch convenience: feeds every token in order, then flushes.
std::vector<InformationUnit> detect_units(const DetectorConfig& config,
                                          std::span<const Token> tokens);

} // namespace stpipe
