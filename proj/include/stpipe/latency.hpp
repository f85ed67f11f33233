#pragma once

#include <span>
#include <vector>

#include "stpipe/timeline.hpp"

namespace stpipe {

// (LX_i, LY_i): source tokens consumed and target tokens emitted by the
// i-th read/write burst.
struct SegmentLen {
    int source_len = 0;
    int target_len = 0;
};

std::vector<SegmentLen> segment_lengths(const TranslationTimeline& timeline);

// Latency from hearing the final target word to the speaker finishing,
// under the equilibrium model: playing LY_i words overlaps listening to the
// next LX_{i+1} source words, scaled by the reading-rate factor r.
//
//   S(0) = 0,  S(i) = max(S(i-1) + r * (LY_i - LX_{i+1}), 0)  for i = 1..n-1
//   EE = 1 / (S(n-1) + LY_n)
//
// The recursion index deliberately reads LX_{i+1}: for i = n-1 that is
// LX_n, so no padding exists anywhere — an off-by-one here silently
// corrupts the metric. Throws PipelineError on an empty list, LX < 1,
// LY < 0, or a zero denominator (LY_n = 0 with every S clamped).
double equilibrium_efficiency(std::span<const SegmentLen> segments, double r);

// S(n-1) + LY_n, computed directly; reads as "words of lag".
double inverse_ee(std::span<const SegmentLen> segments, double r);

// False exactly when the denominator would be zero (LY_n = 0 and every
// intermediate S clamped away).
bool inverse_ee_defined(std::span<const SegmentLen> segments, double r);

// Per-position lagging term g(t) - (t-1)/ratio of the average-lagging
// metric (t is 1-based).
double lag_term(int g_t, int t, double ratio);

// Mean lag over target positions up to the cut-off (the first t with
// g(t) = source_len). g gives, per target token, how many source tokens
// had been read when it was emitted; ratio defaults to target/source
// length. Throws PipelineError on empty or non-monotone g, or g
// exceeding source_len.
double average_lagging(std::span<const int> g, int source_len);
double average_lagging(std::span<const int> g, int source_len, double ratio);

// g reconstructed from a timeline: every token written in segment i was
// emitted after the first i read bursts.
std::vector<int> read_counts(const TranslationTimeline& timeline);

} // namespace stpipe
