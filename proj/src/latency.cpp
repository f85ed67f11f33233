#include "stpipe/latency.hpp"

#include <algorithm>

#include "stpipe/errors.hpp"

namespace stpipe {

std::vector<SegmentLen> segment_lengths(const TranslationTimeline& timeline) {
    std::vector<SegmentLen> out;
    out.reserve(timeline.segments.size());
    for (const auto& s : timeline.segments)
        out.push_back({s.source_len, s.target_len});
    return out;
}

namespace {

void check_segments(std::span<const SegmentLen> segments) {
    if (segments.empty()) throw PipelineError("equilibrium efficiency of an empty timeline");
    for (const auto& s : segments) {
        if (s.source_len < 1) throw PipelineError("segment with LX < 1");
        if (s.target_len < 0) throw PipelineError("segment with LY < 0");
    }
}

} // namespace

double inverse_ee(std::span<const SegmentLen> segments, double r) {
    check_segments(segments);
    if (!(r > 0.0)) throw PipelineError("reading-rate factor r must be > 0");
    const std::size_t n = segments.size();
    double s = 0.0; // S(0)
    for (std::size_t i = 1; i < n; ++i) {
        s += r * (segments[i - 1].target_len - segments[i].source_len); // LY_i - LX_{i+1}
        s = std::max(s, 0.0);
    }
    const double denom = s + segments[n - 1].target_len;
    if (denom <= 0.0)
        throw PipelineError("equilibrium efficiency undefined: final segment emits nothing "
                            "and no lag accumulated");
    return denom;
}

double equilibrium_efficiency(std::span<const SegmentLen> segments, double r) {
    return 1.0 / inverse_ee(segments, r);
}

bool inverse_ee_defined(std::span<const SegmentLen> segments, double r) {
    if (segments.empty()) return false;
    if (segments.back().target_len > 0) return true;
    check_segments(segments);
    double s = 0.0;
    for (std::size_t i = 1; i < segments.size(); ++i) {
        s += r * (segments[i - 1].target_len - segments[i].source_len);
        s = std::max(s, 0.0);
    }
    return s > 0.0;
}

double lag_term(int g_t, int t, double ratio) {
    return static_cast<double>(g_t) - static_cast<double>(t - 1) / ratio;
}

double average_lagging(std::span<const int> g, int source_len, double ratio) {
    if (g.empty()) throw PipelineError("average lagging of an empty emission trace");
    if (source_len < 1) throw PipelineError("average lagging needs source_len >= 1");
    if (!(ratio > 0.0)) throw PipelineError("average lagging needs ratio > 0");
    for (std::size_t t = 0; t < g.size(); ++t) {
        if (g[t] < 0 || g[t] > source_len)
            throw PipelineError("read count out of range at target position " +
                                std::to_string(t + 1));
        if (t > 0 && g[t] < g[t - 1])
            throw PipelineError("read counts must be non-decreasing");
    }
    std::size_t cutoff = g.size();
    for (std::size_t t = 0; t < g.size(); ++t) {
        if (g[t] == source_len) {
            cutoff = t + 1;
            break;
        }
    }
    double sum = 0.0;
    for (std::size_t t = 1; t <= cutoff; ++t)
        sum += lag_term(g[t - 1], static_cast<int>(t), ratio);
    return sum / static_cast<double>(cutoff);
}

double average_lagging(std::span<const int> g, int source_len) {
    const double ratio = static_cast<double>(g.size()) / static_cast<double>(source_len);
    return average_lagging(g, source_len, ratio);
}

std::vector<int> read_counts(const TranslationTimeline& timeline) {
    std::vector<int> g;
    int read = 0;
    for (const auto& s : timeline.segments) {
        read += s.source_len;
        for (int t = 0; t < s.target_len; ++t)
            g.push_back(read);
    }
    return g;
}

} // namespace stpipe
