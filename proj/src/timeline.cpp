#include "stpipe/timeline.hpp"

#include "stpipe/errors.hpp"

namespace stpipe {

std::vector<int> TranslationTimeline::retracted_counts() const {
    std::vector<int> out;
    out.reserve(segments.size());
    for (const auto& s : segments)
        out.push_back(s.retracted_before);
    return out;
}

int TranslationTimeline::total_source_len() const {
    int n = 0;
    for (const auto& s : segments)
        n += s.source_len;
    return n;
}

int TranslationTimeline::total_target_len() const {
    int n = 0;
    for (const auto& s : segments)
        n += s.target_len;
    return n;
}

void TranslationTimeline::validate() const {
    long displayed = 0;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const auto& s = segments[i];
        if (s.source_len < 1)
            throw PipelineError("timeline " + utt_id + ": segment " + std::to_string(i + 1) +
                                " has LX < 1");
        if (s.target_len < 0 || s.target_len != static_cast<int>(s.written.size()))
            throw PipelineError("timeline " + utt_id + ": segment " + std::to_string(i + 1) +
                                " LY does not match written tokens");
        if (s.retracted_before < 0 || s.retracted_before > displayed)
            throw PipelineError("timeline " + utt_id + ": segment " + std::to_string(i + 1) +
                                " retracts more than is displayed");
        displayed += s.target_len - s.retracted_before;
    }
    if (displayed != static_cast<long>(committed_target.size()))
        throw PipelineError("timeline " + utt_id +
                            ": committed length does not match write/retract history");
}

std::vector<std::vector<std::string>>
committed_prefix_trace(const TranslationTimeline& timeline) {
    std::vector<std::vector<std::string>> snapshots;
    std::vector<std::string> displayed;
    for (const auto& s : timeline.segments) {
        displayed.resize(displayed.size() - static_cast<std::size_t>(s.retracted_before));
        displayed.insert(displayed.end(), s.written.begin(), s.written.end());
        snapshots.push_back(displayed);
    }
    return snapshots;
}

} // namespace stpipe
