#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace stpipe {

// One read/write burst of a translation run. `source_len` (LX) counts the
// source tokens consumed since the previous burst, `written` holds the
// target tokens appended after `retracted_before` displayed tokens were
// taken back at the segment boundary.
struct TimelineSegment {
    int sentence_id = 0;
    int source_len = 0; // LX, >= 1 once the segment is closed
    int target_len = 0; // LY == written.size(), >= 0
    int retracted_before = 0;
    std::vector<std::string> written;
    std::int64_t read_end_ms = 0;
    std::int64_t write_end_ms = 0;
};

struct TranslationTimeline {
    std::string utt_id;
    std::vector<TimelineSegment> segments;
    std::vector<std::string> committed_target; // final displayed sequence

    std::vector<int> retracted_counts() const;
    int total_source_len() const;
    int total_target_len() const;

    // Checks segment bounds and the write/retract conservation law:
    // sum(LY) - sum(retracted) == committed length. Throws PipelineError.
    void validate() const;
};

// Displayed-target snapshots, one after each segment: snapshot i is
// snapshot i-1 minus `retracted_before` tokens plus `written`.
std::vector<std::vector<std::string>>
committed_prefix_trace(const TranslationTimeline& timeline);

} // namespace stpipe
