#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace stpipe {

struct PrepareStats {
    std::size_t sentence_pairs = 0;
    std::size_t boundaries = 0;
    std::size_t subsentence_pairs = 0;
    std::size_t segment_pairs = 0;
    std::size_t records = 0;
    std::size_t skipped = 0; // degenerate context splits (nothing to train)

    std::string summary() const;
};

std::vector<std::vector<std::string>> tokenize_lines(std::string_view text);

// Modes of corpus preparation over line-aligned bitext plus Pharaoh
// alignments. Output records are tab-separated; tokens space-joined.
//   partial: `source_prefix TAB target_prefix` per boundary
//   context: `source TAB target TAB mask` per boundary with a non-empty
//            training region (mask: G given / T train per target token)
// Line-count mismatches and malformed alignments raise DataError. Sentence
// pairs are independent, so extraction runs in parallel when requested;
// output order always follows input order.
std::string build_partial_corpus(const std::vector<std::vector<std::string>>& sources,
                                 const std::vector<std::vector<std::string>>& targets,
                                 const std::vector<std::string>& alignment_lines, bool parallel,
                                 PrepareStats* stats);
std::string build_context_corpus(const std::vector<std::vector<std::string>>& sources,
                                 const std::vector<std::vector<std::string>>& targets,
                                 const std::vector<std::string>& alignment_lines, bool parallel,
                                 PrepareStats* stats);

// Boundary-detector samples from punctuated monolingual sentences, one per
// line: punctuation tokens are stripped and their positions become the
// sub-sentence boundaries fed to the sample generator.
std::string build_detector_samples(const std::vector<std::vector<std::string>>& sources,
                                   PrepareStats* stats);

} // namespace stpipe
