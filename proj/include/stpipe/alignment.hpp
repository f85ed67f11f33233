#pragma once

#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace stpipe {

// Word-alignment links between one source and one target sentence,
// 1-based on both sides (Pharaoh files are 0-based on disk and shifted on
// load).
struct AlignmentSet {
    std::set<std::pair<int, int>> links;

    bool contains(int a, int b) const { return links.count({a, b}) != 0; }
};

struct AlignedPair {
    std::vector<std::string> source;
    std::vector<std::string> target;
    AlignmentSet alignment;
};

enum class SplitKind { subsentence, segment };

struct SubSentencePair {
    std::vector<std::string> source_prefix; // x_1..x_i
    std::vector<std::string> target_prefix; // y_1..y_j
    SplitKind kind = SplitKind::segment;
    int i = 0;
    int j = 0;
};

// True iff <x_i, y_j> is a consistent prefix split of the alignment:
// the link (i, j) exists, no link leaves the source prefix into the target
// remainder (a <= i, b > j), and no link enters the target prefix from the
// source remainder (a > i, b <= j). Throws DataError when (i, j) is out of
// range for an n x m sentence pair.
bool is_pair_boundary(int i, int j, const AlignmentSet& a, int n, int m);

// All boundaries of the pair ordered by i, labelled sub-sentence when the
// comma predicate accepts x_i, segment otherwise.
std::vector<SubSentencePair> extract_pairs(const AlignedPair& pair,
                                           bool (*comma_predicate)(std::string_view));
std::vector<SubSentencePair> extract_pairs(const AlignedPair& pair);

struct PartialRecord {
    std::vector<std::string> source_prefix;
    std::vector<std::string> target_prefix;
};

// Truncates the pair at a boundary; the masked-out remainder simply does
// not appear in the record. Throws DataError when the split point is not a
// boundary.
PartialRecord make_partial_corpus(const AlignedPair& pair, std::pair<int, int> split);

struct ContextRecord {
    std::vector<std::string> source; // full sentence
    std::vector<std::string> target; // full sentence
    std::string loss_mask;           // per target token: 'G' given, 'T' train
};

// Keeps the full pair but marks target positions 1..j as given prefix,
// excluded from training loss. A split at (n, m) leaves nothing to train
// and is rejected.
ContextRecord make_context_corpus(const AlignedPair& pair, std::pair<int, int> split);

// One Pharaoh line: space-separated `a-b` links, 0-based. Validates bounds
// against the sentence lengths and rejects duplicates.
AlignmentSet parse_pharaoh_line(std::string_view line, int n, int m);

} // namespace stpipe
