#include "stpipe/alignment.hpp"

#include <charconv>

#include "stpipe/errors.hpp"
#include "stpipe/token.hpp"

namespace stpipe {

bool is_pair_boundary(int i, int j, const AlignmentSet& a, int n, int m) {
    if (i < 1 || i > n || j < 1 || j > m)
        throw DataError("pair boundary (" + std::to_string(i) + "," + std::to_string(j) +
                        ") out of range for " + std::to_string(n) + "x" + std::to_string(m));
    if (!a.contains(i, j)) return false;
    for (const auto& [la, lb] : a.links) {
        if (la <= i && lb > j) return false;
        if (la > i && lb <= j) return false;
    }
    return true;
}

std::vector<SubSentencePair> extract_pairs(const AlignedPair& pair,
                                           bool (*comma_predicate)(std::string_view)) {
    const int n = static_cast<int>(pair.source.size());
    const int m = static_cast<int>(pair.target.size());
    std::vector<SubSentencePair> out;
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= m; ++j) {
            if (!is_pair_boundary(i, j, pair.alignment, n, m)) continue;
            SubSentencePair p;
            p.source_prefix.assign(pair.source.begin(), pair.source.begin() + i);
            p.target_prefix.assign(pair.target.begin(), pair.target.begin() + j);
            p.kind = comma_predicate(pair.source[static_cast<std::size_t>(i) - 1])
                         ? SplitKind::subsentence
                         : SplitKind::segment;
            p.i = i;
            p.j = j;
            out.push_back(std::move(p));
            break; // at most one j per i: any second link in row i would cross
        }
    }
    return out;
}

std::vector<SubSentencePair> extract_pairs(const AlignedPair& pair) {
    return extract_pairs(pair, &is_comma_token);
}

PartialRecord make_partial_corpus(const AlignedPair& pair, std::pair<int, int> split) {
    const auto [i, j] = split;
    if (!is_pair_boundary(i, j, pair.alignment, static_cast<int>(pair.source.size()),
                          static_cast<int>(pair.target.size())))
        throw DataError("split (" + std::to_string(i) + "," + std::to_string(j) +
                        ") is not a pair boundary");
    PartialRecord rec;
    rec.source_prefix.assign(pair.source.begin(), pair.source.begin() + i);
    rec.target_prefix.assign(pair.target.begin(), pair.target.begin() + j);
    return rec;
}

ContextRecord make_context_corpus(const AlignedPair& pair, std::pair<int, int> split) {
    const auto [i, j] = split;
    const int n = static_cast<int>(pair.source.size());
    const int m = static_cast<int>(pair.target.size());
    if (!is_pair_boundary(i, j, pair.alignment, n, m))
        throw DataError("split (" + std::to_string(i) + "," + std::to_string(j) +
                        ") is not a pair boundary");
    if (j >= m)
        throw DataError("split (" + std::to_string(i) + "," + std::to_string(j) +
                        ") leaves an empty training region");
    ContextRecord rec;
    rec.source = pair.source;
    rec.target = pair.target;
    rec.loss_mask.assign(static_cast<std::size_t>(m), 'T');
    for (int t = 0; t < j; ++t)
        rec.loss_mask[static_cast<std::size_t>(t)] = 'G';
    return rec;
}

AlignmentSet parse_pharaoh_line(std::string_view line, int n, int m) {
    AlignmentSet set;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
        if (pos >= line.size()) break;
        std::size_t end = pos;
        while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
        std::string_view item = line.substr(pos, end - pos);
        pos = end;

        std::size_t dash = item.find('-');
        if (dash == std::string_view::npos || dash == 0 || dash + 1 >= item.size())
            throw DataError("malformed alignment link '" + std::string(item) + "'");
        int a = 0, b = 0;
        auto ra = std::from_chars(item.data(), item.data() + dash, a);
        auto rb = std::from_chars(item.data() + dash + 1, item.data() + item.size(), b);
        if (ra.ec != std::errc{} || ra.ptr != item.data() + dash || rb.ec != std::errc{} ||
            rb.ptr != item.data() + item.size())
            throw DataError("malformed alignment link '" + std::string(item) + "'");
        // 0-based on disk, 1-based in memory.
        a += 1;
        b += 1;
        if (a < 1 || a > n || b < 1 || b > m)
            throw DataError("alignment link " + std::string(item) + " out of bounds for " +
                            std::to_string(n) + "x" + std::to_string(m));
        if (!set.links.insert({a, b}).second)
            throw DataError("duplicate alignment link '" + std::string(item) + "'");
    }
    return set;
}

} // namespace stpipe
