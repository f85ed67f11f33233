#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace stpipe {

// An adjacent repeated block: tokens[start..start+block_len) ==
// tokens[start+block_len..start+2*block_len).
struct TandemCandidate {
    std::size_t start = 0;
    std::size_t block_len = 0;
};

// The canonical collapse candidate: leftmost start, shortest block at that
// start, skipping candidates whose full 2*block_len span matches a
// whitelist entry. Detection is suffix-array based (LCP range minima give
// constant-time longest-common-extension queries; anchors at multiples of
// each block length cover every repeat).
std::optional<TandemCandidate>
find_collapse_candidate(std::span<const std::string> tokens,
                        const std::set<std::vector<std::string>>& whitelist);

} // namespace stpipe
