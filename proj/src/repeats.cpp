#include "stpipe/repeats.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string_view>

namespace stpipe {

namespace {

// Suffix array (doubling), Kasai LCP, and a flat sparse table for O(1)
// longest-common-extension queries over an integer sequence.
class SuffixLce {
public:
    explicit SuffixLce(const std::vector<int>& s) : n_(static_cast<int>(s.size())) {
        sa_.resize(n_);
        std::iota(sa_.begin(), sa_.end(), 0);
        rank_.assign(s.begin(), s.end());
        std::vector<int> tmp(n_);
        for (int len = 1;; len *= 2) {
            auto cmp = [&](int a, int b) {
                if (rank_[a] != rank_[b]) return rank_[a] < rank_[b];
                const int ra = a + len < n_ ? rank_[a + len] : -1;
                const int rb = b + len < n_ ? rank_[b + len] : -1;
                return ra < rb;
            };
            std::sort(sa_.begin(), sa_.end(), cmp);
            tmp[sa_[0]] = 0;
            for (int i = 1; i < n_; ++i)
                tmp[sa_[i]] = tmp[sa_[i - 1]] + (cmp(sa_[i - 1], sa_[i]) ? 1 : 0);
            rank_ = tmp;
            if (rank_[sa_[n_ - 1]] == n_ - 1) break;
        }
        // Kasai
        lcp_.assign(std::max(n_ - 1, 0), 0);
        int h = 0;
        for (int i = 0; i < n_; ++i) {
            if (h > 0) --h;
            if (rank_[i] == n_ - 1) {
                h = 0;
                continue;
            }
            const int j = sa_[rank_[i] + 1];
            while (i + h < n_ && j + h < n_ && s[i + h] == s[j + h]) ++h;
            lcp_[rank_[i]] = h;
        }
        build_sparse();
    }

    // Longest common prefix of the suffixes starting at i and j; positions
    // may equal n (empty suffix).
    int lce(int i, int j) const {
        if (i == j) return n_ - i;
        if (i >= n_ || j >= n_) return 0;
        int a = rank_[i], b = rank_[j];
        if (a > b) std::swap(a, b);
        return range_min(a, b - 1);
    }

private:
    void build_sparse() {
        const int m = static_cast<int>(lcp_.size());
        log_.assign(m + 1, 0);
        for (int i = 2; i <= m; ++i) log_[i] = log_[i / 2] + 1;
        if (m == 0) return;
        levels_ = log_[m] + 1;
        sparse_.assign(static_cast<std::size_t>(levels_) * m, 0);
        std::copy(lcp_.begin(), lcp_.end(), sparse_.begin());
        for (int k = 1; k < levels_; ++k)
            for (int i = 0; i + (1 << k) <= m; ++i)
                sparse_[static_cast<std::size_t>(k) * m + i] =
                    std::min(sparse_[static_cast<std::size_t>(k - 1) * m + i],
                             sparse_[static_cast<std::size_t>(k - 1) * m + i + (1 << (k - 1))]);
    }

    int range_min(int lo, int hi) const {
        const int m = static_cast<int>(lcp_.size());
        const int k = log_[hi - lo + 1];
        return std::min(sparse_[static_cast<std::size_t>(k) * m + lo],
                        sparse_[static_cast<std::size_t>(k) * m + hi - (1 << k) + 1]);
    }

    int n_;
    int levels_ = 0;
    std::vector<int> sa_, rank_, lcp_, log_, sparse_;
};

// Start positions of period-`block` tandems form intervals around anchors
// at multiples of the block length.
struct StartInterval {
    int lo;
    int hi;
    int block;
};

} // namespace

namespace {

// Below this size a direct scan beats building two suffix arrays.
constexpr std::size_t kSuffixSearchCutoff = 64;

std::optional<TandemCandidate>
scan_collapse_candidate(std::span<const std::string> tokens,
                        const std::set<std::vector<std::string>>& whitelist) {
    const std::size_t n = tokens.size();
    std::vector<std::string> span;
    for (std::size_t s = 0; s + 2 <= n; ++s) {
        for (std::size_t block = 1; s + 2 * block <= n; ++block) {
            if (!std::equal(tokens.begin() + static_cast<long>(s),
                            tokens.begin() + static_cast<long>(s + block),
                            tokens.begin() + static_cast<long>(s + block)))
                continue;
            if (!whitelist.empty()) {
                span.assign(tokens.begin() + static_cast<long>(s),
                            tokens.begin() + static_cast<long>(s + 2 * block));
                if (whitelist.count(span)) continue;
            }
            return TandemCandidate{s, block};
        }
    }
    return std::nullopt;
}

} // namespace

std::optional<TandemCandidate>
find_collapse_candidate(std::span<const std::string> tokens,
                        const std::set<std::vector<std::string>>& whitelist) {
    const std::size_t n = tokens.size();
    if (n < 2) return std::nullopt;
    if (n <= kSuffixSearchCutoff) return scan_collapse_candidate(tokens, whitelist);

    // Rank tokens into a compact integer alphabet.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return tokens[a] < tokens[b]; });
    std::vector<int> ids(n);
    int next_id = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (k > 0 && tokens[order[k]] != tokens[order[k - 1]]) ++next_id;
        ids[static_cast<std::size_t>(order[k])] = next_id;
    }

    std::vector<int> rev(ids.rbegin(), ids.rend());
    const SuffixLce fwd(ids);
    const SuffixLce bwd(rev);
    const int ni = static_cast<int>(n);

    // Common suffix length of the prefixes ending (exclusive) at a and b.
    auto common_suffix = [&](int a, int b) { return bwd.lce(ni - a, ni - b); };

    std::vector<StartInterval> intervals;
    for (int block = 1; 2 * block <= ni; ++block) {
        for (int j = block; j + block <= ni; j += block) {
            const int f = fwd.lce(j, j + block);
            const int b = common_suffix(j, j + block);
            if (f + b < block) continue;
            intervals.push_back({std::max(0, j - b), j + f - block, block});
        }
    }
    if (intervals.empty()) return std::nullopt;

    if (whitelist.empty()) {
        const StartInterval* best = nullptr;
        for (const auto& iv : intervals)
            if (!best || iv.lo < best->lo || (iv.lo == best->lo && iv.block < best->block))
                best = &iv;
        return TandemCandidate{static_cast<std::size_t>(best->lo),
                               static_cast<std::size_t>(best->block)};
    }

    // Walk candidates in (start, block) order without materializing them;
    // whitelisted spans are stepped over.
    auto later = [](const StartInterval& a, const StartInterval& b) {
        if (a.lo != b.lo) return a.lo > b.lo;
        return a.block > b.block;
    };
    std::priority_queue<StartInterval, std::vector<StartInterval>, decltype(later)> queue(later);
    for (const auto& iv : intervals)
        queue.push(iv);

    std::vector<std::string> span;
    int last_start = -1, last_block = -1;
    while (!queue.empty()) {
        StartInterval iv = queue.top();
        queue.pop();
        if (iv.lo != last_start || iv.block != last_block) { // skip duplicates
            last_start = iv.lo;
            last_block = iv.block;
            span.assign(tokens.begin() + iv.lo, tokens.begin() + iv.lo + 2 * iv.block);
            if (!whitelist.count(span))
                return TandemCandidate{static_cast<std::size_t>(iv.lo),
                                       static_cast<std::size_t>(iv.block)};
        }
        if (iv.lo < iv.hi) {
            ++iv.lo;
            queue.push(iv);
        }
    }
    return std::nullopt;
}

} // namespace stpipe
