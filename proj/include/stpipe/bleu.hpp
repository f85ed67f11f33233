#pragma once

#include <array>
#include <string>
#include <vector>

namespace stpipe {

struct BleuResult {
    double score = 0.0; // 0..100
    double brevity_penalty = 1.0;
    std::array<double, 4> precisions{}; // clipped n-gram precisions p_1..p_4
    long long hyp_len = 0;
    long long ref_len = 0;
};

// Corpus-level 4-gram overlap with brevity penalty:
//   BLEU = 100 * BP * exp(sum_{n=1..4} (1/4) * ln p_n)
//   BP   = min(1, exp(1 - ref_len / hyp_len))
// p_n are corpus-level clipped precisions. Orders with no n-grams at all
// (every hypothesis shorter than n) contribute ln 1; an order with
// n-grams but zero matches makes the score 0. Throws DataError when line
// counts differ.
BleuResult corpus_bleu(const std::vector<std::vector<std::string>>& hypotheses,
                       const std::vector<std::vector<std::string>>& references);

} // namespace stpipe
