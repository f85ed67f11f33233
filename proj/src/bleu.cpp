#include "stpipe/bleu.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "stpipe/errors.hpp"

namespace stpipe {

namespace {

using GramCounts = std::map<std::vector<std::string>, long long>;

GramCounts ngram_counts(const std::vector<std::string>& tokens, std::size_t n) {
    GramCounts counts;
    if (tokens.size() < n) return counts;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i)
        counts[std::vector<std::string>(tokens.begin() + static_cast<long>(i),
                                        tokens.begin() + static_cast<long>(i + n))] += 1;
    return counts;
}

} // namespace

BleuResult corpus_bleu(const std::vector<std::vector<std::string>>& hypotheses,
                       const std::vector<std::vector<std::string>>& references) {
    if (hypotheses.size() != references.size())
        throw DataError("hypothesis/reference line counts differ (" +
                        std::to_string(hypotheses.size()) + " vs " +
                        std::to_string(references.size()) + ")");

    BleuResult result;
    std::array<long long, 4> matches{};
    std::array<long long, 4> totals{};
    for (std::size_t line = 0; line < hypotheses.size(); ++line) {
        const auto& hyp = hypotheses[line];
        const auto& ref = references[line];
        result.hyp_len += static_cast<long long>(hyp.size());
        result.ref_len += static_cast<long long>(ref.size());
        for (std::size_t n = 1; n <= 4; ++n) {
            const auto hyp_grams = ngram_counts(hyp, n);
            if (hyp_grams.empty()) continue;
            const auto ref_grams = ngram_counts(ref, n);
            for (const auto& [gram, count] : hyp_grams) {
                totals[n - 1] += count;
                auto it = ref_grams.find(gram);
                if (it != ref_grams.end()) matches[n - 1] += std::min(count, it->second);
            }
        }
    }

    if (result.hyp_len == 0) return result;
    result.brevity_penalty =
        std::min(1.0, std::exp(1.0 - static_cast<double>(result.ref_len) /
                                         static_cast<double>(result.hyp_len)));

    double log_sum = 0.0;
    for (std::size_t n = 0; n < 4; ++n) {
        if (totals[n] == 0) {
            result.precisions[n] = 0.0;
            continue; // no n-grams of this order anywhere: no contribution
        }
        result.precisions[n] =
            static_cast<double>(matches[n]) / static_cast<double>(totals[n]);
        if (matches[n] == 0) return result; // score stays 0
        log_sum += 0.25 * std::log(result.precisions[n]);
    }
    result.score = 100.0 * result.brevity_penalty * std::exp(log_sum);
    return result;
}

} // namespace stpipe
