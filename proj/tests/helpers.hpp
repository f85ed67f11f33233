#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "stpipe/boundary_scorer.hpp"
#include "stpipe/token.hpp"

namespace testutil {

inline std::vector<stpipe::Token> toks(const std::vector<std::string>& surfaces) {
    std::vector<stpipe::Token> out;
    for (std::size_t i = 0; i < surfaces.size(); ++i)
        out.push_back({surfaces[i], static_cast<std::int64_t>(i) * 100, i});
    return out;
}

// Scores keyed by (anchor surface, dynamic context size); anything not
// scripted gets `fallback`.
struct ScriptedScorer final : stpipe::BoundaryScorer {
    std::map<std::pair<std::string, std::size_t>, double> script;
    double fallback = 0.0;

    double score(std::span<const stpipe::Token> prefix, std::size_t,
                 std::span<const stpipe::Token> context) const override {
        auto it = script.find({prefix.back().surface, context.size()});
        return it == script.end() ? fallback : it->second;
    }
};

// Detector input with punctuation sprinkled in.
inline std::vector<stpipe::Token> random_stream(std::mt19937_64& rng, std::size_t max_len = 24) {
    static const std::vector<std::string> alphabet = {"a", "b", "c", "d", "，", "。"};
    std::uniform_int_distribution<std::size_t> len(1, max_len);
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    std::vector<std::string> surfaces;
    const std::size_t n = len(rng);
    for (std::size_t i = 0; i < n; ++i)
        surfaces.push_back(alphabet[pick(rng)]);
    return toks(surfaces);
}

inline std::string testdata(const std::string& name) {
    return std::string(STPIPE_TESTDATA) + "/" + name;
}

} // namespace testutil
