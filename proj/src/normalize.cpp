#include "stpipe/normalize.hpp"

#include <sstream>

#include "stpipe/errors.hpp"
#include "stpipe/repeats.hpp"
#include "stpipe/stream_io.hpp"

namespace stpipe {

void NormalizerConfig::validate() const {
    if (!(xi >= 0.0 && xi < 1.0)) throw ConfigError("abnormality threshold xi must be in [0,1)");
    for (const auto& entry : whitelist)
        if (entry.empty()) throw ConfigError("whitelist entries must be non-empty");
}

std::set<std::string> load_token_set(const std::string& path) {
    std::istringstream in(read_file(path));
    std::set<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        out.insert(line);
    }
    return out;
}

std::set<std::vector<std::string>> load_whitelist(const std::string& path) {
    std::istringstream in(read_file(path));
    std::set<std::vector<std::string>> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream toks(line);
        std::vector<std::string> entry;
        std::string tok;
        while (toks >> tok) entry.push_back(tok);
        if (!entry.empty()) out.insert(std::move(entry));
    }
    return out;
}

std::vector<Token> remove_fillers(const std::vector<Token>& tokens,
                                  const NormalizerConfig& config) {
    std::vector<Token> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens)
        if (!config.filler_lexicon.count(t.surface)) out.push_back(t);
    return out;
}

std::vector<Token> remove_repetitions(const std::vector<Token>& tokens,
                                      const NormalizerConfig& config) {
    std::vector<Token> out = tokens;
    std::vector<std::string> surf = surfaces(out);
    while (auto cand = find_collapse_candidate(surf, config.whitelist)) {
        const auto first = static_cast<long>(cand->start + cand->block_len);
        const auto last = static_cast<long>(cand->start + 2 * cand->block_len);
        out.erase(out.begin() + first, out.begin() + last);
        surf.erase(surf.begin() + first, surf.begin() + last);
    }
    return out;
}

AbnormalFilterResult filter_abnormal(const std::vector<Token>& tokens, const NGramLM& lm,
                                     double xi) {
    AbnormalFilterResult result;
    std::vector<std::string> kept_surfaces;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const double p = lm.cond_prob(kept_surfaces, tokens[i].surface);
        if (p < xi) {
            result.dropped_positions.push_back(i);
        } else {
            result.kept.push_back(tokens[i]);
            kept_surfaces.push_back(tokens[i].surface);
        }
    }
    return result;
}

std::vector<Token> normalize_utterance(const std::vector<Token>& tokens,
                                       const NormalizerConfig& config, const NGramLM* lm,
                                       NormalizeStats* stats) {
    config.validate();
    std::vector<Token> out = remove_fillers(tokens, config);
    const std::size_t after_fillers = out.size();
    out = remove_repetitions(out, config);
    const std::size_t after_repeats = out.size();
    if (lm) {
        auto filtered = filter_abnormal(out, *lm, config.xi);
        out = std::move(filtered.kept);
    }
    if (stats) {
        stats->fillers_removed = tokens.size() - after_fillers;
        stats->repeat_tokens_removed = after_fillers - after_repeats;
        stats->abnormal_removed = after_repeats - out.size();
    }
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i].index = i;
    return out;
}

} // namespace stpipe
