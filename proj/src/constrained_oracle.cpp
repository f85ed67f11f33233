#include "stpipe/constrained_oracle.hpp"

#include <map>
#include <sstream>

#include "stpipe/errors.hpp"
#include "stpipe/stream_io.hpp"

namespace stpipe {

std::vector<std::vector<std::string>> load_phrases(const std::string& path) {
    std::istringstream in(read_file(path));
    std::vector<std::vector<std::string>> phrases;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream toks(line);
        std::vector<std::string> phrase;
        std::string tok;
        while (toks >> tok) phrase.push_back(tok);
        if (!phrase.empty()) phrases.push_back(std::move(phrase));
    }
    return phrases;
}

namespace {

// Reference-path scorer: 0 for following `reference`, -1 per divergence,
// a hard wall (-1e9) off the forced prefix; eos pays for every reference
// token it cuts off.
class ReferencePathScorer final : public StepScorer {
public:
    ReferencePathScorer(std::vector<int> reference, std::size_t forced_len, int vocab)
        : reference_(std::move(reference)), forced_len_(forced_len), vocab_(vocab) {}

    int vocab_size() const override { return vocab_; }
    int eos_id() const override { return vocab_ - 1; }

    std::vector<double> next_scores(std::span<const int> prefix) const override {
        const std::size_t pos = prefix.size();
        std::vector<double> row(static_cast<std::size_t>(vocab_), -1.0);
        const int eos = vocab_ - 1;
        if (pos < forced_len_) {
            for (auto& v : row) v = -1e9;
            row[static_cast<std::size_t>(reference_[pos])] = 0.0;
        } else if (pos < reference_.size()) {
            row[static_cast<std::size_t>(reference_[pos])] = 0.0;
            row[static_cast<std::size_t>(eos)] =
                -static_cast<double>(reference_.size() - pos);
        } else {
            row[static_cast<std::size_t>(eos)] = 0.0;
        }
        return row;
    }

private:
    std::vector<int> reference_;
    std::size_t forced_len_;
    int vocab_;
};

} // namespace

ConstrainedLexiconOracle::ConstrainedLexiconOracle(ToyLexiconOracle base,
                                                   std::vector<std::vector<std::string>> must_include,
                                                   std::vector<std::vector<std::string>> forbid,
                                                   int beam_size)
    : base_(std::move(base)), must_include_(std::move(must_include)),
      forbid_(std::move(forbid)), beam_size_(beam_size) {
    if (beam_size_ < 1) throw ConfigError("beam size must be >= 1");
}

std::vector<std::string> ConstrainedLexiconOracle::generate(
    std::span<const std::string> source, std::span<const std::string> forced_prefix) const {
    const std::vector<std::string> reference = base_.generate(source, forced_prefix);

    // Token ids in first-appearance order; the end-of-sequence sentinel is
    // always the last id.
    std::map<std::string, int> ids;
    std::vector<std::string> id_to_token;
    auto intern = [&](const std::string& tok) {
        auto [it, inserted] = ids.try_emplace(tok, static_cast<int>(id_to_token.size()));
        if (inserted) id_to_token.push_back(tok);
        return it->second;
    };
    std::vector<int> ref_ids;
    for (const auto& tok : reference) ref_ids.push_back(intern(tok));
    ConstraintSet constraints;
    for (const auto& phrase : must_include_) {
        std::vector<int> p;
        for (const auto& tok : phrase) p.push_back(intern(tok));
        constraints.positive.push_back(std::move(p));
    }
    for (const auto& phrase : forbid_) {
        std::vector<int> p;
        for (const auto& tok : phrase) p.push_back(intern(tok));
        constraints.negative.push_back(std::move(p));
    }
    const int vocab = static_cast<int>(id_to_token.size()) + 1; // + eos

    int extra = 0;
    for (const auto& phrase : must_include_) extra += static_cast<int>(phrase.size());
    const int max_len = static_cast<int>(reference.size()) + extra + 2;

    const ReferencePathScorer scorer(std::move(ref_ids), forced_prefix.size(), vocab);
    const auto best = beam_search(scorer, constraints, beam_size_, max_len);
    if (!best)
        throw PipelineError("constraints are infeasible for this segment (forced prefix or "
                            "length bound rules out every must-include/forbid-clean sequence)");
    std::vector<std::string> out;
    out.reserve(best->tokens.size());
    for (int id : best->tokens) out.push_back(id_to_token[static_cast<std::size_t>(id)]);
    return out;
}

} // namespace stpipe
