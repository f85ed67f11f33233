#include "stpipe/ngram_lm.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "stpipe/errors.hpp"
#include "stpipe/stream_io.hpp"
#include "stpipe/token.hpp"

namespace stpipe {

NGramLM::NGramLM(int order, double alpha) : order_(order), alpha_(alpha) {
    if (order < 1) throw ConfigError("n-gram order must be >= 1");
    if (!(alpha > 0.0)) throw ConfigError("additive smoothing constant must be > 0");
}

void NGramLM::train(const std::vector<std::vector<std::string>>& sentences) {
    std::set<std::string> vocab;
    counts_.clear();
    total_tokens_ = 0;
    for (const auto& sent : sentences) {
        for (std::size_t i = 0; i < sent.size(); ++i) {
            vocab.insert(sent[i]);
            ++total_tokens_;
            for (int k = 1; k <= order_ && static_cast<std::size_t>(k) + i <= sent.size(); ++k)
                counts_[std::vector<std::string>(sent.begin() + static_cast<long>(i),
                                                 sent.begin() + static_cast<long>(i) + k)] += 1;
        }
    }
    if (total_tokens_ == 0) throw DataError("cannot train language model on an empty corpus");
    vocab_size_ = vocab.size();
    trained_ = true;
}

long long NGramLM::count_of(std::span<const std::string> gram) const {
    auto it = counts_.find(std::vector<std::string>(gram.begin(), gram.end()));
    return it == counts_.end() ? 0 : it->second;
}

double NGramLM::cond_prob(std::span<const std::string> context, const std::string& token) const {
    if (!trained_) throw PipelineError("language model is not trained");
    const std::size_t hist = std::min<std::size_t>(context.size(),
                                                   static_cast<std::size_t>(order_) - 1);
    const auto h = context.subspan(context.size() - hist, hist);
    std::vector<std::string> gram(h.begin(), h.end());
    gram.push_back(token);
    const double num = static_cast<double>(count_of(gram)) + alpha_;
    const double den =
        static_cast<double>(h.empty() ? total_tokens_ : count_of(h)) +
        alpha_ * static_cast<double>(vocab_size_);
    return num / den;
}

double NGramLM::cond_logprob(std::span<const std::string> context,
                             const std::string& token) const {
    return std::log(cond_prob(context, token));
}

double NGramLM::seq_logprob(std::span<const std::string> tokens) const {
    if (!trained_) throw PipelineError("language model is not trained");
    double lp = 0.0;
    for (std::size_t i = 0; i < tokens.size(); ++i)
        lp += cond_logprob(tokens.subspan(0, i), tokens[i]);
    return lp;
}

void NGramLM::save(const std::string& path) const {
    if (!trained_) throw PipelineError("cannot save an untrained language model");
    char header[128];
    std::snprintf(header, sizeof(header), "ngram-lm v1\n%d %.17g %zu %lld\n", order_, alpha_,
                  vocab_size_, total_tokens_);
    std::string out = header;
    for (const auto& [gram, count] : counts_) {
        out += std::to_string(count);
        out += '\t';
        out += join(gram);
        out += '\n';
    }
    write_file(path, out);
}

NGramLM NGramLM::load(const std::string& path) {
    std::istringstream in(read_file(path));
    std::string header;
    std::getline(in, header);
    if (header != "ngram-lm v1")
        throw DataError(path + ": unsupported language-model file header '" + header + "'");
    NGramLM lm;
    if (!(in >> lm.order_ >> lm.alpha_ >> lm.vocab_size_ >> lm.total_tokens_))
        throw DataError(path + ": malformed language-model header line");
    if (lm.order_ < 1 || !(lm.alpha_ > 0.0) || lm.total_tokens_ < 1)
        throw DataError(path + ": implausible language-model parameters");
    std::string rest;
    std::getline(in, rest); // finish the header line
    std::size_t line_no = 2;
    while (std::getline(in, rest)) {
        ++line_no;
        if (rest.empty()) continue;
        std::size_t tab = rest.find('\t');
        if (tab == std::string::npos)
            throw DataError(path + " line " + std::to_string(line_no) + ": expected count TAB gram");
        long long count = 0;
        try {
            count = std::stoll(rest.substr(0, tab));
        } catch (...) {
            throw DataError(path + " line " + std::to_string(line_no) + ": bad count");
        }
        std::istringstream toks(rest.substr(tab + 1));
        std::vector<std::string> gram;
        std::string tok;
        while (toks >> tok) gram.push_back(tok);
        if (gram.empty() || gram.size() > static_cast<std::size_t>(lm.order_) || count < 1)
            throw DataError(path + " line " + std::to_string(line_no) + ": malformed gram record");
        lm.counts_[std::move(gram)] = count;
    }
    lm.trained_ = true;
    return lm;
}

} // namespace stpipe
