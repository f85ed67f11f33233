#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

namespace stpipe {

// Additively smoothed n-gram language model without backoff. The
// conditional of a token given its history h (truncated to the last
// order-1 kept tokens, shorter near the sequence start) is
//
//   p(x | h) = (count(h x) + alpha) / (count(h) + alpha * V)
//
// where V is the training vocabulary size and count() of the empty history
// is the total training token count. Immutable after training and safe to
// share read-only.
class NGramLM {
public:
    NGramLM() = default;
    NGramLM(int order, double alpha);

    // One sentence per entry. Throws DataError on an empty corpus.
    void train(const std::vector<std::vector<std::string>>& sentences);

    bool trained() const { return trained_; }
    int order() const { return order_; }
    double alpha() const { return alpha_; }
    std::size_t vocab_size() const { return vocab_size_; }

    double cond_prob(std::span<const std::string> context, const std::string& token) const;
    double cond_logprob(std::span<const std::string> context, const std::string& token) const;

    // Chain-rule log probability of the whole sequence; empty -> 0.
    double seq_logprob(std::span<const std::string> tokens) const;

    // Flat count file with a header carrying order, alpha, vocabulary size.
    void save(const std::string& path) const;
    static NGramLM load(const std::string& path);

private:
    long long count_of(std::span<const std::string> gram) const;

    int order_ = 3;
    double alpha_ = 0.1;
    bool trained_ = false;
    long long total_tokens_ = 0;
    std::size_t vocab_size_ = 0;
    std::map<std::vector<std::string>, long long> counts_; // all 1..order grams
};

} // namespace stpipe
