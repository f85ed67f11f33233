#include "stpipe/boundary_scorer.hpp"

#include <sstream>

#include "stpipe/errors.hpp"
#include "stpipe/stream_io.hpp"

namespace stpipe {

double PunctuationBoundaryScorer::score(std::span<const Token> prefix, std::size_t,
                                        std::span<const Token>) const {
    return is_punctuation_token(prefix.back().surface) ? 1.0 : 0.0;
}

std::vector<TrainingSample>
make_training_samples(const std::vector<std::string>& sentence,
                      const std::vector<std::size_t>& boundaries) {
    const std::size_t n = sentence.size();
    std::size_t prev = 0;
    for (std::size_t b : boundaries) {
        if (b <= prev || b >= n)
            throw DataError("boundary " + std::to_string(b) + " out of range for sentence of " +
                            std::to_string(n) + " tokens");
        prev = b;
    }

    std::vector<TrainingSample> samples;
    std::size_t part_begin = 0;
    for (std::size_t b : boundaries) {
        std::vector<std::string> part(sentence.begin() + part_begin, sentence.begin() + b);
        // Proper prefixes of the part are incomplete: pair each with its
        // next token as a negative sample.
        for (std::size_t len = 1; len + part_begin < b; ++len) {
            TrainingSample s;
            s.prefix.assign(part.begin(), part.begin() + len);
            s.context = {sentence[part_begin + len]};
            s.positive = false;
            samples.push_back(std::move(s));
        }
        // The full part is complete no matter which later token follows.
        for (std::size_t w = b; w < n; ++w) {
            TrainingSample s;
            s.prefix = part;
            s.context = {sentence[w]};
            s.positive = true;
            samples.push_back(std::move(s));
        }
        part_begin = b;
    }
    if (boundaries.empty()) {
        for (std::size_t len = 1; len < n; ++len) {
            TrainingSample s;
            s.prefix.assign(sentence.begin(), sentence.begin() + len);
            s.context = {sentence[len]};
            s.positive = false;
            samples.push_back(std::move(s));
        }
    }
    return samples;
}

std::string serialize_samples(const std::vector<TrainingSample>& samples) {
    std::string out;
    for (const auto& s : samples) {
        out += s.positive ? '1' : '0';
        out += '\t';
        out += join(s.prefix);
        out += ' ';
        out += kSampleSeparator;
        out += ' ';
        out += join(s.context);
        out += '\n';
    }
    return out;
}

std::vector<TrainingSample> parse_samples(std::string_view content) {
    std::vector<TrainingSample> samples;
    std::size_t pos = 0, line_no = 0;
    while (pos < content.size()) {
        std::size_t eol = content.find('\n', pos);
        if (eol == std::string_view::npos) eol = content.size();
        std::string line(content.substr(pos, eol - pos));
        pos = eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        std::size_t tab = line.find('\t');
        if (tab == std::string::npos || (line[0] != '0' && line[0] != '1') || tab != 1)
            throw DataError("samples line " + std::to_string(line_no) +
                            ": expected `label TAB tokens`");
        TrainingSample s;
        s.positive = line[0] == '1';
        std::istringstream toks(line.substr(tab + 1));
        std::string tok;
        bool after_sep = false;
        while (toks >> tok) {
            if (tok == kSampleSeparator) {
                if (after_sep)
                    throw DataError("samples line " + std::to_string(line_no) + ": duplicate SEP");
                after_sep = true;
            } else if (after_sep) {
                s.context.push_back(tok);
            } else {
                s.prefix.push_back(tok);
            }
        }
        if (!after_sep || s.prefix.empty() || s.context.empty())
            throw DataError("samples line " + std::to_string(line_no) +
                            ": need non-empty prefix, SEP, non-empty context");
        samples.push_back(std::move(s));
    }
    return samples;
}

namespace {

double ratio_or(long long pos, long long neg, double fallback) {
    const long long total = pos + neg;
    if (total == 0) return fallback;
    return static_cast<double>(pos) / static_cast<double>(total);
}

} // namespace

double FrequencyBoundaryScorer::score(std::span<const Token> prefix, std::size_t,
                                      std::span<const Token> context) const {
    const std::string& anchor = prefix.back().surface;
    const double prior = ratio_or(total_.pos, total_.neg, 0.5);
    double p = prior;
    if (auto it = anchor_counts_.find(anchor); it != anchor_counts_.end())
        p = ratio_or(it->second.pos, it->second.neg, p);
    if (!context.empty()) {
        auto it = pair_counts_.find({anchor, context.front().surface});
        if (it != pair_counts_.end()) p = ratio_or(it->second.pos, it->second.neg, p);
    }
    return p;
}

FrequencyBoundaryScorer FrequencyBoundaryScorer::train(const std::vector<TrainingSample>& corpus) {
    if (corpus.empty()) throw DataError("cannot train boundary scorer on an empty corpus");
    FrequencyBoundaryScorer scorer;
    for (const auto& s : corpus) {
        const std::string& anchor = s.prefix.back();
        auto bump = [&](Counts& c) { (s.positive ? c.pos : c.neg) += 1; };
        bump(scorer.total_);
        bump(scorer.anchor_counts_[anchor]);
        bump(scorer.pair_counts_[{anchor, s.context.front()}]);
    }
    return scorer;
}

void FrequencyBoundaryScorer::save(const std::string& path) const {
    std::string out = "boundary-scorer v1\n";
    out += "total " + std::to_string(total_.pos) + " " + std::to_string(total_.neg) + "\n";
    for (const auto& [anchor, c] : anchor_counts_)
        out += "anchor " + anchor + " " + std::to_string(c.pos) + " " + std::to_string(c.neg) + "\n";
    for (const auto& [key, c] : pair_counts_)
        out += "pair " + key.first + " " + key.second + " " + std::to_string(c.pos) + " " +
               std::to_string(c.neg) + "\n";
    write_file(path, out);
}

FrequencyBoundaryScorer FrequencyBoundaryScorer::load(const std::string& path) {
    std::istringstream in(read_file(path));
    std::string header;
    std::getline(in, header);
    if (header != "boundary-scorer v1")
        throw DataError(path + ": unsupported boundary-scorer file header '" + header + "'");
    FrequencyBoundaryScorer scorer;
    std::string kind;
    while (in >> kind) {
        if (kind == "total") {
            if (!(in >> scorer.total_.pos >> scorer.total_.neg))
                throw DataError(path + ": malformed total counts");
        } else if (kind == "anchor") {
            std::string anchor;
            Counts c;
            if (!(in >> anchor >> c.pos >> c.neg))
                throw DataError(path + ": malformed anchor counts");
            scorer.anchor_counts_[anchor] = c;
        } else if (kind == "pair") {
            std::string anchor, ctx;
            Counts c;
            if (!(in >> anchor >> ctx >> c.pos >> c.neg))
                throw DataError(path + ": malformed pair counts");
            scorer.pair_counts_[{anchor, ctx}] = c;
        } else {
            throw DataError(path + ": unknown record kind '" + kind + "'");
        }
    }
    if (scorer.total_.pos + scorer.total_.neg == 0)
        throw DataError(path + ": scorer file has no counts");
    return scorer;
}

} // namespace stpipe
