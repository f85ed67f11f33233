#include "stpipe/corpus_prep.hpp"

#include <sstream>

#include "stpipe/alignment.hpp"
#include "stpipe/boundary_scorer.hpp"
#include "stpipe/errors.hpp"
#include "stpipe/parallel.hpp"
#include "stpipe/token.hpp"

namespace stpipe {

std::string PrepareStats::summary() const {
    std::string out;
    out += "pairs=" + std::to_string(sentence_pairs);
    out += " boundaries=" + std::to_string(boundaries);
    out += " subsentence=" + std::to_string(subsentence_pairs);
    out += " segment=" + std::to_string(segment_pairs);
    out += " records=" + std::to_string(records);
    out += " skipped=" + std::to_string(skipped);
    return out;
}

std::vector<std::vector<std::string>> tokenize_lines(std::string_view text) {
    std::vector<std::vector<std::string>> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string line(text.substr(pos, eol - pos));
        pos = eol + 1;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream toks(line);
        std::vector<std::string> tokens;
        std::string tok;
        while (toks >> tok) tokens.push_back(tok);
        lines.push_back(std::move(tokens));
    }
    // A trailing newline does not add an empty sentence.
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

namespace {

struct LineResult {
    std::string records;
    PrepareStats stats;
};

template <typename PerPair>
std::string run_over_pairs(const std::vector<std::vector<std::string>>& sources,
                           const std::vector<std::vector<std::string>>& targets,
                           const std::vector<std::string>& alignment_lines, bool parallel,
                           PrepareStats* stats, PerPair&& per_pair) {
    if (sources.size() != targets.size() || sources.size() != alignment_lines.size())
        throw DataError("bitext/alignment line counts differ (" + std::to_string(sources.size()) +
                        "/" + std::to_string(targets.size()) + "/" +
                        std::to_string(alignment_lines.size()) + ")");
    std::vector<LineResult> results(sources.size());
    parallel_for(sources.size(), parallel, [&](std::size_t i) {
        AlignedPair pair;
        pair.source = sources[i];
        pair.target = targets[i];
        try {
            pair.alignment = parse_pharaoh_line(alignment_lines[i], static_cast<int>(pair.source.size()),
                                                static_cast<int>(pair.target.size()));
            per_pair(pair, results[i]);
        } catch (const std::exception& e) {
            throw DataError("sentence pair " + std::to_string(i + 1) + ": " + e.what());
        }
    });
    std::string out;
    PrepareStats total;
    for (const auto& r : results) {
        out += r.records;
        total.sentence_pairs += 1;
        total.boundaries += r.stats.boundaries;
        total.subsentence_pairs += r.stats.subsentence_pairs;
        total.segment_pairs += r.stats.segment_pairs;
        total.records += r.stats.records;
        total.skipped += r.stats.skipped;
    }
    if (stats) *stats = total;
    return out;
}

} // namespace

std::string build_partial_corpus(const std::vector<std::vector<std::string>>& sources,
                                 const std::vector<std::vector<std::string>>& targets,
                                 const std::vector<std::string>& alignment_lines, bool parallel,
                                 PrepareStats* stats) {
    return run_over_pairs(sources, targets, alignment_lines, parallel, stats,
                          [](const AlignedPair& pair, LineResult& r) {
        for (const auto& boundary : extract_pairs(pair)) {
            r.stats.boundaries += 1;
            (boundary.kind == SplitKind::subsentence ? r.stats.subsentence_pairs
                                                     : r.stats.segment_pairs) += 1;
            const auto rec = make_partial_corpus(pair, {boundary.i, boundary.j});
            r.records += join(rec.source_prefix);
            r.records += '\t';
            r.records += join(rec.target_prefix);
            r.records += '\n';
            r.stats.records += 1;
        }
    });
}

std::string build_context_corpus(const std::vector<std::vector<std::string>>& sources,
                                 const std::vector<std::vector<std::string>>& targets,
                                 const std::vector<std::string>& alignment_lines, bool parallel,
                                 PrepareStats* stats) {
    return run_over_pairs(sources, targets, alignment_lines, parallel, stats,
                          [](const AlignedPair& pair, LineResult& r) {
        for (const auto& boundary : extract_pairs(pair)) {
            r.stats.boundaries += 1;
            (boundary.kind == SplitKind::subsentence ? r.stats.subsentence_pairs
                                                     : r.stats.segment_pairs) += 1;
            if (boundary.j >= static_cast<int>(pair.target.size())) {
                r.stats.skipped += 1; // whole target already given
                continue;
            }
            const auto rec = make_context_corpus(pair, {boundary.i, boundary.j});
            r.records += join(rec.source);
            r.records += '\t';
            r.records += join(rec.target);
            r.records += '\t';
            r.records += rec.loss_mask;
            r.records += '\n';
            r.stats.records += 1;
        }
    });
}

std::string build_detector_samples(const std::vector<std::vector<std::string>>& sources,
                                   PrepareStats* stats) {
    std::string out;
    PrepareStats total;
    for (const auto& line : sources) {
        total.sentence_pairs += 1;
        std::vector<std::string> stripped;
        std::vector<std::size_t> boundaries;
        for (const auto& tok : line) {
            if (is_punctuation_token(tok)) {
                if (!stripped.empty() &&
                    (boundaries.empty() || boundaries.back() != stripped.size()))
                    boundaries.push_back(stripped.size());
            } else {
                stripped.push_back(tok);
            }
        }
        // A trailing punctuation mark is the sentence end, not an internal
        // boundary.
        while (!boundaries.empty() && boundaries.back() >= stripped.size())
            boundaries.pop_back();
        total.boundaries += boundaries.size();
        const auto samples = make_training_samples(stripped, boundaries);
        total.records += samples.size();
        out += serialize_samples(samples);
    }
    if (stats) *stats = total;
    return out;
}

} // namespace stpipe
