// stpipe: streaming translation pipeline driver.
//
// Subcommands:
//   run           replay a token stream through normalization, boundary
//                 detection, policy translation and latency metrics
//   prepare       build training corpora from bitext + alignments or
//                 detector samples from punctuated text
//   bleu          corpus-level n-gram overlap between two token files
//   ee            latency metrics over a segment timeline file
//   lm-train      train and persist the normalization n-gram LM
//   scorer-train  train and persist the boundary scorer from samples

#include <charconv>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "stpipe/bleu.hpp"
#include "stpipe/boundary_scorer.hpp"
#include "stpipe/corpus_prep.hpp"
#include "stpipe/errors.hpp"
#include "stpipe/latency.hpp"
#include "stpipe/ngram_lm.hpp"
#include "stpipe/pipeline.hpp"
#include "stpipe/stream_io.hpp"

namespace {

using namespace stpipe;

void apply_run_flags(const CLI::App& cmd, KeyValueConfig& kv) {
    auto bind = [&](const char* flag, const char* key) {
        const auto* opt = cmd.get_option(flag);
        if (opt->count() > 0) kv.set(key, opt->as<std::string>());
    };
    bind("--stream", "stream");
    bind("--lexicon", "lexicon");
    bind("--fillers", "fillers");
    bind("--whitelist", "whitelist");
    bind("--lm", "lm");
    bind("--scorer", "scorer");
    bind("--report", "report");
    bind("--references", "references");
    bind("--policy", "policy.kind");
    bind("--k-wait", "policy.k_wait");
    bind("--k-discard", "policy.k_discard");
    bind("--delta1", "detector.delta1");
    bind("--delta2", "detector.delta2");
    bind("--max-dynamic-context", "detector.max_dynamic_context");
    bind("--ee-r", "ee.r");
    bind("--xi", "lm.xi");
    bind("--must-include", "constraints.must_include");
    bind("--forbid", "constraints.forbid");
    bind("--beam-size", "beam.size");
    if (cmd.get_option("--no-normalize")->count() > 0) kv.set("normalize", "off");
    if (cmd.get_option("--serial")->count() > 0) kv.set("parallel", "off");
}

int cmd_run(const std::string& config_path, const CLI::App& cmd) {
    KeyValueConfig kv;
    if (!config_path.empty()) kv = KeyValueConfig::from_file(config_path);
    apply_run_flags(cmd, kv);
    const RunConfig config = RunConfig::from_config(kv);
    const std::string report = run_report(config);
    if (config.report_path.empty())
        std::cout << report;
    else
        write_file(config.report_path, report);
    return 0;
}

int cmd_prepare(const std::string& mode, const std::string& source_path,
                const std::string& target_path, const std::string& align_path,
                const std::string& output_path, bool serial) {
    PrepareStats stats;
    std::string records;
    if (mode == "detector-samples") {
        records = build_detector_samples(tokenize_lines(read_file(source_path)), &stats);
    } else {
        const auto sources = tokenize_lines(read_file(source_path));
        const auto targets = tokenize_lines(read_file(target_path));
        std::vector<std::string> align_lines;
        {
            std::istringstream in(read_file(align_path));
            std::string line;
            while (std::getline(in, line)) {
                if (!line.empty() && line.back() == '\r') line.pop_back();
                align_lines.push_back(line);
            }
            while (!align_lines.empty() && align_lines.back().empty()) align_lines.pop_back();
        }
        if (mode == "partial")
            records = build_partial_corpus(sources, targets, align_lines, !serial, &stats);
        else if (mode == "context")
            records = build_context_corpus(sources, targets, align_lines, !serial, &stats);
        else
            throw ConfigError("unknown prepare mode '" + mode + "'");
    }
    write_file(output_path, records);
    std::cout << stats.summary() << "\n";
    return 0;
}

int cmd_bleu(const std::string& hyp_path, const std::string& ref_path) {
    const auto hyps = tokenize_lines(read_file(hyp_path));
    const auto refs = tokenize_lines(read_file(ref_path));
    const BleuResult r = corpus_bleu(hyps, refs);
    char line[256];
    std::snprintf(line, sizeof(line),
                  "BLEU = %.2f (BP=%.3f, p1=%.3f p2=%.3f p3=%.3f p4=%.3f, hyp_len=%lld "
                  "ref_len=%lld)\n",
                  r.score, r.brevity_penalty, r.precisions[0], r.precisions[1], r.precisions[2],
                  r.precisions[3], r.hyp_len, r.ref_len);
    std::cout << line;
    return 0;
}

// Timeline file: `utt_id TAB lx:ly lx:ly ...`, one utterance per line.
int cmd_ee(const std::string& timeline_path, double r) {
    std::istringstream in(read_file(timeline_path));
    std::string line;
    std::size_t line_no = 0, count = 0;
    double sum_inv = 0.0, sum_al = 0.0;
    std::string out;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw DataError("timeline line " + std::to_string(line_no) +
                            ": expected `utt_id TAB lx:ly ...`");
        const std::string utt_id = line.substr(0, tab);
        std::istringstream toks(line.substr(tab + 1));
        std::string item;
        std::vector<SegmentLen> segments;
        TranslationTimeline timeline; // to reuse read_counts
        while (toks >> item) {
            const std::size_t colon = item.find(':');
            if (colon == std::string::npos || colon == 0 || colon + 1 >= item.size())
                throw DataError("timeline line " + std::to_string(line_no) +
                                ": malformed segment '" + item + "'");
            int lx = 0, ly = 0;
            const char* b = item.c_str();
            auto ra = std::from_chars(b, b + colon, lx);
            auto rb = std::from_chars(b + colon + 1, b + item.size(), ly);
            if (ra.ec != std::errc{} || ra.ptr != b + colon || rb.ec != std::errc{} ||
                rb.ptr != b + item.size())
                throw DataError("timeline line " + std::to_string(line_no) +
                                ": malformed segment '" + item + "'");
            segments.push_back({lx, ly});
            TimelineSegment seg;
            seg.source_len = lx;
            seg.target_len = ly;
            seg.written.assign(static_cast<std::size_t>(ly), "-");
            timeline.segments.push_back(seg);
        }
        if (segments.empty())
            throw DataError("timeline line " + std::to_string(line_no) + ": no segments");
        const double inv = inverse_ee(segments, r);
        int total_lx = 0;
        for (const auto& s : segments) total_lx += s.source_len;
        const auto g = read_counts(timeline);
        const double al = average_lagging(g, total_lx);
        char buf[160];
        std::snprintf(buf, sizeof(buf), "utt %s EE=%.6f 1/EE=%.6f AL=%.6f\n", utt_id.c_str(),
                      1.0 / inv, inv, al);
        out += buf;
        sum_inv += inv;
        sum_al += al;
        ++count;
    }
    if (count == 0) throw DataError("timeline file has no utterances");
    char buf[160];
    std::snprintf(buf, sizeof(buf), "mean 1/EE=%.6f AL=%.6f over %zu utterances\n",
                  sum_inv / static_cast<double>(count), sum_al / static_cast<double>(count),
                  count);
    out += buf;
    std::cout << out;
    return 0;
}

int cmd_lm_train(const std::string& corpus_path, int order, double alpha,
                 const std::string& output_path) {
    NGramLM lm(order, alpha);
    lm.train(tokenize_lines(read_file(corpus_path)));
    lm.save(output_path);
    std::cout << "lm order=" << order << " vocab=" << lm.vocab_size() << " -> " << output_path
              << "\n";
    return 0;
}

int cmd_scorer_train(const std::string& samples_path, const std::string& output_path) {
    const auto samples = parse_samples(read_file(samples_path));
    const auto scorer = FrequencyBoundaryScorer::train(samples);
    scorer.save(output_path);
    std::cout << "scorer trained on " << samples.size() << " samples -> " << output_path << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"streaming simultaneous-translation pipeline"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "replay a stream through the pipeline");
    std::string run_config;
    run->add_option("--config", run_config, "key = value config file");
    for (const char* flag :
         {"--stream", "--lexicon", "--fillers", "--whitelist", "--lm", "--scorer", "--report",
          "--references", "--policy", "--k-wait", "--k-discard", "--delta1", "--delta2",
          "--max-dynamic-context", "--ee-r", "--xi", "--must-include", "--forbid", "--beam-size"})
        run->add_option(flag, "overrides the matching config key");
    run->add_flag("--no-normalize", "skip transcript normalization");
    run->add_flag("--serial", "use the serial reference driver");

    auto* prepare = app.add_subcommand("prepare", "build training corpora");
    std::string mode, source_path, target_path, align_path, output_path;
    bool prepare_serial = false;
    prepare->add_option("--mode", mode, "partial | context | detector-samples")->required();
    prepare->add_option("--source", source_path, "source sentences, one per line")->required();
    prepare->add_option("--target", target_path, "target sentences, one per line");
    prepare->add_option("--align", align_path, "Pharaoh alignments, one line per pair");
    prepare->add_option("-o,--output", output_path, "records file to write")->required();
    prepare->add_flag("--serial", prepare_serial, "disable parallel extraction");

    auto* bleu = app.add_subcommand("bleu", "corpus n-gram overlap score");
    std::string hyp_path, ref_path;
    bleu->add_option("--hyp", hyp_path, "hypothesis file")->required();
    bleu->add_option("--ref", ref_path, "reference file")->required();

    auto* ee = app.add_subcommand("ee", "latency metrics over a timeline file");
    std::string timeline_path;
    double ee_r = 0.3;
    ee->add_option("--timeline", timeline_path, "utt_id TAB lx:ly ... per line")->required();
    ee->add_option("--ee-r", ee_r, "reading-rate factor r");

    auto* lm_train = app.add_subcommand("lm-train", "train the normalization language model");
    std::string corpus_path, lm_out;
    int lm_order = 3;
    double lm_alpha = 0.1;
    lm_train->add_option("--corpus", corpus_path, "token sentences, one per line")->required();
    lm_train->add_option("--order", lm_order, "n-gram order");
    lm_train->add_option("--alpha", lm_alpha, "additive smoothing constant");
    lm_train->add_option("-o,--output", lm_out, "count file to write")->required();

    auto* scorer_train = app.add_subcommand("scorer-train", "train the boundary scorer");
    std::string samples_path, scorer_out;
    scorer_train->add_option("--samples", samples_path, "labelled sample file")->required();
    scorer_train->add_option("-o,--output", scorer_out, "scorer file to write")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(run_config, *run);
        if (prepare->parsed()) {
            if (mode != "detector-samples" && (target_path.empty() || align_path.empty()))
                throw ConfigError("prepare mode '" + mode + "' needs --target and --align");
            return cmd_prepare(mode, source_path, target_path, align_path, output_path,
                               prepare_serial);
        }
        if (bleu->parsed()) return cmd_bleu(hyp_path, ref_path);
        if (ee->parsed()) return cmd_ee(timeline_path, ee_r);
        if (lm_train->parsed()) return cmd_lm_train(corpus_path, lm_order, lm_alpha, lm_out);
        if (scorer_train->parsed()) return cmd_scorer_train(samples_path, scorer_out);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const PipelineError& e) {
        std::cerr << "pipeline error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
