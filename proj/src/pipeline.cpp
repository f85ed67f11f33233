#include "stpipe/pipeline.hpp"

#include <cstdio>
#include <filesystem>
#include <set>
#include <sstream>

#include "stpipe/bleu.hpp"
#include "stpipe/constrained_oracle.hpp"
#include "stpipe/errors.hpp"
#include "stpipe/latency.hpp"
#include "stpipe/parallel.hpp"
#include "stpipe/stream_io.hpp"

namespace stpipe {

namespace {

const std::set<std::string> kKnownKeys = {
    "stream",       "lexicon",          "fillers",
    "whitelist",    "lm",               "lm.xi",
    "scorer",       "report",           "references",
    "normalize",    "parallel",         "detector.delta1",
    "detector.delta2", "detector.max_dynamic_context", "policy.kind",
    "policy.k_wait", "policy.k_discard", "ee.r",
    "constraints.must_include", "constraints.forbid", "beam.size",
};

void require_file(const std::string& path, const std::string& role) {
    if (path.empty()) throw ConfigError("missing required path: " + role);
    if (!std::filesystem::exists(path))
        throw ConfigError(role + " file does not exist: " + path);
}

void check_optional_file(const std::string& path, const std::string& role) {
    if (!path.empty() && !std::filesystem::exists(path))
        throw ConfigError(role + " file does not exist: " + path);
}

std::string fmt(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

std::string fmt2(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", value);
    return buf;
}

} // namespace

RunConfig RunConfig::from_config(const KeyValueConfig& kv) {
    for (const auto& [key, value] : kv.entries())
        if (!kKnownKeys.count(key)) throw ConfigError("unknown config key '" + key + "'");

    RunConfig config;
    config.stream_path = kv.get_or("stream", "");
    config.lexicon_path = kv.get_or("lexicon", "");
    config.fillers_path = kv.get_or("fillers", "");
    config.whitelist_path = kv.get_or("whitelist", "");
    config.lm_path = kv.get_or("lm", "");
    config.scorer_path = kv.get_or("scorer", "");
    config.report_path = kv.get_or("report", "");
    config.references_path = kv.get_or("references", "");
    config.must_include_path = kv.get_or("constraints.must_include", "");
    config.forbid_path = kv.get_or("constraints.forbid", "");
    config.normalize = kv.get_bool("normalize", true);
    config.parallel = kv.get_bool("parallel", true);
    config.delta1 = kv.get_double("detector.delta1", 0.7);
    config.delta2 = kv.get_double("detector.delta2", 0.3);
    config.max_dynamic_context = kv.get_int("detector.max_dynamic_context", 5);
    config.policy.kind = policy_kind_from_string(kv.get_or("policy.kind", "context_aware"));
    config.policy.k_wait = kv.get_int("policy.k_wait", 3);
    config.policy.k_discard = kv.get_int("policy.k_discard", 1);
    config.ee_r = kv.get_double("ee.r", 0.3);
    config.xi = kv.get_double("lm.xi", 1e-4);
    config.beam_size = kv.get_int("beam.size", 16);
    return config;
}

PipelineContext build_context(const RunConfig& config) {
    PipelineContext ctx;
    require_file(config.lexicon_path, "lexicon");
    check_optional_file(config.fillers_path, "fillers");
    check_optional_file(config.whitelist_path, "whitelist");
    check_optional_file(config.lm_path, "lm");
    check_optional_file(config.scorer_path, "scorer");
    check_optional_file(config.must_include_path, "must-include constraints");
    check_optional_file(config.forbid_path, "forbid constraints");

    try {
        ctx.normalize = config.normalize;
        if (!config.fillers_path.empty())
            ctx.normalizer.filler_lexicon = load_token_set(config.fillers_path);
        if (!config.whitelist_path.empty())
            ctx.normalizer.whitelist = load_whitelist(config.whitelist_path);
        ctx.normalizer.xi = config.xi;
        ctx.normalizer.validate();
        if (!config.lm_path.empty()) ctx.lm = NGramLM::load(config.lm_path);

        ctx.detector.delta1 = config.delta1;
        ctx.detector.delta2 = config.delta2;
        if (config.max_dynamic_context < 0)
            throw ConfigError("detector.max_dynamic_context must be >= 0");
        ctx.detector.max_dynamic_context = static_cast<std::size_t>(config.max_dynamic_context);
        if (config.scorer_path.empty())
            ctx.detector.scorer = std::make_shared<PunctuationBoundaryScorer>();
        else
            ctx.detector.scorer = std::make_shared<FrequencyBoundaryScorer>(
                FrequencyBoundaryScorer::load(config.scorer_path));
        ctx.detector.validate();

        ToyLexiconOracle lexicon = ToyLexiconOracle::from_file(config.lexicon_path);
        if (config.must_include_path.empty() && config.forbid_path.empty()) {
            ctx.oracle = std::make_shared<ToyLexiconOracle>(std::move(lexicon));
        } else {
            std::vector<std::vector<std::string>> must_include, forbid;
            if (!config.must_include_path.empty())
                must_include = load_phrases(config.must_include_path);
            if (!config.forbid_path.empty()) forbid = load_phrases(config.forbid_path);
            ctx.oracle = std::make_shared<ConstrainedLexiconOracle>(
                std::move(lexicon), std::move(must_include), std::move(forbid),
                config.beam_size);
        }
        ctx.policy = config.policy;
        ctx.policy.validate();
        if (!(config.ee_r > 0.0)) throw ConfigError("ee.r must be > 0");
        ctx.ee_r = config.ee_r;
    } catch (const DataError& e) {
        // Referenced files must exist *and parse* before the run starts.
        throw ConfigError(e.what());
    }
    return ctx;
}

namespace {

template <typename Fn>
auto stage(const std::string& utt_id, const char* name, Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError&) {
        throw;
    } catch (const DataError& e) {
        throw DataError("utt " + utt_id + " stage " + name + ": " + e.what());
    } catch (const std::exception& e) {
        throw PipelineError("utt " + utt_id + " stage " + name + ": " + e.what());
    }
}

} // namespace

UtteranceResult process_utterance(const PipelineContext& ctx, const Utterance& utt) {
    UtteranceResult result;
    result.utt_id = utt.id;
    result.source = utt.tokens;

    result.normalized = stage(utt.id, "normalize", [&] {
        if (!ctx.normalize) return utt.tokens;
        return normalize_utterance(utt.tokens, ctx.normalizer,
                                   ctx.lm ? &*ctx.lm : nullptr, &result.norm_stats);
    });

    auto run = stage(utt.id, "translate", [&] {
        Utterance normalized{utt.id, result.normalized};
        return translate_stream(normalized, ctx.detector, *ctx.oracle, ctx.policy);
    });
    result.units = std::move(run.units);
    result.timeline = std::move(run.timeline);

    stage(utt.id, "metrics", [&] {
        if (!result.timeline.segments.empty() && result.timeline.total_target_len() > 0) {
            const auto lens = segment_lengths(result.timeline);
            // A final segment that emits nothing with no accumulated lag
            // leaves EE undefined; report n/a instead of failing the talk.
            if (lens.back().target_len > 0 || inverse_ee_defined(lens, ctx.ee_r)) {
                result.inv_ee = inverse_ee(lens, ctx.ee_r);
                result.ee = 1.0 / result.inv_ee;
                const auto g = read_counts(result.timeline);
                result.al = average_lagging(g, result.timeline.total_source_len());
                result.metrics_defined = true;
            }
        }
        return 0;
    });
    return result;
}

namespace {

TalkResult run_talk(const PipelineContext& ctx, const std::vector<Utterance>& utts,
                    bool parallel) {
    TalkResult talk;
    talk.utterances.resize(utts.size());
    parallel_for(utts.size(), parallel,
                 [&](std::size_t i) { talk.utterances[i] = process_utterance(ctx, utts[i]); });
    return talk;
}

} // namespace

TalkResult run_talk_serial(const PipelineContext& ctx, const std::vector<Utterance>& utts) {
    return run_talk(ctx, utts, false);
}

TalkResult run_talk_parallel(const PipelineContext& ctx, const std::vector<Utterance>& utts) {
    return run_talk(ctx, utts, true);
}

std::string render_report(const TalkResult& talk, const PipelineContext& ctx,
                          const std::vector<std::vector<std::string>>* references) {
    std::string out = "run report\n";
    out += "policy=" + to_string(ctx.policy.kind);
    if (ctx.policy.kind == PolicyKind::wait_k)
        out += " k_wait=" + std::to_string(ctx.policy.k_wait);
    if (ctx.policy.kind == PolicyKind::context_aware)
        out += " k_discard=" + std::to_string(ctx.policy.k_discard);
    out += '\n';
    out += "detector delta1=" + fmt(ctx.detector.delta1) + " delta2=" + fmt(ctx.detector.delta2) +
           " max_context=" + std::to_string(ctx.detector.max_dynamic_context) + '\n';
    out += "ee r=" + fmt(ctx.ee_r) + " (1/EE reads as words of lag)\n";

    double sum_inv_ee = 0.0, sum_al = 0.0;
    std::size_t defined = 0;
    for (const auto& u : talk.utterances) {
        out += '\n';
        out += "[utt " + u.utt_id + "]\n";
        out += "source (" + std::to_string(u.source.size()) + "): " + join_surfaces(u.source) +
               '\n';
        out += "normalized (" + std::to_string(u.normalized.size()) + "): " +
               join_surfaces(u.normalized) + " (fillers=" +
               std::to_string(u.norm_stats.fillers_removed) + " repeats=" +
               std::to_string(u.norm_stats.repeat_tokens_removed) + " abnormal=" +
               std::to_string(u.norm_stats.abnormal_removed) + ")\n";
        for (const auto& iu : u.units) {
            out += "iu " + std::to_string(iu.sentence_id) + "." +
                   std::to_string(iu.iu_index_in_sentence);
            if (iu.is_sentence_final) out += " [final]";
            out += ": " + join_surfaces(iu.tokens) + '\n';
        }
        int retracted_total = 0;
        for (std::size_t s = 0; s < u.timeline.segments.size(); ++s) {
            const auto& seg = u.timeline.segments[s];
            out += "segment " + std::to_string(s + 1) + ": sentence=" +
                   std::to_string(seg.sentence_id) + " LX=" + std::to_string(seg.source_len) +
                   " LY=" + std::to_string(seg.target_len) + " retract=" +
                   std::to_string(seg.retracted_before) + '\n';
            retracted_total += seg.retracted_before;
        }
        out += "target (" + std::to_string(u.timeline.committed_target.size()) + "): " +
               join(u.timeline.committed_target) + '\n';
        out += "retracted_total=" + std::to_string(retracted_total) + '\n';
        if (u.metrics_defined) {
            out += "EE=" + fmt(u.ee) + " 1/EE=" + fmt(u.inv_ee) + " AL=" + fmt(u.al) + '\n';
            sum_inv_ee += u.inv_ee;
            sum_al += u.al;
            ++defined;
        } else {
            out += "EE=n/a 1/EE=n/a AL=n/a\n";
        }
    }

    out += "\n[summary]\n";
    out += "utterances=" + std::to_string(talk.utterances.size()) + '\n';
    if (defined > 0) {
        out += "mean_1/EE=" + fmt(sum_inv_ee / static_cast<double>(defined)) + '\n';
        out += "mean_AL=" + fmt(sum_al / static_cast<double>(defined)) + '\n';
    } else {
        out += "mean_1/EE=n/a\n";
        out += "mean_AL=n/a\n";
    }
    if (references) {
        std::vector<std::vector<std::string>> hyps;
        hyps.reserve(talk.utterances.size());
        for (const auto& u : talk.utterances)
            hyps.push_back(u.timeline.committed_target);
        const auto bleu = corpus_bleu(hyps, *references);
        out += "bleu=" + fmt2(bleu.score) + '\n';
    }
    return out;
}

std::string run_report(const RunConfig& config) {
    require_file(config.stream_path, "stream");
    check_optional_file(config.references_path, "references");
    const PipelineContext ctx = build_context(config);
    const auto events = parse_stream_file(config.stream_path);
    const auto utts = group_by_utterance(events);

    std::vector<std::vector<std::string>> references;
    const std::vector<std::vector<std::string>>* refs_ptr = nullptr;
    if (!config.references_path.empty()) {
        std::istringstream in(read_file(config.references_path));
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            std::istringstream toks(line);
            std::vector<std::string> tokens;
            std::string tok;
            while (toks >> tok) tokens.push_back(tok);
            references.push_back(std::move(tokens));
        }
        while (!references.empty() && references.back().empty()) references.pop_back();
        if (references.size() != utts.size())
            throw DataError("reference line count (" + std::to_string(references.size()) +
                            ") does not match utterance count (" + std::to_string(utts.size()) +
                            ")");
        refs_ptr = &references;
    }

    const TalkResult talk =
        config.parallel ? run_talk_parallel(ctx, utts) : run_talk_serial(ctx, utts);
    return render_report(talk, ctx, refs_ptr);
}

} // namespace stpipe
