#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stpipe/config.hpp"
#include "stpipe/iu_detector.hpp"
#include "stpipe/ngram_lm.hpp"
#include "stpipe/normalize.hpp"
#include "stpipe/oracle.hpp"
#include "stpipe/policies.hpp"
#include "stpipe/timeline.hpp"

namespace stpipe {

struct RunConfig {
    std::string stream_path;
    std::string lexicon_path;
    std::string fillers_path;
    std::string whitelist_path;
    std::string lm_path;
    std::string scorer_path; // empty: the punctuation scorer
    std::string report_path; // empty: report to stdout
    std::string references_path;
    std::string must_include_path;
    std::string forbid_path;
    bool normalize = true;
    bool parallel = true;
    double delta1 = 0.7;
    double delta2 = 0.3;
    int max_dynamic_context = 5;
    PolicyConfig policy = PolicyConfig::context_aware(1);
    double ee_r = 0.3;
    double xi = 1e-4;
    int beam_size = 16;

    // Rejects unknown keys so typos fail loudly.
    static RunConfig from_config(const KeyValueConfig& kv);
};

// Shared read-only stage objects; safe across parallel utterance workers.
struct PipelineContext {
    bool normalize = true;
    NormalizerConfig normalizer;
    std::optional<NGramLM> lm;
    DetectorConfig detector;
    std::shared_ptr<const TranslationOracle> oracle;
    PolicyConfig policy;
    double ee_r = 0.3;
};

// Loads every referenced file; missing or unparsable files are ConfigError.
PipelineContext build_context(const RunConfig& config);

struct UtteranceResult {
    std::string utt_id;
    std::vector<Token> source;
    std::vector<Token> normalized;
    NormalizeStats norm_stats;
    std::vector<InformationUnit> units;
    TranslationTimeline timeline;
    bool metrics_defined = false;
    double ee = 0.0;
    double inv_ee = 0.0;
    double al = 0.0;
};

struct TalkResult {
    std::vector<UtteranceResult> utterances;
};

// normalization -> detection -> policy translation -> metrics. Stage
// failures carry the utterance id and stage name.
UtteranceResult process_utterance(const PipelineContext& ctx, const Utterance& utt);

// Serial driver is the reference implementation; the parallel driver is the
// OpenMP production path. Both produce identical results, ordered by
// utterance position.
TalkResult run_talk_serial(const PipelineContext& ctx, const std::vector<Utterance>& utts);
TalkResult run_talk_parallel(const PipelineContext& ctx, const std::vector<Utterance>& utts);

// Deterministic plain-text report (LF line endings, fixed float format):
// identical config + inputs give byte-identical output.
std::string render_report(const TalkResult& talk, const PipelineContext& ctx,
                          const std::vector<std::vector<std::string>>* references);

// The whole `run` path: parse stream, build context, process, render.
std::string run_report(const RunConfig& config);

} // namespace stpipe
