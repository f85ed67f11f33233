#include "stpipe/iu_detector.hpp"

#include "stpipe/errors.hpp"

namespace stpipe {

void DetectorConfig::validate() const {
    if (!(delta1 > 0.0 && delta1 <= 1.0))
        throw ConfigError("detector delta1 must be in (0,1]");
    if (!(delta2 >= 0.0 && delta2 < 1.0))
        throw ConfigError("detector delta2 must be in [0,1)");
    if (!(delta2 < delta1)) throw ConfigError("detector requires delta2 < delta1");
    if (!scorer) throw ConfigError("detector has no boundary scorer");
}

IuDetector::IuDetector(DetectorConfig config) : config_(std::move(config)) {
    config_.validate();
}

InformationUnit IuDetector::take_prefix(std::size_t end_inclusive, bool force_final) {
    InformationUnit unit;
    unit.tokens.assign(buffer_.begin(), buffer_.begin() + static_cast<long>(end_inclusive) + 1);
    unit.sentence_id = sentence_id_;
    unit.iu_index_in_sentence = iu_index_;
    unit.is_sentence_final =
        force_final || is_sentence_final_token(unit.tokens.back().surface);
    buffer_.erase(buffer_.begin(), buffer_.begin() + static_cast<long>(end_inclusive) + 1);
    anchor_ = 0;
    if (unit.is_sentence_final) {
        ++sentence_id_;
        iu_index_ = 0;
    } else {
        ++iu_index_;
    }
    return unit;
}

std::vector<InformationUnit> IuDetector::feed(const Token& token) {
    buffer_.push_back(token);
    std::vector<InformationUnit> emitted;
    while (anchor_ < buffer_.size()) {
        const std::span<const Token> prefix(buffer_.data(), anchor_ + 1);
        const std::span<const Token> context(buffer_.data() + anchor_ + 1,
                                             buffer_.size() - anchor_ - 1);
        const double p = config_.scorer->score(prefix, anchor_, context);

        bool emit = false;
        if (p >= config_.delta1) {
            emit = true;
        } else if (p < config_.delta2) {
            emit = false;
        } else if (context.size() >= config_.max_dynamic_context) {
            emit = p >= 0.5; // forced decision at the context bound
        } else {
            break; // undetermined: wait for more context
        }

        if (emit)
            emitted.push_back(take_prefix(anchor_, /*force_final=*/false));
        else
            ++anchor_;
    }
    return emitted;
}

std::optional<InformationUnit> IuDetector::flush() {
    if (buffer_.empty()) return std::nullopt;
    return take_prefix(buffer_.size() - 1, /*force_final=*/true);
}

std::vector<InformationUnit> detect_units(const DetectorConfig& config,
                                          std::span<const Token> tokens) {
    IuDetector detector(config);
    std::vector<InformationUnit> units;
    for (const Token& t : tokens) {
        auto emitted = detector.feed(t);
        units.insert(units.end(), std::make_move_iterator(emitted.begin()),
                     std::make_move_iterator(emitted.end()));
    }
    if (auto last = detector.flush()) units.push_back(std::move(*last));
    return units;
}

} // namespace stpipe
