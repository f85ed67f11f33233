#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace stpipe {

// One source-language token from a streaming feed. Tokens arrive
// pre-tokenized; `surface` never contains whitespace. Timestamps are kept
// for reporting only — all policy decisions are token-count driven.
struct Token {
    std::string surface;
    std::int64_t ts_ms = 0; // arrival time, non-decreasing along a stream
    std::size_t index = 0;  // 0-based position in the stream it came from

    bool operator==(const Token&) const = default;
};

struct StreamEvent {
    std::string utt_id;
    Token token;

    bool operator==(const StreamEvent&) const = default;
};

struct Utterance {
    std::string id;
    std::vector<Token> tokens;
};

// A detected contiguous token span of one sentence. `iu_index_in_sentence`
// 0 marks a sentence-initial unit; sentence ids reset per utterance.
struct InformationUnit {
    std::vector<Token> tokens;
    int sentence_id = 0;
    int iu_index_in_sentence = 0;
    bool is_sentence_final = false;
};

// Token classification used for sub-sentence boundaries and sentence ends.
// Sentence-final punctuation is just a token in the stream format.
bool is_comma_token(std::string_view surface);
bool is_sentence_final_token(std::string_view surface);
bool is_punctuation_token(std::string_view surface);

std::vector<std::string> surfaces(const std::vector<Token>& tokens);
std::string join_surfaces(const std::vector<Token>& tokens);
std::string join(const std::vector<std::string>& tokens);

} // namespace stpipe
