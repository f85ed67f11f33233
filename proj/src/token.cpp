#include "stpipe/token.hpp"

#include <array>

namespace stpipe {

namespace {

constexpr std::array<std::string_view, 4> kCommas = {",", "，", "、", "；"};
constexpr std::array<std::string_view, 6> kSentenceFinal = {".", "。", "?", "？", "!", "！"};

} // namespace

bool is_comma_token(std::string_view surface) {
    for (auto c : kCommas)
        if (surface == c) return true;
    return false;
}

bool is_sentence_final_token(std::string_view surface) {
    for (auto c : kSentenceFinal)
        if (surface == c) return true;
    return false;
}

bool is_punctuation_token(std::string_view surface) {
    return is_comma_token(surface) || is_sentence_final_token(surface);
}

std::vector<std::string> surfaces(const std::vector<Token>& tokens) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens)
        out.push_back(t.surface);
    return out;
}

std::string join_surfaces(const std::vector<Token>& tokens) {
    return join(surfaces(tokens));
}

std::string join(const std::vector<std::string>& tokens) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out += ' ';
        out += tokens[i];
    }
    return out;
}

} // namespace stpipe
