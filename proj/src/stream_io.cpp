#include "stpipe/stream_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "stpipe/errors.hpp"

namespace stpipe {

namespace {

bool has_whitespace(std::string_view s) {
    for (char c : s)
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') return true;
    return false;
}

std::int64_t parse_ts(std::string_view field, std::size_t line_no) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw DataError("stream line " + std::to_string(line_no) + ": bad ts_ms '" +
                        std::string(field) + "'");
    return value;
}

} // namespace

std::vector<StreamEvent> parse_stream(std::string_view content) {
    std::vector<StreamEvent> events;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    std::int64_t last_ts = 0;
    while (pos < content.size()) {
        std::size_t eol = content.find('\n', pos);
        if (eol == std::string_view::npos) eol = content.size();
        std::string_view line = content.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;

        std::size_t t1 = line.find('\t');
        std::size_t t2 = t1 == std::string_view::npos ? std::string_view::npos
                                                      : line.find('\t', t1 + 1);
        if (t1 == std::string_view::npos || t2 == std::string_view::npos ||
            line.find('\t', t2 + 1) != std::string_view::npos)
            throw DataError("stream line " + std::to_string(line_no) +
                            ": expected 3 tab-separated fields");

        std::string_view utt = line.substr(0, t1);
        std::string_view ts = line.substr(t1 + 1, t2 - t1 - 1);
        std::string_view tok = line.substr(t2 + 1);
        if (utt.empty())
            throw DataError("stream line " + std::to_string(line_no) + ": empty utt_id");
        if (tok.empty())
            throw DataError("stream line " + std::to_string(line_no) + ": empty token");
        if (has_whitespace(tok))
            throw DataError("stream line " + std::to_string(line_no) +
                            ": token contains whitespace");

        Token token;
        token.surface = std::string(tok);
        token.ts_ms = parse_ts(ts, line_no);
        token.index = events.size();
        if (!events.empty() && token.ts_ms < last_ts)
            throw DataError("stream line " + std::to_string(line_no) +
                            ": non-monotone ts_ms (" + std::to_string(token.ts_ms) +
                            " after " + std::to_string(last_ts) + ")");
        last_ts = token.ts_ms;
        events.push_back({std::string(utt), std::move(token)});
    }
    return events;
}

std::vector<StreamEvent> parse_stream_file(const std::string& path) {
    return parse_stream(read_file(path));
}

std::string serialize_stream(const std::vector<StreamEvent>& events) {
    std::string out;
    for (const auto& e : events) {
        out += e.utt_id;
        out += '\t';
        out += std::to_string(e.token.ts_ms);
        out += '\t';
        out += e.token.surface;
        out += '\n';
    }
    return out;
}

std::vector<Utterance> group_by_utterance(const std::vector<StreamEvent>& events) {
    std::vector<Utterance> utts;
    std::unordered_set<std::string> seen;
    for (const auto& e : events) {
        if (utts.empty() || utts.back().id != e.utt_id) {
            if (seen.count(e.utt_id))
                throw DataError("utterance '" + e.utt_id + "' is not contiguous in stream");
            seen.insert(e.utt_id);
            utts.push_back({e.utt_id, {}});
        }
        utts.back().tokens.push_back(e.token);
    }
    return utts;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw DataError("write failed: " + path);
}

} // namespace stpipe
