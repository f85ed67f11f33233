#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "stpipe/token.hpp"

namespace stpipe {

// Stream file format: UTF-8, one record per line, `utt_id TAB ts_ms TAB token`.
// Records of one utterance must be contiguous and timestamps non-decreasing
// across the whole stream. Throws DataError on malformed input.
std::vector<StreamEvent> parse_stream(std::string_view content);
std::vector<StreamEvent> parse_stream_file(const std::string& path);

// Canonical form: one record per line, single TABs, trailing newline.
std::string serialize_stream(const std::vector<StreamEvent>& events);

// Splits a parsed stream into utterances, preserving arrival order.
std::vector<Utterance> group_by_utterance(const std::vector<StreamEvent>& events);

// Small file helpers shared by the CLI and fixtures.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

} // namespace stpipe
