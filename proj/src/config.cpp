#include "stpipe/config.hpp"

#include <cstdlib>

#include "stpipe/errors.hpp"
#include "stpipe/stream_io.hpp"

namespace stpipe {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

} // namespace

KeyValueConfig KeyValueConfig::parse(std::string_view text) {
    KeyValueConfig config;
    std::size_t pos = 0, line_no = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = trim(text.substr(pos, eol - pos));
        pos = eol + 1;
        ++line_no;
        if (line.empty() || line.front() == '#') {
            if (pos > text.size()) break;
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected `key = value`");
        std::string_view key = trim(line.substr(0, eq));
        std::string_view value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        config.entries_[std::string(key)] = std::string(value);
        if (pos > text.size()) break;
    }
    return config;
}

KeyValueConfig KeyValueConfig::from_file(const std::string& path) {
    try {
        return parse(read_file(path));
    } catch (const DataError& e) {
        throw ConfigError(e.what());
    }
}

bool KeyValueConfig::has(const std::string& key) const { return entries_.count(key) != 0; }

std::string KeyValueConfig::get(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError("missing config key '" + key + "'");
    return it->second;
}

std::string KeyValueConfig::get_or(const std::string& key, std::string fallback) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? std::move(fallback) : it->second;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    const char* begin = it->second.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw ConfigError("config key '" + key + "': bad number '" + it->second + "'");
    return value;
}

int KeyValueConfig::get_int(const std::string& key, int fallback) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    const char* begin = it->second.c_str();
    char* end = nullptr;
    const long value = std::strtol(begin, &end, 10);
    if (end == begin || *end != '\0')
        throw ConfigError("config key '" + key + "': bad integer '" + it->second + "'");
    return static_cast<int>(value);
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    const std::string& v = it->second;
    if (v == "on" || v == "true" || v == "1") return true;
    if (v == "off" || v == "false" || v == "0") return false;
    throw ConfigError("config key '" + key + "': bad boolean '" + v + "'");
}

void KeyValueConfig::set(const std::string& key, std::string value) {
    entries_[key] = std::move(value);
}

} // namespace stpipe
