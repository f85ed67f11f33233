#pragma once

#include <map>
#include <string>
#include <string_view>

namespace stpipe {

// Flat `key = value` configuration (# comments, blank lines ignored).
// Lookups of missing keys without a default throw ConfigError, as do
// malformed numeric or boolean values.
class KeyValueConfig {
public:
    KeyValueConfig() = default;

    static KeyValueConfig parse(std::string_view text);
    static KeyValueConfig from_file(const std::string& path);

    bool has(const std::string& key) const;
    std::string get(const std::string& key) const;
    std::string get_or(const std::string& key, std::string fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    void set(const std::string& key, std::string value);

    const std::map<std::string, std::string>& entries() const { return entries_; }

private:
    std::map<std::string, std::string> entries_;
};

} // namespace stpipe
