#ifndef TWINSIGHT_CONFIG_HPP
#define TWINSIGHT_CONFIG_HPP

#include <charconv>
#include <fstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "twinsight/errors.hpp"

namespace twinsight {

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline double parse_double(std::string_view s, const std::string &where)
{
    s = trim(s);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ValidationError(where, "not a number: '" + std::string(s) + "'");
    return v;
}

inline long parse_long(std::string_view s, const std::string &where)
{
    s = trim(s);
    long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ValidationError(where, "not an integer: '" + std::string(s) + "'");
    return v;
}

struct ConfigEntry {
    std::string key;
    std::string value;
    int line = 0;
};

// Flat key-value dialect shared by scenario and synth-spec files:
// one `key = value` per line, '#' starts a comment, blank lines ignored.
inline std::vector<ConfigEntry> load_key_value_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path + "'");
    std::vector<ConfigEntry> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view sv = line;
        if (auto hash = sv.find('#'); hash != std::string_view::npos)
            sv = sv.substr(0, hash);
        sv = trim(sv);
        if (sv.empty())
            continue;
        auto eq = sv.find('=');
        if (eq == std::string_view::npos)
            throw ValidationError(path + ":" + std::to_string(lineno),
                                  "expected 'key = value'");
        ConfigEntry e;
        e.key = std::string(trim(sv.substr(0, eq)));
        e.value = std::string(trim(sv.substr(eq + 1)));
        e.line = lineno;
        if (e.key.empty())
            throw ValidationError(path + ":" + std::to_string(lineno), "empty key");
        entries.push_back(std::move(e));
    }
    return entries;
}

} // namespace twinsight

#endif
