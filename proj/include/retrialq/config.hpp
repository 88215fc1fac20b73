#pragma once

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>

#include "retrialq/errors.hpp"
#include "retrialq/params.hpp"

namespace retrialq {

/// Flat key=value config. Known keys: lambda, mu, theta, xi, n_policy,
/// reward, wait_cost. Lines starting with '#' and blank lines are skipped.
/// Unknown keys and malformed values are errors; parsing is strict decimal
/// (std::from_chars), no locale.
inline std::map<std::string, std::string> parse_key_values(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw model_error(errc::bad_config,
                              "line " + std::to_string(lineno) + ": expected key=value");
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r");
            size_t z = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, z - a + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw model_error(errc::bad_config,
                              "line " + std::to_string(lineno) + ": empty key or value");
        if (kv.count(key))
            throw model_error(errc::bad_config, "duplicate key '" + key + "'");
        kv[key] = val;
    }
    return kv;
}

inline double parse_decimal(const std::string& key, const std::string& s) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw model_error(errc::bad_config, "key '" + key + "': bad decimal '" + s + "'");
    return v;
}

inline int parse_int(const std::string& key, const std::string& s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw model_error(errc::bad_config, "key '" + key + "': bad integer '" + s + "'");
    return v;
}

/// Loads ModelParams from a key=value stream. Every field is required.
inline ModelParams params_from_stream(std::istream& in) {
    auto kv = parse_key_values(in);
    ModelParams p;
    auto take = [&kv](const char* key) {
        auto it = kv.find(key);
        if (it == kv.end())
            throw model_error(errc::bad_config, std::string("missing key '") + key + "'");
        std::string v = it->second;
        kv.erase(it);
        return v;
    };
    p.lambda = parse_decimal("lambda", take("lambda"));
    p.mu = parse_decimal("mu", take("mu"));
    p.theta = parse_decimal("theta", take("theta"));
    p.xi = parse_decimal("xi", take("xi"));
    p.n_policy = parse_int("n_policy", take("n_policy"));
    p.reward = parse_decimal("reward", take("reward"));
    p.wait_cost = parse_decimal("wait_cost", take("wait_cost"));
    if (!kv.empty())
        throw model_error(errc::bad_config, "unknown key '" + kv.begin()->first + "'");
    return validate(p);
}

inline ModelParams params_from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw model_error(errc::bad_config, "cannot open config file '" + path + "'");
    return params_from_stream(f);
}

}  // namespace retrialq
