#pragma once

#include <string>

#include "nilcps/scheme.hpp"

namespace nilcps {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Scheme files are JSON with exact rationals written as "p/q" strings.
// Bracket triples are 1-based: [i, j, k, "c"] means [e_i, e_j] = c e_k.
// Errors carry the line/column of a syntax error or the JSON path of a bad value.
SchemeSpec parse_scheme(const std::string& text, const std::string& origin = "<string>");
SchemeSpec load_scheme(const std::string& path);
std::string scheme_to_json(const SchemeSpec& s);

}  // namespace nilcps
