#pragma once

#include <cstdint>
#include <ostream>
#include <random>
#include <string>

#include "nilcps/config.hpp"
#include "nilcps/group.hpp"

namespace nilcps {
// readable gtest failure messages
inline void PrintTo(const ExactScalar& x, std::ostream* os) { *os << x.str(); }
}  // namespace nilcps

namespace nilcps::testing {

inline std::string data_path(const std::string& rel) { return std::string(NILCPS_DATA_DIR) + "/" + rel; }
inline SchemeSpec bundled(const std::string& name) { return load_scheme(data_path("schemes/" + name + ".json")); }

// small seeded generators; values stay exact
struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}
    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
    Rational rational(long num = 20, long den = 8) {
        Rational q(integer(-num, num), integer(1, den));
        q.canonicalize();  // the two-argument constructor does not reduce
        return q;
    }
    ExactScalar sqrt2(long num = 6, long den = 4) {
        return ExactScalar::quadratic(2, rational(num, den), rational(num, den));
    }
    GroupPoint point(int n, bool irrational = false) {
        GroupPoint p;
        for (int i = 0; i < n; ++i) p.push_back(irrational ? sqrt2() : ExactScalar(rational()));
        return p;
    }
};

}  // namespace nilcps::testing
