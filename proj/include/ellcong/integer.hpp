#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

#include "ellcong/errors.hpp"

namespace ellcong {

using Int = mpz_class;
using Rat = mpq_class;

inline std::string to_string(const Int& v) { return v.get_str(); }

// floor(sqrt(n)) for n >= 0.
inline uint64_t isqrt_u64(uint64_t n) {
    if (n == 0) return 0;
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && (static_cast<unsigned __int128>(r) * r) > n) --r;
    while ((static_cast<unsigned __int128>(r + 1) * (r + 1)) <= n) ++r;
    return r;
}

inline uint64_t gcd_u64(uint64_t a, uint64_t b) {
    while (b != 0) {
        uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// SplitMix64 step; used wherever reproducible pseudo-random choices are
// needed so repeated runs make identical decisions.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Mixes an mpz value into a seed, independent of limb layout.
inline uint64_t seed_mix(uint64_t seed, const Int& v) {
    uint64_t h = seed ^ (mpz_sgn(v.get_mpz_t()) < 0 ? 0x5851f42d4c957f2dull : 0);
    Int a = abs(v);
    while (a != 0) {
        uint64_t limb = mpz_get_ui(a.get_mpz_t()) & 0xffffffffull;
        h ^= limb + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        a >>= 32;
    }
    return h;
}

namespace detail {

inline Int parse_int_token(std::string_view tok, std::string_view context) {
    size_t b = 0, e = tok.size();
    while (b < e && std::isspace(static_cast<unsigned char>(tok[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(tok[e - 1]))) --e;
    tok = tok.substr(b, e - b);
    if (tok.empty()) throw ParseError("empty integer in " + std::string(context));
    size_t i = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
    if (i == tok.size()) throw ParseError("bare sign in " + std::string(context));
    for (size_t k = i; k < tok.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(tok[k])))
            throw ParseError("bad integer '" + std::string(tok) + "' in " + std::string(context));
    return Int(std::string(tok), 10);
}

}  // namespace detail

// Parses "A,B" with optional surrounding whitespace.
inline std::pair<Int, Int> parse_curve_coefficients(std::string_view text) {
    size_t comma = text.find(',');
    if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos)
        throw ParseError("curve must be 'A,B', got '" + std::string(text) + "'");
    return {detail::parse_int_token(text.substr(0, comma), "curve"),
            detail::parse_int_token(text.substr(comma + 1), "curve")};
}

// Canonical textual id "A,B"; cache files and reports key curves by this.
inline std::string format_curve_id(const Int& a, const Int& b) {
    return a.get_str() + "," + b.get_str();
}

}  // namespace ellcong
