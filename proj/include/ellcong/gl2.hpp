#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "ellcong/errors.hpp"
#include "ellcong/integer.hpp"

namespace ellcong {

// Element of GL(2, Z/dZ): entries canonical mod d, determinant a unit.
struct Gl2Element {
    uint32_t d = 2;
    uint32_t m00 = 1, m01 = 0, m10 = 0, m11 = 1;

    static Gl2Element make(uint32_t d, long long a, long long b, long long c, long long e) {
        if (d < 2) throw UsageError("matrix modulus must be at least 2");
        auto red = [d](long long v) {
            long long r = v % static_cast<long long>(d);
            if (r < 0) r += d;
            return static_cast<uint32_t>(r);
        };
        Gl2Element g{d, red(a), red(b), red(c), red(e)};
        if (gcd_u64(g.det(), d) != 1)
            throw NonInvertibleGeneratorError("matrix determinant " + std::to_string(g.det()) +
                                              " is not a unit mod " + std::to_string(d));
        return g;
    }

    static Gl2Element identity(uint32_t d) { return make(d, 1, 0, 0, 1); }

    uint32_t det() const {
        uint64_t pos = static_cast<uint64_t>(m00) * m11 % d;
        uint64_t neg = static_cast<uint64_t>(m01) * m10 % d;
        return static_cast<uint32_t>((pos + d - neg) % d);
    }

    uint32_t trace() const { return static_cast<uint32_t>((static_cast<uint64_t>(m00) + m11) % d); }

    uint64_t key() const {
        return ((static_cast<uint64_t>(m00) * d + m01) * d + m10) * d + m11;
    }

    friend bool operator==(const Gl2Element&, const Gl2Element&) = default;
};

inline Gl2Element gl2_mul(const Gl2Element& a, const Gl2Element& b) {
    if (a.d != b.d) throw UsageError("matrix moduli differ");
    uint64_t d = a.d;
    auto ent = [d](uint64_t x, uint64_t y, uint64_t z, uint64_t w) {
        return static_cast<uint32_t>((x * y + z * w) % d);
    };
    Gl2Element r;
    r.d = a.d;
    r.m00 = ent(a.m00, b.m00, a.m01, b.m10);
    r.m01 = ent(a.m00, b.m01, a.m01, b.m11);
    r.m10 = ent(a.m10, b.m00, a.m11, b.m10);
    r.m11 = ent(a.m10, b.m01, a.m11, b.m11);
    return r;
}

// |GL(2, Z/dZ)| = d^4 * prod over primes l | d of (1 - 1/l)(1 - 1/l^2),
// computed exactly. d is capped so the result fits 64 bits.
inline uint64_t gl2_order(uint32_t d) {
    if (d < 2) throw UsageError("matrix modulus must be at least 2");
    if (d > 65535) throw UsageError("group order for d > 65535 does not fit 64 bits");
    unsigned __int128 order = 1;
    {
        uint64_t d4 = static_cast<uint64_t>(d) * d;
        order = static_cast<unsigned __int128>(d4) * d4;
    }
    uint32_t rest = d;
    for (uint32_t l = 2; static_cast<uint64_t>(l) * l <= rest; ++l) {
        if (rest % l != 0) continue;
        while (rest % l == 0) rest /= l;
        uint64_t l3 = static_cast<uint64_t>(l) * l * l;
        order = order / l3 * (l - 1) * (static_cast<uint64_t>(l) * l - 1);
    }
    if (rest > 1) {
        uint64_t l = rest;
        order = order / (l * l * l) * (l - 1) * (l * l - 1);
    }
    return static_cast<uint64_t>(order);
}

struct Gl2Subgroup {
    uint32_t d = 2;
    std::vector<Gl2Element> elements;  // sorted by key
};

// Closure of the generators under multiplication, BFS with a hard element
// cap. Finite group, so inverses come for free.
inline Gl2Subgroup generate_subgroup(const std::vector<Gl2Element>& generators, uint32_t d,
                                     size_t cap = 1'000'000) {
    for (const auto& g : generators)
        if (g.d != d) throw UsageError("generator modulus differs from subgroup modulus");
    Gl2Subgroup out;
    out.d = d;
    std::unordered_set<uint64_t> seen;
    std::queue<Gl2Element> frontier;
    Gl2Element id = Gl2Element::identity(d);
    seen.insert(id.key());
    out.elements.push_back(id);
    frontier.push(id);
    while (!frontier.empty()) {
        Gl2Element cur = frontier.front();
        frontier.pop();
        for (const auto& g : generators) {
            Gl2Element next = gl2_mul(cur, g);
            if (seen.insert(next.key()).second) {
                if (out.elements.size() + 1 > cap)
                    throw SizeCapExceededError("subgroup closure exceeded " +
                                               std::to_string(cap) + " elements");
                out.elements.push_back(next);
                frontier.push(next);
            }
        }
    }
    std::sort(out.elements.begin(), out.elements.end(),
              [](const Gl2Element& a, const Gl2Element& b) { return a.key() < b.key(); });
    return out;
}

// Residues alpha with 1 + det(g) - tr(g) ≡ alpha (mod d) for every g in the
// subgroup. The identity contributes 0, so the set is {0} or empty.
inline std::set<uint32_t> serre_condition(const Gl2Subgroup& group) {
    std::set<uint32_t> out;
    bool first = true;
    uint32_t common = 0;
    for (const auto& g : group.elements) {
        uint32_t v = static_cast<uint32_t>((1ull + g.det() + 2ull * g.d - g.trace()) % g.d);
        if (first) {
            common = v;
            first = false;
        } else if (v != common) {
            return out;
        }
    }
    if (!first) out.insert(common);
    return out;
}

// Accepts "a,b;c,d|..." and friends: any separators work, entries are read
// in row-major groups of four.
inline std::vector<Gl2Element> parse_generator_list(std::string_view text, uint32_t d) {
    std::vector<long long> values;
    size_t i = 0;
    while (i < text.size()) {
        char ch = text[i];
        if (ch == '-' || (ch >= '0' && ch <= '9')) {
            size_t j = i + 1;
            while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
            if (j == i + 1 && ch == '-') throw ParseError("bare sign in generator list");
            values.push_back(std::stoll(std::string(text.substr(i, j - i))));
            i = j;
        } else {
            ++i;
        }
    }
    if (values.empty() || values.size() % 4 != 0)
        throw ParseError("generator list needs a multiple of four entries, got " +
                         std::to_string(values.size()));
    std::vector<Gl2Element> out;
    for (size_t k = 0; k < values.size(); k += 4)
        out.push_back(Gl2Element::make(d, values[k], values[k + 1], values[k + 2], values[k + 3]));
    return out;
}

}  // namespace ellcong
