#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ellcong/counting.hpp"
#include "ellcong/curve.hpp"
#include "ellcong/factor.hpp"

namespace ellcong {

struct TorsionOptions {
    int bound_primes = 8;              // good odd primes folded into the gcd bound
    FactorOptions factoring;
    long long x_scan_limit = 1'000'000;  // fallback search window for |x|
};

struct TorsionPoint {
    Int x, y;
};

struct TorsionGroup {
    uint64_t order = 1;
    bool cyclic = true;  // false: Z/2 x Z/(order/2)
    std::vector<TorsionPoint> points;      // all affine torsion points, ascending
    std::vector<TorsionPoint> generators;  // empty, one, or two points

    std::string structure_name() const {
        if (order == 1) return "trivial";
        if (cyclic) return "Z/" + std::to_string(order);
        return "Z/2 x Z/" + std::to_string(order / 2);
    }
};

// gcd of good-reduction group orders; the rational torsion order divides it.
inline uint64_t torsion_order_bound(const CurveQ& e, const TorsionOptions& opts = {}) {
    uint64_t g = 0;
    int used = 0;
    uint64_t p = 2;
    while (used < opts.bound_primes) {
        p = next_prime_u64(p);
        if (!e.good_reduction_at(p)) continue;
        auto curve = reduce_mod_p(e, PrimeField(p));
        g = gcd_u64(g, count_points(*curve));
        ++used;
        if (g == 1) break;
    }
    return g == 0 ? 1 : g;
}

namespace detail {

struct RatPoint {
    Rat x, y;
    bool infinity = true;
};

inline RatPoint rat_add(const RatPoint& p, const RatPoint& q, const Rat& a) {
    if (p.infinity) return q;
    if (q.infinity) return p;
    Rat lambda;
    if (p.x == q.x) {
        if (p.y + q.y == 0) return RatPoint{};
        lambda = (3 * p.x * p.x + a) / (2 * p.y);
    } else {
        lambda = (q.y - p.y) / (q.x - p.x);
    }
    Rat x3 = lambda * lambda - p.x - q.x;
    Rat y3 = lambda * (p.x - x3) - p.y;
    return RatPoint{x3, y3, false};
}

// Smallest k <= 12 with k*P = O, or 0 when P is not torsion. Any rational
// torsion element has order at most 12, and a non-integral multiple rules
// torsion out immediately.
inline int rational_order(const RatPoint& p0, const Rat& a) {
    RatPoint acc = p0;
    for (int k = 1; k <= 12; ++k) {
        if (acc.infinity) return k;
        if (acc.x.get_den() != 1 || acc.y.get_den() != 1) return 0;
        acc = rat_add(acc, p0, a);
    }
    return 0;
}

// Integer roots of x^3 + a*x + c, ascending. Splits the line at the critical
// points so every segment is strictly monotone, then bisects each.
inline std::vector<Int> cubic_integer_roots(const Int& a, const Int& c) {
    std::vector<Int> roots;
    auto f = [&](const Int& x) -> Int { return x * x * x + a * x + c; };
    Int aa = abs(a), ac = abs(c);
    Int bound = 1 + (aa > ac ? aa : ac);

    auto search = [&](Int lo, Int hi, bool increasing) {
        while (lo <= hi) {
            Int mid = lo + hi;
            mpz_fdiv_q_2exp(mid.get_mpz_t(), mid.get_mpz_t(), 1);
            Int v = f(mid);
            if (v == 0) {
                roots.push_back(mid);
                return;
            }
            if ((v < 0) == increasing)
                lo = mid + 1;
            else
                hi = mid - 1;
        }
    };

    if (a >= 0) {
        search(-bound, bound, true);
    } else {
        Int s;
        Int third = (-a) / 3;
        mpz_sqrt(s.get_mpz_t(), third.get_mpz_t());
        search(-bound, -(s + 1), true);
        search(-s, s, false);
        search(s + 1, bound, true);
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

// Rejects constants c for which x^3 + a*x + c = 0 has no solution modulo a
// few fixed moduli; a cheap pre-filter in front of root isolation.
class CubicSieve {
public:
    explicit CubicSieve(const Int& a) {
        for (uint32_t m : kMods) {
            std::vector<uint8_t> table(m, 0);
            uint64_t am = mpz_fdiv_ui(a.get_mpz_t(), m);
            for (uint64_t x = 0; x < m; ++x)
                table[(x * x % m * x + am * x) % m] = 1;
            tables_.push_back(std::move(table));
        }
    }

    bool feasible(const Int& c) const {
        for (size_t i = 0; i < kMods.size(); ++i) {
            uint32_t m = kMods[i];
            uint64_t cm = mpz_fdiv_ui(c.get_mpz_t(), m);
            if (!tables_[i][(m - cm) % m]) return false;
        }
        return true;
    }

private:
    static constexpr std::array<uint32_t, 4> kMods{64, 63, 65, 61};
    std::vector<std::vector<uint8_t>> tables_;
};

using CertifiedMap = std::map<std::pair<Int, Int>, int>;

inline void close_under_addition(CertifiedMap& certified, const Rat& a) {
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::pair<Int, Int>> pts;
        pts.reserve(certified.size());
        for (const auto& [key, ord] : certified) pts.push_back(key);
        for (size_t i = 0; i < pts.size(); ++i) {
            for (size_t j = i; j < pts.size(); ++j) {
                RatPoint pi{Rat(pts[i].first), Rat(pts[i].second), false};
                RatPoint pj{Rat(pts[j].first), Rat(pts[j].second), false};
                RatPoint sum = rat_add(pi, pj, a);
                if (sum.infinity) continue;
                if (sum.x.get_den() != 1 || sum.y.get_den() != 1)
                    throw InternalError("sum of torsion points is not integral");
                std::pair<Int, Int> key{sum.x.get_num(), sum.y.get_num()};
                if (certified.count(key)) continue;
                int ord = rational_order(sum, a);
                if (ord == 0) throw InternalError("sum of torsion points is not torsion");
                certified[key] = ord;
                certified[{key.first, -key.second}] = ord;
                grew = true;
            }
        }
        if (certified.size() + 1 > 16)
            throw InternalError("torsion closure exceeded the rational torsion maximum");
    }
}

// Scans |x| <= limit for integral points, with square-residue masks keeping
// bignum work off the common path.
template <typename Fn>
inline void x_scan_integral_points(const CurveQ& e, long long limit, Fn&& try_candidate) {
    constexpr std::array<uint32_t, 4> mods{64, 63, 65, 61};
    std::array<std::vector<uint8_t>, 4> square_mask;
    for (size_t i = 0; i < mods.size(); ++i) {
        square_mask[i].assign(mods[i], 0);
        for (uint64_t y = 0; y < mods[i]; ++y) square_mask[i][y * y % mods[i]] = 1;
    }
    const Int x0 = -Int(static_cast<long>(limit));
    // f, Δf, Δ²f at x0; Δ³f = 6.
    Int f0 = x0 * x0 * x0 + e.a() * x0 + e.b();
    Int d1_0 = 3 * x0 * x0 + 3 * x0 + 1 + e.a();
    Int d2_0 = 6 * x0 + 6;
    std::array<uint64_t, 4> f_m, d1_m, d2_m, d3_m;
    for (size_t i = 0; i < mods.size(); ++i) {
        f_m[i] = mpz_fdiv_ui(f0.get_mpz_t(), mods[i]);
        d1_m[i] = mpz_fdiv_ui(d1_0.get_mpz_t(), mods[i]);
        d2_m[i] = mpz_fdiv_ui(d2_0.get_mpz_t(), mods[i]);
        d3_m[i] = 6 % mods[i];
    }
    for (long long x = -limit; x <= limit; ++x) {
        bool plausible = true;
        for (size_t i = 0; i < mods.size(); ++i)
            if (!square_mask[i][f_m[i]]) {
                plausible = false;
                break;
            }
        if (plausible) {
            Int xv(static_cast<long>(x));
            Int fx = xv * xv * xv + e.a() * xv + e.b();
            if (fx >= 0 && mpz_perfect_square_p(fx.get_mpz_t()) != 0) {
                Int y;
                mpz_sqrt(y.get_mpz_t(), fx.get_mpz_t());
                try_candidate(xv, y);
            }
        }
        for (size_t i = 0; i < mods.size(); ++i) {
            f_m[i] = (f_m[i] + d1_m[i]) % mods[i];
            d1_m[i] = (d1_m[i] + d2_m[i]) % mods[i];
            d2_m[i] = (d2_m[i] + d3_m[i]) % mods[i];
        }
    }
}

}  // namespace detail

// The full rational torsion subgroup. Certification is unconditional: every
// reported point has a proven finite order, and the group is only returned
// when completeness is established (early order match, complete divisor
// enumeration, or both after the fallback scan).
inline TorsionGroup torsion_group(const CurveQ& e, const TorsionOptions& opts = {}) {
    const Rat a(e.a());
    const uint64_t bound = torsion_order_bound(e, opts);

    detail::CertifiedMap certified;
    auto try_candidate = [&](const Int& x, const Int& y) {
        std::pair<Int, Int> key{x, y};
        if (certified.count(key)) return;
        if (y == 0) {
            certified[key] = 2;
            return;
        }
        detail::RatPoint p{Rat(x), Rat(y), false};
        int ord = detail::rational_order(p, a);
        if (ord > 0) {
            certified[{x, y}] = ord;
            certified[{x, -y}] = ord;
        }
    };

    auto complete_by_bound = [&]() { return certified.size() + 1 == bound; };

    for (const Int& x : detail::cubic_integer_roots(e.a(), e.b())) try_candidate(x, Int(0));

    bool enumeration_complete = false;
    if (!complete_by_bound()) {
        Int disc_core = abs(4 * e.a() * e.a() * e.a() + 27 * e.b() * e.b());
        Factorization fact = factor_integer(disc_core, opts.factoring);
        detail::CubicSieve sieve(e.a());
        bool swept_all = true;
        for (const Int& y : square_divisor_roots(fact)) {
            Int c = e.b() - y * y;
            if (sieve.feasible(c))
                for (const Int& x : detail::cubic_integer_roots(e.a(), c)) try_candidate(x, y);
            if (complete_by_bound()) {
                swept_all = false;
                break;
            }
        }
        enumeration_complete = swept_all && fact.complete();
    }

    detail::close_under_addition(certified, a);
    bool exact = complete_by_bound() || enumeration_complete;
    if (!exact) {
        detail::x_scan_integral_points(e, opts.x_scan_limit, try_candidate);
        detail::close_under_addition(certified, a);
        exact = complete_by_bound();
    }
    if (certified.size() + 1 > bound)
        throw InternalError("certified torsion exceeds the reduction bound");
    if (!exact)
        throw FactorizationTooHardError(
            "cannot certify torsion completeness for " + e.id() +
            ": divisor enumeration incomplete and order below bound");

    TorsionGroup out;
    out.order = certified.size() + 1;
    size_t two_torsion = 0;
    for (const auto& [key, ord] : certified)
        if (key.second == 0) ++two_torsion;
    if (two_torsion != 0 && two_torsion != 1 && two_torsion != 3)
        throw InternalError("impossible 2-torsion count");
    out.cyclic = two_torsion < 3;

    static const std::vector<uint64_t> cyclic_orders{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12};
    static const std::vector<uint64_t> product_orders{4, 8, 12, 16};
    const auto& legal = out.cyclic ? cyclic_orders : product_orders;
    if (std::find(legal.begin(), legal.end(), out.order) == legal.end())
        throw InternalError("torsion order outside the rational possibilities: " +
                            std::to_string(out.order));

    for (const auto& [key, ord] : certified) out.points.push_back({key.first, key.second});

    if (out.order > 1) {
        if (out.cyclic) {
            for (const auto& [key, ord] : certified)
                if (static_cast<uint64_t>(ord) == out.order) {
                    out.generators.push_back({key.first, key.second});
                    break;
                }
            if (out.generators.empty()) throw InternalError("cyclic torsion lacks a generator");
        } else {
            uint64_t half = out.order / 2;
            std::pair<Int, Int> g1;
            bool found = false;
            for (const auto& [key, ord] : certified)
                if (static_cast<uint64_t>(ord) == half) {
                    g1 = key;
                    found = true;
                    break;
                }
            if (!found) throw InternalError("product torsion lacks an order-" +
                                            std::to_string(half) + " element");
            std::map<std::pair<Int, Int>, bool> span;
            detail::RatPoint g{Rat(g1.first), Rat(g1.second), false};
            detail::RatPoint acc = g;
            while (!acc.infinity) {
                span[{acc.x.get_num(), acc.y.get_num()}] = true;
                acc = detail::rat_add(acc, g, a);
            }
            for (const auto& [key, ord] : certified)
                if (key.second == 0 && !span.count(key)) {
                    out.generators.push_back({g1.first, g1.second});
                    out.generators.push_back({key.first, key.second});
                    break;
                }
            if (out.generators.size() != 2)
                throw InternalError("product torsion lacks an independent 2-torsion point");
        }
    }
    return out;
}

}  // namespace ellcong
