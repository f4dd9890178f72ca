#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "ellcong/integer.hpp"

namespace ellcong {

struct FactorOptions {
    uint64_t trial_limit = 1'000'000;   // trial division bound
    int rho_rounds = 24;                // distinct polynomial offsets tried
    uint64_t rho_iterations = 200'000;  // per-round iteration budget
};

struct Factorization {
    std::vector<std::pair<Int, unsigned>> factors;  // ascending primes
    Int cofactor = 1;  // 1 when fully factored, else an unfactored composite
    bool complete() const { return cofactor == 1; }
};

namespace detail {

// Brent's cycle variant of Pollard rho; returns a nontrivial factor of n or
// 0 when the budget runs out. n must be odd, composite, not a prime power.
inline Int pollard_brent(const Int& n, uint64_t c, uint64_t budget) {
    Int y = 2, x, ys, q = 1, g = 1, diff;
    uint64_t r = 1;
    const uint64_t batch = 128;
    uint64_t used = 0;
    while (g == 1 && used < budget) {
        x = y;
        for (uint64_t i = 0; i < r && used < budget; ++i, ++used) y = (y * y + c) % n;
        uint64_t k = 0;
        while (k < r && g == 1 && used < budget) {
            ys = y;
            uint64_t lim = std::min(batch, r - k);
            for (uint64_t i = 0; i < lim && used < budget; ++i, ++used) {
                y = (y * y + c) % n;
                diff = x - y;
                q = q * abs(diff) % n;
            }
            g = gcd(q, n);
            k += batch;
        }
        r *= 2;
    }
    if (g == n) {
        do {
            ys = (ys * ys + c) % n;
            diff = x - ys;
            g = gcd(abs(diff), n);
        } while (g == 1);
    }
    if (g == 1 || g == n) return 0;
    return g;
}

inline void insert_factor(std::vector<std::pair<Int, unsigned>>& factors, const Int& q,
                          unsigned count) {
    for (auto& [base, exp] : factors)
        if (base == q) {
            exp += count;
            return;
        }
    factors.push_back({q, count});
}

// Splits m into prime factors of `factors` where possible; leftovers multiply
// into cofactor.
inline void factor_rec(Int m, const FactorOptions& opts,
                       std::vector<std::pair<Int, unsigned>>& factors, Int& cofactor,
                       int depth = 0) {
    if (m == 1) return;
    if (mpz_probab_prime_p(m.get_mpz_t(), 40) != 0) {
        insert_factor(factors, m, 1);
        return;
    }
    // Perfect powers split for free.
    if (mpz_perfect_power_p(m.get_mpz_t()) != 0) {
        for (unsigned long k = 2; k <= mpz_sizeinbase(m.get_mpz_t(), 2); ++k) {
            Int root;
            if (mpz_root(root.get_mpz_t(), m.get_mpz_t(), k) != 0) {
                std::vector<std::pair<Int, unsigned>> sub;
                Int sub_cof = 1;
                factor_rec(root, opts, sub, sub_cof, depth + 1);
                for (auto& [base, exp] : sub) insert_factor(factors, base, exp * k);
                if (sub_cof != 1) {
                    Int pow;
                    mpz_pow_ui(pow.get_mpz_t(), sub_cof.get_mpz_t(), k);
                    cofactor *= pow;
                }
                return;
            }
        }
    }
    if (depth > 64) {
        cofactor *= m;
        return;
    }
    for (int round = 0; round < opts.rho_rounds; ++round) {
        Int g = pollard_brent(m, static_cast<uint64_t>(round) + 1, opts.rho_iterations);
        if (g != 0) {
            factor_rec(g, opts, factors, cofactor, depth + 1);
            factor_rec(m / g, opts, factors, cofactor, depth + 1);
            return;
        }
    }
    cofactor *= m;
}

}  // namespace detail

// Factors n > 0. Trial division, perfect-power splitting, then Pollard rho
// within a fixed budget; what remains lands in cofactor.
inline Factorization factor_integer(Int n, const FactorOptions& opts = {}) {
    if (n <= 0) throw UsageError("factorization needs a positive integer");
    Factorization out;
    if (n == 1) return out;
    const uint64_t limit = std::min<uint64_t>(opts.trial_limit, (1ull << 31) - 1);
    for (uint64_t q = 2; q <= limit; q = (q == 2 ? 3 : q + 2)) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), q) != 0) {
            unsigned e = 0;
            do {
                mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), q);
                ++e;
            } while (mpz_divisible_ui_p(n.get_mpz_t(), q) != 0);
            out.factors.push_back({Int(static_cast<unsigned long>(q)), e});
        }
        if (n == 1) break;
        // q^2 fits an unsigned long for any trial bound we accept.
        if (mpz_cmp_ui(n.get_mpz_t(), q * q) < 0) break;
    }
    if (n != 1) detail::factor_rec(n, opts, out.factors, out.cofactor);
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

// All d with d*d dividing the factored part, ascending.
inline std::vector<Int> square_divisor_roots(const Factorization& f) {
    std::vector<Int> roots{1};
    for (const auto& [base, exp] : f.factors) {
        unsigned half = exp / 2;
        if (half == 0) continue;
        size_t n = roots.size();
        Int pw = 1;
        for (unsigned e = 1; e <= half; ++e) {
            pw *= base;
            for (size_t i = 0; i < n; ++i) roots.push_back(roots[i] * pw);
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace ellcong
