#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "ellcong/integer.hpp"

namespace ellcong {

namespace detail {

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline uint64_t powmod_u64(uint64_t base, uint64_t exp, uint64_t m) {
    uint64_t r = 1 % m;
    base %= m;
    while (exp != 0) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

}  // namespace detail

// Deterministic Miller-Rabin; the fixed witness set decides primality for all
// 64-bit inputs.
inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = detail::powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = detail::mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline uint64_t next_prime_u64(uint64_t n) {
    uint64_t c = n + 1;
    if (c <= 2) return 2;
    if ((c & 1) == 0) ++c;
    while (!is_prime_u64(c)) c += 2;
    return c;
}

// All primes <= limit, by sieve of Eratosthenes.
inline std::vector<uint64_t> primes_up_to(uint64_t limit) {
    std::vector<uint64_t> out;
    if (limit < 2) return out;
    std::vector<uint8_t> composite(limit + 1, 0);
    for (uint64_t i = 2; i * i <= limit; ++i)
        if (!composite[i])
            for (uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
    for (uint64_t i = 2; i <= limit; ++i)
        if (!composite[i]) out.push_back(i);
    return out;
}

// Primes in [lo, hi], ascending. Segmented so hi may be large while memory
// stays proportional to the block size.
template <typename Fn>
inline void for_each_prime(uint64_t lo, uint64_t hi, Fn&& fn) {
    if (hi < 2 || hi < lo) return;
    if (lo < 2) lo = 2;
    const uint64_t root = isqrt_u64(hi);
    const std::vector<uint64_t> base = primes_up_to(root);
    const uint64_t block = 1ull << 20;
    std::vector<uint8_t> seg;
    for (uint64_t start = lo; start <= hi; start += block) {
        uint64_t end = std::min(hi, start + block - 1);
        seg.assign(end - start + 1, 0);
        for (uint64_t q : base) {
            uint64_t first = std::max(q * q, ((start + q - 1) / q) * q);
            for (uint64_t j = first; j <= end; j += q) seg[j - start] = 1;
        }
        for (uint64_t v = start; v <= end; ++v)
            if (!seg[v - start]) fn(v);
        if (end == hi) break;
    }
}

inline std::vector<uint64_t> primes_in_range(uint64_t lo, uint64_t hi) {
    std::vector<uint64_t> out;
    for_each_prime(lo, hi, [&](uint64_t p) { out.push_back(p); });
    return out;
}

inline uint64_t euler_phi_u64(uint64_t n) {
    uint64_t result = n;
    for (uint64_t q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            while (n % q == 0) n /= q;
            result -= result / q;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

}  // namespace ellcong
