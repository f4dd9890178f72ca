#pragma once

#include <cstdint>
#include <optional>

#include "ellcong/errors.hpp"
#include "ellcong/integer.hpp"
#include "ellcong/primes.hpp"

namespace ellcong {

// Canonical residue: value < modulus of the field it is used with. The field
// handle travels separately; mixing residues from different fields is the
// caller's bug.
struct Fp {
    uint64_t value = 0;
    friend bool operator==(const Fp&, const Fp&) = default;
};

class PrimeField {
public:
    // Largest accepted modulus; keeps a.value + b.value and 4*p inside
    // uint64_t and products inside unsigned __int128.
    static constexpr uint64_t max_modulus = 1ull << 62;

    explicit PrimeField(uint64_t p) : p_(p) {
        if (p < 2 || p >= max_modulus)
            throw UsageError("field modulus out of range: " + std::to_string(p));
        if (!is_prime_u64(p))
            throw NotPrimeError("field modulus is not prime: " + std::to_string(p));
    }

    uint64_t modulus() const { return p_; }

    Fp make(uint64_t v) const { return Fp{v % p_}; }

    Fp make_signed(long long v) const {
        long long r = v % static_cast<long long>(p_);
        if (r < 0) r += static_cast<long long>(p_);
        return Fp{static_cast<uint64_t>(r)};
    }

    // mpz -> canonical residue (non-negative, also for negative inputs).
    Fp reduce(const Int& v) const { return Fp{mpz_fdiv_ui(v.get_mpz_t(), p_)}; }

    Fp add(Fp a, Fp b) const {
        uint64_t s = a.value + b.value;
        if (s >= p_) s -= p_;
        return Fp{s};
    }

    Fp sub(Fp a, Fp b) const {
        return Fp{a.value >= b.value ? a.value - b.value : a.value + p_ - b.value};
    }

    Fp neg(Fp a) const { return Fp{a.value == 0 ? 0 : p_ - a.value}; }

    Fp mul(Fp a, Fp b) const { return Fp{detail::mulmod_u64(a.value, b.value, p_)}; }

    Fp pow(Fp a, uint64_t e) const { return Fp{detail::powmod_u64(a.value, e, p_)}; }

    // Extended Euclid; throws on zero.
    Fp inv(Fp a) const {
        if (a.value == 0) throw NonInvertibleError("inverse of 0 mod " + std::to_string(p_));
        int64_t t = 0, new_t = 1;
        int64_t r = static_cast<int64_t>(p_), new_r = static_cast<int64_t>(a.value);
        while (new_r != 0) {
            int64_t q = r / new_r;
            int64_t tmp = t - q * new_t;
            t = new_t;
            new_t = tmp;
            tmp = r - q * new_r;
            r = new_r;
            new_r = tmp;
        }
        if (t < 0) t += static_cast<int64_t>(p_);
        return Fp{static_cast<uint64_t>(t)};
    }

    Fp div(Fp a, Fp b) const { return mul(a, inv(b)); }

    // Legendre symbol as -1 / 0 / +1 via Euler's criterion; undefined in
    // characteristic 2.
    int legendre(Fp a) const {
        if (p_ == 2) throw UnsupportedCharacteristicError("legendre symbol needs odd modulus");
        if (a.value == 0) return 0;
        uint64_t e = detail::powmod_u64(a.value, (p_ - 1) / 2, p_);
        return e == 1 ? 1 : -1;
    }

    // Tonelli-Shanks; returns the smaller of the two roots, or nullopt for a
    // non-residue.
    std::optional<Fp> sqrt(Fp a) const {
        if (a.value == 0) return Fp{0};
        if (p_ == 2) return a;
        if (legendre(a) != 1) return std::nullopt;
        uint64_t r;
        if (p_ % 4 == 3) {
            r = detail::powmod_u64(a.value, (p_ + 1) / 4, p_);
        } else {
            uint64_t q = p_ - 1;
            int s = 0;
            while ((q & 1) == 0) {
                q >>= 1;
                ++s;
            }
            uint64_t z = 2;
            while (legendre(Fp{z}) != -1) ++z;
            uint64_t m = static_cast<uint64_t>(s);
            uint64_t c = detail::powmod_u64(z, q, p_);
            uint64_t t = detail::powmod_u64(a.value, q, p_);
            r = detail::powmod_u64(a.value, (q + 1) / 2, p_);
            while (t != 1) {
                uint64_t i = 0;
                uint64_t t2 = t;
                while (t2 != 1) {
                    t2 = detail::mulmod_u64(t2, t2, p_);
                    ++i;
                }
                uint64_t b = c;
                for (uint64_t k = 0; k + i + 1 < m; ++k) b = detail::mulmod_u64(b, b, p_);
                m = i;
                c = detail::mulmod_u64(b, b, p_);
                t = detail::mulmod_u64(t, c, p_);
                r = detail::mulmod_u64(r, b, p_);
            }
        }
        uint64_t other = p_ - r;
        return Fp{r <= other ? r : other};
    }

    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

private:
    uint64_t p_;
};

}  // namespace ellcong
