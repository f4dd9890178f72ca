#include <catch2/catch_amalgamated.hpp>

#include "ellcong/fp.hpp"
#include "ellcong/primes.hpp"

using namespace ellcong;

TEST_CASE("field construction validates the modulus") {
    REQUIRE_THROWS_AS(PrimeField(0), UsageError);
    REQUIRE_THROWS_AS(PrimeField(1), UsageError);
    REQUIRE_THROWS_AS(PrimeField(4), NotPrimeError);
    REQUIRE_THROWS_AS(PrimeField(1ull << 62), UsageError);
    REQUIRE(PrimeField(2).modulus() == 2);
    REQUIRE(PrimeField((1ull << 61) - 1).modulus() == (1ull << 61) - 1);
}

TEST_CASE("arithmetic in F_5") {
    PrimeField f(5);
    REQUIRE(f.mul(f.make(3), f.make(4)).value == 2);
    REQUIRE(f.add(f.make(3), f.make(4)).value == 2);
    REQUIRE(f.sub(f.make(1), f.make(3)).value == 3);
    REQUIRE(f.neg(f.make(0)).value == 0);
    REQUIRE(f.neg(f.make(2)).value == 3);
    REQUIRE(f.pow(f.make(2), 4).value == 1);
    REQUIRE(f.inv(f.make(4)).value == 4);
    REQUIRE(f.div(f.make(3), f.make(4)).value == 2);
    REQUIRE_THROWS_AS(f.inv(f.make(0)), NonInvertibleError);
}

TEST_CASE("signed and bignum reduction produce canonical residues") {
    PrimeField f(5);
    REQUIRE(f.make_signed(-3).value == 2);
    REQUIRE(f.make_signed(-5).value == 0);
    REQUIRE(f.make_signed(7).value == 2);
    REQUIRE(f.reduce(Int(-13)).value == 2);
    REQUIRE(f.reduce(Int("123456789012345678901234567890")).value ==
            mpz_fdiv_ui(Int("123456789012345678901234567890").get_mpz_t(), 5));
}

TEST_CASE("inverse round-trips across several fields") {
    for (uint64_t p : {5ull, 97ull, 1009ull, 65537ull}) {
        PrimeField f(p);
        uint64_t state = p;
        for (int i = 0; i < 200; ++i) {
            Fp a = f.make(splitmix64(state));
            if (a.value == 0) continue;
            REQUIRE(f.mul(a, f.inv(a)).value == 1);
        }
    }
}

TEST_CASE("legendre symbol basics") {
    PrimeField f(5);
    REQUIRE(f.legendre(f.make(0)) == 0);
    REQUIRE(f.legendre(f.make(1)) == 1);
    REQUIRE(f.legendre(f.make(2)) == -1);
    REQUIRE(f.legendre(f.make(4)) == 1);
    REQUIRE_THROWS_AS(PrimeField(2).legendre(Fp{1}), UnsupportedCharacteristicError);
}

TEST_CASE("legendre symbol is multiplicative") {
    for (uint64_t p : {13ull, 1009ull, 104729ull}) {
        PrimeField f(p);
        uint64_t state = p * 7;
        for (int i = 0; i < 100; ++i) {
            Fp a = f.make(1 + splitmix64(state) % (p - 1));
            Fp b = f.make(1 + splitmix64(state) % (p - 1));
            REQUIRE(f.legendre(f.mul(a, b)) == f.legendre(a) * f.legendre(b));
        }
    }
}

TEST_CASE("square roots agree with the legendre symbol") {
    // p = 13 exercises the 2-adic loop, p = 19 the p % 4 == 3 shortcut.
    for (uint64_t p : {13ull, 17ull, 19ull, 41ull, 73ull, 104729ull}) {
        PrimeField f(p);
        REQUIRE(f.sqrt(f.make(0))->value == 0);
        uint64_t state = p * 31;
        for (int i = 0; i < 100; ++i) {
            Fp a = f.make(splitmix64(state));
            auto r = f.sqrt(a);
            if (f.legendre(a) == -1) {
                REQUIRE(!r.has_value());
            } else {
                REQUIRE(r.has_value());
                REQUIRE(f.mul(*r, *r) == a);
                REQUIRE(r->value <= p - r->value);
            }
        }
    }
}

TEST_CASE("square roots at a 62-bit modulus") {
    PrimeField f((1ull << 61) - 1);
    Fp a = f.make(123456789);
    Fp sq = f.mul(a, a);
    auto r = f.sqrt(sq);
    REQUIRE(r.has_value());
    REQUIRE(f.mul(*r, *r) == sq);
}

TEST_CASE("primality test matches a sieve") {
    std::vector<uint64_t> sieve = primes_up_to(10000);
    size_t idx = 0;
    for (uint64_t n = 0; n <= 10000; ++n) {
        bool in_sieve = idx < sieve.size() && sieve[idx] == n;
        if (in_sieve) ++idx;
        REQUIRE(is_prime_u64(n) == in_sieve);
    }
    REQUIRE(is_prime_u64((1ull << 61) - 1));
    REQUIRE(!is_prime_u64((1ull << 61) + 1));
}

TEST_CASE("prime enumeration respects inclusive bounds") {
    REQUIRE(primes_in_range(5, 5) == std::vector<uint64_t>{5});
    REQUIRE(primes_in_range(4, 4).empty());
    REQUIRE(primes_in_range(10, 2).empty());
    REQUIRE(primes_in_range(2, 11) == std::vector<uint64_t>{2, 3, 5, 7, 11});
    std::vector<uint64_t> via_callback;
    for_each_prime(100, 150, [&](uint64_t p) { via_callback.push_back(p); });
    REQUIRE(via_callback == primes_in_range(100, 150));
    REQUIRE(next_prime_u64(7) == 11);
    REQUIRE(next_prime_u64(1) == 2);
}

TEST_CASE("euler phi on small arguments") {
    REQUIRE(euler_phi_u64(1) == 1);
    REQUIRE(euler_phi_u64(2) == 1);
    REQUIRE(euler_phi_u64(7) == 6);
    REQUIRE(euler_phi_u64(12) == 4);
    REQUIRE(euler_phi_u64(16) == 8);
    REQUIRE(euler_phi_u64(97 * 89) == 96 * 88);
}

TEST_CASE("curve coefficient parsing") {
    auto [a, b] = parse_curve_coefficients("-3483,121014");
    REQUIRE(a == -3483);
    REQUIRE(b == 121014);
    auto [c, d] = parse_curve_coefficients(" 0 , 1 ");
    REQUIRE(c == 0);
    REQUIRE(d == 1);
    REQUIRE_THROWS_AS(parse_curve_coefficients("1"), ParseError);
    REQUIRE_THROWS_AS(parse_curve_coefficients("1,2,3"), ParseError);
    REQUIRE_THROWS_AS(parse_curve_coefficients("x,1"), ParseError);
    REQUIRE(format_curve_id(Int(-1), Int(2)) == "-1,2");
}
