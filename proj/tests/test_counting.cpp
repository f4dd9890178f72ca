#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ellcong/counting.hpp"
#include "ellcong/survey.hpp"

using namespace ellcong;

namespace {

CurveFp curve_mod(long long a, long long b, uint64_t p) {
    PrimeField f(p);
    return CurveFp(f, f.make_signed(a), f.make_signed(b));
}

}  // namespace

TEST_CASE("exhaustive counts at small primes") {
    REQUIRE(count_exhaustive(curve_mod(0, 1, 5)) == 6);
    REQUIRE(count_exhaustive(curve_mod(1, 1, 5)) == 9);
    REQUIRE(count_exhaustive(curve_mod(0, 1, 7)) == 12);
    // F_2, counted by hand: (0,1), (1,1), infinity.
    REQUIRE(count_exhaustive(curve_mod(1, 1, 2)) == 3);
    // F_3, y^2 = x^3 + x + 1: (0,1), (0,2), (1,0), infinity.
    REQUIRE(count_exhaustive(curve_mod(1, 1, 3)) == 4);
}

TEST_CASE("exhaustive counts satisfy the trace bound") {
    for (uint64_t p : primes_in_range(5, 200))
        for (long long a = -2; a <= 2; ++a)
            for (long long b = 1; b <= 3; ++b) {
                if ((4 * a * a * a + 27 * b * b) % static_cast<long long>(p) == 0) continue;
                uint64_t n = count_exhaustive(curve_mod(a, b, p));
                double trace = std::abs(static_cast<double>(p) + 1.0 - static_cast<double>(n));
                REQUIRE(trace * trace <= 4.0 * static_cast<double>(p) + 1e-9);
            }
}

TEST_CASE("baby-step giant-step refuses tiny fields") {
    REQUIRE_THROWS_AS(count_bsgs(curve_mod(1, 1, 457)), UsageError);
    REQUIRE_NOTHROW(count_bsgs(curve_mod(1, 1, 461)));
}

TEST_CASE("baby-step giant-step agrees with exhaustive counting") {
    uint64_t state = 20260819;
    for (uint64_t p : {461ull, 463ull, 467ull, 1009ull, 2003ull, 5003ull, 10007ull}) {
        for (int trial = 0; trial < 6; ++trial) {
            long long a = static_cast<long long>(splitmix64(state) % p);
            long long b = static_cast<long long>(splitmix64(state) % p);
            PrimeField f(p);
            Fp d = f.add(f.mul(f.make(4), f.mul(f.mul(f.make_signed(a), f.make_signed(a)),
                                                f.make_signed(a))),
                         f.mul(f.make(27), f.mul(f.make_signed(b), f.make_signed(b))));
            if (d.value == 0) continue;
            CurveFp e = curve_mod(a, b, p);
            REQUIRE(count_bsgs(e) == count_exhaustive(e));
        }
    }
}

TEST_CASE("dispatch thresholds select the same answer") {
    CurveFp e = curve_mod(2, 3, 1009);
    uint64_t expected = count_exhaustive(e);
    CountingOptions force_bsgs;
    force_bsgs.exhaustive_threshold = 500;
    REQUIRE(count_points(e) == expected);
    REQUIRE(count_points(e, force_bsgs) == expected);
    // Below the hard floor the threshold is clamped and counting stays exhaustive.
    CountingOptions tiny;
    tiny.exhaustive_threshold = 2;
    REQUIRE(count_points(curve_mod(1, 1, 5), tiny) == 9);
}

TEST_CASE("frobenius records and supersingularity") {
    FrobeniusRecord good = FrobeniusRecord::good_reduction(5, 6);
    REQUIRE(good.good);
    REQUIRE(good.a_p == 0);
    REQUIRE(good.supersingular);
    REQUIRE(is_supersingular(good));

    FrobeniusRecord ordinary = FrobeniusRecord::good_reduction(5, 9);
    REQUIRE(ordinary.a_p == -3);
    REQUIRE(!ordinary.supersingular);

    FrobeniusRecord bad = FrobeniusRecord::bad_reduction(2);
    REQUIRE(!bad.good);
    REQUIRE_THROWS_AS(is_supersingular(bad), NotApplicableError);

    // count = 16 at p = 5 would need a_p = -10, outside the trace bound.
    REQUIRE_THROWS_AS(FrobeniusRecord::good_reduction(5, 16), InternalError);
}

TEST_CASE("scan covers exactly the primes in range") {
    CurveQ e(Int(0), Int(1));
    ScanResult r = frobenius_scan(e, {0, 50});
    std::vector<uint64_t> ps;
    for (const auto& rec : r.records) ps.push_back(rec.p);
    REQUIRE(ps == primes_in_range(5, 50));

    ScanResult small = frobenius_scan(e, {0, 50, true});
    REQUIRE(small.records.size() == ps.size() + 2);
    REQUIRE(small.records[0].p == 2);
    REQUIRE(!small.records[0].good);
    REQUIRE(small.records[1].p == 3);
    REQUIRE(!small.records[1].good);

    // (1,1) has disc -496 = -16 * 31: p = 3 is good and reachable.
    ScanResult with3 = frobenius_scan(CurveQ(Int(1), Int(1)), {2, 10, true});
    REQUIRE(with3.records[1].p == 3);
    REQUIRE(with3.records[1].good);
    REQUIRE(with3.records[1].count == 4);
}

TEST_CASE("supersingular primes of y^2 = x^3 + 1 are the 2 mod 3 primes") {
    CurveQ e(Int(0), Int(1));
    std::vector<uint64_t> ss = supersingular_primes(e, {0, 200});
    std::vector<uint64_t> expected;
    for (uint64_t p : primes_in_range(5, 200))
        if (p % 3 == 2) expected.push_back(p);
    REQUIRE(ss == expected);
}

TEST_CASE("thread count does not change scan output") {
    CurveQ e(Int(-2), Int(7));
    ScanOptions serial;
    ScanOptions parallel;
    parallel.threads = 4;
    ScanResult a = frobenius_scan(e, {0, 2000}, serial);
    ScanResult b = frobenius_scan(e, {0, 2000}, parallel);
    REQUIRE(a.records.size() == b.records.size());
    for (size_t i = 0; i < a.records.size(); ++i) {
        REQUIRE(a.records[i].p == b.records[i].p);
        REQUIRE(a.records[i].good == b.records[i].good);
        REQUIRE(a.records[i].count == b.records[i].count);
        REQUIRE(a.records[i].a_p == b.records[i].a_p);
    }
}

TEST_CASE("scan trusts and reports cached traces") {
    CurveQ e(Int(0), Int(1));
    CurveTraceCache cache;
    cache[5] = CachedTrace{true, 0};
    cache[7] = CachedTrace{true, 1};  // deliberately wrong: true a_7 is -4
    cache[11] = CachedTrace{false, 0};

    ScanOptions opts;
    opts.cache = &cache;
    ScanResult r = frobenius_scan(e, {0, 13}, opts);
    REQUIRE(r.records.size() == 4);
    REQUIRE(r.records[0].count == 6);
    REQUIRE(r.records[1].count == 7);   // reconstructed from the cached lie
    REQUIRE(!r.records[2].good);        // cached bad reduction wins
    REQUIRE(r.records[3].count == 12);

    // Only the uncached prime is fresh.
    REQUIRE(r.fresh.size() == 1);
    REQUIRE(r.fresh[0].p == 13);

    // A cached trace outside the Hasse window is rejected outright.
    cache[13] = CachedTrace{true, 100};
    REQUIRE_THROWS_AS(frobenius_scan(e, {0, 13}, opts), InternalError);
}
