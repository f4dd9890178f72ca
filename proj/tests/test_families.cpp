#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "ellcong/congruence.hpp"
#include "ellcong/families.hpp"
#include "ellcong/torsion.hpp"

using namespace ellcong;

TEST_CASE("family specializations at spot values") {
    FamilyCurve c = family_curve(7, Int(1));
    REQUIRE(!c.singular);
    REQUIRE(c.a == -3483);
    REQUIRE(c.b == 121014);
    REQUIRE(c.curve.has_value());
    REQUIRE(c.curve->id() == "-3483,121014");

    FamilyCurve s = family_curve(7, Int(0));
    REQUIRE(s.singular);
    REQUIRE(!s.curve.has_value());
    REQUIRE(s.a == -27);
    REQUIRE(s.b == 54);
}

TEST_CASE("singular parameters of each family") {
    const std::map<int, std::set<long long>> expected{
        {16, {-1, 0, 1}}, {12, {-2, -1, 0, 1}}, {10, {-1, 0, 1}}, {9, {0, 1}}, {7, {-1, 0}}};
    for (const auto& [d, ts] : expected) {
        std::set<long long> got;
        for (long long t = -5; t <= 5; ++t)
            if (family_curve(d, Int(static_cast<long>(t))).singular) got.insert(t);
        REQUIRE(got == ts);
    }
}

TEST_CASE("expanded coefficients match the factored forms everywhere") {
    uint64_t state = 7;
    for (int d : {16, 12, 10, 9, 7}) {
        for (int i = 0; i < 400; ++i) {
            long long t = static_cast<long long>(splitmix64(state) % 2000001) - 1000000;
            REQUIRE_NOTHROW(family_coefficients(d, Int(static_cast<long>(t))));
        }
    }
}

TEST_CASE("unsupported divisors are refused") {
    for (int d : {0, 1, 11, 13, 14, 15, 17, -3})
        REQUIRE_THROWS_AS(family_for_divisor(d), UnsupportedFamilyError);
}

TEST_CASE("divisors delegate to the covering family") {
    REQUIRE(family_for_divisor(16) == 16);
    REQUIRE(family_for_divisor(8) == 16);
    REQUIRE(family_for_divisor(4) == 16);
    REQUIRE(family_for_divisor(2) == 16);
    REQUIRE(family_for_divisor(12) == 12);
    REQUIRE(family_for_divisor(6) == 12);
    REQUIRE(family_for_divisor(3) == 12);
    REQUIRE(family_for_divisor(10) == 10);
    REQUIRE(family_for_divisor(5) == 10);
    REQUIRE(family_for_divisor(9) == 9);
    REQUIRE(family_for_divisor(7) == 7);

    FamilyCurve c = family_curve_for_divisor(8, Int(2));
    REQUIRE(c.d == 16);
    REQUIRE(c.requested == 8);
    FamilyCurve full = family_curve(16, Int(2));
    REQUIRE(c.a == full.a);
    REQUIRE(c.b == full.b);
}

TEST_CASE("family members carry the advertised torsion") {
    const std::map<int, uint64_t> two_torsion{{16, 3}, {12, 3}, {10, 1}, {9, 0}, {7, 0}};
    for (int d : {16, 12, 10, 9, 7}) {
        FamilyCurve c = family_curve(d, Int(2));
        REQUIRE(!c.singular);
        TorsionGroup g = torsion_group(*c.curve);
        REQUIRE(g.order == static_cast<uint64_t>(d));
        size_t two = 0;
        for (const auto& pt : g.points)
            if (pt.y == 0) ++two;
        REQUIRE(two == two_torsion.at(d));
        REQUIRE(g.cyclic == (two < 3));
    }
}

TEST_CASE("point counts at good primes vanish mod d") {
    for (int d : {16, 12, 10, 9, 7}) {
        FamilyCurve c = family_curve(d, Int(3));
        REQUIRE(!c.singular);
        CongruenceReport r =
            frobenius_congruence_check(*c.curve, CongruencePair(d, 0), {0, 300});
        REQUIRE(r.holds());
        REQUIRE(r.good_tested > 30);
        REQUIRE(r.matching == r.good_tested);
    }
}
