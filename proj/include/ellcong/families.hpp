#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "ellcong/curve.hpp"
#include "ellcong/integer.hpp"

namespace ellcong {

// One torsion family: y^2 = x^3 + f_d(t) x + g_d(t) with rational torsion of
// order d at every nonsingular specialization. Coefficients ascending.
struct FamilySpec {
    int d;
    std::vector<long long> f_coeffs;
    std::vector<long long> g_coeffs;
};

namespace detail {

inline const std::array<FamilySpec, 5>& family_table() {
    static const std::array<FamilySpec, 5> table{{
        {16,
         {-27, 0, 216, 0, -324, 0, -216, 0, -6210, 0, -216, 0, -324, 0, 216, 0, -27},
         {54, 0, -648, 0, 2268, 0, -1512, 0, -30294, 0, 112752, 0, 55944, 0, 112752, 0,
          -30294, 0, -1512, 0, 2268, 0, -648, 0, 54}},
        {12,
         {-27, -108, -108, 54, 135, 54, -108, -108, -27},
         {54, 324, 648, 270, -729, -972, -648, -972, -729, 270, 648, 324, 54}},
        {10,
         {-27, 108, 162, -540, -405, 648, 108, -648, -405, 540, 162, -108, -27},
         {54, -324, -162, 2808, 0, -8424, 864, 12312, 972, 0, 972, -12312, 864, 8424, 0,
          -2808, -162, 324, 54}},
        {9,
         {-27, 0, 324, -756, 486, 972, -3078, 4860, -5103, 3456, -1458, 324, -27},
         {54, 0, -972, 2268, 1458, -16524, 39690, -58320, 73386, -109728, 174960, -228420,
          222912, -160380, 84078, -30780, 7290, -972, 54}},
        {7,
         {-27, 108, 378, 0, -945, -1512, -1134, -324, -27},
         {54, -324, -810, 2484, 9396, 11988, 14742, 26244, 30780, 19116, 6318, 972, 54}},
    }};
    return table;
}

inline Int eval_poly(const std::vector<long long>& coeffs, const Int& t) {
    Int r = 0;
    for (size_t i = coeffs.size(); i-- > 0;) r = r * t + Int(static_cast<long>(coeffs[i]));
    return r;
}

inline Int pow4(const Int& v) {
    Int sq = v * v;
    return sq * sq;
}

// The structured product forms the coefficient lists were expanded from;
// evaluated independently as a transcription guard.
inline Int f_factored(int d, const Int& t) {
    switch (d) {
        case 16: {
            Int u4 = pow4(t * t - 1);
            Int t4 = pow4(t);
            return -27 * (u4 * (u4 - 16 * t4) + 256 * t4 * t4);
        }
        case 12:
            return -27 * eval_poly({1, 4, 4, -2, -5, -2, 4, 4, 1}, t);
        case 10: {
            Int s = 1 + t * t;
            Int q = eval_poly({1, -2, -6, 2, 1}, t);
            Int t5 = t * t * t * t * t;
            return -27 * (s * s * q * q - 48 * t5 * (1 + t - t * t));
        }
        case 9:
            return -27 * eval_poly({1, 0, -3, 1}, t) *
                   eval_poly({1, 0, -9, 27, -45, 54, -48, 27, -9, 1}, t);
        case 7:
            return -27 * (t * t + t + 1) * eval_poly({1, -5, -10, 15, 30, 11, 1}, t);
        default:
            throw UnsupportedFamilyError("no torsion family for d=" + std::to_string(d));
    }
}

inline Int g_factored(int d, const Int& t) {
    switch (d) {
        case 16: {
            Int u4 = pow4(t * t - 1);
            Int t4 = pow4(t);
            Int s = u4 + 16 * t4;
            return 54 * s * (s * s - 72 * t4 * u4);
        }
        case 12:
            return 27 * eval_poly({1, 2, 0, 2, 1}, t) *
                   eval_poly({2, 8, 8, -10, -25, -10, 8, 8, 2}, t);
        case 10: {
            Int s = 1 + t * t;
            Int q = eval_poly({1, -2, -6, 2, 1}, t);
            Int t5 = t * t * t * t * t;
            return 54 * s * q * (s * s * q * q - 72 * t5 * (1 + t - t * t));
        }
        case 9:
            return 54 * eval_poly({1, 0, -18, 42, 27, -306, 735, -1080, 1359, -2032, 3240,
                                   -4230, 4128, -2970, 1557, -570, 135, -18, 1},
                                  t);
        case 7:
            return eval_poly({54, -324, -810, 2484, 9396, 11988, 14742, 26244, 30780, 19116,
                              6318, 972, 54},
                             t);
        default:
            throw UnsupportedFamilyError("no torsion family for d=" + std::to_string(d));
    }
}

}  // namespace detail

inline const FamilySpec& family_spec(int d) {
    for (const auto& spec : detail::family_table())
        if (spec.d == d) return spec;
    throw UnsupportedFamilyError("no torsion family for d=" + std::to_string(d));
}

// (f_d(t), g_d(t)), computed from the coefficient lists and verified against
// the product forms on every call.
inline std::pair<Int, Int> family_coefficients(int d, const Int& t) {
    const FamilySpec& spec = family_spec(d);
    Int a = detail::eval_poly(spec.f_coeffs, t);
    Int b = detail::eval_poly(spec.g_coeffs, t);
    if (a != detail::f_factored(d, t) || b != detail::g_factored(d, t))
        throw InternalError("family polynomial representations disagree at d=" +
                            std::to_string(d) + ", t=" + t.get_str());
    return {a, b};
}

// A family member; specializations with vanishing discriminant are reported,
// not errors.
struct FamilyCurve {
    int d = 0;           // family the curve was drawn from
    int requested = 0;   // divisor the caller asked about
    Int t;
    Int a, b;
    bool singular = false;
    std::optional<CurveQ> curve;  // engaged iff !singular
};

inline FamilyCurve family_curve(int d, const Int& t) {
    auto [a, b] = family_coefficients(d, t);
    FamilyCurve out;
    out.d = d;
    out.requested = d;
    out.t = t;
    out.a = a;
    out.b = b;
    out.singular = discriminant(a, b) == 0;
    if (!out.singular) out.curve.emplace(a, b);
    return out;
}

// Designated family realizing each admissible divisor: powers of two come
// from the order-16 family, divisors of twelve from order 12, and so on.
// 11, 13, 14, 15 divide none of the realized orders.
inline int family_for_divisor(int divisor) {
    switch (divisor) {
        case 2:
        case 4:
        case 8:
        case 16:
            return 16;
        case 3:
        case 6:
        case 12:
            return 12;
        case 5:
        case 10:
            return 10;
        case 9:
            return 9;
        case 7:
            return 7;
        default:
            throw UnsupportedFamilyError("no family realizes divisor d=" +
                                         std::to_string(divisor));
    }
}

// Member curve whose point counts vanish mod `divisor` at good primes; drawn
// from the family for the smallest torsion order the divisor divides.
inline FamilyCurve family_curve_for_divisor(int divisor, const Int& t) {
    FamilyCurve out = family_curve(family_for_divisor(divisor), t);
    out.requested = divisor;
    return out;
}

}  // namespace ellcong
