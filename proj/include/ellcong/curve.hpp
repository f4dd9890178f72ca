#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "ellcong/fp.hpp"
#include "ellcong/integer.hpp"

namespace ellcong {

inline Int discriminant(const Int& a, const Int& b) {
    return Int(-16) * (4 * a * a * a + 27 * b * b);
}

// y^2 = x^3 + Ax + B over Q with nonzero discriminant.
class CurveQ {
public:
    CurveQ(Int a, Int b) : a_(std::move(a)), b_(std::move(b)), disc_(discriminant(a_, b_)) {
        if (disc_ == 0)
            throw SingularCurveError("singular curve: " + format_curve_id(a_, b_));
    }

    static CurveQ parse(std::string_view text) {
        auto [a, b] = parse_curve_coefficients(text);
        return CurveQ(std::move(a), std::move(b));
    }

    const Int& a() const { return a_; }
    const Int& b() const { return b_; }
    const Int& disc() const { return disc_; }
    std::string id() const { return format_curve_id(a_, b_); }

    bool good_reduction_at(uint64_t p) const {
        return mpz_divisible_ui_p(disc_.get_mpz_t(), p) == 0;
    }

private:
    Int a_, b_;
    Int disc_;
};

// y^2 = x^3 + ax + b over F_p, nonsingular in the 4a^3 + 27b^2 != 0 sense.
struct CurveFp {
    PrimeField field;
    Fp a, b;

    CurveFp(PrimeField f, Fp a_, Fp b_) : field(f), a(a_), b(b_) {
        Fp d = field.add(field.mul(field.make(4), field.mul(field.mul(a, a), a)),
                         field.mul(field.make(27), field.mul(b, b)));
        if (d.value == 0)
            throw SingularCurveError("singular reduction mod " + std::to_string(field.modulus()));
    }

    // x^3 + ax + b.
    Fp rhs(Fp x) const {
        return field.add(field.add(field.mul(field.mul(x, x), x), field.mul(a, x)), b);
    }
};

// Affine point or the point at infinity (the group identity).
struct PointFp {
    Fp x, y;
    bool infinity = true;

    static PointFp at_infinity() { return PointFp{}; }
    static PointFp affine(Fp x, Fp y) { return PointFp{x, y, false}; }

    friend bool operator==(const PointFp& p, const PointFp& q) {
        if (p.infinity || q.infinity) return p.infinity == q.infinity;
        return p.x == q.x && p.y == q.y;
    }
};

// nullopt when p divides the discriminant (bad reduction). The factor -16
// makes reduction at p = 2 always bad.
inline std::optional<CurveFp> reduce_mod_p(const CurveQ& e, const PrimeField& field) {
    if (!e.good_reduction_at(field.modulus())) return std::nullopt;
    return CurveFp(field, field.reduce(e.a()), field.reduce(e.b()));
}

inline std::optional<CurveFp> reduce_mod_p(const CurveQ& e, uint64_t p) {
    return reduce_mod_p(e, PrimeField(p));
}

inline bool on_curve(const PointFp& pt, const CurveFp& e) {
    if (pt.infinity) return true;
    return e.field.mul(pt.y, pt.y) == e.rhs(pt.x);
}

inline PointFp point_negate(const PointFp& pt, const CurveFp& e) {
    if (pt.infinity) return pt;
    return PointFp::affine(pt.x, e.field.neg(pt.y));
}

// Chord-tangent addition. Requires odd p: the tangent slope divides by 2y.
inline PointFp point_add(const PointFp& p, const PointFp& q, const CurveFp& e) {
    const PrimeField& f = e.field;
    if (p.infinity) return q;
    if (q.infinity) return p;
    Fp lambda;
    if (p.x == q.x) {
        if (f.add(p.y, q.y).value == 0) return PointFp::at_infinity();
        // p == q with y != 0: tangent slope (3x^2 + a) / 2y.
        Fp num = f.add(f.mul(f.make(3), f.mul(p.x, p.x)), e.a);
        Fp den = f.mul(f.make(2), p.y);
        lambda = f.div(num, den);
    } else {
        lambda = f.div(f.sub(q.y, p.y), f.sub(q.x, p.x));
    }
    Fp x3 = f.sub(f.sub(f.mul(lambda, lambda), p.x), q.x);
    Fp y3 = f.sub(f.mul(lambda, f.sub(p.x, x3)), p.y);
    return PointFp::affine(x3, y3);
}

inline PointFp point_double(const PointFp& p, const CurveFp& e) { return point_add(p, p, e); }

// Double-and-add; k may exceed the point order.
inline PointFp point_mul(uint64_t k, PointFp p, const CurveFp& e) {
    PointFp acc = PointFp::at_infinity();
    while (k != 0) {
        if (k & 1) acc = point_add(acc, p, e);
        k >>= 1;
        if (k != 0) p = point_add(p, p, e);
    }
    return acc;
}

}  // namespace ellcong
