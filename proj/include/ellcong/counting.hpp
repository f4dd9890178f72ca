#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <thread>
#include <unordered_map>
#include <vector>

#include "ellcong/curve.hpp"

namespace ellcong {

struct CountingOptions {
    // Primes below this are counted exhaustively; larger ones use BSGS order
    // finding. Values <= 458 are clamped: BSGS is only unambiguous for
    // p > 457.
    uint64_t exhaustive_threshold = 1ull << 20;
    // Sampled points (curve and twist combined) before giving up.
    int order_attempts = 64;
};

// Point count #E(F_p) including infinity, by direct x-sweep. O(p) time,
// O(p) bytes for the residue table.
inline uint64_t count_exhaustive(const CurveFp& e) {
    const uint64_t p = e.field.modulus();
    if (p <= 3) {
        uint64_t n = 1;
        for (uint64_t x = 0; x < p; ++x)
            for (uint64_t y = 0; y < p; ++y)
                if (e.field.mul(Fp{y}, Fp{y}) == e.rhs(Fp{x})) ++n;
        return n;
    }
    std::vector<uint8_t> qr(p, 0);
    {
        // x^2 walked by increments: (x+1)^2 - x^2 = 2x + 1.
        uint64_t sq = 0, step = 1;
        for (uint64_t x = 1; x <= (p - 1) / 2; ++x) {
            sq += step;
            if (sq >= p) sq -= p;
            step += 2;
            if (step >= p) step -= p;
            qr[sq] = 1;
        }
    }
    // f(x) = x^3 + ax + b by finite differences: f(0) = b,
    // Δf(0) = 1 + a, Δ²f(0) = 6, Δ³f = 6.
    uint64_t f = e.b.value;
    uint64_t d1 = (1 + e.a.value) % p;
    uint64_t d2 = 6 % p;
    const uint64_t d3 = 6 % p;
    uint64_t n = 1;
    for (uint64_t x = 0; x < p; ++x) {
        if (f == 0)
            n += 1;
        else if (qr[f])
            n += 2;
        f += d1;
        if (f >= p) f -= p;
        d1 += d2;
        if (d1 >= p) d1 -= p;
        d2 += d3;
        if (d2 >= p) d2 -= p;
    }
    return n;
}

namespace detail {

// All u in [0, bound] with target == u * base, ascending. Baby-step
// giant-step over the point group.
inline std::vector<uint64_t> bsgs_all_scalars(const PointFp& base, const PointFp& target,
                                              uint64_t bound, const CurveFp& e) {
    std::vector<uint64_t> out;
    const uint64_t m = isqrt_u64(bound) + 1;
    std::unordered_map<uint64_t, std::vector<std::pair<uint64_t, uint64_t>>> baby;
    std::vector<uint64_t> inf_steps;
    baby.reserve(m * 2);
    PointFp t = PointFp::at_infinity();
    for (uint64_t i = 0; i < m; ++i) {
        if (t.infinity)
            inf_steps.push_back(i);
        else
            baby[t.x.value].push_back({t.y.value, i});
        t = point_add(t, base, e);
    }
    const PointFp neg_giant = point_negate(point_mul(m, base, e), e);
    PointFp s = target;
    for (uint64_t j = 0; j * m <= bound; ++j) {
        if (s.infinity) {
            for (uint64_t i : inf_steps)
                if (j * m + i <= bound) out.push_back(j * m + i);
        } else if (auto it = baby.find(s.x.value); it != baby.end()) {
            for (auto [y, i] : it->second)
                if (y == s.y.value && j * m + i <= bound) out.push_back(j * m + i);
        }
        s = point_add(s, neg_giant, e);
    }
    return out;
}

// Multiples of step in [lo, hi], ascending.
inline std::vector<uint64_t> window_multiples(uint64_t step, uint64_t lo, uint64_t hi) {
    std::vector<uint64_t> out;
    uint64_t first = ((lo + step - 1) / step) * step;
    for (uint64_t v = first; v <= hi; v += step) out.push_back(v);
    return out;
}

}  // namespace detail

// Group order by BSGS on random points of the curve and its quadratic twist.
// Each sampled point P restricts the order to multiples of ord(P) inside the
// trace window [p+1-H, p+1+H], H = floor(2*sqrt(p)); twist samples restrict
// the mirrored count 2p+2-N. For p > 457 the window eventually contains a
// single survivor.
inline uint64_t count_bsgs(const CurveFp& e, const CountingOptions& opts = {}) {
    const PrimeField& field = e.field;
    const uint64_t p = field.modulus();
    if (p <= 457) throw UsageError("order finding by BSGS requires p > 457");
    const uint64_t h = isqrt_u64(4 * p);
    const uint64_t lo = p + 1 - h, hi = p + 1 + h;

    // Fixed quadratic twist by the smallest non-residue d: y^2 = x^3 + a d^2 x + b d^3.
    uint64_t nonres = 2;
    while (field.legendre(Fp{nonres}) != -1) ++nonres;
    const Fp d = field.make(nonres);
    const Fp d2 = field.mul(d, d);
    const CurveFp twist(field, field.mul(e.a, d2), field.mul(e.b, field.mul(d2, d)));

    // lcm of sampled point orders per side; 0 = no sample yet.
    uint64_t lcm_curve = 0, lcm_twist = 0;
    const uint64_t list_cap = 1ull << 20;

    uint64_t seed = 0x8e31a9cf52f11b0dull ^ p;
    seed = splitmix64(seed) ^ e.a.value;
    seed = splitmix64(seed) ^ e.b.value;

    auto absorb = [&](uint64_t& side_lcm, uint64_t point_order) {
        if (side_lcm == 0) {
            side_lcm = point_order;
            return;
        }
        unsigned __int128 l =
            static_cast<unsigned __int128>(side_lcm) / gcd_u64(side_lcm, point_order) * point_order;
        // The true order is a common multiple inside the window, so the lcm
        // of sampled orders can never outgrow it.
        if (l > hi) throw InternalError("point order lcm exceeds trace window");
        side_lcm = static_cast<uint64_t>(l);
    };

    for (int attempt = 0; attempt < opts.order_attempts; ++attempt) {
        uint64_t x = splitmix64(seed) % p;
        Fp fx = e.rhs(Fp{x});
        PointFp sample;
        bool on_twist;
        if (field.legendre(fx) >= 0) {
            sample = PointFp::affine(Fp{x}, field.sqrt(fx).value_or(Fp{0}));
            on_twist = false;
        } else {
            Fp tx = field.mul(d, Fp{x});
            Fp ty = field.mul(d, field.sqrt(field.mul(d, fx)).value());
            sample = PointFp::affine(tx, ty);
            on_twist = true;
        }
        const CurveFp& host = on_twist ? twist : e;
        if (!on_curve(sample, host)) throw InternalError("sampled point not on curve");

        auto hits = detail::bsgs_all_scalars(
            sample, point_negate(point_mul(lo, sample, host), host), hi - lo, host);
        if (hits.empty()) throw InternalError("no group order candidate in trace window");
        if (hits.size() == 1) {
            uint64_t n = lo + hits[0];
            return on_twist ? 2 * p + 2 - n : n;
        }
        absorb(on_twist ? lcm_twist : lcm_curve, hits[1] - hits[0]);

        if (lcm_curve == 0 || lcm_twist == 0) continue;
        if ((hi - lo) / lcm_curve + 1 > list_cap) continue;
        std::vector<uint64_t> survivors;
        for (uint64_t n : detail::window_multiples(lcm_curve, lo, hi))
            if ((2 * p + 2 - n) % lcm_twist == 0) survivors.push_back(n);
        if (survivors.empty()) throw InternalError("trace window candidates eliminated entirely");
        if (survivors.size() == 1) return survivors[0];
    }
    throw AmbiguousOrderError("group order not pinned after " +
                              std::to_string(opts.order_attempts) + " samples, p=" + std::to_string(p));
}

// Dispatches on prime size; result is always the exact group order.
inline uint64_t count_points(const CurveFp& e, const CountingOptions& opts = {}) {
    uint64_t threshold = std::max<uint64_t>(opts.exhaustive_threshold, 458);
    if (e.field.modulus() < threshold) return count_exhaustive(e);
    return count_bsgs(e, opts);
}

// One prime's worth of reduction data.
struct FrobeniusRecord {
    uint64_t p = 0;
    bool good = false;
    uint64_t count = 0;        // good only: #E(F_p) with infinity
    int64_t a_p = 0;           // good only: p + 1 - count
    bool supersingular = false;  // good only: a_p ≡ 0 (mod p)

    static FrobeniusRecord bad_reduction(uint64_t p) {
        FrobeniusRecord r;
        r.p = p;
        return r;
    }

    static FrobeniusRecord good_reduction(uint64_t p, uint64_t count) {
        FrobeniusRecord r;
        r.p = p;
        r.good = true;
        r.count = count;
        // Legal counts never exceed p + 1 + 2*sqrt(p) <= 2p + 2; rejecting
        // larger ones first keeps the square below inside 128 bits.
        if (static_cast<unsigned __int128>(count) > 2 * static_cast<unsigned __int128>(p) + 2)
            throw InternalError("trace bound violated at p=" + std::to_string(p) +
                                ", count=" + std::to_string(count));
        __int128 a = static_cast<__int128>(p) + 1 - static_cast<__int128>(count);
        if (a * a > static_cast<__int128>(4) * p)
            throw InternalError("trace bound violated at p=" + std::to_string(p) +
                                ", count=" + std::to_string(count));
        r.a_p = static_cast<int64_t>(a);
        r.supersingular = (r.a_p % static_cast<int64_t>(p)) == 0;
        return r;
    }
};

inline bool is_supersingular(const FrobeniusRecord& r) {
    if (!r.good) throw NotApplicableError("supersingularity undefined at bad reduction p=" +
                                          std::to_string(r.p));
    return r.supersingular;
}

// Cached trace for one (curve, p); good == false means bad reduction.
struct CachedTrace {
    bool good = false;
    int64_t a_p = 0;
};

using CurveTraceCache = std::map<uint64_t, CachedTrace>;

struct PrimeRange {
    uint64_t lo = 0;  // effective start is max(lo, include_small ? 2 : 5)
    uint64_t hi = 0;
    bool include_small = false;  // admit p = 2 and p = 3
};

struct ScanOptions {
    CountingOptions counting;
    unsigned threads = 1;
    const CurveTraceCache* cache = nullptr;
};

struct ScanResult {
    std::vector<FrobeniusRecord> records;  // ascending p
    std::vector<FrobeniusRecord> fresh;    // subset not served from cache
};

namespace detail {

inline FrobeniusRecord record_for_prime(const CurveQ& e, uint64_t p, const ScanOptions& opts) {
    if (opts.cache != nullptr) {
        auto it = opts.cache->find(p);
        if (it != opts.cache->end()) {
            if (!it->second.good) return FrobeniusRecord::bad_reduction(p);
            __int128 count = static_cast<__int128>(p) + 1 - it->second.a_p;
            return FrobeniusRecord::good_reduction(p, static_cast<uint64_t>(count));
        }
    }
    PrimeField field(p);
    auto reduced = reduce_mod_p(e, field);
    if (!reduced) return FrobeniusRecord::bad_reduction(p);
    return FrobeniusRecord::good_reduction(p, count_points(*reduced, opts.counting));
}

}  // namespace detail

// Reduction data for every prime in the range, ascending. Thread count never
// affects the result: work is split into fixed chunks reassembled in order.
inline ScanResult frobenius_scan(const CurveQ& e, PrimeRange range, const ScanOptions& opts = {}) {
    uint64_t lo = std::max<uint64_t>(range.lo, range.include_small ? 2 : 5);
    std::vector<uint64_t> primes = primes_in_range(lo, range.hi);

    ScanResult result;
    result.records.resize(primes.size());
    unsigned threads = std::max(1u, opts.threads);
    if (threads == 1 || primes.size() < 32) {
        for (size_t i = 0; i < primes.size(); ++i)
            result.records[i] = detail::record_for_prime(e, primes[i], opts);
    } else {
        const size_t chunk = std::max<size_t>(1, primes.size() / (threads * 8));
        std::atomic<size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mu;
        auto worker = [&] {
            for (;;) {
                size_t begin = next.fetch_add(chunk);
                if (begin >= primes.size()) return;
                size_t end = std::min(primes.size(), begin + chunk);
                try {
                    for (size_t i = begin; i < end; ++i)
                        result.records[i] = detail::record_for_prime(e, primes[i], opts);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mu);
                    if (!failure) failure = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }
    for (const auto& r : result.records)
        if (opts.cache == nullptr || opts.cache->find(r.p) == opts.cache->end())
            result.fresh.push_back(r);
    return result;
}

}  // namespace ellcong
