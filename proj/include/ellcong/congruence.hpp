#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ellcong/counting.hpp"
#include "ellcong/curve.hpp"

namespace ellcong {

// Target congruence: point counts at good primes against alpha mod d.
struct CongruencePair {
    uint32_t d;
    uint32_t alpha;  // canonical residue

    CongruencePair(uint32_t d_, long long alpha_) : d(d_) {
        if (d < 2) throw UsageError("congruence modulus must be at least 2");
        long long r = alpha_ % static_cast<long long>(d);
        if (r < 0) r += d;
        alpha = static_cast<uint32_t>(r);
    }
};

// Conjunction of residue-class constraints on the primes scanned.
struct ResidueClassFilter {
    std::vector<std::pair<uint64_t, uint64_t>> classes;  // p ≡ first (mod second)

    void add(uint64_t residue, uint64_t modulus) {
        if (modulus < 2) throw UsageError("filter modulus must be at least 2");
        classes.push_back({residue % modulus, modulus});
    }

    bool accepts(uint64_t p) const {
        for (auto [r, m] : classes)
            if (p % m != r) return false;
        return true;
    }

    bool empty() const { return classes.empty(); }
};

enum class ReductionMode { All, Supersingular, Ordinary };

inline const char* reduction_mode_name(ReductionMode m) {
    switch (m) {
        case ReductionMode::Supersingular: return "supersingular";
        case ReductionMode::Ordinary: return "ordinary";
        default: return "all";
    }
}

struct CongruenceViolation {
    uint64_t p = 0;
    uint32_t residue = 0;  // point count mod d
};

struct CongruenceReport {
    std::string curve;
    uint32_t d = 2;
    uint32_t alpha = 0;
    ReductionMode mode = ReductionMode::All;
    uint64_t lo = 5, hi = 0;
    ResidueClassFilter filter;
    uint64_t exclusion = 3;  // violations at p <= exclusion are quarantined

    uint64_t good_tested = 0;  // good primes passing filter and mode
    uint64_t bad_skipped = 0;
    uint64_t matching = 0;

    std::vector<CongruenceViolation> violations;        // p > exclusion, capped
    uint64_t violations_total = 0;                      // p > exclusion, uncapped
    std::vector<CongruenceViolation> small_violations;  // p <= exclusion
    uint64_t largest_violation = 0;

    static constexpr size_t kept_violations = 1000;

    bool holds() const { return violations_total == 0; }
};

// Applies the congruence test to scan records already in hand.
inline CongruenceReport congruence_check_records(const std::vector<FrobeniusRecord>& records,
                                                 const std::string& curve_id, CongruencePair pair,
                                                 ReductionMode mode = ReductionMode::All,
                                                 const ResidueClassFilter& filter = {},
                                                 uint64_t exclusion = 3) {
    CongruenceReport out;
    out.curve = curve_id;
    out.d = pair.d;
    out.alpha = pair.alpha;
    out.mode = mode;
    out.filter = filter;
    out.exclusion = exclusion;
    if (!records.empty()) {
        out.lo = records.front().p;
        out.hi = records.back().p;
    }
    for (const auto& rec : records) {
        if (!rec.good) {
            ++out.bad_skipped;
            continue;
        }
        if (!filter.accepts(rec.p)) continue;
        if (mode == ReductionMode::Supersingular && !rec.supersingular) continue;
        if (mode == ReductionMode::Ordinary && rec.supersingular) continue;
        ++out.good_tested;
        uint32_t residue = static_cast<uint32_t>(rec.count % pair.d);
        if (residue == pair.alpha) {
            ++out.matching;
            continue;
        }
        CongruenceViolation v{rec.p, residue};
        if (rec.p <= out.exclusion) {
            out.small_violations.push_back(v);
        } else {
            ++out.violations_total;
            if (out.violations.size() < CongruenceReport::kept_violations)
                out.violations.push_back(v);
            out.largest_violation = std::max(out.largest_violation, rec.p);
        }
    }
    return out;
}

// Scans the curve and tests #E(F_p) ≡ alpha (mod d) at every good prime
// admitted by the filter.
inline CongruenceReport frobenius_congruence_check(const CurveQ& e, CongruencePair pair,
                                                   PrimeRange range,
                                                   ReductionMode mode = ReductionMode::All,
                                                   const ResidueClassFilter& filter = {},
                                                   const ScanOptions& opts = {},
                                                   uint64_t exclusion = 3) {
    ScanResult scan = frobenius_scan(e, range, opts);
    CongruenceReport out =
        congruence_check_records(scan.records, e.id(), pair, mode, filter, exclusion);
    out.lo = std::max<uint64_t>(range.lo, range.include_small ? 2 : 5);
    out.hi = range.hi;
    return out;
}

}  // namespace ellcong
