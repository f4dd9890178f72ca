#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ellcong/cache.hpp"
#include "ellcong/congruence.hpp"
#include "ellcong/counting.hpp"
#include "ellcong/curve.hpp"

namespace ellcong {

inline std::vector<uint64_t> supersingular_primes_from_records(
    const std::vector<FrobeniusRecord>& records) {
    std::vector<uint64_t> out;
    for (const auto& rec : records)
        if (rec.good && rec.supersingular) out.push_back(rec.p);
    return out;
}

// Good primes with trace divisible by p, ascending; evidence up to the range
// bound only.
inline std::vector<uint64_t> supersingular_primes(const CurveQ& e, PrimeRange range,
                                                  const ScanOptions& opts = {}) {
    return supersingular_primes_from_records(frobenius_scan(e, range, opts).records);
}

// Distribution of the listed primes over residue classes mod d. Only classes
// that occur appear as keys.
inline std::map<uint32_t, uint64_t> residue_histogram(const std::vector<uint64_t>& primes,
                                                      uint32_t d) {
    if (d < 2) throw UsageError("histogram modulus must be at least 2");
    std::map<uint32_t, uint64_t> out;
    for (uint64_t p : primes) ++out[static_cast<uint32_t>(p % d)];
    return out;
}

// Congruence evidence restricted to one reduction type, with the gcd
// obstruction annotated for supersingular runs: when every supersingular
// prime p > d in range satisfies #E(F_p) ≡ alpha (mod d), those p are ≡
// alpha - 1 (mod d), which forces gcd(alpha - 1, d) = 1.
struct ConditionReport {
    CongruenceReport congruence;
    bool gcd_rule_applicable = false;
    bool gcd_rule_holds = true;
};

namespace detail {

inline ConditionReport condition_check_records(const std::vector<FrobeniusRecord>& records,
                                               const std::string& curve_id, CongruencePair pair,
                                               ReductionMode mode,
                                               const ResidueClassFilter& filter,
                                               uint64_t exclusion) {
    ConditionReport out;
    out.congruence =
        congruence_check_records(records, curve_id, pair, mode, filter, exclusion);
    if (mode == ReductionMode::Supersingular && out.congruence.holds()) {
        bool witness = false;
        for (const auto& rec : records)
            if (rec.good && rec.supersingular && filter.accepts(rec.p) && rec.p > pair.d) {
                witness = true;
                break;
            }
        if (witness) {
            out.gcd_rule_applicable = true;
            uint32_t shifted = (pair.alpha + pair.d - 1) % pair.d;
            out.gcd_rule_holds = gcd_u64(shifted, pair.d) == 1;
        }
    }
    return out;
}

}  // namespace detail

inline ConditionReport s_condition_check(const CurveQ& e, CongruencePair pair, PrimeRange range,
                                         const ResidueClassFilter& filter = {},
                                         const ScanOptions& opts = {}, uint64_t exclusion = 3) {
    ScanResult scan = frobenius_scan(e, range, opts);
    return detail::condition_check_records(scan.records, e.id(), pair,
                                           ReductionMode::Supersingular, filter, exclusion);
}

inline ConditionReport o_condition_check(const CurveQ& e, CongruencePair pair, PrimeRange range,
                                         const ResidueClassFilter& filter = {},
                                         const ScanOptions& opts = {}, uint64_t exclusion = 3) {
    ScanResult scan = frobenius_scan(e, range, opts);
    return detail::condition_check_records(scan.records, e.id(), pair, ReductionMode::Ordinary,
                                           filter, exclusion);
}

enum class CmVerdict { LikelyCM, LikelyNonCM, Inconclusive };

inline const char* cm_verdict_name(CmVerdict v) {
    switch (v) {
        case CmVerdict::LikelyCM: return "likely-cm";
        case CmVerdict::LikelyNonCM: return "likely-non-cm";
        default: return "inconclusive";
    }
}

struct CmDensityOptions {
    double cm_low = 0.40;       // supersingular density band read as CM
    double cm_high = 0.60;
    double non_cm_below = 0.10;
    uint64_t min_good = 25;     // fewer good primes: inconclusive outright
};

struct CmReport {
    uint64_t good = 0;
    uint64_t supersingular = 0;
    double density = 0.0;
    CmVerdict verdict = CmVerdict::Inconclusive;
    CmDensityOptions thresholds;
};

// Supersingular density heuristic: density near 1/2 looks like complex
// multiplication, near zero like its absence.
inline CmReport cm_density_from_records(const std::vector<FrobeniusRecord>& records,
                                        const CmDensityOptions& thresholds = {}) {
    CmReport out;
    out.thresholds = thresholds;
    for (const auto& rec : records) {
        if (!rec.good) continue;
        ++out.good;
        if (rec.supersingular) ++out.supersingular;
    }
    if (out.good == 0) return out;
    out.density = static_cast<double>(out.supersingular) / static_cast<double>(out.good);
    if (out.good < thresholds.min_good) return out;
    if (out.density >= thresholds.cm_low && out.density <= thresholds.cm_high)
        out.verdict = CmVerdict::LikelyCM;
    else if (out.density < thresholds.non_cm_below)
        out.verdict = CmVerdict::LikelyNonCM;
    return out;
}

inline CmReport cm_density(const CurveQ& e, PrimeRange range, const ScanOptions& opts = {},
                           const CmDensityOptions& thresholds = {}) {
    return cm_density_from_records(frobenius_scan(e, range, opts).records, thresholds);
}

// One (d, curve, mode) cell of a survey.
struct SurveyEntry {
    uint32_t d = 2;
    ReductionMode mode = ReductionMode::All;
    std::string curve;
    ConditionReport report;
};

struct SurveyReport {
    long long alpha = 0;
    uint32_t d_max = 2;
    uint64_t lo = 5, hi = 0;
    std::vector<std::string> curves;
    std::vector<std::string> scan_errors;  // per-curve failures, survey continues
    std::vector<SurveyEntry> entries;      // d-major, curve-minor, s before o
    std::vector<uint32_t> s_candidates;    // d with a curve holding the s-condition
    std::vector<uint32_t> o_candidates;
};

// Sweeps d = 2..d_max against every curve, one scan per curve. A d becomes a
// candidate when some curve shows zero violations with at least one prime of
// the matching reduction type tested.
inline SurveyReport survey_sets(long long alpha, uint32_t d_max, const std::vector<CurveQ>& curves,
                                PrimeRange range, const ScanOptions& opts = {},
                                uint64_t exclusion = 3, TraceCacheFile* cache = nullptr) {
    if (d_max < 2) throw UsageError("survey needs d_max >= 2");
    SurveyReport out;
    out.alpha = alpha;
    out.d_max = d_max;
    out.lo = std::max<uint64_t>(range.lo, range.include_small ? 2 : 5);
    out.hi = range.hi;

    std::vector<std::vector<FrobeniusRecord>> scans;
    std::vector<const CurveQ*> scanned;
    for (const auto& e : curves) {
        out.curves.push_back(e.id());
        try {
            ScanOptions per_curve = opts;
            if (cache != nullptr) per_curve.cache = &(*cache)[e.id()];
            ScanResult scan = frobenius_scan(e, range, per_curve);
            if (cache != nullptr) cache_absorb(*cache, e.id(), scan.fresh);
            scans.push_back(std::move(scan.records));
            scanned.push_back(&e);
        } catch (const Error& err) {
            out.scan_errors.push_back(e.id() + ": " + err.what());
        }
    }

    for (uint32_t d = 2; d <= d_max; ++d) {
        bool s_member = false, o_member = false;
        for (size_t i = 0; i < scanned.size(); ++i) {
            CongruencePair pair(d, alpha);
            SurveyEntry s;
            s.d = d;
            s.mode = ReductionMode::Supersingular;
            s.curve = scanned[i]->id();
            s.report = detail::condition_check_records(scans[i], s.curve, pair,
                                                       ReductionMode::Supersingular, {},
                                                       exclusion);
            SurveyEntry o;
            o.d = d;
            o.mode = ReductionMode::Ordinary;
            o.curve = scanned[i]->id();
            o.report = detail::condition_check_records(scans[i], o.curve, pair,
                                                       ReductionMode::Ordinary, {}, exclusion);
            if (s.report.congruence.holds() && s.report.congruence.good_tested > 0)
                s_member = true;
            if (o.report.congruence.holds() && o.report.congruence.good_tested > 0)
                o_member = true;
            out.entries.push_back(std::move(s));
            out.entries.push_back(std::move(o));
        }
        if (s_member) out.s_candidates.push_back(d);
        if (o_member) out.o_candidates.push_back(d);
    }
    return out;
}

}  // namespace ellcong
