#pragma once

#include <chrono>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ellcong/cache.hpp"
#include "ellcong/congruence.hpp"
#include "ellcong/counting.hpp"
#include "ellcong/curve.hpp"
#include "ellcong/families.hpp"
#include "ellcong/gl2.hpp"
#include "ellcong/report.hpp"
#include "ellcong/survey.hpp"
#include "ellcong/torsion.hpp"

namespace ellcong {

namespace detail {

inline Json violations_json(const std::vector<CongruenceViolation>& vs, size_t limit) {
    Json arr = Json::array();
    for (const auto& v : vs) {
        if (arr.size() >= limit) break;
        Json o = Json::object();
        o["p"] = v.p;
        o["count_mod_d"] = v.residue;
        arr.push_back(std::move(o));
    }
    return arr;
}

inline Json filter_json(const ResidueClassFilter& f) {
    Json arr = Json::array();
    for (auto [r, m] : f.classes) {
        Json o = Json::object();
        o["residue"] = r;
        o["modulus"] = m;
        arr.push_back(std::move(o));
    }
    return arr;
}

inline Json congruence_json(const CongruenceReport& r, size_t violation_limit = 1000) {
    Json o = Json::object();
    o["curve"] = r.curve;
    o["d"] = r.d;
    o["alpha"] = r.alpha;
    o["mode"] = reduction_mode_name(r.mode);
    o["lo"] = r.lo;
    o["hi"] = r.hi;
    o["filter"] = filter_json(r.filter);
    o["exclusion"] = r.exclusion;
    o["good_tested"] = r.good_tested;
    o["bad_skipped"] = r.bad_skipped;
    o["matching"] = r.matching;
    o["violations_total"] = r.violations_total;
    o["violations"] = violations_json(r.violations, violation_limit);
    o["small_violations"] = violations_json(r.small_violations, violation_limit);
    o["largest_violation"] = r.largest_violation;
    o["holds"] = r.holds();
    return o;
}

inline Json condition_json(const ConditionReport& r, size_t violation_limit = 1000) {
    Json o = Json::object();
    o["congruence"] = congruence_json(r.congruence, violation_limit);
    o["gcd_rule_applicable"] = r.gcd_rule_applicable;
    o["gcd_rule_holds"] = r.gcd_rule_holds;
    return o;
}

inline Json record_json(const FrobeniusRecord& rec) {
    Json o = Json::object();
    o["p"] = rec.p;
    o["reduction"] = rec.good ? "good" : "bad";
    if (rec.good) {
        o["count"] = rec.count;
        o["a_p"] = rec.a_p;
        o["supersingular"] = rec.supersingular;
    }
    return o;
}

inline Json torsion_json(const TorsionGroup& g, uint64_t bound) {
    auto point_json = [](const TorsionPoint& pt) {
        Json arr = Json::array();
        arr.push_back(pt.x.get_str());
        arr.push_back(pt.y.get_str());
        return arr;
    };
    Json o = Json::object();
    o["bound"] = bound;
    o["order"] = g.order;
    o["structure"] = g.structure_name();
    o["cyclic"] = g.cyclic;
    Json pts = Json::array();
    for (const auto& pt : g.points) pts.push_back(point_json(pt));
    o["points"] = pts;
    Json gens = Json::array();
    for (const auto& pt : g.generators) gens.push_back(point_json(pt));
    o["generators"] = gens;
    return o;
}

struct CliState {
    std::string cache_path;
    std::string json_path;
    unsigned threads = 1;
    uint64_t exhaustive_threshold = 1ull << 20;

    TraceCacheFile cache_file;
    bool cache_loaded = false;
    bool cache_dirty = false;

    void load_cache() {
        if (!cache_path.empty()) {
            cache_file = cache_read(cache_path);
            cache_loaded = true;
        }
    }

    ScanOptions scan_options(const std::string& curve_id) {
        ScanOptions opts;
        opts.threads = threads;
        opts.counting.exhaustive_threshold = exhaustive_threshold;
        if (cache_loaded) opts.cache = &cache_file[curve_id];
        return opts;
    }

    std::vector<FrobeniusRecord> scan(const CurveQ& e, PrimeRange range) {
        ScanResult res = frobenius_scan(e, range, scan_options(e.id()));
        if (cache_loaded && !res.fresh.empty()) {
            cache_absorb(cache_file, e.id(), res.fresh);
            cache_dirty = true;
        }
        return res.records;
    }

    void flush_cache() {
        if (cache_loaded && cache_dirty) cache_write(cache_path, cache_file);
    }
};

inline void add_scan_flags(CLI::App* cmd, CliState& state) {
    cmd->add_option("--cache", state.cache_path, "trace cache file (read and updated)");
    cmd->add_option("--threads", state.threads, "worker threads for scans")
        ->check(CLI::Range(1u, 256u));
    cmd->add_option("--exhaustive-threshold", state.exhaustive_threshold,
                    "primes below this are counted by full sweep");
}

inline ResidueClassFilter parse_filters(const std::vector<std::string>& specs) {
    ResidueClassFilter filter;
    for (const auto& spec : specs) {
        size_t comma = spec.find(',');
        if (comma == std::string::npos || spec.find(',', comma + 1) != std::string::npos)
            throw UsageError("--primes-mod expects 'residue,modulus', got '" + spec + "'");
        Int r = parse_int_token(spec.substr(0, comma), "--primes-mod");
        Int m = parse_int_token(spec.substr(comma + 1), "--primes-mod");
        if (m < 2 || m > 1'000'000'000 || r < 0)
            throw UsageError("--primes-mod expects residue >= 0 and 2 <= modulus <= 10^9");
        filter.add(mpz_fdiv_ui(r.get_mpz_t(), m.get_ui()), m.get_ui());
    }
    return filter;
}

inline ReductionMode parse_mode(const std::string& name) {
    if (name == "all") return ReductionMode::All;
    if (name == "supersingular" || name == "ss") return ReductionMode::Supersingular;
    if (name == "ordinary") return ReductionMode::Ordinary;
    throw UsageError("--mode must be all, supersingular, or ordinary");
}

inline std::vector<CurveQ> read_curve_file(const std::string& path) {
    std::ifstream in(path);
    if (!in.is_open()) throw UsageError("cannot open curve list " + path);
    std::vector<CurveQ> out;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        try {
            out.push_back(CurveQ::parse(line));
        } catch (const UsageError& e) {
            throw ParseError("curve list " + path + " line " + std::to_string(lineno) + ": " +
                             e.what());
        }
    }
    return out;
}

inline Json range_json(uint64_t lo_effective, uint64_t hi, bool include_small) {
    Json o = Json::object();
    o["lo"] = lo_effective;
    o["hi"] = hi;
    o["include_small"] = include_small;
    return o;
}

}  // namespace detail

// Full command-line entry point; argv-style arguments without the program
// name. Exit codes: 0 success, 1 for a negative finding (violations found,
// singular member, empty admissible set), 2 usage or input errors, 3
// computation failures.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"point-count congruences of elliptic curves"};
    app.require_subcommand(1);

    detail::CliState state;
    int exit_code = 0;

    ReportDocument doc;
    bool emit_doc = false;

    // count ------------------------------------------------------------
    auto* c_count = app.add_subcommand("count", "count points at one prime or across a range");
    struct {
        std::string curve;
        uint64_t p = 0;
        uint64_t bound = 0;
        uint64_t min = 0;
        bool include_small = false;
    } count_opts;
    c_count->add_option("--curve", count_opts.curve, "curve 'A,B'")->required();
    auto* count_p = c_count->add_option("--p", count_opts.p, "single prime");
    auto* count_bound = c_count->add_option("--bound", count_opts.bound, "scan primes up to this");
    c_count->add_option("--min", count_opts.min, "lowest prime scanned");
    c_count->add_flag("--include-small", count_opts.include_small, "admit p = 2 and p = 3");
    count_p->excludes(count_bound);
    detail::add_scan_flags(c_count, state);
    c_count->callback([&] {
        CurveQ e = CurveQ::parse(count_opts.curve);
        state.load_cache();
        const bool single = count_p->count() > 0;
        PrimeRange range;
        if (single) {
            if (!is_prime_u64(count_opts.p)) throw UsageError("--p must be prime");
            range = {count_opts.p, count_opts.p, true};
        } else if (count_bound->count() > 0) {
            range = {count_opts.min, count_opts.bound, count_opts.include_small};
        } else {
            throw UsageError("count needs --p or --bound");
        }
        std::vector<FrobeniusRecord> records = state.scan(e, range);
        doc.command = "count";
        doc.parameters["curve"] = e.id();
        if (single)
            doc.parameters["p"] = count_opts.p;
        else
            doc.parameters["range"] = detail::range_json(
                std::max<uint64_t>(range.lo, range.include_small ? 2 : 5), range.hi,
                range.include_small);
        Json rows = Json::array();
        uint64_t good = 0, bad = 0, ss = 0;
        for (const auto& rec : records) {
            rows.push_back(detail::record_json(rec));
            if (rec.good) {
                ++good;
                if (rec.supersingular) ++ss;
            } else {
                ++bad;
            }
        }
        doc.payload["records"] = rows;
        Json totals = Json::object();
        totals["good"] = good;
        totals["bad"] = bad;
        totals["supersingular"] = ss;
        doc.payload["totals"] = totals;
        emit_doc = true;
    });

    // congruence ---------------------------------------------------------
    auto* c_cong = app.add_subcommand("congruence",
                                      "test point counts against alpha mod d at good primes");
    struct {
        std::string curve;
        uint32_t d = 0;
        long long alpha = 0;
        uint64_t bound = 0;
        uint64_t min = 0;
        bool include_small = false;
        std::vector<std::string> filters;
        std::string mode = "all";
        uint64_t exclusion = 3;
    } cong_opts;
    c_cong->add_option("--curve", cong_opts.curve, "curve 'A,B'")->required();
    c_cong->add_option("--d", cong_opts.d, "congruence modulus")->required();
    c_cong->add_option("--alpha", cong_opts.alpha, "target residue")->required();
    c_cong->add_option("--bound", cong_opts.bound, "scan primes up to this")->required();
    c_cong->add_option("--min", cong_opts.min, "lowest prime scanned");
    c_cong->add_flag("--include-small", cong_opts.include_small, "admit p = 2 and p = 3");
    c_cong->add_option("--primes-mod", cong_opts.filters,
                       "restrict to primes with p ≡ r (mod m), as 'r,m'; repeatable");
    c_cong->add_option("--mode", cong_opts.mode, "all, supersingular, or ordinary");
    c_cong->add_option("--exclusion", cong_opts.exclusion,
                       "violations at p <= this are reported separately");
    detail::add_scan_flags(c_cong, state);
    c_cong->callback([&] {
        CurveQ e = CurveQ::parse(cong_opts.curve);
        CongruencePair pair(cong_opts.d, cong_opts.alpha);
        ResidueClassFilter filter = detail::parse_filters(cong_opts.filters);
        ReductionMode mode = detail::parse_mode(cong_opts.mode);
        state.load_cache();
        PrimeRange range{cong_opts.min, cong_opts.bound, cong_opts.include_small};
        std::vector<FrobeniusRecord> records = state.scan(e, range);
        ConditionReport report = detail::condition_check_records(
            records, e.id(), pair, mode, filter, cong_opts.exclusion);
        report.congruence.lo = std::max<uint64_t>(range.lo, range.include_small ? 2 : 5);
        report.congruence.hi = range.hi;
        doc.command = "congruence";
        doc.parameters["curve"] = e.id();
        doc.parameters["d"] = pair.d;
        doc.parameters["alpha"] = pair.alpha;
        doc.parameters["mode"] = reduction_mode_name(mode);
        doc.parameters["range"] = detail::range_json(report.congruence.lo, range.hi,
                                                     range.include_small);
        doc.parameters["filter"] = detail::filter_json(filter);
        doc.parameters["exclusion"] = cong_opts.exclusion;
        doc.payload = detail::condition_json(report);
        emit_doc = true;
        if (!report.congruence.holds()) exit_code = 1;
    });

    // torsion ------------------------------------------------------------
    auto* c_tor = app.add_subcommand("torsion", "rational torsion subgroup");
    struct {
        std::string curve;
        int bound_primes = 8;
        long long x_scan_limit = 1'000'000;
    } tor_opts;
    c_tor->add_option("--curve", tor_opts.curve, "curve 'A,B'")->required();
    c_tor->add_option("--bound-primes", tor_opts.bound_primes,
                      "good primes folded into the order bound")
        ->check(CLI::Range(1, 64));
    c_tor->add_option("--x-scan-limit", tor_opts.x_scan_limit, "fallback |x| search window");
    c_tor->add_option("--json", state.json_path, "write the report as JSON to this file");
    c_tor->callback([&] {
        CurveQ e = CurveQ::parse(tor_opts.curve);
        TorsionOptions topts;
        topts.bound_primes = tor_opts.bound_primes;
        topts.x_scan_limit = tor_opts.x_scan_limit;
        uint64_t bound = torsion_order_bound(e, topts);
        TorsionGroup group = torsion_group(e, topts);
        doc.command = "torsion";
        doc.parameters["curve"] = e.id();
        doc.parameters["bound_primes"] = tor_opts.bound_primes;
        doc.payload = detail::torsion_json(group, bound);
        emit_doc = true;
    });

    // family -------------------------------------------------------------
    auto* c_fam = app.add_subcommand("family", "torsion family member for a divisor");
    struct {
        int d = 0;
        std::string t;
    } fam_opts;
    c_fam->add_option("--d", fam_opts.d, "required divisor of the point counts")->required();
    c_fam->add_option("--t", fam_opts.t, "family parameter (integer)")->required();
    c_fam->add_option("--json", state.json_path, "write the report as JSON to this file");
    c_fam->callback([&] {
        Int t = detail::parse_int_token(fam_opts.t, "--t");
        FamilyCurve member = family_curve_for_divisor(fam_opts.d, t);
        doc.command = "family";
        doc.parameters["d"] = member.requested;
        doc.parameters["t"] = t.get_str();
        doc.payload["family_order"] = member.d;
        doc.payload["a"] = member.a.get_str();
        doc.payload["b"] = member.b.get_str();
        doc.payload["singular"] = member.singular;
        if (!member.singular) doc.payload["curve"] = member.curve->id();
        emit_doc = true;
        if (member.singular) exit_code = 1;
    });

    // serre --------------------------------------------------------------
    auto* c_serre = app.add_subcommand("serre",
                                       "admissible residues of a mod-d Galois image");
    struct {
        uint32_t d = 0;
        std::string generators;
        uint64_t cap = 1'000'000;
    } serre_opts;
    c_serre->add_option("--d", serre_opts.d, "matrix modulus")->required();
    c_serre->add_option("--generators", serre_opts.generators,
                        "matrices as 'a,b;c,d|a,b;c,d|...'")
        ->required();
    c_serre->add_option("--cap", serre_opts.cap, "subgroup closure element cap");
    c_serre->add_option("--json", state.json_path, "write the report as JSON to this file");
    c_serre->callback([&] {
        std::vector<Gl2Element> gens =
            parse_generator_list(serre_opts.generators, serre_opts.d);
        Gl2Subgroup group = generate_subgroup(gens, serre_opts.d, serre_opts.cap);
        std::set<uint32_t> admissible = serre_condition(group);
        doc.command = "serre";
        doc.parameters["d"] = serre_opts.d;
        doc.parameters["generators"] = static_cast<uint64_t>(gens.size());
        doc.payload["subgroup_order"] = static_cast<uint64_t>(group.elements.size());
        if (serre_opts.d <= 65535) {
            doc.payload["group_order"] = gl2_order(serre_opts.d);
            doc.payload["full_group"] = group.elements.size() == gl2_order(serre_opts.d);
        }
        Json adm = Json::array();
        for (uint32_t v : admissible) adm.push_back(v);
        doc.payload["admissible"] = adm;
        emit_doc = true;
        if (admissible.empty()) exit_code = 1;
    });

    // scan-ss ------------------------------------------------------------
    auto* c_ss = app.add_subcommand("scan-ss", "supersingular primes up to a bound");
    struct {
        std::string curve;
        uint64_t bound = 0;
        uint64_t min = 0;
        bool include_small = false;
        uint32_t d = 0;
    } ss_opts;
    c_ss->add_option("--curve", ss_opts.curve, "curve 'A,B'")->required();
    c_ss->add_option("--bound", ss_opts.bound, "scan primes up to this")->required();
    c_ss->add_option("--min", ss_opts.min, "lowest prime scanned");
    c_ss->add_flag("--include-small", ss_opts.include_small, "admit p = 2 and p = 3");
    c_ss->add_option("--d", ss_opts.d, "also report residue classes of the primes mod d");
    detail::add_scan_flags(c_ss, state);
    c_ss->callback([&] {
        CurveQ e = CurveQ::parse(ss_opts.curve);
        state.load_cache();
        PrimeRange range{ss_opts.min, ss_opts.bound, ss_opts.include_small};
        std::vector<FrobeniusRecord> records = state.scan(e, range);
        std::vector<uint64_t> primes = supersingular_primes_from_records(records);
        doc.command = "scan-ss";
        doc.parameters["curve"] = e.id();
        doc.parameters["range"] = detail::range_json(
            std::max<uint64_t>(range.lo, range.include_small ? 2 : 5), range.hi,
            range.include_small);
        if (ss_opts.d != 0) doc.parameters["d"] = ss_opts.d;
        doc.payload["count"] = static_cast<uint64_t>(primes.size());
        Json arr = Json::array();
        for (uint64_t p : primes) arr.push_back(p);
        doc.payload["primes"] = arr;
        if (ss_opts.d != 0) {
            auto hist = residue_histogram(primes, ss_opts.d);
            Json h = Json::object();
            for (auto [residue, n] : hist) h[std::to_string(residue)] = n;
            doc.payload["histogram"] = h;
            doc.payload["classes_hit"] = static_cast<uint64_t>(hist.size());
        }
        emit_doc = true;
    });

    // survey ---------------------------------------------------------------
    auto* c_survey = app.add_subcommand("survey",
                                        "sweep d = 2..d_max over curves, split by reduction type");
    struct {
        long long alpha = 0;
        uint32_t d_max = 0;
        uint64_t bound = 0;
        uint64_t min = 0;
        bool include_small = false;
        uint64_t exclusion = 3;
        std::vector<std::string> curve_args;
        std::string curves_file;
    } survey_opts;
    c_survey->add_option("--alpha", survey_opts.alpha, "target residue")->required();
    c_survey->add_option("--d-max", survey_opts.d_max, "largest modulus tested")->required();
    c_survey->add_option("--bound", survey_opts.bound, "scan primes up to this")->required();
    c_survey->add_option("--min", survey_opts.min, "lowest prime scanned");
    c_survey->add_flag("--include-small", survey_opts.include_small, "admit p = 2 and p = 3");
    c_survey->add_option("--exclusion", survey_opts.exclusion,
                         "violations at p <= this are reported separately");
    c_survey->add_option("--curve", survey_opts.curve_args, "curve 'A,B'; repeatable");
    c_survey->add_option("--curves", survey_opts.curves_file, "file with one curve per line");
    detail::add_scan_flags(c_survey, state);
    c_survey->callback([&] {
        std::vector<CurveQ> curves;
        for (const auto& text : survey_opts.curve_args) curves.push_back(CurveQ::parse(text));
        if (!survey_opts.curves_file.empty())
            for (auto& e : detail::read_curve_file(survey_opts.curves_file))
                curves.push_back(std::move(e));
        if (curves.empty()) throw UsageError("survey needs --curve or --curves");
        state.load_cache();
        ScanOptions sopts;
        sopts.threads = state.threads;
        sopts.counting.exhaustive_threshold = state.exhaustive_threshold;
        PrimeRange range{survey_opts.min, survey_opts.bound, survey_opts.include_small};
        SurveyReport report =
            survey_sets(survey_opts.alpha, survey_opts.d_max, curves, range, sopts,
                        survey_opts.exclusion, state.cache_loaded ? &state.cache_file : nullptr);
        if (state.cache_loaded) state.cache_dirty = true;
        doc.command = "survey";
        doc.parameters["alpha"] = survey_opts.alpha;
        doc.parameters["d_max"] = survey_opts.d_max;
        doc.parameters["range"] =
            detail::range_json(report.lo, report.hi, survey_opts.include_small);
        doc.parameters["exclusion"] = survey_opts.exclusion;
        Json curve_ids = Json::array();
        for (const auto& id : report.curves) curve_ids.push_back(id);
        doc.parameters["curves"] = curve_ids;
        Json errors = Json::array();
        for (const auto& msg : report.scan_errors) errors.push_back(msg);
        doc.payload["scan_errors"] = errors;
        Json s_cand = Json::array(), o_cand = Json::array();
        for (uint32_t d : report.s_candidates) s_cand.push_back(d);
        for (uint32_t d : report.o_candidates) o_cand.push_back(d);
        doc.payload["s_candidates"] = s_cand;
        doc.payload["o_candidates"] = o_cand;
        Json entries = Json::array();
        bool any_violation = false;
        for (const auto& entry : report.entries) {
            const CongruenceReport& c = entry.report.congruence;
            Json row = Json::object();
            row["d"] = entry.d;
            row["mode"] = reduction_mode_name(entry.mode);
            row["curve"] = entry.curve;
            row["good_tested"] = c.good_tested;
            row["matching"] = c.matching;
            row["violations_total"] = c.violations_total;
            row["violations"] = detail::violations_json(c.violations, 10);
            row["holds"] = c.holds();
            row["gcd_rule_applicable"] = entry.report.gcd_rule_applicable;
            row["gcd_rule_holds"] = entry.report.gcd_rule_holds;
            entries.push_back(std::move(row));
            if (c.violations_total > 0) any_violation = true;
        }
        doc.payload["entries"] = entries;
        emit_doc = true;
        if (any_violation) exit_code = 1;
    });

    // cm-test --------------------------------------------------------------
    auto* c_cm = app.add_subcommand("cm-test",
                                    "supersingular density heuristic for complex multiplication");
    struct {
        std::string curve;
        uint64_t bound = 0;
        uint64_t min = 0;
        bool include_small = false;
    } cm_opts;
    c_cm->add_option("--curve", cm_opts.curve, "curve 'A,B'")->required();
    c_cm->add_option("--bound", cm_opts.bound, "scan primes up to this")->required();
    c_cm->add_option("--min", cm_opts.min, "lowest prime scanned");
    c_cm->add_flag("--include-small", cm_opts.include_small, "admit p = 2 and p = 3");
    detail::add_scan_flags(c_cm, state);
    c_cm->callback([&] {
        CurveQ e = CurveQ::parse(cm_opts.curve);
        state.load_cache();
        PrimeRange range{cm_opts.min, cm_opts.bound, cm_opts.include_small};
        std::vector<FrobeniusRecord> records = state.scan(e, range);
        CmReport report = cm_density_from_records(records);
        doc.command = "cm-test";
        doc.parameters["curve"] = e.id();
        doc.parameters["range"] = detail::range_json(
            std::max<uint64_t>(range.lo, range.include_small ? 2 : 5), range.hi,
            range.include_small);
        doc.payload["good"] = report.good;
        doc.payload["supersingular"] = report.supersingular;
        doc.payload["density"] = report.density;
        doc.payload["verdict"] = cm_verdict_name(report.verdict);
        Json th = Json::object();
        th["cm_low"] = report.thresholds.cm_low;
        th["cm_high"] = report.thresholds.cm_high;
        th["non_cm_below"] = report.thresholds.non_cm_below;
        th["min_good"] = report.thresholds.min_good;
        doc.payload["thresholds"] = th;
        emit_doc = true;
    });

    // --json applies to every scan subcommand too.
    for (CLI::App* cmd : {c_count, c_cong, c_ss, c_survey, c_cm})
        cmd->add_option("--json", state.json_path, "write the report as JSON to this file");

    auto started = std::chrono::steady_clock::now();
    try {
        std::vector<const char*> argv;
        argv.push_back("ellcong");
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Error& e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 2;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 3;
    }

    if (emit_doc) {
        doc.elapsed_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        out << render_human(doc);
        if (!state.json_path.empty()) {
            std::ofstream jf(state.json_path, std::ios::trunc);
            if (!jf.is_open()) {
                err << "error: cannot write " << state.json_path << "\n";
                return 3;
            }
            jf << doc.serialize();
        }
        err << "# elapsed " << doc.elapsed_seconds << "s\n";
    }
    state.flush_cache();
    return exit_code;
}

}  // namespace ellcong
