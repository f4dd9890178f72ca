#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ellcong/counting.hpp"

namespace ellcong {

// On-disk trace cache. One record per line:
//   A,B|p|G|a_p      good reduction
//   A,B|p|B          bad reduction
// Lines are sorted by curve id (lexicographically), then by p, so equal
// caches are byte-identical files.
using TraceCacheFile = std::map<std::string, CurveTraceCache>;

inline TraceCacheFile cache_read(const std::string& path) {
    TraceCacheFile out;
    std::ifstream in(path);
    if (!in.is_open()) return out;  // absent cache reads as empty
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto fail = [&](const std::string& why) {
            throw ParseError("cache " + path + " line " + std::to_string(lineno) + ": " + why);
        };
        std::vector<std::string> fields;
        size_t start = 0;
        for (size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == '|') {
                fields.push_back(line.substr(start, i - start));
                start = i + 1;
            }
        }
        if (fields.size() != 3 && fields.size() != 4) fail("expected 3 or 4 fields");
        const std::string& id = fields[0];
        if (id.find(',') == std::string::npos) fail("curve id is not 'A,B'");
        uint64_t p = 0;
        try {
            size_t used = 0;
            p = std::stoull(fields[1], &used);
            if (used != fields[1].size()) fail("bad prime field");
        } catch (const std::exception&) {
            fail("bad prime field");
        }
        CachedTrace trace;
        if (fields[2] == "B") {
            if (fields.size() != 3) fail("bad-reduction line carries extra fields");
        } else if (fields[2] == "G") {
            if (fields.size() != 4) fail("good-reduction line is missing the trace");
            try {
                size_t used = 0;
                trace.a_p = std::stoll(fields[3], &used);
                if (used != fields[3].size()) fail("bad trace field");
            } catch (const std::exception&) {
                fail("bad trace field");
            }
            trace.good = true;
        } else {
            fail("reduction kind must be G or B");
        }
        auto [it, inserted] = out[id].insert({p, trace});
        if (!inserted && (it->second.good != trace.good || it->second.a_p != trace.a_p))
            throw ConflictError("cache " + path + " line " + std::to_string(lineno) +
                                ": contradicts an earlier line for " + id +
                                " at p=" + std::to_string(p));
    }
    return out;
}

inline void cache_write(const std::string& path, const TraceCacheFile& cache) {
    std::ofstream out(path, std::ios::trunc);
    if (!out.is_open()) throw Error("cannot write cache file " + path);
    for (const auto& [id, traces] : cache)
        for (const auto& [p, trace] : traces) {
            if (trace.good)
                out << id << '|' << p << "|G|" << trace.a_p << '\n';
            else
                out << id << '|' << p << "|B\n";
        }
}

// Merges fresh scan records for one curve; disagreement with existing
// entries is corruption, not data.
inline void cache_absorb(TraceCacheFile& cache, const std::string& curve_id,
                         const std::vector<FrobeniusRecord>& records) {
    CurveTraceCache& slot = cache[curve_id];
    for (const auto& rec : records) {
        CachedTrace trace{rec.good, rec.good ? rec.a_p : 0};
        auto [it, inserted] = slot.insert({rec.p, trace});
        if (!inserted && (it->second.good != trace.good || it->second.a_p != trace.a_p))
            throw ConflictError("cache disagrees with computed result for " + curve_id +
                                " at p=" + std::to_string(rec.p));
    }
}

}  // namespace ellcong
