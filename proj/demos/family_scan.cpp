// Walks one torsion family across a parameter window and reports, per
// member, the point-count congruence evidence and the supersingular primes
// found below the bound.
#include <iostream>

#include "ellcong/ellcong.hpp"

using namespace ellcong;

int main(int argc, char** argv) {
    int d = argc > 1 ? std::atoi(argv[1]) : 7;
    uint64_t bound = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 2000;

    std::cout << "family d = " << d << ", primes up to " << bound << "\n";
    for (long long t = -3; t <= 3; ++t) {
        FamilyCurve member = family_curve_for_divisor(d, Int(static_cast<long>(t)));
        std::cout << "t = " << t << ": ";
        if (member.singular) {
            std::cout << "singular\n";
            continue;
        }
        CongruenceReport r = frobenius_congruence_check(
            *member.curve, CongruencePair(static_cast<uint32_t>(d), 0), {0, bound});
        std::vector<uint64_t> ss = supersingular_primes(*member.curve, {0, bound});
        std::cout << member.curve->id() << "  good " << r.good_tested << ", violations "
                  << r.violations_total << ", supersingular";
        if (ss.empty()) std::cout << " none";
        for (uint64_t p : ss) std::cout << ' ' << p;
        std::cout << '\n';
    }
    return 0;
}
