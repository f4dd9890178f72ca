// Builds the subgroup of GL(2, Z/d) generated by matrices given on the
// command line and prints which residues alpha survive the trace condition
// 1 + det(g) - tr(g) ≡ alpha (mod d) across the whole image.
#include <iostream>

#include "ellcong/ellcong.hpp"

using namespace ellcong;

int main(int argc, char** argv) {
    uint32_t d = argc > 1 ? static_cast<uint32_t>(std::atoi(argv[1])) : 4;
    std::string gens = argc > 2 ? argv[2] : "1,1;0,1";

    std::vector<Gl2Element> generators = parse_generator_list(gens, d);
    Gl2Subgroup image = generate_subgroup(generators, d);
    std::cout << "subgroup of GL(2, Z/" << d << ") from " << generators.size()
              << " generator(s): " << image.elements.size() << " elements";
    if (d <= 65535) {
        std::cout << " of " << gl2_order(d);
        if (image.elements.size() == gl2_order(d)) std::cout << " (full image)";
    }
    std::cout << "\n";

    std::set<uint32_t> admissible = serre_condition(image);
    if (admissible.empty()) {
        std::cout << "no residue class survives: every alpha is obstructed\n";
    } else {
        std::cout << "admissible alpha mod " << d << ":";
        for (uint32_t v : admissible) std::cout << ' ' << v;
        std::cout << "\n";
    }
    return 0;
}
