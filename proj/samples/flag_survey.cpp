// Prints the f-vector and flag verdict of the boundary complex for every
// (g,n) with 3g-3+n <= 5, plus the smallest non-face clique when there is one.

#include <iostream>

#include "strata/strata.hpp"

int main() {
    using namespace strata;
    for (int g = 0; g <= 3; ++g) {
        for (int n = 0; 3 * g - 3 + n <= 5; ++n) {
            GnSignature sig{g, n};
            if (!sig.exists()) continue;
            StrataCatalog catalog(sig);
            BoundaryComplex c = boundary_complex(catalog);
            FlagResult r = is_flag(c);
            std::cout << to_string(sig) << "  f =";
            for (std::size_t f : f_vector(c)) std::cout << ' ' << f;
            std::cout << (r.flag ? "  flag\n" : "  not flag\n");
            if (!r.witness) continue;
            for (const auto& key : r.witness->clique) std::cout << "    " << describe(graph_from_key(key)) << '\n';
        }
    }
}
