#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "apvq/chain_model.hpp"

namespace apvq::test {

/// One element, `n` isotopes with increasing mass numbers, atoms drawn from
/// [min_atoms, max_atoms].
inline IsotopeChain random_chain(std::mt19937_64& rng, std::size_t n, std::int64_t min_atoms,
                                 std::int64_t max_atoms) {
    std::uniform_int_distribution<int> z_dist(20, 90);
    std::uniform_int_distribution<int> step(1, 3);
    std::uniform_int_distribution<std::int64_t> atoms(min_atoms, max_atoms);
    std::uniform_real_distribution<double> eps(-0.01, 0.01);
    const int z = z_dist(rng);
    int a = z + z / 5 + step(rng);
    std::vector<Isotope> isotopes;
    for (std::size_t i = 0; i < n; ++i) {
        isotopes.push_back({a, z, atoms(rng), eps(rng)});
        a += step(rng);
    }
    std::uniform_int_distribution<std::size_t> ref(0, n - 1);
    return build_chain(std::move(isotopes), ref(rng));
}

inline DeviationPattern random_pattern(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    DeviationPattern h;
    for (std::size_t i = 0; i < n; ++i) h.h.push_back(u(rng));
    return h;
}

/// The even Yb chain 170..176 with `atoms` probes each, referenced to 174.
inline IsotopeChain yb_chain(std::int64_t atoms = 250) {
    return build_chain({{170, 70, atoms, 0.0}, {172, 70, atoms, 0.0}, {174, 70, atoms, 0.0},
                        {176, 70, atoms, 0.0}},
                       2);
}

}  // namespace apvq::test
