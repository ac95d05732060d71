// test_util.hpp: random matrices and small helpers shared by the unit tests
#pragma once

#include <random>

#include "qgeom/linalg.hpp"

namespace qgeom::test {

inline ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist;
    ComplexMatrix m(rows, cols);
    for (auto& x : m.data()) x = Complex(dist(rng), dist(rng));
    return m;
}

inline ComplexMatrix random_hermitian(std::size_t n, std::uint64_t seed)
{
    ComplexMatrix a = random_matrix(n, n, seed);
    ComplexMatrix h = a + adjoint(a);
    // exact symmetry
    for (std::size_t i = 0; i < n; ++i) {
        h(i, i) = h(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) h(j, i) = std::conj(h(i, j));
    }
    return h;
}

} // namespace qgeom::test
