#pragma once

// Random Hermitian PSD generators for property tests.

#include "polsar/core.hpp"

#include <random>

namespace polsar::testing {

/// B B^H with B a 3 x rank complex Gaussian matrix, scaled by 10^u, u ~ U(-3, 3) when `wide_scale`.
inline HermitianMatrix3 random_psd(std::mt19937_64& rng, int rank = 3, bool wide_scale = false) {
    std::normal_distribution<double> n(0.0, 1.0);
    ComplexMatrix3 b;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < static_cast<std::size_t>(rank); ++j) b(i, j) = {n(rng), n(rng)};
    HermitianMatrix3 m = HermitianMatrix3::from_full(b * b.adjoint());
    if (wide_scale) {
        std::uniform_real_distribution<double> u(-3.0, 3.0);
        m *= std::pow(10.0, u(rng));
    }
    return m;
}

/// Random full-rank PD matrix with a bounded condition number.
inline HermitianMatrix3 random_pd(std::mt19937_64& rng) {
    HermitianMatrix3 m = random_psd(rng, 3);
    const double t = m.trace();
    return m + HermitianMatrix3::identity() * (0.05 * t);
}

inline ScatteringSample random_sample(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    return {{n(rng), n(rng)}, {n(rng), n(rng)}, {n(rng), n(rng)}};
}

} // namespace polsar::testing
