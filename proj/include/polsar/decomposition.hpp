#pragma once

#include "polsar/core.hpp"

#include <cstddef>
#include <vector>

namespace polsar {

/// Entropy / anisotropy / mean alpha of one coherency matrix.
struct Haa {
    double entropy = 0.0;    ///< log base 3, in [0, 1]
    double anisotropy = 0.0; ///< (l2 - l3) / (l2 + l3), in [0, 1]
    double alpha_deg = 0.0;  ///< probability-weighted alpha, degrees in [0, 90]
    bool anisotropy_degenerate = false; ///< l2 + l3 == 0; anisotropy reported as 0
    bool valid = true;                  ///< false for zero-power pixels in a raster
};

struct HaaRaster {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<Haa> data;

    HaaRaster() = default;
    HaaRaster(std::size_t w, std::size_t h) : width(w), height(h), data(w * h) {}

    const Haa& at(std::size_t x, std::size_t y) const noexcept { return data[y * width + x]; }
};

/// Throws ZeroPowerPixelError when trace <= 0.
Haa haa_from_matrix(const HermitianMatrix3& m);

/// Per-pixel decomposition. Zero-power pixels come back with valid == false.
HaaRaster haa_raster(const CoherencyRaster& raster);

} // namespace polsar
