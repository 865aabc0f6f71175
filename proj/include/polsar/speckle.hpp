#pragma once

#include "polsar/core.hpp"

#include <cstddef>
#include <vector>

namespace polsar {

/// Single-look complex scattering raster, row-major.
struct SlcRaster {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<ScatteringSample> data;

    SlcRaster() = default;
    SlcRaster(std::size_t w, std::size_t h) : width(w), height(h), data(w * h) {}

    ScatteringSample& at(std::size_t x, std::size_t y) noexcept { return data[y * width + x]; }
    const ScatteringSample& at(std::size_t x, std::size_t y) const noexcept { return data[y * width + x]; }
    void validate() const;
};

enum class FilterMode { Boxcar, Lee };

struct FilterConfig {
    int window = 3;
    FilterMode mode = FilterMode::Boxcar;
    /// Equivalent number of looks used by the Lee weighting; <= 0 means "use the raster's look count".
    int looks = 0;
};

/// Reflects an out-of-range index back into [0, n) without repeating the edge sample.
std::size_t mirror_index(std::ptrdiff_t i, std::size_t n) noexcept;

/// Window-averaged target-vector outer products, returned in the Pauli basis with looks = window^2.
/// Edges are mirror padded. Throws ConfigError for an even window or one larger than the raster.
CoherencyRaster boxcar_multilook(const SlcRaster& slc, int window);

/// Lee MMSE weight from the local span coefficient of variation.
/// Zero or negative mean span yields 0.
double lee_weight(double span_mean, double span_variance, int looks) noexcept;

/// Span-driven Lee MMSE filter applied uniformly to all matrix elements.
CoherencyRaster lee_filter(const CoherencyRaster& raster, const FilterConfig& cfg);

} // namespace polsar
