#include "polsar/speckle.hpp"

#include "polsar/errors.hpp"

#include <cmath>
#include <string>

namespace polsar {

namespace {

void check_window(int window, std::size_t width, std::size_t height) {
    if (window < 1 || window % 2 == 0)
        throw ConfigError("filter window must be a positive odd integer, got " + std::to_string(window));
    if (static_cast<std::size_t>(window) > std::min(width, height))
        throw ConfigError("filter window " + std::to_string(window) + " exceeds raster size " + std::to_string(width) +
                          "x" + std::to_string(height));
}

} // namespace

void SlcRaster::validate() const {
    if (data.size() != width * height) throw ConfigError("slc raster: data length != width*height");
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto& s = data[i];
        for (Complex c : {s.s_hh, s.s_hv, s.s_vv})
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
                throw DataError("slc raster: non-finite sample at pixel " + std::to_string(i));
    }
}

std::size_t mirror_index(std::ptrdiff_t i, std::size_t n) noexcept {
    const auto len = static_cast<std::ptrdiff_t>(n);
    if (len == 1) return 0;
    const std::ptrdiff_t period = 2 * (len - 1);
    i %= period;
    if (i < 0) i += period;
    return static_cast<std::size_t>(i < len ? i : period - i);
}

CoherencyRaster boxcar_multilook(const SlcRaster& slc, int window) {
    check_window(window, slc.width, slc.height);
    const std::ptrdiff_t r = window / 2;

    std::vector<TargetVector> targets(slc.data.size());
    for (std::size_t i = 0; i < slc.data.size(); ++i) targets[i] = target_vector(slc.data[i]);

    CoherencyRaster out(slc.width, slc.height, window * window);
    std::vector<TargetVector> block(static_cast<std::size_t>(window * window));
    for (std::size_t y = 0; y < slc.height; ++y) {
        for (std::size_t x = 0; x < slc.width; ++x) {
            std::size_t k = 0;
            for (std::ptrdiff_t dy = -r; dy <= r; ++dy) {
                const std::size_t yy = mirror_index(static_cast<std::ptrdiff_t>(y) + dy, slc.height);
                for (std::ptrdiff_t dx = -r; dx <= r; ++dx) {
                    const std::size_t xx = mirror_index(static_cast<std::ptrdiff_t>(x) + dx, slc.width);
                    block[k++] = targets[yy * slc.width + xx];
                }
            }
            out.at(x, y) = to_pauli_basis(multilook(block));
        }
    }
    return out;
}

double lee_weight(double span_mean, double span_variance, int looks) noexcept {
    if (!(span_mean > 0.0)) return 0.0;
    const double cu2 = 1.0 / static_cast<double>(looks);
    const double cy2 = span_variance / (span_mean * span_mean);
    if (cy2 <= 0.0) return 0.0;
    return std::max(0.0, (cy2 - cu2) / (cy2 * (1.0 + cu2)));
}

CoherencyRaster lee_filter(const CoherencyRaster& raster, const FilterConfig& cfg) {
    check_window(cfg.window, raster.width, raster.height);
    const int looks = cfg.looks > 0 ? cfg.looks : raster.looks;
    if (looks < 1) throw ConfigError("lee filter: equivalent looks must be >= 1");

    const std::ptrdiff_t r = cfg.window / 2;
    const double inv_count = 1.0 / static_cast<double>(cfg.window * cfg.window);

    CoherencyRaster out(raster.width, raster.height, raster.looks);
    for (std::size_t y = 0; y < raster.height; ++y) {
        for (std::size_t x = 0; x < raster.width; ++x) {
            HermitianMatrix3 mean;
            double span_sum = 0.0;
            double span_sq = 0.0;
            for (std::ptrdiff_t dy = -r; dy <= r; ++dy) {
                const std::size_t yy = mirror_index(static_cast<std::ptrdiff_t>(y) + dy, raster.height);
                for (std::ptrdiff_t dx = -r; dx <= r; ++dx) {
                    const std::size_t xx = mirror_index(static_cast<std::ptrdiff_t>(x) + dx, raster.width);
                    const HermitianMatrix3& m = raster.at(xx, yy);
                    mean += m;
                    const double span = m.trace();
                    span_sum += span;
                    span_sq += span * span;
                }
            }
            mean *= inv_count;
            const double span_mean = span_sum * inv_count;
            const double span_var = std::max(0.0, span_sq * inv_count - span_mean * span_mean);
            const double w = lee_weight(span_mean, span_var, looks);
            out.at(x, y) = mean + w * (raster.at(x, y) - mean);
        }
    }
    return out;
}

} // namespace polsar
