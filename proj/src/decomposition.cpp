#include "polsar/decomposition.hpp"

#include "polsar/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace polsar {

Haa haa_from_matrix(const HermitianMatrix3& m) {
    const double span = m.trace();
    if (!(span > 0.0)) throw ZeroPowerPixelError("decomposition: pixel has zero total power");

    EigenSystem3 es = hermitian_eig(m);
    // Eigenvalues below the PSD tolerance count as exact zeros so rank-1 spectra give H = 0.
    const double tol = kPsdTolerance * span;
    for (double& l : es.values)
        if (l <= tol) l = 0.0;

    const double total = es.values[0] + es.values[1] + es.values[2];
    Haa out;
    const double log3 = std::log(3.0);
    for (std::size_t i = 0; i < 3; ++i) {
        const double p = es.values[i] / total;
        if (p > 0.0) out.entropy -= p * std::log(p) / log3;
        const double e1 = std::min(1.0, std::abs(es.vectors[i][0]));
        out.alpha_deg += p * std::acos(e1) * 180.0 / std::numbers::pi;
    }
    out.entropy = std::clamp(out.entropy, 0.0, 1.0);
    out.alpha_deg = std::clamp(out.alpha_deg, 0.0, 90.0);

    const double minor = es.values[1] + es.values[2];
    if (minor > 0.0) {
        out.anisotropy = std::clamp((es.values[1] - es.values[2]) / minor, 0.0, 1.0);
    } else {
        out.anisotropy_degenerate = true;
    }
    return out;
}

HaaRaster haa_raster(const CoherencyRaster& raster) {
    HaaRaster out(raster.width, raster.height);
    for (std::size_t i = 0; i < raster.data.size(); ++i) {
        if (raster.data[i].trace() > 0.0) {
            out.data[i] = haa_from_matrix(raster.data[i]);
        } else {
            out.data[i].valid = false;
        }
    }
    return out;
}

} // namespace polsar
