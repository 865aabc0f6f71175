#pragma once

#include "polsar/core.hpp"
#include "polsar/labels.hpp"

#include <vector>

namespace polsar {

/// Minimum labeled pixels per class; a full-rank 3x3 complex covariance needs q^2 samples.
inline constexpr std::size_t kMinWishartTrainingPixels = 9;

struct WishartClass {
    int class_id = 0;
    HermitianMatrix3 center;
    double log_det = 0.0;
    ComplexMatrix3 inverse;
};

struct WishartModel {
    int looks = 1; // informational; the distance does not depend on it
    std::vector<WishartClass> classes;
};

/// Builds a class entry from a center: loads the diagonal by 1e-9 * trace, caches log-det and inverse.
/// Throws DegenerateClassError if the loaded center is not positive definite.
WishartClass make_wishart_class(int class_id, const HermitianMatrix3& center, bool apply_loading = true);

/// Class centers are the mean coherency matrix of each labeled class.
WishartModel train_wishart(const CoherencyRaster& raster, const LabelMask& mask);

/// ln|S| + tr(S^-1 Z).
double wishart_distance(const HermitianMatrix3& z, const WishartClass& cls) noexcept;

/// Index into model.classes of the minimum-distance class, ties to the lowest class id.
std::size_t nearest_wishart_class(const HermitianMatrix3& z, const WishartModel& model);

ClassMap classify_wishart(const CoherencyRaster& raster, const WishartModel& model);

} // namespace polsar
