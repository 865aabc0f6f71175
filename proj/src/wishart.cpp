#include "polsar/wishart.hpp"

#include "polsar/errors.hpp"

#include <cmath>
#include <string>

namespace polsar {

WishartClass make_wishart_class(int class_id, const HermitianMatrix3& center, bool apply_loading) {
    if (!center.is_finite()) throw DataError("wishart: class " + std::to_string(class_id) + " center is not finite");
    HermitianMatrix3 loaded = center;
    if (apply_loading) {
        const double eps = 1e-9 * center.trace();
        loaded += HermitianMatrix3::diagonal(eps, eps, eps);
    }
    const EigenSystem3 es = jacobi_eigen(loaded);
    if (!(es.values[2] > 0.0))
        throw DegenerateClassError("wishart: class " + std::to_string(class_id) + " center is singular");

    WishartClass cls;
    cls.class_id = class_id;
    cls.center = loaded;
    cls.log_det = std::log(es.values[0]) + std::log(es.values[1]) + std::log(es.values[2]);
    cls.inverse = loaded.full().inverse();
    return cls;
}

WishartModel train_wishart(const CoherencyRaster& raster, const LabelMask& mask) {
    check_label_mask(mask, raster.width, raster.height);
    const std::size_t k = mask.max_label();
    if (k == 0) throw MissingClassError("wishart: training mask has no labeled pixels");

    std::vector<HermitianMatrix3> sums(k + 1);
    std::vector<std::size_t> counts(k + 1, 0);
    for (std::size_t i = 0; i < mask.data.size(); ++i) {
        const auto label = mask.data[i];
        if (label == 0) continue;
        sums[label] += raster.data[i];
        ++counts[label];
    }

    WishartModel model;
    model.looks = raster.looks;
    for (std::size_t c = 1; c <= k; ++c) {
        if (counts[c] < kMinWishartTrainingPixels)
            throw InsufficientSamplesError("wishart: class " + std::to_string(c) + " has " +
                                           std::to_string(counts[c]) + " training pixels, need at least " +
                                           std::to_string(kMinWishartTrainingPixels));
        model.classes.push_back(
            make_wishart_class(static_cast<int>(c), sums[c] * (1.0 / static_cast<double>(counts[c]))));
    }
    return model;
}

double wishart_distance(const HermitianMatrix3& z, const WishartClass& cls) noexcept {
    double tr = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) tr += (cls.inverse(i, j) * z(j, i)).real();
    return cls.log_det + tr;
}

std::size_t nearest_wishart_class(const HermitianMatrix3& z, const WishartModel& model) {
    if (model.classes.empty()) throw ConfigError("wishart: empty model");
    std::size_t best = 0;
    double best_d = wishart_distance(z, model.classes[0]);
    for (std::size_t c = 1; c < model.classes.size(); ++c) {
        const double d = wishart_distance(z, model.classes[c]);
        if (d < best_d || (d == best_d && model.classes[c].class_id < model.classes[best].class_id)) {
            best = c;
            best_d = d;
        }
    }
    return best;
}

ClassMap classify_wishart(const CoherencyRaster& raster, const WishartModel& model) {
    ClassMap out(raster.width, raster.height);
    for (std::size_t i = 0; i < raster.data.size(); ++i)
        out.data[i] = static_cast<std::uint8_t>(model.classes[nearest_wishart_class(raster.data[i], model)].class_id);
    return out;
}

} // namespace polsar
