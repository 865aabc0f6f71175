#include "polsar/synth.hpp"

#include "polsar/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace polsar {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

struct PreparedClass {
    int class_id;
    ComplexMatrix3 chol; // lexicographic-basis factor
};

std::vector<PreparedClass> prepare(const SceneSpec& spec) {
    spec.validate();
    std::vector<PreparedClass> out;
    for (const auto& c : spec.classes) out.push_back({c.class_id, cholesky(to_lexicographic_basis(c.center))});
    return out;
}

std::vector<std::size_t> pixel_classes(const SceneSpec& spec) {
    std::vector<std::size_t> owner(spec.width * spec.height);
    for (std::size_t c = 0; c < spec.classes.size(); ++c)
        for (const auto& r : spec.classes[c].regions)
            for (std::size_t y = r.y0; y < r.y0 + r.height; ++y)
                for (std::size_t x = r.x0; x < r.x0 + r.width; ++x) owner[y * spec.width + x] = c;
    return owner;
}

} // namespace

void SceneSpec::validate() const {
    if (width == 0 || height == 0) throw ConfigError("scene: width and height must be positive");
    if (looks < 1) throw ConfigError("scene: looks must be >= 1");
    if (classes.empty()) throw ConfigError("scene: no classes declared");

    std::set<int> ids;
    std::vector<int> cover(width * height, 0);
    for (const auto& c : classes) {
        if (c.class_id < 1 || c.class_id > 255)
            throw ConfigError("scene: class id " + std::to_string(c.class_id) + " outside 1..255");
        if (!ids.insert(c.class_id).second)
            throw ConfigError("scene: duplicate class id " + std::to_string(c.class_id));
        if (!c.center.is_finite() || !(jacobi_eigen(c.center).values[2] > 0.0))
            throw ConfigError("scene: center of class " + std::to_string(c.class_id) + " is not positive definite");
        for (const auto& r : c.regions) {
            if (r.width == 0 || r.height == 0 || r.x0 + r.width > width || r.y0 + r.height > height)
                throw ConfigError("scene: region of class " + std::to_string(c.class_id) + " is empty or out of bounds");
            for (std::size_t y = r.y0; y < r.y0 + r.height; ++y)
                for (std::size_t x = r.x0; x < r.x0 + r.width; ++x)
                    if (++cover[y * width + x] > 1)
                        throw ConfigError("scene: regions overlap at (" + std::to_string(x) + "," +
                                          std::to_string(y) + ")");
        }
    }
    const auto gap = std::find(cover.begin(), cover.end(), 0);
    if (gap != cover.end()) {
        const auto i = static_cast<std::size_t>(gap - cover.begin());
        throw ConfigError("scene: pixel (" + std::to_string(i % width) + "," + std::to_string(i / width) +
                          ") is not covered by any region");
    }
}

ComplexMatrix3 cholesky(const HermitianMatrix3& m) {
    const double floor = 1e-12 * m.trace();
    ComplexMatrix3 l;
    for (std::size_t j = 0; j < 3; ++j) {
        double d = m.diag(j);
        for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
        if (!(d > floor)) throw CholeskyError("cholesky: matrix is not positive definite");
        l(j, j) = std::sqrt(d);
        for (std::size_t i = j + 1; i < 3; ++i) {
            Complex s = m(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
            l(i, j) = s / l(j, j).real();
        }
    }
    return l;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::mt19937_64 pixel_rng(std::uint64_t seed, std::uint64_t pixel) noexcept {
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ pixel));
}

TargetVector sample_gaussian_vector(const ComplexMatrix3& chol, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, kInvSqrt2);
    std::array<Complex, 3> g;
    for (auto& v : g) {
        const double re = normal(rng);
        const double im = normal(rng);
        v = {re, im};
    }
    TargetVector h;
    for (std::size_t i = 0; i < 3; ++i) h.h[i] = chol(i, 0) * g[0] + chol(i, 1) * g[1] + chol(i, 2) * g[2];
    return h;
}

TargetVector sample_gaussian_vector(const HermitianMatrix3& cov, std::mt19937_64& rng) {
    return sample_gaussian_vector(cholesky(cov), rng);
}

Scene generate_scene(const SceneSpec& spec) {
    const auto classes = prepare(spec);
    const auto owner = pixel_classes(spec);

    Scene scene{CoherencyRaster(spec.width, spec.height, spec.looks), LabelMask(spec.width, spec.height)};
    std::vector<TargetVector> looks(static_cast<std::size_t>(spec.looks));
    for (std::size_t i = 0; i < owner.size(); ++i) {
        const auto& c = classes[owner[i]];
        auto rng = pixel_rng(spec.seed, i);
        for (auto& h : looks) h = sample_gaussian_vector(c.chol, rng);
        scene.raster.data[i] = to_pauli_basis(multilook(looks));
        scene.truth.data[i] = static_cast<std::uint8_t>(c.class_id);
    }
    return scene;
}

SlcRaster generate_slc(const SceneSpec& spec) {
    const auto classes = prepare(spec);
    const auto owner = pixel_classes(spec);

    SlcRaster slc(spec.width, spec.height);
    for (std::size_t i = 0; i < owner.size(); ++i) {
        auto rng = pixel_rng(spec.seed, i);
        const TargetVector h = sample_gaussian_vector(classes[owner[i]].chol, rng);
        slc.data[i] = {h.h[0], h.h[1] * kInvSqrt2, h.h[2]};
    }
    return slc;
}

LabelMask sample_training_mask(const LabelMask& truth, std::size_t per_class, std::uint64_t seed) {
    std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(truth.max_label()) + 1);
    for (std::size_t i = 0; i < truth.data.size(); ++i)
        if (truth.data[i] != 0) by_class[truth.data[i]].push_back(i);

    LabelMask out(truth.width, truth.height);
    std::mt19937_64 rng(splitmix64(seed ^ 0x7261696EULL));
    for (std::size_t c = 1; c < by_class.size(); ++c) {
        auto& idx = by_class[c];
        std::shuffle(idx.begin(), idx.end(), rng);
        const std::size_t take = std::min(per_class, idx.size());
        for (std::size_t k = 0; k < take; ++k) out.data[idx[k]] = static_cast<std::uint8_t>(c);
    }
    return out;
}

} // namespace polsar
