#pragma once

#include "polsar/core.hpp"
#include "polsar/labels.hpp"
#include "polsar/speckle.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace polsar {

/// Name of the per-pixel random stream construction, recorded in dataset headers.
inline constexpr const char* kSceneRngName = "mt19937_64/splitmix64(seed,pixel)";

struct Rect {
    std::size_t x0 = 0;
    std::size_t y0 = 0;
    std::size_t width = 0;
    std::size_t height = 0;

    bool contains(std::size_t x, std::size_t y) const noexcept {
        return x >= x0 && x < x0 + width && y >= y0 && y < y0 + height;
    }
};

struct SceneClass {
    int class_id = 0;
    std::string name;
    HermitianMatrix3 center; // Pauli-basis coherency matrix
    std::vector<Rect> regions;
};

struct SceneSpec {
    std::size_t width = 0;
    std::size_t height = 0;
    int looks = 9;
    std::uint64_t seed = 0;
    std::vector<SceneClass> classes;

    /// Regions must tile the raster exactly, centers must be PD, ids unique in 1..255.
    void validate() const;
};

/// Lower-triangular L with m = L L^H. Throws CholeskyError when a pivot drops below 1e-12 * trace.
ComplexMatrix3 cholesky(const HermitianMatrix3& m);

/// Stateless 64-bit mixer used to derive per-pixel seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Random stream for one pixel of a scene.
std::mt19937_64 pixel_rng(std::uint64_t seed, std::uint64_t pixel) noexcept;

/// Zero-mean circular complex Gaussian vector h = L g, with g ~ CN(0, I).
TargetVector sample_gaussian_vector(const ComplexMatrix3& chol, std::mt19937_64& rng);
/// Convenience overload that factors the covariance first.
TargetVector sample_gaussian_vector(const HermitianMatrix3& cov, std::mt19937_64& rng);

struct Scene {
    CoherencyRaster raster;
    LabelMask truth;
};

/// n-look coherency matrices per pixel from each region's class center. Deterministic given the seed.
Scene generate_scene(const SceneSpec& spec);

/// Single-look scattering raster from the same generative model (one target vector per pixel).
SlcRaster generate_slc(const SceneSpec& spec);

/// Picks `per_class` pixels of each class uniformly at random (deterministic in `seed`).
/// Classes with fewer pixels contribute all of them.
LabelMask sample_training_mask(const LabelMask& truth, std::size_t per_class, std::uint64_t seed);

} // namespace polsar
