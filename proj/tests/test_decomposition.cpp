#include "oracles/random_matrices.hpp"

#include "polsar/decomposition.hpp"
#include "polsar/errors.hpp"
#include "polsar/synth.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace polsar;

TEST(Haa, RankOneFirstAxis) {
    const Haa h = haa_from_matrix(HermitianMatrix3::diagonal(1, 0, 0));
    EXPECT_EQ(h.entropy, 0.0);
    EXPECT_EQ(h.anisotropy, 0.0);
    EXPECT_TRUE(h.anisotropy_degenerate);
    EXPECT_NEAR(h.alpha_deg, 0.0, 1e-12);
}

TEST(Haa, IdentityIsFullyRandom) {
    const Haa h = haa_from_matrix(HermitianMatrix3::identity());
    EXPECT_NEAR(h.entropy, 1.0, 1e-12);
    EXPECT_NEAR(h.anisotropy, 0.0, 1e-12);
    EXPECT_FALSE(h.anisotropy_degenerate);
    EXPECT_NEAR(h.alpha_deg, 60.0, 1e-9);
}

TEST(Haa, DiagonalSpectrumMatchesScalarOracle) {
    // numpy: -sum p log3 p for p = (0.5, 0.3, 0.2)
    const Haa h = haa_from_matrix(HermitianMatrix3::diagonal(0.5, 0.3, 0.2));
    EXPECT_NEAR(h.entropy, 0.93723056321612952, 1e-12);
    EXPECT_NEAR(h.anisotropy, 0.2, 1e-12);
    EXPECT_NEAR(h.alpha_deg, 45.0, 1e-9);
}

TEST(Haa, DoubleBounceHasAlphaNinety) {
    const Haa h = haa_from_matrix(outer_product(pauli_vector({1.0, 0.0, -1.0})));
    EXPECT_EQ(h.entropy, 0.0);
    EXPECT_NEAR(h.alpha_deg, 90.0, 1e-9);
}

TEST(Haa, ZeroPowerThrows) { EXPECT_THROW(haa_from_matrix(HermitianMatrix3{}), ZeroPowerPixelError); }

TEST(Haa, BoundsAndScaleInvariance) {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 3000; ++i) {
        const HermitianMatrix3 m = polsar::testing::random_psd(rng, 1 + i % 3, true);
        const Haa h = haa_from_matrix(m);
        EXPECT_GE(h.entropy, 0.0);
        EXPECT_LE(h.entropy, 1.0);
        EXPECT_GE(h.anisotropy, 0.0);
        EXPECT_LE(h.anisotropy, 1.0);
        EXPECT_GE(h.alpha_deg, 0.0);
        EXPECT_LE(h.alpha_deg, 90.0);
        if (i % 3 == 0) EXPECT_EQ(h.entropy, 0.0); // rank-1 draws
        for (double c : {1e-3, 1e3}) {
            const Haa s = haa_from_matrix(m * c);
            EXPECT_NEAR(s.entropy, h.entropy, 1e-9);
            EXPECT_NEAR(s.anisotropy, h.anisotropy, 1e-9);
            EXPECT_NEAR(s.alpha_deg, h.alpha_deg, 1e-7);
        }
    }
}

TEST(HaaRaster, ConstantAndMaskedPixels) {
    CoherencyRaster r(4, 3, 9);
    for (auto& m : r.data) m = HermitianMatrix3::identity();
    r.at(2, 1) = HermitianMatrix3{};
    const HaaRaster out = haa_raster(r);
    ASSERT_EQ(out.data.size(), 12u);
    for (std::size_t i = 0; i < out.data.size(); ++i) {
        if (i == 1 * 4 + 2) {
            EXPECT_FALSE(out.data[i].valid);
        } else {
            EXPECT_TRUE(out.data[i].valid);
            EXPECT_NEAR(out.data[i].entropy, 1.0, 1e-12);
        }
    }
}

TEST(HaaRaster, EntropyGrowsWithLooksTowardPopulationValue) {
    // Low-look estimates spread the sample eigenvalues, biasing H downward; more looks
    // recover the population entropy of diag(1, 0.3, 0.1) (0.6908 from numpy).
    double previous = -1.0;
    for (int looks : {1, 9, 25, 49}) {
        SceneSpec spec;
        spec.width = 100;
        spec.height = 100;
        spec.looks = looks;
        spec.seed = 77;
        spec.classes.push_back({1, "a", HermitianMatrix3::diagonal(1.0, 0.3, 0.1), {{0, 0, 100, 100}}});
        const HaaRaster h = haa_raster(generate_scene(spec).raster);
        double mean = 0.0;
        for (const auto& p : h.data) mean += p.entropy / static_cast<double>(h.data.size());
        if (looks == 1) EXPECT_EQ(mean, 0.0);
        EXPECT_GT(mean, previous);
        EXPECT_LT(mean, 0.6908140210976);
        previous = mean;
    }
    EXPECT_GT(previous, 0.66);
}
