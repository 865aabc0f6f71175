#pragma once

#include "polsar/core.hpp"
#include "polsar/labels.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace polsar {

inline constexpr double kDefaultRbfGamma = 0.444;
inline constexpr double kDefaultCost = 100.0;
inline constexpr std::size_t kFeatureCount = 9;

/// T11, T22, T33, Re T12, Im T12, Re T13, Im T13, Re T23, Im T23.
using FeatureVector = std::array<double, kFeatureCount>;

FeatureVector features_of(const HermitianMatrix3& t) noexcept;
HermitianMatrix3 matrix_from_features(const FeatureVector& f) noexcept;

struct FeatureGrid {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<FeatureVector> data;
};

FeatureGrid extract_features(const CoherencyRaster& raster);

/// Labeled samples of arbitrary dimension, stored row-major.
struct SampleSet {
    std::size_t dim = 0;
    std::vector<double> values;
    std::vector<int> labels;

    std::size_t size() const noexcept { return labels.size(); }
    std::span<const double> row(std::size_t i) const noexcept { return {values.data() + i * dim, dim}; }
    void add(std::span<const double> x, int label);
};

/// Labeled pixels (mask != 0) of a raster as 9-feature samples.
SampleSet training_samples(const CoherencyRaster& raster, const LabelMask& mask);

/// Per-feature standardization. Constant features keep std = 1 and are flagged.
struct FeatureScaler {
    std::vector<double> mean;
    std::vector<double> stddev;
    std::vector<bool> constant;

    static FeatureScaler fit(const SampleSet& samples);
    static FeatureScaler identity(std::size_t dim);
    void apply(std::span<const double> in, std::span<double> out) const noexcept;
};

enum class KernelKind { Polynomial, Sigmoid, Rbf };

struct Kernel {
    KernelKind kind = KernelKind::Rbf;
    double gamma = kDefaultRbfGamma; // RBF: exp(-gamma |x - y|^2)
    int degree = 3;                  // polynomial: (<x, y> + 1)^degree

    static Kernel rbf(double gamma = kDefaultRbfGamma) { return {KernelKind::Rbf, gamma, 3}; }
    static Kernel polynomial(int degree) { return {KernelKind::Polynomial, kDefaultRbfGamma, degree}; }
    /// tanh(<x, y> + 1). Not positive semi-definite; training is best-effort.
    static Kernel sigmoid() { return {KernelKind::Sigmoid, kDefaultRbfGamma, 3}; }

    void validate() const;
};

double kernel_eval(const Kernel& k, std::span<const double> x, std::span<const double> y) noexcept;

struct SmoOptions {
    double tolerance = 1e-3;              // stop when the maximal KKT violation falls below this
    std::size_t max_iterations = 1000000; // per binary problem
    bool standardize = true;              // fit a FeatureScaler in train_svm
};

/// Dual solution of one binary soft-margin problem.
struct SmoResult {
    std::vector<double> alpha;
    double bias = 0.0;       // decision(x) = sum y_i alpha_i K(x_i, x) + bias
    double objective = 0.0;  // sum alpha - 1/2 alpha' Q alpha (maximized)
    double kkt_gap = 0.0;    // max violating pair gap at exit
    std::size_t iterations = 0;
};

/// Solves max sum(a) - 1/2 a'Qa, 0 <= a <= C, y'a = 0 with Q_ij = y_i y_j K_ij.
/// `gram` is the full n x n kernel matrix (row-major). Throws ConvergenceError past max_iterations.
SmoResult solve_smo(std::span<const double> gram, std::span<const int> y, double cost, const SmoOptions& opts = {});

/// One-vs-one machine: positive decision votes for positive_class.
struct BinaryMachine {
    int positive_class = 0;
    int negative_class = 0;
    std::vector<double> support; // nsv x dim, scaled feature space
    std::vector<int> y;          // +1 / -1
    std::vector<double> alpha;
    double bias = 0.0;

    std::size_t support_count() const noexcept { return y.size(); }
    double decision(const Kernel& k, std::span<const double> x, std::size_t dim) const noexcept;
};

struct SvmModel {
    Kernel kernel;
    double cost = kDefaultCost;
    std::size_t dim = 0;
    FeatureScaler scaler;
    std::vector<int> class_ids; // ascending
    std::vector<BinaryMachine> machines;

    /// Majority vote over all pairs on an unscaled sample; ties go to the lowest class id.
    int predict(std::span<const double> x) const;
};

/// Trains one binary machine on already-scaled samples with labels pos / neg.
BinaryMachine train_binary(const SampleSet& scaled, int pos, int neg, const Kernel& kernel, double cost,
                           const SmoOptions& opts = {});

/// Throws MissingClassError for fewer than two classes, DataError for non-finite features.
SvmModel train_svm(const SampleSet& samples, const Kernel& kernel = Kernel::rbf(), double cost = kDefaultCost,
                   const SmoOptions& opts = {});

ClassMap classify_svm(const FeatureGrid& features, const SvmModel& model);

} // namespace polsar
