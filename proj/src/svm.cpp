#include "polsar/svm.hpp"

#include "polsar/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace polsar {

namespace {

constexpr double kTau = 1e-12;

double dot(std::span<const double> x, std::span<const double> y) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

} // namespace

// ---------------------------------------------------------------------------
// Features

FeatureVector features_of(const HermitianMatrix3& t) noexcept {
    return {t.diag(0),        t.diag(1),        t.diag(2),        t.t12().real(), t.t12().imag(),
            t.t13().real(), t.t13().imag(), t.t23().real(), t.t23().imag()};
}

HermitianMatrix3 matrix_from_features(const FeatureVector& f) noexcept {
    return {f[0], f[1], f[2], {f[3], f[4]}, {f[5], f[6]}, {f[7], f[8]}};
}

FeatureGrid extract_features(const CoherencyRaster& raster) {
    FeatureGrid g{raster.width, raster.height, {}};
    g.data.reserve(raster.data.size());
    for (const auto& m : raster.data) g.data.push_back(features_of(m));
    return g;
}

void SampleSet::add(std::span<const double> x, int label) {
    if (dim == 0 && labels.empty()) dim = x.size();
    if (x.size() != dim) throw ConfigError("sample set: dimension mismatch");
    values.insert(values.end(), x.begin(), x.end());
    labels.push_back(label);
}

SampleSet training_samples(const CoherencyRaster& raster, const LabelMask& mask) {
    check_label_mask(mask, raster.width, raster.height);
    SampleSet s;
    s.dim = kFeatureCount;
    for (std::size_t i = 0; i < mask.data.size(); ++i) {
        if (mask.data[i] == 0) continue;
        const FeatureVector f = features_of(raster.data[i]);
        s.add(f, mask.data[i]);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Scaler

FeatureScaler FeatureScaler::fit(const SampleSet& samples) {
    const std::size_t d = samples.dim;
    const std::size_t n = samples.size();
    FeatureScaler sc{std::vector<double>(d, 0.0), std::vector<double>(d, 1.0), std::vector<bool>(d, false)};
    if (n == 0) return sc;
    for (std::size_t i = 0; i < n; ++i) {
        const auto r = samples.row(i);
        for (std::size_t k = 0; k < d; ++k) sc.mean[k] += r[k];
    }
    for (auto& m : sc.mean) m /= static_cast<double>(n);
    std::vector<double> var(d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto r = samples.row(i);
        for (std::size_t k = 0; k < d; ++k) var[k] += (r[k] - sc.mean[k]) * (r[k] - sc.mean[k]);
    }
    for (std::size_t k = 0; k < d; ++k) {
        const double sd = std::sqrt(var[k] / static_cast<double>(n));
        if (sd > 1e-12 * std::max(1.0, std::abs(sc.mean[k]))) {
            sc.stddev[k] = sd;
        } else {
            sc.constant[k] = true;
        }
    }
    return sc;
}

FeatureScaler FeatureScaler::identity(std::size_t dim) {
    return {std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0), std::vector<bool>(dim, false)};
}

void FeatureScaler::apply(std::span<const double> in, std::span<double> out) const noexcept {
    for (std::size_t k = 0; k < in.size(); ++k) out[k] = (in[k] - mean[k]) / stddev[k];
}

// ---------------------------------------------------------------------------
// Kernels

void Kernel::validate() const {
    if (kind == KernelKind::Rbf && !(gamma > 0.0)) throw ConfigError("rbf kernel: gamma must be > 0");
    if (kind == KernelKind::Polynomial && degree < 1) throw ConfigError("polynomial kernel: degree must be >= 1");
}

double kernel_eval(const Kernel& k, std::span<const double> x, std::span<const double> y) noexcept {
    switch (k.kind) {
    case KernelKind::Polynomial:
        return std::pow(dot(x, y) + 1.0, k.degree);
    case KernelKind::Sigmoid:
        return std::tanh(dot(x, y) + 1.0);
    case KernelKind::Rbf: {
        double d2 = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) d2 += (x[i] - y[i]) * (x[i] - y[i]);
        return std::exp(-k.gamma * d2);
    }
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// SMO

SmoResult solve_smo(std::span<const double> gram, std::span<const int> y, double cost, const SmoOptions& opts) {
    const std::size_t n = y.size();
    if (gram.size() != n * n) throw ConfigError("smo: gram matrix size does not match label count");
    if (!(cost > 0.0)) throw ConfigError("smo: cost must be > 0");

    auto q = [&](std::size_t i, std::size_t j) { return static_cast<double>(y[i] * y[j]) * gram[i * n + j]; };

    SmoResult res;
    res.alpha.assign(n, 0.0);
    std::vector<double> grad(n, -1.0); // gradient of 1/2 a'Qa - e'a
    auto& alpha = res.alpha;

    auto is_up = [&](std::size_t t) { return (y[t] > 0 && alpha[t] < cost) || (y[t] < 0 && alpha[t] > 0.0); };
    auto is_low = [&](std::size_t t) { return (y[t] > 0 && alpha[t] > 0.0) || (y[t] < 0 && alpha[t] < cost); };

    for (;;) {
        double gmax = -std::numeric_limits<double>::infinity();
        double gmin = std::numeric_limits<double>::infinity();
        std::size_t i = n, j = n;
        for (std::size_t t = 0; t < n; ++t) {
            const double v = -y[t] * grad[t];
            if (is_up(t) && v > gmax) {
                gmax = v;
                i = t;
            }
            if (is_low(t) && v < gmin) {
                gmin = v;
                j = t;
            }
        }
        res.kkt_gap = (i == n || j == n) ? 0.0 : gmax - gmin;
        if (i == n || j == n || res.kkt_gap < opts.tolerance) break;
        if (res.iterations >= opts.max_iterations)
            throw ConvergenceError("smo: no convergence after " + std::to_string(opts.max_iterations) + " iterations");
        ++res.iterations;

        const double old_i = alpha[i];
        const double old_j = alpha[j];
        if (y[i] != y[j]) {
            double quad = q(i, i) + q(j, j) + 2.0 * q(i, j);
            if (quad <= 0.0) quad = kTau;
            const double delta = (-grad[i] - grad[j]) / quad;
            const double diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if (diff > 0.0) {
                if (alpha[j] < 0.0) {
                    alpha[j] = 0.0;
                    alpha[i] = diff;
                }
            } else if (alpha[i] < 0.0) {
                alpha[i] = 0.0;
                alpha[j] = -diff;
            }
            if (diff > 0.0) {
                if (alpha[i] > cost) {
                    alpha[i] = cost;
                    alpha[j] = cost - diff;
                }
            } else if (alpha[j] > cost) {
                alpha[j] = cost;
                alpha[i] = cost + diff;
            }
        } else {
            double quad = q(i, i) + q(j, j) - 2.0 * q(i, j);
            if (quad <= 0.0) quad = kTau;
            const double delta = (grad[i] - grad[j]) / quad;
            const double sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if (sum > cost) {
                if (alpha[i] > cost) {
                    alpha[i] = cost;
                    alpha[j] = sum - cost;
                }
            } else if (alpha[j] < 0.0) {
                alpha[j] = 0.0;
                alpha[i] = sum;
            }
            if (sum > cost) {
                if (alpha[j] > cost) {
                    alpha[j] = cost;
                    alpha[i] = sum - cost;
                }
            } else if (alpha[i] < 0.0) {
                alpha[i] = 0.0;
                alpha[j] = sum;
            }
        }

        const double di = alpha[i] - old_i;
        const double dj = alpha[j] - old_j;
        for (std::size_t t = 0; t < n; ++t) grad[t] += q(t, i) * di + q(t, j) * dj;
    }

    // Bias from free multipliers, or the midpoint of the feasible interval when none are free.
    double ub = std::numeric_limits<double>::infinity();
    double lb = -std::numeric_limits<double>::infinity();
    double free_sum = 0.0;
    std::size_t free_count = 0;
    for (std::size_t t = 0; t < n; ++t) {
        const double yg = y[t] * grad[t];
        if (alpha[t] >= cost) {
            if (y[t] < 0) ub = std::min(ub, yg);
            else lb = std::max(lb, yg);
        } else if (alpha[t] <= 0.0) {
            if (y[t] > 0) ub = std::min(ub, yg);
            else lb = std::max(lb, yg);
        } else {
            ++free_count;
            free_sum += yg;
        }
    }
    const double rho = free_count > 0 ? free_sum / static_cast<double>(free_count) : 0.5 * (ub + lb);
    res.bias = -rho;

    // a'Qa = a'(grad + e)
    double obj = 0.0;
    for (std::size_t t = 0; t < n; ++t) obj += alpha[t] * (1.0 - 0.5 * (grad[t] + 1.0));
    res.objective = obj;
    return res;
}

// ---------------------------------------------------------------------------
// Machines

double BinaryMachine::decision(const Kernel& k, std::span<const double> x, std::size_t dim) const noexcept {
    double s = bias;
    for (std::size_t i = 0; i < y.size(); ++i)
        s += y[i] * alpha[i] * kernel_eval(k, {support.data() + i * dim, dim}, x);
    return s;
}

int SvmModel::predict(std::span<const double> x) const {
    std::vector<double> scaled(dim);
    scaler.apply(x, scaled);
    std::map<int, int> votes;
    for (const auto& m : machines) {
        const double d = m.decision(kernel, scaled, dim);
        ++votes[d > 0.0 ? m.positive_class : m.negative_class];
    }
    int best = class_ids.front();
    int best_votes = -1;
    for (int c : class_ids) { // ascending, so strict > keeps the lowest id on ties
        const int v = votes.count(c) ? votes.at(c) : 0;
        if (v > best_votes) {
            best = c;
            best_votes = v;
        }
    }
    return best;
}

BinaryMachine train_binary(const SampleSet& scaled, int pos, int neg, const Kernel& kernel, double cost,
                           const SmoOptions& opts) {
    std::vector<std::size_t> idx;
    std::vector<int> y;
    for (std::size_t i = 0; i < scaled.size(); ++i) {
        if (scaled.labels[i] == pos) {
            idx.push_back(i);
            y.push_back(+1);
        } else if (scaled.labels[i] == neg) {
            idx.push_back(i);
            y.push_back(-1);
        }
    }
    const std::size_t n = idx.size();
    std::vector<double> gram(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a; b < n; ++b) {
            const double k = kernel_eval(kernel, scaled.row(idx[a]), scaled.row(idx[b]));
            gram[a * n + b] = k;
            gram[b * n + a] = k;
        }
    }
    const SmoResult res = solve_smo(gram, y, cost, opts);

    BinaryMachine m;
    m.positive_class = pos;
    m.negative_class = neg;
    m.bias = res.bias;
    for (std::size_t a = 0; a < n; ++a) {
        if (res.alpha[a] <= 0.0) continue;
        const auto r = scaled.row(idx[a]);
        m.support.insert(m.support.end(), r.begin(), r.end());
        m.y.push_back(y[a]);
        m.alpha.push_back(res.alpha[a]);
    }
    return m;
}

SvmModel train_svm(const SampleSet& samples, const Kernel& kernel, double cost, const SmoOptions& opts) {
    kernel.validate();
    if (!(cost > 0.0)) throw ConfigError("svm: cost must be > 0");
    for (double v : samples.values)
        if (!std::isfinite(v)) throw DataError("svm: non-finite feature value in training set");

    std::vector<int> ids(samples.labels.begin(), samples.labels.end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (ids.size() < 2) throw MissingClassError("svm: training needs at least two classes");

    SvmModel model;
    model.kernel = kernel;
    model.cost = cost;
    model.dim = samples.dim;
    model.class_ids = ids;
    model.scaler = opts.standardize ? FeatureScaler::fit(samples) : FeatureScaler::identity(samples.dim);

    SampleSet scaled;
    scaled.dim = samples.dim;
    scaled.labels = samples.labels;
    scaled.values.resize(samples.values.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        model.scaler.apply(samples.row(i), {scaled.values.data() + i * samples.dim, samples.dim});

    for (std::size_t a = 0; a < ids.size(); ++a)
        for (std::size_t b = a + 1; b < ids.size(); ++b)
            model.machines.push_back(train_binary(scaled, ids[a], ids[b], kernel, cost, opts));
    return model;
}

ClassMap classify_svm(const FeatureGrid& features, const SvmModel& model) {
    if (model.dim != kFeatureCount) throw ConfigError("svm: model is not a 9-feature coherency model");
    ClassMap out(features.width, features.height);
    for (std::size_t i = 0; i < features.data.size(); ++i)
        out.data[i] = static_cast<std::uint8_t>(model.predict(features.data[i]));
    return out;
}

} // namespace polsar
