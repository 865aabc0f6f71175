#pragma once

// Reference solver for the SVM dual, independent of SMO:
//   max  sum(a) - 1/2 a' Q a,   0 <= a_i <= C,   y' a = 0,   Q_ij = y_i y_j K_ij
// Accelerated projected gradient with adaptive restart. The projection onto
// {box} ∩ {y'a = 0} bisects the multiplier of the equality constraint.

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace polsar::testing {

struct QpSolution {
    std::vector<double> alpha;
    double objective = 0.0;
};

inline std::vector<double> project_box_hyperplane(const std::vector<double>& v, std::span<const int> y, double c) {
    auto alpha_at = [&](double mu, std::size_t i) { return std::clamp(v[i] - mu * y[i], 0.0, c); };
    auto g = [&](double mu) {
        double s = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) s += y[i] * alpha_at(mu, i);
        return s;
    };
    double lo = -1.0, hi = 1.0;
    while (g(lo) < 0.0) lo *= 2.0;
    while (g(hi) > 0.0) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? lo : hi) = mid;
    }
    const double mu = 0.5 * (lo + hi);
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = alpha_at(mu, i);
    return out;
}

inline double dual_objective(std::span<const double> gram, std::span<const int> y, const std::vector<double>& a) {
    const std::size_t n = y.size();
    double lin = 0.0, quad = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        lin += a[i];
        for (std::size_t j = 0; j < n; ++j) quad += a[i] * a[j] * y[i] * y[j] * gram[i * n + j];
    }
    return lin - 0.5 * quad;
}

inline QpSolution solve_dual_qp(std::span<const double> gram, std::span<const int> y, double c,
                                int max_iter = 200000) {
    const std::size_t n = y.size();
    double lip = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += std::abs(gram[i * n + j]);
        lip = std::max(lip, row);
    }
    const double step = 1.0 / lip;

    std::vector<double> a(n, 0.0), a_prev(n, 0.0), z(n, 0.0), v(n);
    double t = 1.0;
    double best = dual_objective(gram, y, a);
    std::vector<double> best_a = a;
    for (int it = 0; it < max_iter; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            double qz = 0.0;
            for (std::size_t j = 0; j < n; ++j) qz += y[i] * y[j] * gram[i * n + j] * z[j];
            v[i] = z[i] + step * (1.0 - qz); // ascent on the concave dual
        }
        a_prev = a;
        a = project_box_hyperplane(v, y, c);
        const double obj = dual_objective(gram, y, a);
        double move = 0.0;
        for (std::size_t i = 0; i < n; ++i) move = std::max(move, std::abs(a[i] - a_prev[i]));
        if (obj < dual_objective(gram, y, a_prev)) { // restart momentum on non-monotone step
            t = 1.0;
            z = a;
        } else {
            const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
            for (std::size_t i = 0; i < n; ++i) z[i] = a[i] + (t - 1.0) / t_next * (a[i] - a_prev[i]);
            t = t_next;
        }
        if (obj > best) {
            best = obj;
            best_a = a;
        }
        if (move < 1e-13 * std::max(1.0, c) && it > 100) break;
    }
    return {best_a, best};
}

/// Maximal violating pair gap: max_{I_up} -y_i G_i - min_{I_low} -y_i G_i with G = Q a - 1.
inline double kkt_gap(std::span<const double> gram, std::span<const int> y, const std::vector<double>& a, double c) {
    const std::size_t n = y.size();
    double up = -HUGE_VAL, low = HUGE_VAL;
    for (std::size_t i = 0; i < n; ++i) {
        double g = -1.0;
        for (std::size_t j = 0; j < n; ++j) g += y[i] * y[j] * gram[i * n + j] * a[j];
        const double v = -y[i] * g;
        const bool in_up = (y[i] > 0 && a[i] < c) || (y[i] < 0 && a[i] > 0);
        const bool in_low = (y[i] > 0 && a[i] > 0) || (y[i] < 0 && a[i] < c);
        if (in_up) up = std::max(up, v);
        if (in_low) low = std::min(low, v);
    }
    return up - low;
}

} // namespace polsar::testing
