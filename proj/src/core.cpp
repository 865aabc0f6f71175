#include "polsar/core.hpp"

#include "polsar/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace polsar {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kSqrt2 = 1.41421356237309504880;
constexpr int kMaxJacobiSweeps = 100;
constexpr double kJacobiTolerance = 1e-13;

bool finite(Complex c) noexcept { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

} // namespace

double PauliVector::power() const noexcept {
    return std::norm(k[0]) + std::norm(k[1]) + std::norm(k[2]);
}

double TargetVector::power() const noexcept {
    return std::norm(h[0]) + std::norm(h[1]) + std::norm(h[2]);
}

// ---------------------------------------------------------------------------
// ComplexMatrix3

ComplexMatrix3 ComplexMatrix3::identity() {
    ComplexMatrix3 m;
    m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
    return m;
}

ComplexMatrix3 ComplexMatrix3::adjoint() const {
    ComplexMatrix3 r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
}

Complex ComplexMatrix3::trace() const noexcept { return a_[0] + a_[4] + a_[8]; }

Complex ComplexMatrix3::determinant() const noexcept {
    const auto& m = *this;
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

ComplexMatrix3 ComplexMatrix3::inverse() const {
    const auto& m = *this;
    ComplexMatrix3 adj;
    adj(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
    adj(0, 1) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
    adj(0, 2) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
    adj(1, 0) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
    adj(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
    adj(1, 2) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
    adj(2, 0) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
    adj(2, 1) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
    adj(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    const Complex inv_det = 1.0 / determinant();
    for (auto& v : adj.a_) v *= inv_det;
    return adj;
}

double ComplexMatrix3::frobenius_norm() const noexcept {
    double s = 0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

ComplexMatrix3 operator*(const ComplexMatrix3& a, const ComplexMatrix3& b) {
    ComplexMatrix3 r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
    return r;
}

ComplexMatrix3 operator-(const ComplexMatrix3& a, const ComplexMatrix3& b) {
    ComplexMatrix3 r;
    for (std::size_t i = 0; i < 9; ++i) r.a_[i] = a.a_[i] - b.a_[i];
    return r;
}

// ---------------------------------------------------------------------------
// HermitianMatrix3

HermitianMatrix3 HermitianMatrix3::from_full(const ComplexMatrix3& m) noexcept {
    auto sym = [&](std::size_t r, std::size_t c) { return 0.5 * (m(r, c) + std::conj(m(c, r))); };
    return {m(0, 0).real(), m(1, 1).real(), m(2, 2).real(), sym(0, 1), sym(0, 2), sym(1, 2)};
}

Complex HermitianMatrix3::operator()(std::size_t r, std::size_t c) const noexcept {
    if (r == c) return diag_[r];
    const bool lower = r > c;
    const std::size_t lo = lower ? c : r;
    const std::size_t hi = lower ? r : c;
    const Complex v = upper_[lo + hi - 1]; // (0,1)->0 (0,2)->1 (1,2)->2
    return lower ? std::conj(v) : v;
}

ComplexMatrix3 HermitianMatrix3::full() const noexcept {
    ComplexMatrix3 m;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m(i, j) = (*this)(i, j);
    return m;
}

double HermitianMatrix3::frobenius_norm() const noexcept {
    double s = diag_[0] * diag_[0] + diag_[1] * diag_[1] + diag_[2] * diag_[2];
    for (const auto& u : upper_) s += 2.0 * std::norm(u);
    return std::sqrt(s);
}

double HermitianMatrix3::determinant() const noexcept {
    const double a = diag_[0], b = diag_[1], c = diag_[2];
    const Complex x = upper_[0], y = upper_[1], z = upper_[2];
    // a b c + 2 Re(x z conj(y)) - a|z|^2 - b|y|^2 - c|x|^2
    return a * b * c + 2.0 * (x * z * std::conj(y)).real() - a * std::norm(z) - b * std::norm(y) - c * std::norm(x);
}

bool HermitianMatrix3::is_finite() const noexcept {
    return std::all_of(diag_.begin(), diag_.end(), [](double d) { return std::isfinite(d); }) &&
           std::all_of(upper_.begin(), upper_.end(), finite);
}

HermitianMatrix3& HermitianMatrix3::operator+=(const HermitianMatrix3& o) noexcept {
    for (std::size_t i = 0; i < 3; ++i) {
        diag_[i] += o.diag_[i];
        upper_[i] += o.upper_[i];
    }
    return *this;
}

HermitianMatrix3& HermitianMatrix3::operator-=(const HermitianMatrix3& o) noexcept {
    for (std::size_t i = 0; i < 3; ++i) {
        diag_[i] -= o.diag_[i];
        upper_[i] -= o.upper_[i];
    }
    return *this;
}

HermitianMatrix3& HermitianMatrix3::operator*=(double s) noexcept {
    for (std::size_t i = 0; i < 3; ++i) {
        diag_[i] *= s;
        upper_[i] *= s;
    }
    return *this;
}

// ---------------------------------------------------------------------------
// CoherencyRaster

CoherencyRaster::CoherencyRaster(std::size_t w, std::size_t h, int n) : width(w), height(h), looks(n), data(w * h) {}

void CoherencyRaster::validate() const {
    if (data.size() != width * height)
        throw ConfigError("coherency raster: data length " + std::to_string(data.size()) + " != width*height");
    if (looks < 1) throw ConfigError("coherency raster: looks must be >= 1");
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (!data[i].is_finite()) throw DataError("coherency raster: non-finite value at pixel " + std::to_string(i));
        if (!is_psd(data[i])) throw DataError("coherency raster: matrix at pixel " + std::to_string(i) + " is not PSD");
    }
}

// ---------------------------------------------------------------------------
// Target vectors and outer products

PauliVector pauli_vector(const ScatteringSample& s) noexcept {
    return {{kInvSqrt2 * (s.s_hh + s.s_vv), kInvSqrt2 * (s.s_hh - s.s_vv), kInvSqrt2 * (2.0 * s.s_hv)}};
}

TargetVector target_vector(const ScatteringSample& s) noexcept { return {{s.s_hh, kSqrt2 * s.s_hv, s.s_vv}}; }

HermitianMatrix3 outer_product(const std::array<Complex, 3>& v) noexcept {
    return {std::norm(v[0]),           std::norm(v[1]),           std::norm(v[2]),
            v[0] * std::conj(v[1]), v[0] * std::conj(v[2]), v[1] * std::conj(v[2])};
}

HermitianMatrix3 multilook(std::span<const TargetVector> samples) {
    if (samples.empty()) throw EmptyWindowError("multilook: empty sample window");
    HermitianMatrix3 acc;
    for (const auto& s : samples) acc += outer_product(s);
    return acc * (1.0 / static_cast<double>(samples.size()));
}

const ComplexMatrix3& lexicographic_to_pauli() {
    static const ComplexMatrix3 d = [] {
        ComplexMatrix3 m;
        m(0, 0) = kInvSqrt2;
        m(0, 2) = kInvSqrt2;
        m(1, 0) = kInvSqrt2;
        m(1, 2) = -kInvSqrt2;
        m(2, 1) = 1.0;
        return m;
    }();
    return d;
}

HermitianMatrix3 congruence(const ComplexMatrix3& u, const HermitianMatrix3& m) {
    return HermitianMatrix3::from_full(u * m.full() * u.adjoint());
}

HermitianMatrix3 to_pauli_basis(const HermitianMatrix3& z) { return congruence(lexicographic_to_pauli(), z); }

HermitianMatrix3 to_lexicographic_basis(const HermitianMatrix3& t) {
    return congruence(lexicographic_to_pauli().adjoint(), t);
}

// ---------------------------------------------------------------------------
// Eigendecomposition

EigenSystem3 jacobi_eigen(const HermitianMatrix3& m) {
    ComplexMatrix3 a = m.full();
    ComplexMatrix3 v = ComplexMatrix3::identity();

    const double scale = std::max(std::abs(m.trace()), m.frobenius_norm());
    auto off_norm = [&] {
        return std::sqrt(2.0 * (std::norm(a(0, 1)) + std::norm(a(0, 2)) + std::norm(a(1, 2))));
    };

    int sweep = 0;
    while (off_norm() > kJacobiTolerance * scale) {
        if (++sweep > kMaxJacobiSweeps) throw EigFailure("hermitian eigendecomposition did not converge");
        for (std::size_t p = 0; p < 2; ++p) {
            for (std::size_t q = p + 1; q < 3; ++q) {
                const Complex z = a(p, q);
                const double g = std::abs(z);
                if (g == 0.0) continue;
                const Complex phase = z / g;

                // Rotate phase out of a(p,q), then a real Jacobi rotation on the 2x2 block.
                const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * g);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                ComplexMatrix3 u = ComplexMatrix3::identity();
                u(p, p) = c;
                u(p, q) = s;
                u(q, p) = -s * std::conj(phase);
                u(q, q) = c * std::conj(phase);

                a = u.adjoint() * a * u;
                a(q, p) = a(p, q) = 0.0;
                for (std::size_t i = 0; i < 3; ++i) a(i, i) = a(i, i).real();
                for (std::size_t i = 0; i < 3; ++i)
                    for (std::size_t j = i + 1; j < 3; ++j) a(j, i) = std::conj(a(i, j));
                v = v * u;
            }
        }
    }

    std::array<std::size_t, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

    EigenSystem3 es;
    for (std::size_t k = 0; k < 3; ++k) {
        const std::size_t col = order[k];
        es.values[k] = a(col, col).real();
        double norm = 0;
        for (std::size_t r = 0; r < 3; ++r) norm += std::norm(v(r, col));
        norm = std::sqrt(norm);
        for (std::size_t r = 0; r < 3; ++r) es.vectors[k][r] = v(r, col) / norm;
    }
    return es;
}

EigenSystem3 hermitian_eig(const HermitianMatrix3& m) {
    if (!m.is_finite()) throw DataError("hermitian_eig: non-finite matrix");
    EigenSystem3 es = jacobi_eigen(m);
    const double tol = kPsdTolerance * std::max(m.trace(), 0.0);
    for (double& l : es.values) {
        if (l < -tol) throw DataError("hermitian_eig: matrix is not positive semi-definite");
        if (l < 0.0) l = 0.0;
    }
    return es;
}

bool is_psd(const HermitianMatrix3& m) {
    const double tol = kPsdTolerance * std::max(m.trace(), 0.0);
    for (std::size_t i = 0; i < 3; ++i)
        if (m.diag(i) < -tol) return false;
    return jacobi_eigen(m).values[2] >= -tol;
}

} // namespace polsar
