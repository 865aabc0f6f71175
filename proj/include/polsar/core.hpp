#pragma once

// Complex 3-vector / 3x3 Hermitian arithmetic shared by every other module.

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace polsar {

using Complex = std::complex<double>;

/// Relative tolerance for PSD checks: eigenvalues may dip to -kPsdTolerance * trace.
inline constexpr double kPsdTolerance = 1e-9;

struct ScatteringSample {
    Complex s_hh;
    Complex s_hv;
    Complex s_vv;
};

/// Pauli-basis scattering vector k_p.
struct PauliVector {
    std::array<Complex, 3> k{};

    double power() const noexcept;
};

/// Lexicographic target vector h = (S_HH, sqrt(2) S_HV, S_VV).
struct TargetVector {
    std::array<Complex, 3> h{};

    double power() const noexcept;
};

/// Dense 3x3 complex matrix, row-major. Used for inverses, products and basis changes.
class ComplexMatrix3 {
public:
    ComplexMatrix3() = default;

    static ComplexMatrix3 identity();

    Complex& operator()(std::size_t r, std::size_t c) noexcept { return a_[r * 3 + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const noexcept { return a_[r * 3 + c]; }

    ComplexMatrix3 adjoint() const;
    Complex trace() const noexcept;
    Complex determinant() const noexcept;
    /// Inverse via the adjugate. Caller guarantees non-singularity.
    ComplexMatrix3 inverse() const;
    double frobenius_norm() const noexcept;

    friend ComplexMatrix3 operator*(const ComplexMatrix3& a, const ComplexMatrix3& b);
    friend ComplexMatrix3 operator-(const ComplexMatrix3& a, const ComplexMatrix3& b);

private:
    std::array<Complex, 9> a_{};
};

/// 3x3 complex Hermitian matrix stored as 3 real diagonal entries and 3 complex
/// upper-triangle entries (t12, t13, t23). Hermitian symmetry holds by construction.
class HermitianMatrix3 {
public:
    HermitianMatrix3() = default;
    HermitianMatrix3(double d11, double d22, double d33, Complex t12, Complex t13, Complex t23) noexcept
        : diag_{d11, d22, d33}, upper_{t12, t13, t23} {}

    static HermitianMatrix3 identity() noexcept { return {1, 1, 1, 0, 0, 0}; }
    static HermitianMatrix3 diagonal(double d11, double d22, double d33) noexcept { return {d11, d22, d33, 0, 0, 0}; }
    /// Hermitian part (M + M^H)/2 of an arbitrary matrix.
    static HermitianMatrix3 from_full(const ComplexMatrix3& m) noexcept;

    double diag(std::size_t i) const noexcept { return diag_[i]; }
    Complex t12() const noexcept { return upper_[0]; }
    Complex t13() const noexcept { return upper_[1]; }
    Complex t23() const noexcept { return upper_[2]; }

    /// Element access on the full matrix; lower triangle is the conjugate of the upper.
    Complex operator()(std::size_t r, std::size_t c) const noexcept;

    ComplexMatrix3 full() const noexcept;
    double trace() const noexcept { return diag_[0] + diag_[1] + diag_[2]; }
    double frobenius_norm() const noexcept;
    /// Determinant (real for Hermitian matrices).
    double determinant() const noexcept;
    bool is_finite() const noexcept;

    HermitianMatrix3& operator+=(const HermitianMatrix3& o) noexcept;
    HermitianMatrix3& operator-=(const HermitianMatrix3& o) noexcept;
    HermitianMatrix3& operator*=(double s) noexcept;
    friend HermitianMatrix3 operator+(HermitianMatrix3 a, const HermitianMatrix3& b) noexcept { return a += b; }
    friend HermitianMatrix3 operator-(HermitianMatrix3 a, const HermitianMatrix3& b) noexcept { return a -= b; }
    friend HermitianMatrix3 operator*(HermitianMatrix3 a, double s) noexcept { return a *= s; }
    friend HermitianMatrix3 operator*(double s, HermitianMatrix3 a) noexcept { return a *= s; }
    friend bool operator==(const HermitianMatrix3&, const HermitianMatrix3&) = default;

private:
    std::array<double, 3> diag_{};
    std::array<Complex, 3> upper_{};
};

/// Eigenvalues sorted descending with matching unit eigenvectors.
struct EigenSystem3 {
    std::array<double, 3> values{};
    std::array<std::array<Complex, 3>, 3> vectors{}; // vectors[i] pairs with values[i]
};

struct CoherencyRaster {
    std::size_t width = 0;
    std::size_t height = 0;
    int looks = 1;
    std::vector<HermitianMatrix3> data; // row-major

    CoherencyRaster() = default;
    CoherencyRaster(std::size_t w, std::size_t h, int n);

    std::size_t size() const noexcept { return width * height; }
    HermitianMatrix3& at(std::size_t x, std::size_t y) noexcept { return data[y * width + x]; }
    const HermitianMatrix3& at(std::size_t x, std::size_t y) const noexcept { return data[y * width + x]; }
    /// Throws ConfigError / DataError when the raster invariants do not hold.
    void validate() const;
};

PauliVector pauli_vector(const ScatteringSample& s) noexcept;
TargetVector target_vector(const ScatteringSample& s) noexcept;

HermitianMatrix3 outer_product(const std::array<Complex, 3>& v) noexcept;
inline HermitianMatrix3 outer_product(const PauliVector& v) noexcept { return outer_product(v.k); }
inline HermitianMatrix3 outer_product(const TargetVector& v) noexcept { return outer_product(v.h); }

/// Z = (1/n) sum h_k h_k^H. Throws EmptyWindowError on empty input.
HermitianMatrix3 multilook(std::span<const TargetVector> samples);

/// Unitary D with k_p = D h.
const ComplexMatrix3& lexicographic_to_pauli();
/// T = D Z D^H.
HermitianMatrix3 to_pauli_basis(const HermitianMatrix3& z);
/// Z = D^H T D.
HermitianMatrix3 to_lexicographic_basis(const HermitianMatrix3& t);
/// Similarity transform U M U^H, re-Hermitized.
HermitianMatrix3 congruence(const ComplexMatrix3& u, const HermitianMatrix3& m);

/// Raw cyclic Jacobi eigendecomposition with no PSD contract. Sorted descending.
EigenSystem3 jacobi_eigen(const HermitianMatrix3& m);

/// Eigendecomposition of a PSD matrix. Eigenvalues in [-tol, 0) are clamped to 0,
/// anything below raises DataError (tol = kPsdTolerance * trace).
EigenSystem3 hermitian_eig(const HermitianMatrix3& m);

/// True when diagonal and eigenvalues are >= -kPsdTolerance * trace.
bool is_psd(const HermitianMatrix3& m);

} // namespace polsar
