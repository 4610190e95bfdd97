// numerics.hpp: small dense complex matrices, eigenvalues, RK4 and entropy

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <vector>

#include "memwit/error.hpp"

namespace memwit {

using Complex = std::complex<double>;

// Square complex matrix of dimension 2 (one qubit) or 4 (two qubits), row-major.
class CMatrix {
public:
    static constexpr int kMaxDim = 4;

    explicit CMatrix(int dim);
    CMatrix(int dim, std::initializer_list<Complex> row_major);

    static CMatrix zero(int dim) { return CMatrix(dim); }
    static CMatrix identity(int dim);
    static CMatrix diagonal(std::initializer_list<Complex> diag);

    int dim() const noexcept { return dim_; }

    Complex& operator()(int r, int c) noexcept { return a_[r * dim_ + c]; }
    const Complex& operator()(int r, int c) const noexcept { return a_[r * dim_ + c]; }

    CMatrix adjoint() const;
    CMatrix conj() const;
    CMatrix transpose() const;
    Complex trace() const noexcept;
    bool all_finite() const noexcept;

    // Largest entrywise modulus of (this - other).
    double max_abs_diff(const CMatrix& other) const;
    // Largest entrywise modulus of (this - this^dagger).
    double hermiticity_defect() const noexcept;

    CMatrix& operator+=(const CMatrix& rhs);
    CMatrix& operator-=(const CMatrix& rhs);
    CMatrix& operator*=(Complex s) noexcept;

    friend CMatrix operator+(CMatrix lhs, const CMatrix& rhs) { return lhs += rhs; }
    friend CMatrix operator-(CMatrix lhs, const CMatrix& rhs) { return lhs -= rhs; }
    friend CMatrix operator*(CMatrix m, Complex s) { return m *= s; }
    friend CMatrix operator*(Complex s, CMatrix m) { return m *= s; }
    friend CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs);

    bool operator==(const CMatrix& other) const = default;

private:
    int dim_;
    std::array<Complex, kMaxDim * kMaxDim> a_{};
};

// Kronecker product of two single-qubit operators; the left factor is the slow index.
CMatrix kron(const CMatrix& left, const CMatrix& right);

// Commutator [a, b].
inline CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

// Real eigenvalues in ascending order.
struct Spectrum {
    std::vector<double> values;

    double sum() const noexcept;
    std::size_t size() const noexcept { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
};

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-8;
inline constexpr double kPositivityClamp = 1e-9;

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Throws NotHermitian if max |m - m^dagger| exceeds kHermitianTolerance and
/// NoConvergence if the sweep cap is exhausted.
Spectrum hermitian_eigenvalues(const CMatrix& m);

// Eigenvalues (ascending) with the matching orthonormal eigenvectors as columns.
struct HermitianEigensystem {
    Spectrum values;
    CMatrix vectors;
};

/// Same preconditions and errors as hermitian_eigenvalues.
HermitianEigensystem hermitian_eigensystem(const CMatrix& m);

/// Singular values in ascending order by one-sided (Hestenes) Jacobi rotations;
/// accurate to roughly machine epsilon times the largest singular value.
/// Throws NoConvergence if the sweep cap is exhausted.
Spectrum singular_values(const CMatrix& m);

/// Principal square root of a Hermitian matrix; negative eigenvalues are treated as zero.
CMatrix psd_sqrt(const CMatrix& m);

/// Real parts of the eigenvalues of a general complex matrix, clamped below at 0,
/// ascending. Uses Householder reduction to Hessenberg form followed by a shifted
/// complex QR iteration with deflation.
Spectrum general_eigenvalue_moduli(const CMatrix& m);

/// Complex eigenvalues of a general matrix (unsorted); the engine behind
/// general_eigenvalue_moduli.
std::vector<Complex> general_eigenvalues(const CMatrix& m);

/// Von Neumann entropy in bits, with 0 log 0 = 0. Eigenvalues in
/// [-kPositivityClamp, 0) are treated as zero.
double matrix_entropy(const CMatrix& rho);

// One classical Runge-Kutta step of dy/dt = f(t, y).
template <class Derivative>
CMatrix rk4_step(Derivative&& f, double t, const CMatrix& y, double dt) {
    if (!(dt > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "rk4_step requires dt > 0");
    }
    const double half = 0.5 * dt;
    const CMatrix k1 = f(t, y);
    const CMatrix k2 = f(t + half, y + k1 * Complex(half));
    const CMatrix k3 = f(t + half, y + k2 * Complex(half));
    const CMatrix k4 = f(t + dt, y + k3 * Complex(dt));
    CMatrix incr = k1 + k4;
    incr += (k2 + k3) * Complex(2.0);
    return y + incr * Complex(dt / 6.0);
}

} // namespace memwit
