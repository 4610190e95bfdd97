#include "memwit/numerics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace memwit {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotDensityMatrix: return "NotDensityMatrix";
    case ErrorCode::IntegrationDiverged: return "IntegrationDiverged";
    case ErrorCode::QuadratureUnconverged: return "QuadratureUnconverged";
    case ErrorCode::NotXState: return "NotXState";
    case ErrorCode::EmptyTrajectory: return "EmptyTrajectory";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

// ---------------------------------------------------------------------------
// CMatrix

CMatrix::CMatrix(int dim) : dim_(dim) {
    if (dim != 2 && dim != 4) {
        throw Error(ErrorCode::InvalidArgument, "CMatrix dimension must be 2 or 4");
    }
}

CMatrix::CMatrix(int dim, std::initializer_list<Complex> row_major) : CMatrix(dim) {
    if (row_major.size() != static_cast<std::size_t>(dim * dim)) {
        throw Error(ErrorCode::InvalidArgument, "CMatrix initializer length must be dim*dim");
    }
    std::copy(row_major.begin(), row_major.end(), a_.begin());
}

CMatrix CMatrix::identity(int dim) {
    CMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::diagonal(std::initializer_list<Complex> diag) {
    CMatrix m(static_cast<int>(diag.size()));
    int i = 0;
    for (const auto& d : diag) {
        m(i, i) = d;
        ++i;
    }
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix out(dim_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

CMatrix CMatrix::conj() const {
    CMatrix out(dim_);
    for (int i = 0; i < dim_ * dim_; ++i) out.a_[i] = std::conj(a_[i]);
    return out;
}

CMatrix CMatrix::transpose() const {
    CMatrix out(dim_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) out(c, r) = (*this)(r, c);
    return out;
}

Complex CMatrix::trace() const noexcept {
    Complex s = 0.0;
    for (int i = 0; i < dim_; ++i) s += (*this)(i, i);
    return s;
}

bool CMatrix::all_finite() const noexcept {
    for (int i = 0; i < dim_ * dim_; ++i) {
        if (!std::isfinite(a_[i].real()) || !std::isfinite(a_[i].imag())) return false;
    }
    return true;
}

double CMatrix::max_abs_diff(const CMatrix& other) const {
    if (other.dim_ != dim_) {
        throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
    }
    double worst = 0.0;
    for (int i = 0; i < dim_ * dim_; ++i) worst = std::max(worst, std::abs(a_[i] - other.a_[i]));
    return worst;
}

double CMatrix::hermiticity_defect() const noexcept {
    double worst = 0.0;
    for (int r = 0; r < dim_; ++r)
        for (int c = r; c < dim_; ++c)
            worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    return worst;
}

CMatrix& CMatrix::operator+=(const CMatrix& rhs) {
    if (rhs.dim_ != dim_) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
    for (int i = 0; i < dim_ * dim_; ++i) a_[i] += rhs.a_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& rhs) {
    if (rhs.dim_ != dim_) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
    for (int i = 0; i < dim_ * dim_; ++i) a_[i] -= rhs.a_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(Complex s) noexcept {
    for (int i = 0; i < dim_ * dim_; ++i) a_[i] *= s;
    return *this;
}

CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs) {
    const int n = lhs.dim();
    if (rhs.dim() != n) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
    CMatrix out(n);
    for (int r = 0; r < n; ++r) {
        for (int k = 0; k < n; ++k) {
            const Complex a = lhs(r, k);
            if (a == Complex(0.0)) continue;
            for (int c = 0; c < n; ++c) out(r, c) += a * rhs(k, c);
        }
    }
    return out;
}

CMatrix kron(const CMatrix& left, const CMatrix& right) {
    if (left.dim() != 2 || right.dim() != 2) {
        throw Error(ErrorCode::InvalidArgument, "kron expects two single-qubit operators");
    }
    CMatrix out(4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = left(i, j) * right(k, l);
    return out;
}

double Spectrum::sum() const noexcept { return std::accumulate(values.begin(), values.end(), 0.0); }

// ---------------------------------------------------------------------------
// Hermitian eigenvalues: cyclic Jacobi

namespace {

constexpr int kMaxJacobiSweeps = 100;
constexpr int kMaxQrIterations = 400;

double off_diagonal_norm2(const CMatrix& a) {
    double s = 0.0;
    for (int p = 0; p < a.dim(); ++p)
        for (int q = p + 1; q < a.dim(); ++q) s += std::norm(a(p, q));
    return s;
}

double frobenius_norm2(const CMatrix& a) {
    double s = 0.0;
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) s += std::norm(a(r, c));
    return s;
}

// A <- U^dagger A U with U acting on the (p, q) plane only.
void rotate_plane(CMatrix& a, int p, int q, Complex upp, Complex upq, Complex uqp, Complex uqq) {
    const int n = a.dim();
    for (int k = 0; k < n; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = akp * upp + akq * uqp;
        a(k, q) = akp * upq + akq * uqq;
    }
    for (int k = 0; k < n; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
        a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
    }
}

} // namespace

namespace {

// Diagonalizes a Hermitian matrix in place; if vectors is given, accumulates the
// rotations so that m = vectors * diag(a) * vectors^dagger.
CMatrix jacobi_diagonalize(const CMatrix& m, CMatrix* vectors) {
    if (!m.all_finite()) throw Error(ErrorCode::InvalidArgument, "non-finite matrix entry");
    const double defect = m.hermiticity_defect();
    if (defect > kHermitianTolerance) {
        std::ostringstream msg;
        msg << "max |m - m^dagger| = " << defect;
        throw Error(ErrorCode::NotHermitian, msg.str());
    }
    CMatrix a = (m + m.adjoint()) * Complex(0.5);
    const int n = a.dim();
    if (vectors) *vectors = CMatrix::identity(n);
    const double eps = std::numeric_limits<double>::epsilon();
    const double target = eps * eps * frobenius_norm2(a);

    bool converged = false;
    for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
        if (off_diagonal_norm2(a) <= target) {
            converged = true;
            break;
        }
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double mag = std::abs(a(p, q));
                if (mag == 0.0) continue;
                // Phase the off-diagonal entry real, then apply the real Jacobi rotation.
                const Complex phase = a(p, q) / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // U = diag(1, conj(phase)) * [[c, s], [-s, c]]
                const Complex upq = s;
                const Complex uqp = -s * std::conj(phase);
                const Complex uqq = c * std::conj(phase);
                rotate_plane(a, p, q, c, upq, uqp, uqq);
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                if (vectors) {
                    CMatrix& v = *vectors;
                    for (int k = 0; k < n; ++k) {
                        const Complex vkp = v(k, p);
                        const Complex vkq = v(k, q);
                        v(k, p) = vkp * c + vkq * uqp;
                        v(k, q) = vkp * upq + vkq * uqq;
                    }
                }
            }
        }
    }
    if (!converged && off_diagonal_norm2(a) > target) {
        throw Error(ErrorCode::NoConvergence, "Jacobi sweep cap exhausted");
    }
    return a;
}

} // namespace

Spectrum hermitian_eigenvalues(const CMatrix& m) {
    const CMatrix a = jacobi_diagonalize(m, nullptr);
    Spectrum out;
    out.values.reserve(a.dim());
    for (int i = 0; i < a.dim(); ++i) out.values.push_back(a(i, i).real());
    std::sort(out.values.begin(), out.values.end());
    return out;
}

HermitianEigensystem hermitian_eigensystem(const CMatrix& m) {
    CMatrix v(m.dim());
    const CMatrix a = jacobi_diagonalize(m, &v);
    const int n = a.dim();
    std::array<int, CMatrix::kMaxDim> order{};
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.begin() + n, [&](int x, int y) { return a(x, x).real() < a(y, y).real(); });
    HermitianEigensystem out{{}, CMatrix(n)};
    for (int i = 0; i < n; ++i) {
        out.values.values.push_back(a(order[i], order[i]).real());
        for (int r = 0; r < n; ++r) out.vectors(r, i) = v(r, order[i]);
    }
    return out;
}

CMatrix psd_sqrt(const CMatrix& m) {
    const HermitianEigensystem es = hermitian_eigensystem(m);
    const int n = m.dim();
    CMatrix out(n);
    for (int i = 0; i < n; ++i) {
        const double root = std::sqrt(std::max(0.0, es.values[i]));
        if (root == 0.0) continue;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) out(r, c) += root * es.vectors(r, i) * std::conj(es.vectors(c, i));
    }
    return out;
}

Spectrum singular_values(const CMatrix& m) {
    if (!m.all_finite()) throw Error(ErrorCode::InvalidArgument, "non-finite matrix entry");
    CMatrix a = m;
    const int n = a.dim();
    const double eps = std::numeric_limits<double>::epsilon();
    bool converged = false;
    for (int sweep = 0; sweep < kMaxJacobiSweeps && !converged; ++sweep) {
        converged = true;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double alpha = 0.0;
                double beta = 0.0;
                Complex gamma = 0.0;
                for (int k = 0; k < n; ++k) {
                    alpha += std::norm(a(k, p));
                    beta += std::norm(a(k, q));
                    gamma += std::conj(a(k, p)) * a(k, q);
                }
                const double mag = std::abs(gamma);
                if (mag == 0.0 || mag <= eps * std::sqrt(alpha * beta)) continue;
                converged = false;
                // Rotate columns p and q so that they become orthogonal.
                const Complex phase = gamma / mag;
                const double zeta = (beta - alpha) / (2.0 * mag);
                double t = 1.0 / (std::abs(zeta) + std::sqrt(zeta * zeta + 1.0));
                if (zeta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = c * akp - s * std::conj(phase) * akq;
                    a(k, q) = s * phase * akp + c * akq;
                }
            }
        }
    }
    if (!converged) throw Error(ErrorCode::NoConvergence, "one-sided Jacobi sweep cap exhausted");
    Spectrum out;
    for (int c = 0; c < n; ++c) {
        double norm2 = 0.0;
        for (int r = 0; r < n; ++r) norm2 += std::norm(a(r, c));
        out.values.push_back(std::sqrt(norm2));
    }
    std::sort(out.values.begin(), out.values.end());
    return out;
}

// ---------------------------------------------------------------------------
// General eigenvalues: Hessenberg reduction + shifted complex QR

namespace {

void reduce_to_hessenberg(CMatrix& h) {
    const int n = h.dim();
    for (int k = 0; k + 2 < n; ++k) {
        double norm_x = 0.0;
        for (int i = k + 1; i < n; ++i) norm_x += std::norm(h(i, k));
        norm_x = std::sqrt(norm_x);
        if (norm_x == 0.0) continue;

        const Complex x0 = h(k + 1, k);
        const Complex phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex(1.0);
        std::array<Complex, CMatrix::kMaxDim> v{};
        for (int i = k + 1; i < n; ++i) v[i] = h(i, k);
        v[k + 1] += phase * norm_x;
        double vnorm = 0.0;
        for (int i = k + 1; i < n; ++i) vnorm += std::norm(v[i]);
        if (vnorm == 0.0) continue;
        const double beta = 2.0 / vnorm;

        // h <- (I - beta v v^dagger) h
        for (int c = 0; c < n; ++c) {
            Complex dot = 0.0;
            for (int i = k + 1; i < n; ++i) dot += std::conj(v[i]) * h(i, c);
            for (int i = k + 1; i < n; ++i) h(i, c) -= beta * v[i] * dot;
        }
        // h <- h (I - beta v v^dagger)
        for (int r = 0; r < n; ++r) {
            Complex dot = 0.0;
            for (int i = k + 1; i < n; ++i) dot += h(r, i) * v[i];
            for (int i = k + 1; i < n; ++i) h(r, i) -= beta * dot * std::conj(v[i]);
        }
        for (int i = k + 2; i < n; ++i) h(i, k) = 0.0;
    }
}

struct Givens {
    double c;
    Complex s;
};

// Rotation G = [[c, s], [-conj(s), c]] with G [x; y] = [r; 0].
Givens make_givens(Complex x, Complex y) {
    const double ax = std::abs(x);
    const double ay = std::abs(y);
    if (ay == 0.0) return {1.0, 0.0};
    if (ax == 0.0) return {0.0, std::conj(y) / ay};
    const double r = std::hypot(ax, ay);
    return {ax / r, (x / ax) * std::conj(y) / r};
}

Complex wilkinson_shift(const CMatrix& h, int hi) {
    const Complex a = h(hi - 1, hi - 1);
    const Complex b = h(hi - 1, hi);
    const Complex c = h(hi, hi - 1);
    const Complex d = h(hi, hi);
    const Complex half_diff = 0.5 * (a - d);
    const Complex disc = std::sqrt(half_diff * half_diff + b * c);
    const Complex mid = 0.5 * (a + d);
    const Complex mu1 = mid + disc;
    const Complex mu2 = mid - disc;
    return std::abs(mu1 - d) < std::abs(mu2 - d) ? mu1 : mu2;
}

void qr_step(CMatrix& h, int lo, int hi, Complex shift) {
    std::array<Givens, CMatrix::kMaxDim> rotations{};
    for (int i = lo; i <= hi; ++i) h(i, i) -= shift;
    for (int k = lo; k < hi; ++k) {
        const Givens g = make_givens(h(k, k), h(k + 1, k));
        rotations[k] = g;
        for (int c = lo; c <= hi; ++c) {
            const Complex x = h(k, c);
            const Complex y = h(k + 1, c);
            h(k, c) = g.c * x + g.s * y;
            h(k + 1, c) = -std::conj(g.s) * x + g.c * y;
        }
    }
    for (int k = lo; k < hi; ++k) {
        const Givens g = rotations[k];
        for (int r = lo; r <= hi; ++r) {
            const Complex x = h(r, k);
            const Complex y = h(r, k + 1);
            h(r, k) = g.c * x + std::conj(g.s) * y;
            h(r, k + 1) = -g.s * x + g.c * y;
        }
    }
    for (int i = lo; i <= hi; ++i) h(i, i) += shift;
}

} // namespace

std::vector<Complex> general_eigenvalues(const CMatrix& m) {
    if (!m.all_finite()) throw Error(ErrorCode::InvalidArgument, "non-finite matrix entry");
    CMatrix h = m;
    reduce_to_hessenberg(h);

    const double eps = std::numeric_limits<double>::epsilon();
    const double scale = std::sqrt(frobenius_norm2(h));
    const double tiny = std::numeric_limits<double>::min();
    int hi = h.dim() - 1;
    int iterations = 0;
    int since_deflation = 0;
    while (hi > 0) {
        int lo = hi;
        while (lo > 0) {
            const double sub = std::abs(h(lo, lo - 1));
            const double local = std::abs(h(lo, lo)) + std::abs(h(lo - 1, lo - 1));
            if (sub <= eps * (local > 0.0 ? local : scale) || sub <= tiny) {
                h(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        if (lo == hi) {
            --hi;
            since_deflation = 0;
            continue;
        }
        if (++iterations > kMaxQrIterations) {
            throw Error(ErrorCode::NoConvergence, "QR iteration cap exhausted");
        }
        Complex shift = wilkinson_shift(h, hi);
        if (++since_deflation % 10 == 0) {
            // Exceptional shift to break cycles.
            shift = h(hi, hi) + Complex(0.75 * std::abs(h(hi, hi - 1)), 0.25 * std::abs(h(hi, hi - 1)));
        }
        qr_step(h, lo, hi, shift);
    }

    std::vector<Complex> out;
    out.reserve(h.dim());
    for (int i = 0; i < h.dim(); ++i) out.push_back(h(i, i));
    return out;
}

Spectrum general_eigenvalue_moduli(const CMatrix& m) {
    Spectrum out;
    for (const Complex& ev : general_eigenvalues(m)) out.values.push_back(std::max(0.0, ev.real()));
    std::sort(out.values.begin(), out.values.end());
    return out;
}

// ---------------------------------------------------------------------------

double matrix_entropy(const CMatrix& rho) {
    const double defect = rho.hermiticity_defect();
    if (defect > kHermitianTolerance) {
        throw Error(ErrorCode::NotDensityMatrix, "matrix is not Hermitian");
    }
    const Complex tr = rho.trace();
    if (std::abs(tr - 1.0) > kTraceTolerance) {
        std::ostringstream msg;
        msg << "trace " << tr.real() << " differs from 1";
        throw Error(ErrorCode::NotDensityMatrix, msg.str());
    }
    const Spectrum spec = hermitian_eigenvalues(rho);
    double h = 0.0;
    for (double lambda : spec.values) {
        if (lambda < -kPositivityClamp) {
            std::ostringstream msg;
            msg << "negative eigenvalue " << lambda;
            throw Error(ErrorCode::NotDensityMatrix, msg.str());
        }
        if (lambda > 0.0) h -= lambda * std::log2(lambda);
    }
    return std::max(0.0, h);
}

} // namespace memwit
