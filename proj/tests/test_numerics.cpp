#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "memwit/numerics.hpp"
#include "test_support.hpp"

using namespace memwit;
using memwit::testing::random_density;
using memwit::testing::random_hermitian;
using memwit::testing::random_matrix;
using memwit::testing::random_unitary;

TEST_CASE("CMatrix rejects unsupported dimensions") {
    CHECK_THROWS_AS(CMatrix(3), Error);
    CHECK_THROWS_AS(CMatrix(2, {1.0, 2.0, 3.0}), Error);
    CHECK_THROWS_AS(CMatrix(2) * CMatrix(4), Error);
}

TEST_CASE("kron orders the left factor as the slow index") {
    const CMatrix a(2, {1.0, 2.0, 3.0, 4.0});
    const CMatrix b(2, {0.0, 1.0, 1.0, 0.0});
    const CMatrix k = kron(a, b);
    CHECK(k(0, 1) == Complex(1.0));
    CHECK(k(0, 3) == Complex(2.0));
    CHECK(k(2, 1) == Complex(3.0));
    CHECK(k(3, 2) == Complex(4.0));
    CHECK(k(0, 0) == Complex(0.0));
}

TEST_CASE("hermitian_eigenvalues on known spectra") {
    const Spectrum id = hermitian_eigenvalues(CMatrix::identity(4));
    for (double v : id.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));

    const CMatrix sigma_x(2, {0.0, 1.0, 1.0, 0.0});
    const Spectrum sx = hermitian_eigenvalues(sigma_x);
    CHECK(sx[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(sx[1] == doctest::Approx(1.0).epsilon(1e-14));

    // Perturbation couples the 0.2 and 0.3 diagonal entries; the 2x2 block is
    // diagonalised by the quadratic formula.
    const double eps = 0.05;
    CMatrix m = CMatrix::diagonal({0.1, 0.2, 0.3, 0.4});
    m(1, 2) = eps;
    m(2, 1) = eps;
    const double mean = 0.5 * (0.2 + 0.3);
    const double radius = std::sqrt(0.25 * (0.3 - 0.2) * (0.3 - 0.2) + eps * eps);
    const Spectrum s = hermitian_eigenvalues(m);
    REQUIRE(s.size() == 4);
    CHECK(std::abs(s[0] - 0.1) < 1e-12);
    CHECK(std::abs(s[1] - (mean - radius)) < 1e-12);
    CHECK(std::abs(s[2] - (mean + radius)) < 1e-12);
    CHECK(std::abs(s[3] - 0.4) < 1e-12);
}

TEST_CASE("hermitian_eigenvalues handles complex off-diagonal phases") {
    // sigma_y has spectrum {-1, 1}.
    const CMatrix sigma_y(2, {0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0});
    const Spectrum s = hermitian_eigenvalues(sigma_y);
    CHECK(std::abs(s[0] + 1.0) < 1e-14);
    CHECK(std::abs(s[1] - 1.0) < 1e-14);
}

TEST_CASE("hermitian_eigenvalues rejects non-Hermitian input") {
    CMatrix m = CMatrix::identity(4);
    m(0, 1) = 1e-6;
    try {
        (void)hermitian_eigenvalues(m);
        FAIL("expected NotHermitian");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotHermitian);
    }
}

TEST_CASE("hermitian_eigenvalues properties on random input") {
    for (int trial = 0; trial < 200; ++trial) {
        const int dim = trial % 2 == 0 ? 4 : 2;
        const CMatrix h = random_hermitian(dim);
        const Spectrum s = hermitian_eigenvalues(h);
        CHECK(std::is_sorted(s.values.begin(), s.values.end()));
        CHECK(std::abs(s.sum() - h.trace().real()) < 1e-9);

        const CMatrix u = random_unitary(dim);
        const Spectrum rotated = hermitian_eigenvalues(u * h * u.adjoint());
        for (std::size_t i = 0; i < s.size(); ++i) CHECK(std::abs(rotated[i] - s[i]) < 1e-8);
    }
}

TEST_CASE("hermitian_eigensystem reconstructs its input") {
    for (int trial = 0; trial < 100; ++trial) {
        const int dim = trial % 2 == 0 ? 4 : 2;
        const CMatrix h = random_hermitian(dim);
        const HermitianEigensystem es = hermitian_eigensystem(h);
        CHECK(std::is_sorted(es.values.values.begin(), es.values.values.end()));
        CHECK((es.vectors.adjoint() * es.vectors).max_abs_diff(CMatrix::identity(dim)) < 1e-12);
        CMatrix d = CMatrix::zero(dim);
        for (int i = 0; i < dim; ++i) d(i, i) = es.values[i];
        const CMatrix rebuilt = es.vectors * d * es.vectors.adjoint();
        CHECK(rebuilt.max_abs_diff(h) < 1e-12);
    }
}

TEST_CASE("psd_sqrt squares back and clamps negative eigenvalues") {
    const CMatrix d = psd_sqrt(CMatrix::diagonal({4.0, 9.0, 0.0, 1.0}));
    CHECK(d.max_abs_diff(CMatrix::diagonal({2.0, 3.0, 0.0, 1.0})) < 1e-15);
    CHECK(psd_sqrt(CMatrix::diagonal({-1e-12, 1.0})).max_abs_diff(CMatrix::diagonal({0.0, 1.0})) < 1e-15);
    for (int trial = 0; trial < 100; ++trial) {
        const CMatrix rho = random_density(4);
        const CMatrix root = psd_sqrt(rho);
        CHECK(root.hermiticity_defect() < 1e-14);
        CHECK((root * root).max_abs_diff(rho) < 1e-12);
    }
}

TEST_CASE("singular_values on known and constructed matrices") {
    const Spectrum k = singular_values(CMatrix(2, {0.0, 2.0, 0.5, 0.0}));
    CHECK(std::abs(k[0] - 0.5) < 1e-15);
    CHECK(std::abs(k[1] - 2.0) < 1e-15);
    for (double v : singular_values(CMatrix::zero(4)).values) CHECK(v == 0.0);

    for (int trial = 0; trial < 100; ++trial) {
        // U diag(s) W^dagger with one singular value far below sqrt(epsilon).
        const std::vector<double> s{1e-10, 0.2, 0.7, 1.5};
        const CMatrix m = random_unitary(4) * CMatrix::diagonal({s[2], s[0], s[3], s[1]}) * random_unitary(4).adjoint();
        const Spectrum found = singular_values(m);
        for (std::size_t i = 0; i < s.size(); ++i) CHECK(std::abs(found[i] - s[i]) < 1e-13);
    }
}

TEST_CASE("general_eigenvalue_moduli on known spectra") {
    const Spectrum d = general_eigenvalue_moduli(CMatrix::diagonal({4.0, 3.0, 2.0, 1.0}));
    CHECK(d.values == std::vector<double>{1.0, 2.0, 3.0, 4.0});

    const Spectrum z = general_eigenvalue_moduli(CMatrix::zero(4));
    for (double v : z.values) CHECK(v == 0.0);

    // For the Phi+ projector the spin-flipped state equals the state itself, so
    // rho * rho_tilde = rho.
    const CMatrix rho = memwit::testing::bell_projector();
    const Spectrum b = general_eigenvalue_moduli(rho * rho);
    CHECK(std::abs(b[0]) < 1e-12);
    CHECK(std::abs(b[1]) < 1e-12);
    CHECK(std::abs(b[2]) < 1e-12);
    CHECK(std::abs(b[3] - 1.0) < 1e-12);
}

TEST_CASE("general_eigenvalues recovers the diagonal of a rotated triangular matrix") {
    for (int trial = 0; trial < 100; ++trial) {
        CMatrix t = random_matrix(4);
        for (int r = 1; r < 4; ++r)
            for (int c = 0; c < r; ++c) t(r, c) = 0.0;
        const CMatrix u = random_unitary(4);
        std::vector<Complex> found = general_eigenvalues(u * t * u.adjoint());
        REQUIRE(found.size() == 4);
        for (int i = 0; i < 4; ++i) {
            const Complex expected = t(i, i);
            auto best = std::min_element(found.begin(), found.end(), [&](Complex a, Complex b) {
                return std::abs(a - expected) < std::abs(b - expected);
            });
            CHECK(std::abs(*best - expected) < 1e-8);
            found.erase(best);
        }
    }
}

TEST_CASE("general_eigenvalue_moduli agrees with the Hermitian solver on PSD input") {
    for (int trial = 0; trial < 200; ++trial) {
        const CMatrix rho = random_density(4);
        const Spectrum g = general_eigenvalue_moduli(rho);
        const Spectrum h = hermitian_eigenvalues(rho);
        for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(g[i] - h[i]) < 1e-8);
    }
}

TEST_CASE("general eigen solver handles a defective Jordan block") {
    CMatrix j = CMatrix::zero(4);
    j(0, 1) = 1.0;
    j(1, 2) = 1.0;
    const Spectrum s = general_eigenvalue_moduli(j);
    for (double v : s.values) CHECK(std::abs(v) < 1e-4);
}

namespace {

CMatrix scalar(double v) {
    CMatrix m(2);
    m(0, 0) = v;
    return m;
}

double integrate_decay(double dt) {
    CMatrix y = scalar(1.0);
    const int steps = static_cast<int>(std::lround(1.0 / dt));
    for (int i = 0; i < steps; ++i) {
        y = rk4_step([](double, const CMatrix& v) { return v * Complex(-1.0); }, i * dt, y, dt);
    }
    return y(0, 0).real();
}

} // namespace

TEST_CASE("rk4_step basic cases") {
    const CMatrix y = memwit::testing::random_matrix(4);
    const CMatrix same = rk4_step([](double, const CMatrix& v) { return CMatrix::zero(v.dim()); }, 0.3, y, 0.1);
    CHECK(same == y);

    const CMatrix decayed = rk4_step([](double, const CMatrix& v) { return v * Complex(-1.0); }, 0.0, scalar(1.0), 0.1);
    CHECK(std::abs(decayed(0, 0).real() - 0.9048375) < 1e-7);
    CHECK(std::abs(decayed(0, 0).real() - std::exp(-0.1)) < 1e-7);

    const CMatrix cubic = rk4_step([](double t, const CMatrix&) { return scalar(3.0 * t * t); }, 0.0, scalar(0.0), 1.0);
    CHECK(cubic(0, 0).real() == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(rk4_step([](double, const CMatrix& v) { return v; }, 0.0, y, 0.0), Error);
}

TEST_CASE("rk4 global error is fourth order") {
    const double exact = std::exp(-1.0);
    const double coarse = std::abs(integrate_decay(0.1) - exact);
    const double fine = std::abs(integrate_decay(0.05) - exact);
    const double ratio = coarse / fine;
    CHECK(ratio > 16.0 * 0.8);
    CHECK(ratio < 16.0 * 1.2);
}

TEST_CASE("matrix_entropy on reference states") {
    CHECK(std::abs(matrix_entropy(memwit::testing::bell_projector())) < 1e-12);
    CHECK(std::abs(matrix_entropy(CMatrix::identity(4) * Complex(0.25)) - 2.0) < 1e-12);
    CHECK(std::abs(matrix_entropy(CMatrix::diagonal({0.5, 0.5, 0.0, 0.0})) - 1.0) < 1e-12);
    CHECK(std::abs(matrix_entropy(CMatrix::diagonal({0.5, 0.5})) - 1.0) < 1e-12);
    // Noise below the clamp is tolerated.
    CHECK(std::abs(matrix_entropy(CMatrix::diagonal({1.0 + 5e-10, -5e-10}))) < 1e-8);
}

TEST_CASE("matrix_entropy rejects non-density matrices") {
    auto expect_code = [](const CMatrix& m) {
        try {
            (void)matrix_entropy(m);
            FAIL("expected NotDensityMatrix");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::NotDensityMatrix);
        }
    };
    expect_code(CMatrix::identity(4) * Complex(0.5));
    expect_code(CMatrix::diagonal({1.1, -0.1}));
    CMatrix skew = CMatrix::diagonal({0.5, 0.5});
    skew(0, 1) = 0.1;
    expect_code(skew);
}

TEST_CASE("matrix_entropy is unitarily invariant and bounded") {
    for (int trial = 0; trial < 100; ++trial) {
        const int dim = trial % 2 == 0 ? 4 : 2;
        const CMatrix rho = random_density(dim);
        const CMatrix u = random_unitary(dim);
        const double h = matrix_entropy(rho);
        CHECK(h >= 0.0);
        CHECK(h <= std::log2(dim) + 1e-12);
        CHECK(std::abs(matrix_entropy(u * rho * u.adjoint()) - h) < 1e-8);
    }
}
