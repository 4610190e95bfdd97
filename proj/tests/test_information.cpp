#include <doctest.h>

#include <cmath>

#include "memwit/information.hpp"
#include "test_support.hpp"

using namespace memwit;
using memwit::testing::bell_projector;
using memwit::testing::random_density;
using memwit::testing::random_unitary;

namespace {

CMatrix basis_state(int index) {
    CMatrix p(4);
    p(index, index) = 1.0;
    return p;
}

} // namespace

TEST_CASE("measurement bases are orthonormal and mutually unbiased") {
    for (const auto& basis : {MeasurementBasis::sx(), MeasurementBasis::sy()}) {
        const CMatrix sum = basis.projector(0) + basis.projector(1);
        CHECK(sum.max_abs_diff(CMatrix::identity(2)) < 1e-15);
        CHECK((basis.projector(0) * basis.projector(1)).max_abs_diff(CMatrix::zero(2)) < 1e-15);
    }
    CHECK(std::abs(basis_overlap(MeasurementBasis::sx(), MeasurementBasis::sy()) - 0.5) < 1e-12);
    CHECK(std::abs(basis_overlap(MeasurementBasis::sx(), MeasurementBasis::sx()) - 1.0) < 1e-12);
    CHECK(kComplementarityBits == std::log2(1.0 / 0.5));
}

TEST_CASE("partial_trace on reference states") {
    CHECK(partial_trace(bell_projector(), Subsystem::B).max_abs_diff(CMatrix::identity(2) * Complex(0.5)) < 1e-15);
    CHECK(partial_trace(bell_projector(), Subsystem::A).max_abs_diff(CMatrix::identity(2) * Complex(0.5)) < 1e-15);
    // |01>: A in |0>, B in |1>.
    CHECK(partial_trace(basis_state(1), Subsystem::A).max_abs_diff(CMatrix::diagonal({1.0, 0.0})) == 0.0);
    CHECK(partial_trace(basis_state(1), Subsystem::B).max_abs_diff(CMatrix::diagonal({0.0, 1.0})) == 0.0);
}

TEST_CASE("partial_trace of a product returns its factors") {
    for (int trial = 0; trial < 50; ++trial) {
        const CMatrix ra = random_density(2);
        const CMatrix rb = random_density(2);
        const CMatrix rho = kron(ra, rb);
        CHECK(partial_trace(rho, Subsystem::A).max_abs_diff(ra) < 1e-12);
        CHECK(partial_trace(rho, Subsystem::B).max_abs_diff(rb) < 1e-12);
    }
}

TEST_CASE("post-measurement state of Phi+ in the Sx basis") {
    // Phi+ = (|++> + |-->)/sqrt(2), so measuring Sx on A leaves the classical mixture
    // (|++><++| + |--><--|)/2.
    const std::array<Complex, 4> pp{0.5, 0.5, 0.5, 0.5};
    const std::array<Complex, 4> mm{0.5, -0.5, -0.5, 0.5};
    const CMatrix expected = (memwit::testing::projector(pp) + memwit::testing::projector(mm)) * Complex(0.5);
    const CMatrix out = post_measurement_state(bell_projector(), MeasurementBasis::sx());
    CHECK(out.max_abs_diff(expected) < 1e-15);
    CHECK(std::abs(matrix_entropy(out) - 1.0) < 1e-12);
}

TEST_CASE("post-measurement state leaves the maximally mixed state alone") {
    const CMatrix mixed = CMatrix::identity(4) * Complex(0.25);
    for (const auto& basis : {MeasurementBasis::sx(), MeasurementBasis::sy()}) {
        CHECK(post_measurement_state(mixed, basis).max_abs_diff(mixed) < 1e-15);
    }
}

TEST_CASE("post-measurement properties on random states") {
    const CMatrix id = CMatrix::identity(2);
    for (int trial = 0; trial < 100; ++trial) {
        const CMatrix rho = random_density(4);
        for (const auto& basis : {MeasurementBasis::sx(), MeasurementBasis::sy()}) {
            const CMatrix once = post_measurement_state(rho, basis);
            CHECK(post_measurement_state(once, basis).max_abs_diff(once) < 1e-12);
            CHECK(std::abs(once.trace() - 1.0) < 1e-12);
            for (int j = 0; j < 2; ++j) {
                const CMatrix p = kron(basis.projector(j), id);
                CHECK(commutator(once, p).max_abs_diff(CMatrix::zero(4)) < 1e-12);
            }
            CHECK(matrix_entropy(once) >= matrix_entropy(rho) - 1e-9);
        }
    }
}

TEST_CASE("conditional_entropy on reference states") {
    CHECK(std::abs(conditional_entropy(bell_projector()) + 1.0) < 1e-12);
    CHECK(std::abs(conditional_entropy(CMatrix::identity(4) * Complex(0.25)) - 1.0) < 1e-12);
    CHECK(std::abs(conditional_entropy(basis_state(0))) < 1e-12);
}

TEST_CASE("uncertainty_record on reference states") {
    const UncertaintyRecord bell = uncertainty_record(bell_projector(), 0.0);
    CHECK(std::abs(bell.mu) < 1e-12);
    CHECK(std::abs(bell.lhs) < 1e-12);
    CHECK(std::abs(bell.h_a_b + 1.0) < 1e-12);

    const UncertaintyRecord mixed = uncertainty_record(CMatrix::identity(4) * Complex(0.25), 1.5);
    CHECK(mixed.t == 1.5);
    CHECK(std::abs(mixed.mu - 2.0) < 1e-12);
    CHECK(std::abs(mixed.lhs - 2.0) < 1e-12);

    // |00>: measuring Sx or Sy on |0> gives a fair coin uncorrelated with B.
    const UncertaintyRecord ground = uncertainty_record(basis_state(0), 0.0);
    CHECK(std::abs(ground.h_sx_b - 1.0) < 1e-12);
    CHECK(std::abs(ground.h_sy_b - 1.0) < 1e-12);
    CHECK(std::abs(ground.mu - 1.0) < 1e-12);
    CHECK(std::abs(ground.lhs - 2.0) < 1e-12);
}

TEST_CASE("uncertainty relation holds on random states") {
    for (int trial = 0; trial < 300; ++trial) {
        const CMatrix rho = random_density(4);
        const UncertaintyRecord rec = uncertainty_record(rho, 0.0);
        CHECK(rec.lhs >= rec.mu - 1e-7);
        CHECK(rec.mu >= -1.0 - 1e-12);
        CHECK(rec.mu <= 2.0 + 1e-12);
        CHECK(rec.lhs == doctest::Approx(rec.h_sx_b + rec.h_sy_b));
    }
}

TEST_CASE("product states are never witnessed") {
    for (int trial = 0; trial < 100; ++trial) {
        const CMatrix ra = random_density(2);
        const CMatrix rb = random_density(2);
        const UncertaintyRecord rec = uncertainty_record(kron(ra, rb), 0.0);
        CHECK(std::abs(rec.h_a_b - matrix_entropy(ra)) < 1e-9);
        CHECK(rec.mu >= 1.0 - 1e-9);
    }
}

TEST_CASE("uncertainty quantities are invariant under a unitary on the memory") {
    for (int trial = 0; trial < 50; ++trial) {
        const CMatrix rho = random_density(4);
        const CMatrix u = kron(CMatrix::identity(2), random_unitary(2));
        const UncertaintyRecord a = uncertainty_record(rho, 0.0);
        const UncertaintyRecord b = uncertainty_record(u * rho * u.adjoint(), 0.0);
        CHECK(std::abs(a.mu - b.mu) < 1e-8);
        CHECK(std::abs(a.lhs - b.lhs) < 1e-8);
    }
}
