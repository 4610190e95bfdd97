#include "memwit/information.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace memwit {

CMatrix MeasurementBasis::projector(int j) const {
    const auto& v = eigenvectors.at(static_cast<std::size_t>(j));
    CMatrix p(2);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) p(r, c) = v[r] * std::conj(v[c]);
    return p;
}

MeasurementBasis MeasurementBasis::sx() {
    const double s = std::numbers::sqrt2 / 2.0;
    return {MeasurementLabel::Sx, {{{s, s}, {s, -s}}}};
}

MeasurementBasis MeasurementBasis::sy() {
    const double s = std::numbers::sqrt2 / 2.0;
    return {MeasurementLabel::Sy, {{{s, Complex(0.0, s)}, {s, Complex(0.0, -s)}}}};
}

double basis_overlap(const MeasurementBasis& a, const MeasurementBasis& b) {
    double best = 0.0;
    for (const auto& u : a.eigenvectors) {
        for (const auto& v : b.eigenvectors) {
            const Complex inner = std::conj(u[0]) * v[0] + std::conj(u[1]) * v[1];
            best = std::max(best, std::norm(inner));
        }
    }
    return best;
}

CMatrix partial_trace(const CMatrix& rho, Subsystem keep) {
    if (rho.dim() != 4) throw Error(ErrorCode::InvalidArgument, "partial_trace expects a 4x4 state");
    CMatrix out(2);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            Complex s = 0.0;
            for (int k = 0; k < 2; ++k) {
                s += keep == Subsystem::A ? rho(2 * i + k, 2 * j + k) : rho(2 * k + i, 2 * k + j);
            }
            out(i, j) = s;
        }
    }
    return out;
}

CMatrix post_measurement_state(const CMatrix& rho, const MeasurementBasis& basis) {
    if (rho.dim() != 4) throw Error(ErrorCode::InvalidArgument, "post_measurement_state expects a 4x4 state");
    const CMatrix id = CMatrix::identity(2);
    CMatrix out(4);
    for (int j = 0; j < 2; ++j) {
        const CMatrix p = kron(basis.projector(j), id);
        out += p * rho * p;
    }
    return out;
}

double conditional_entropy(const CMatrix& rho_xb) {
    return matrix_entropy(rho_xb) - matrix_entropy(partial_trace(rho_xb, Subsystem::B));
}

UncertaintyRecord uncertainty_record(const CMatrix& rho, double t) {
    const double h_b = matrix_entropy(partial_trace(rho, Subsystem::B));
    UncertaintyRecord rec;
    rec.t = t;
    rec.h_sx_b = matrix_entropy(post_measurement_state(rho, MeasurementBasis::sx())) - h_b;
    rec.h_sy_b = matrix_entropy(post_measurement_state(rho, MeasurementBasis::sy())) - h_b;
    rec.lhs = rec.h_sx_b + rec.h_sy_b;
    rec.h_a_b = matrix_entropy(rho) - h_b;
    rec.mu = kComplementarityBits + rec.h_a_b;
    return rec;
}

} // namespace memwit
