// information.hpp: entropic uncertainty with a quantum memory.
//
// Atom A is measured in the Sx or Sy eigenbasis; atom B is the memory. All
// entropies are in bits.

#pragma once

#include <array>
#include <string_view>

#include "memwit/numerics.hpp"

namespace memwit {

enum class Subsystem { A, B };

enum class MeasurementLabel { Sx, Sy };

struct MeasurementBasis {
    MeasurementLabel label;
    // Normalized eigenvectors (|0>, |1> components).
    std::array<std::array<Complex, 2>, 2> eigenvectors;

    // Rank-one projector |v_j><v_j| on the single atom.
    CMatrix projector(int j) const;

    static MeasurementBasis sx(); // (1, +-1)/sqrt(2)
    static MeasurementBasis sy(); // (1, +-i)/sqrt(2)
};

// max_{j,k} |<psi_j|phi_k>|^2 between two bases.
double basis_overlap(const MeasurementBasis& a, const MeasurementBasis& b);

// log2(1/c) for the Sx/Sy pair, c = 1/2.
inline constexpr double kComplementarityBits = 1.0;

struct UncertaintyRecord {
    double t = 0.0;
    double h_sx_b = 0.0;
    double h_sy_b = 0.0;
    double lhs = 0.0; // h_sx_b + h_sy_b
    double h_a_b = 0.0;
    double mu = 0.0;  // kComplementarityBits + h_a_b
};

CMatrix partial_trace(const CMatrix& rho, Subsystem keep);

// sum_j (P_j (x) I) rho (P_j (x) I) for the basis projectors P_j on atom A.
CMatrix post_measurement_state(const CMatrix& rho, const MeasurementBasis& basis);

// H(rho_XB) - H(rho_B).
double conditional_entropy(const CMatrix& rho_xb);

UncertaintyRecord uncertainty_record(const CMatrix& rho, double t);

} // namespace memwit
