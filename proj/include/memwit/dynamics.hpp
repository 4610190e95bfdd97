// dynamics.hpp: second-order time-convolutionless evolution of two atoms in
// independent zero-temperature Lorentzian reservoirs.
//
// Units: every rate and time is expressed in units of the Markovian decay rate
// gamma0 (time is gamma0 * t). Basis ordering is |00>, |01>, |10>, |11> with atom A
// as the left (slow) index; |1> is the excited state.

#pragma once

#include <cstddef>
#include <limits>
#include <string_view>
#include <vector>

#include "memwit/numerics.hpp"

namespace memwit {

struct ReservoirParams {
    double lambda = 1.0; // spectral width
    double delta = 0.0;  // detuning omega0 - omega_j
    double gamma0 = 1.0;

    // Throws ValidationError unless lambda > 0, delta >= 0, gamma0 > 0 and all are finite.
    void validate() const;

    bool operator==(const ReservoirParams&) const = default;
};

// Single-atom ladder operators and their two-qubit embeddings.
struct AtomOperators {
    CMatrix s_plus{2, {0.0, 0.0, 1.0, 0.0}};  // |1><0|
    CMatrix s_minus{2, {0.0, 1.0, 0.0, 0.0}}; // |0><1|
    CMatrix s_z{2, {0.5, 0.0, 0.0, -0.5}};

    CMatrix a_plus() const { return kron(s_plus, CMatrix::identity(2)); }
    CMatrix a_minus() const { return kron(s_minus, CMatrix::identity(2)); }
    CMatrix b_plus() const { return kron(CMatrix::identity(2), s_plus); }
    CMatrix b_minus() const { return kron(CMatrix::identity(2), s_minus); }
};

const AtomOperators& atom_operators();

struct SystemState {
    double t = 0.0;
    CMatrix rho{4};
};

// Derived observables per stored time. The f_* fields are filled by propagate; the
// rest are NaN until witness::observe runs.
struct Sample {
    Complex f_a{};
    Complex f_b{};
    double mu = std::numeric_limits<double>::quiet_NaN();
    double lhs = std::numeric_limits<double>::quiet_NaN();
    double concurrence = std::numeric_limits<double>::quiet_NaN();
};

struct Trajectory {
    std::vector<double> times;
    std::vector<SystemState> states;
    std::vector<Sample> samples;
    // Largest |tr rho - 1| seen over every integration step, including unsampled ones.
    double max_trace_drift = 0.0;
    // Set when some stored state had an eigenvalue below -1e-6.
    bool positivity_warning = false;

    std::size_t size() const noexcept { return times.size(); }
    bool empty() const noexcept { return times.empty(); }
};

// Reservoir correlation function f_j(t) at zero temperature (k_j vanishes).
Complex correlation_f(const ReservoirParams& r, double t);

// Independent check of correlation_f: integrates the Lorentzian spectral density
// against i (1 - e^{i x t}) / x over the detuning x = omega0 - omega in
// [delta - omega_window, delta + omega_window] with composite Simpson on
// n_points panels (substitution x = delta + lambda sinh(u) resolves the peak and damps the tails).
// Throws QuadratureUnconverged if doubling n_points moves the result by more than 1e-5.
Complex correlation_f_quadrature(const ReservoirParams& r, double t, double omega_window,
                                 int n_points);

// L^(A) rho + L^(B) rho. The k terms carry the finite-temperature absorption
// channel; at zero temperature callers pass 0.
CMatrix liouvillian_apply(const CMatrix& rho, Complex f_a, Complex f_b, Complex k_a = 0.0,
                          Complex k_b = 0.0);

struct PropagateOptions {
    std::size_t sample_every = 1;
    double trace_tolerance = 1e-6;
};

// Fixed-step RK4 from initial.t to initial.t + t_max. Throws IntegrationDiverged on
// non-finite entries or trace drift above options.trace_tolerance.
Trajectory propagate(const SystemState& initial, const ReservoirParams& r_a,
                     const ReservoirParams& r_b, double t_max, double dt,
                     const PropagateOptions& options = {});

SystemState bell_initial();

enum class Regime { Markovian, NonMarkovian, Boundary };

std::string_view to_string(Regime regime) noexcept;

// Markovian when lambda > 2 gamma0, NonMarkovian when lambda < 2 gamma0.
Regime classify_regime(const ReservoirParams& r);

} // namespace memwit
