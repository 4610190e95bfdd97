#include "memwit/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace memwit {

void ReservoirParams::validate() const {
    auto fail = [](const char* field, const char* why) {
        throw Error(ErrorCode::ValidationError, std::string(field) + " " + why);
    };
    if (!std::isfinite(lambda)) fail("lambda", "must be finite");
    if (!std::isfinite(delta)) fail("delta", "must be finite");
    if (!std::isfinite(gamma0)) fail("gamma0", "must be finite");
    if (!(lambda > 0.0)) fail("lambda", "must be > 0");
    if (!(delta >= 0.0)) fail("delta", "must be >= 0");
    if (!(gamma0 > 0.0)) fail("gamma0", "must be > 0");
}

const AtomOperators& atom_operators() {
    static const AtomOperators ops{};
    return ops;
}

Complex correlation_f(const ReservoirParams& r, double t) {
    if (!(t >= 0.0)) throw Error(ErrorCode::InvalidArgument, "correlation_f requires t >= 0");
    const Complex rate(-r.lambda, r.delta); // i delta - lambda
    const Complex prefactor = r.gamma0 * r.lambda / (2.0 * Complex(r.lambda, -r.delta));
    return prefactor * (1.0 - std::exp(rate * t));
}

namespace {

// i (1 - e^{i x t}) / x, continuous through x = 0.
Complex frequency_kernel(double x, double t) {
    const double xt = x * t;
    if (std::abs(xt) < 1e-8) return Complex(t, 0.5 * x * t * t);
    return Complex(0.0, 1.0) * (1.0 - std::exp(Complex(0.0, xt))) / x;
}

// Simpson over u with x = delta + lambda sinh(u); the Lorentzian weight becomes sech(u).
Complex simpson_over_u(const ReservoirParams& r, double t, double lo, double hi, int panels) {
    const double h = (hi - lo) / panels;
    auto integrand = [&](double u) {
        return frequency_kernel(r.delta + r.lambda * std::sinh(u), t) / std::cosh(u);
    };
    Complex sum = integrand(lo) + integrand(hi);
    for (int i = 1; i < panels; ++i) {
        sum += (i % 2 == 1 ? 4.0 : 2.0) * integrand(lo + i * h);
    }
    return sum * (h / 3.0) * (r.gamma0 * r.lambda / (2.0 * std::numbers::pi));
}

} // namespace

Complex correlation_f_quadrature(const ReservoirParams& r, double t, double omega_window,
                                 int n_points) {
    r.validate();
    if (!(t >= 0.0)) throw Error(ErrorCode::InvalidArgument, "quadrature requires t >= 0");
    if (n_points < 1000) throw Error(ErrorCode::InvalidArgument, "quadrature requires n_points >= 1000");
    if (!(omega_window >= 50.0 * r.lambda)) {
        throw Error(ErrorCode::InvalidArgument, "omega_window must cover at least 50 lambda");
    }
    const int panels = n_points + (n_points % 2);
    const double hi = std::asinh(omega_window / r.lambda);
    const Complex coarse = simpson_over_u(r, t, -hi, hi, panels);
    const Complex fine = simpson_over_u(r, t, -hi, hi, 2 * panels);
    if (std::abs(fine - coarse) > 1e-5) {
        std::ostringstream msg;
        msg << "doubling " << panels << " panels moved the result by " << std::abs(fine - coarse);
        throw Error(ErrorCode::QuadratureUnconverged, msg.str());
    }
    return fine;
}

namespace {

// f [S- rho, S+] + f* [S-, rho S+] + k* [S+ rho, S-] + k [S+, rho S-]
CMatrix single_atom_generator(const CMatrix& rho, const CMatrix& up, const CMatrix& down, Complex f,
                              Complex k) {
    CMatrix out = commutator(down * rho, up) * f;
    out += commutator(down, rho * up) * std::conj(f);
    if (k != Complex(0.0)) {
        out += commutator(up * rho, down) * std::conj(k);
        out += commutator(up, rho * down) * k;
    }
    return out;
}

} // namespace

CMatrix liouvillian_apply(const CMatrix& rho, Complex f_a, Complex f_b, Complex k_a, Complex k_b) {
    if (rho.dim() != 4) throw Error(ErrorCode::InvalidArgument, "liouvillian_apply expects a 4x4 state");
    static const CMatrix a_up = atom_operators().a_plus();
    static const CMatrix a_down = atom_operators().a_minus();
    static const CMatrix b_up = atom_operators().b_plus();
    static const CMatrix b_down = atom_operators().b_minus();
    CMatrix out = single_atom_generator(rho, a_up, a_down, f_a, k_a);
    out += single_atom_generator(rho, b_up, b_down, f_b, k_b);
    return out;
}

Trajectory propagate(const SystemState& initial, const ReservoirParams& r_a, const ReservoirParams& r_b,
                     double t_max, double dt, const PropagateOptions& options) {
    r_a.validate();
    r_b.validate();
    if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorCode::InvalidArgument, "dt must be > 0");
    if (!(t_max > 0.0) || !std::isfinite(t_max)) throw Error(ErrorCode::InvalidArgument, "t_max must be > 0");
    if (options.sample_every == 0) throw Error(ErrorCode::InvalidArgument, "sample_every must be >= 1");
    if (initial.rho.dim() != 4) throw Error(ErrorCode::InvalidArgument, "initial state must be 4x4");
    if (std::abs(initial.rho.trace() - 1.0) > kTraceTolerance) {
        throw Error(ErrorCode::InvalidArgument, "initial state trace differs from 1");
    }
    if (initial.rho.hermiticity_defect() > 1e-9) {
        throw Error(ErrorCode::InvalidArgument, "initial state is not Hermitian");
    }

    const double t0 = initial.t;
    const double t_end = t0 + t_max;
    const auto steps = static_cast<std::size_t>(std::ceil(t_max / dt - 1e-9));

    auto generator = [&](double t, const CMatrix& y) {
        return liouvillian_apply(y, correlation_f(r_a, t), correlation_f(r_b, t));
    };

    Trajectory traj;
    const std::size_t expected = steps / options.sample_every + 2;
    traj.times.reserve(expected);
    traj.states.reserve(expected);
    traj.samples.reserve(expected);

    auto record = [&](double t, const CMatrix& rho) {
        traj.times.push_back(t);
        traj.states.push_back({t, rho});
        Sample s;
        s.f_a = correlation_f(r_a, t);
        s.f_b = correlation_f(r_b, t);
        traj.samples.push_back(s);
        const Spectrum spec = hermitian_eigenvalues((rho + rho.adjoint()) * Complex(0.5));
        if (spec.values.front() < -1e-6) traj.positivity_warning = true;
    };

    CMatrix rho = initial.rho;
    record(t0, rho);
    double t = t0;
    for (std::size_t step = 1; step <= steps; ++step) {
        const double t_next = step == steps ? t_end : t0 + static_cast<double>(step) * dt;
        rho = rk4_step(generator, t, rho, t_next - t);
        t = t_next;
        if (!rho.all_finite()) {
            std::ostringstream msg;
            msg << "non-finite state at t = " << t;
            throw Error(ErrorCode::IntegrationDiverged, msg.str());
        }
        const double drift = std::abs(rho.trace() - 1.0);
        traj.max_trace_drift = std::max(traj.max_trace_drift, drift);
        if (drift > options.trace_tolerance) {
            std::ostringstream msg;
            msg << "trace drift " << drift << " at t = " << t;
            throw Error(ErrorCode::IntegrationDiverged, msg.str());
        }
        if (step % options.sample_every == 0 || step == steps) record(t, rho);
    }
    return traj;
}

SystemState bell_initial() {
    SystemState s;
    s.t = 0.0;
    s.rho(0, 0) = 0.5;
    s.rho(0, 3) = 0.5;
    s.rho(3, 0) = 0.5;
    s.rho(3, 3) = 0.5;
    return s;
}

std::string_view to_string(Regime regime) noexcept {
    switch (regime) {
    case Regime::Markovian: return "Markovian";
    case Regime::NonMarkovian: return "NonMarkovian";
    case Regime::Boundary: return "Boundary";
    }
    return "Unknown";
}

Regime classify_regime(const ReservoirParams& r) {
    const double threshold = 2.0 * r.gamma0;
    if (std::abs(r.lambda - threshold) <= 1e-12) return Regime::Boundary;
    return r.lambda > threshold ? Regime::Markovian : Regime::NonMarkovian;
}

} // namespace memwit
