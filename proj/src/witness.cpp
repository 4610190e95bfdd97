#include "memwit/witness.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "memwit/information.hpp"

namespace memwit {

namespace {

const CMatrix& sigma_y_pair() {
    static const CMatrix sy(2, {0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0});
    static const CMatrix pair = kron(sy, sy);
    return pair;
}

} // namespace

double concurrence(const CMatrix& rho) {
    if (rho.dim() != 4) throw Error(ErrorCode::InvalidArgument, "concurrence expects a 4x4 state");
    const CMatrix& yy = sigma_y_pair();
    // The square roots of the spectrum of rho * flipped(rho) are the singular values
    // of sqrt(rho) * sqrt(flipped(rho)); taking them directly avoids squaring small roots.
    const CMatrix root = psd_sqrt(rho);
    const Spectrum roots = singular_values(root * yy * root.conj() * yy);
    const double c = roots[3] - roots[2] - roots[1] - roots[0];
    return std::clamp(c, 0.0, 1.0);
}

double concurrence_x_state(const CMatrix& rho) {
    if (rho.dim() != 4) throw Error(ErrorCode::InvalidArgument, "concurrence expects a 4x4 state");
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            if (r == c || r + c == 3) continue;
            if (std::abs(rho(r, c)) > 1e-10) {
                std::ostringstream msg;
                msg << "entry (" << r << ", " << c << ") = " << std::abs(rho(r, c));
                throw Error(ErrorCode::NotXState, msg.str());
            }
        }
    }
    const double p11 = std::max(0.0, rho(0, 0).real());
    const double p22 = std::max(0.0, rho(1, 1).real());
    const double p33 = std::max(0.0, rho(2, 2).real());
    const double p44 = std::max(0.0, rho(3, 3).real());
    const double outer = std::abs(rho(0, 3)) - std::sqrt(p22 * p33);
    const double inner = std::abs(rho(1, 2)) - std::sqrt(p11 * p44);
    return 2.0 * std::max({0.0, outer, inner});
}

void observe(Trajectory& traj) {
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const CMatrix& rho = traj.states[i].rho;
        const UncertaintyRecord rec = uncertainty_record(rho, traj.times[i]);
        Sample& s = traj.samples[i];
        s.mu = rec.mu;
        s.lhs = rec.lhs;
        s.concurrence = concurrence(rho);
    }
}

namespace {

void require_observed(const Trajectory& traj) {
    if (traj.empty()) throw Error(ErrorCode::EmptyTrajectory, "trajectory has no samples");
    if (traj.samples.size() != traj.times.size()) {
        throw Error(ErrorCode::InvalidArgument, "samples and times differ in length");
    }
    for (const Sample& s : traj.samples) {
        if (std::isnan(s.mu) || std::isnan(s.concurrence)) {
            throw Error(ErrorCode::InvalidArgument, "trajectory has not been observed");
        }
    }
}

template <class Field>
double series_at(const Trajectory& traj, std::size_t i, Field field) {
    return field(traj.samples[i]);
}

// Fritsch-Carlson slope at node i of a piecewise cubic through (times, values).
template <class Field>
double monotone_slope(const Trajectory& traj, std::size_t i, Field field) {
    const std::size_t n = traj.size();
    auto secant = [&](std::size_t j) {
        return (series_at(traj, j + 1, field) - series_at(traj, j, field)) / (traj.times[j + 1] - traj.times[j]);
    };
    if (i == 0) return secant(0);
    if (i == n - 1) return secant(n - 2);
    const double left = secant(i - 1);
    const double right = secant(i);
    if (left * right <= 0.0) return 0.0;
    const double h_left = traj.times[i] - traj.times[i - 1];
    const double h_right = traj.times[i + 1] - traj.times[i];
    const double w1 = 2.0 * h_right + h_left;
    const double w2 = h_right + 2.0 * h_left;
    return (w1 + w2) / (w1 / left + w2 / right);
}

// Monotone cubic Hermite interpolant on [times[k-1], times[k]].
template <class Field>
double monotone_cubic(const Trajectory& traj, std::size_t k, double t, Field field) {
    const double t0 = traj.times[k - 1];
    const double h = traj.times[k] - t0;
    const double s = (t - t0) / h;
    const double y0 = series_at(traj, k - 1, field);
    const double y1 = series_at(traj, k, field);
    const double d0 = monotone_slope(traj, k - 1, field);
    const double d1 = monotone_slope(traj, k, field);
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * h * d0 + (-2 * s3 + 3 * s2) * y1 +
           (s3 - s2) * h * d1;
}

const auto mu_of = [](const Sample& s) { return s.mu; };
const auto concurrence_of = [](const Sample& s) { return s.concurrence; };

struct Scan {
    std::optional<std::size_t> first_crossing; // first index with mu >= 1
    double mu_max = 0.0;
    std::optional<double> reentry_time;
};

Scan scan_mu(const Trajectory& traj) {
    Scan scan;
    scan.mu_max = traj.samples.front().mu;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double mu = traj.samples[i].mu;
        scan.mu_max = std::max(scan.mu_max, mu);
        if (!scan.first_crossing) {
            if (mu >= 1.0) scan.first_crossing = i;
        } else if (!scan.reentry_time && mu < 1.0) {
            scan.reentry_time = traj.times[i];
        }
    }
    return scan;
}

// Shared skeleton: handles the no-crossing and crossing-at-start cases, then
// delegates the bracket [k-1, k] to locate(), which returns (t_ew, threshold).
template <class Locate>
WitnessReport build_report(const Trajectory& traj, Locate locate) {
    require_observed(traj);
    const Scan scan = scan_mu(traj);
    WitnessReport report;
    report.mu_series_max = scan.mu_max;
    if (!scan.first_crossing) {
        report.notes = "mu < 1 over the whole trajectory";
        return report;
    }
    const std::size_t k = *scan.first_crossing;
    if (k == 0) {
        report.notes = "mu >= 1 at the first sample; entanglement is never witnessed";
        return report;
    }
    const auto [t_ew, threshold] = locate(k);
    report.crossing_found = true;
    report.t_ew = t_ew;
    report.c_ew_threshold = std::clamp(threshold, 0.0, 1.0);
    if (scan.reentry_time) {
        std::ostringstream note;
        note.precision(6);
        note << "mu re-enters below 1 at t = " << *scan.reentry_time;
        report.notes = note.str();
    }
    return report;
}

} // namespace

WitnessReport witness_report(const Trajectory& traj) {
    return build_report(traj, [&](std::size_t k) {
        double lo = traj.times[k - 1];
        double hi = traj.times[k];
        // Bisection on the interpolant; mu(lo) < 1 <= mu(hi) by construction.
        for (int iter = 0; iter < 100 && hi - lo > 1e-12; ++iter) {
            const double mid = 0.5 * (lo + hi);
            if (monotone_cubic(traj, k, mid, mu_of) >= 1.0) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        const double t_ew = 0.5 * (lo + hi);
        return std::pair{t_ew, monotone_cubic(traj, k, t_ew, concurrence_of)};
    });
}

WitnessReport witness_report(const Trajectory& traj, const ReservoirParams& r_a,
                             const ReservoirParams& r_b) {
    return build_report(traj, [&](std::size_t k) {
        const double span = traj.times[k] - traj.times[k - 1];
        Trajectory fine = propagate(traj.states[k - 1], r_a, r_b, span, span / 10.0);
        observe(fine);
        std::size_t j = 1;
        while (j + 1 < fine.size() && fine.samples[j].mu < 1.0) ++j;
        const double mu0 = fine.samples[j - 1].mu;
        const double mu1 = fine.samples[j].mu;
        const double w = mu1 > mu0 ? std::clamp((1.0 - mu0) / (mu1 - mu0), 0.0, 1.0) : 1.0;
        const double t_ew = fine.times[j - 1] + w * (fine.times[j] - fine.times[j - 1]);
        const double c = fine.samples[j - 1].concurrence +
                         w * (fine.samples[j].concurrence - fine.samples[j - 1].concurrence);
        return std::pair{t_ew, c};
    });
}

std::optional<double> entanglement_death_time(const Trajectory& traj, double zero_tolerance) {
    if (traj.empty()) throw Error(ErrorCode::EmptyTrajectory, "trajectory has no samples");
    const std::size_t n = traj.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (traj.samples[i].concurrence > zero_tolerance) continue;
        // Require the confirmation window to fit inside the trajectory.
        if (i + kDeathConfirmSamples >= n) return std::nullopt;
        bool stays = true;
        for (std::size_t j = i + 1; j <= i + kDeathConfirmSamples; ++j) {
            if (traj.samples[j].concurrence > zero_tolerance) {
                stays = false;
                break;
            }
        }
        if (stays) return traj.times[i];
    }
    return std::nullopt;
}

} // namespace memwit
