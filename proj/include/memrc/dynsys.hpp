#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "memrc/errors.hpp"

namespace memrc {

// ---------------------------------------------------------------------------
// States. Small value types with the arithmetic the RK4 tableau needs.
// Plain double works too, so scalar ODEs plug into the same integrator.
// ---------------------------------------------------------------------------

/// Dimensionless circuit state: x ~ v0*sqrt(g), y ~ v1*sqrt(g).
struct CircuitState {
    double x = 0.0;
    double y = 0.0;
};

inline CircuitState operator+(CircuitState a, CircuitState b) { return {a.x + b.x, a.y + b.y}; }
inline CircuitState operator-(CircuitState a, CircuitState b) { return {a.x - b.x, a.y - b.y}; }
inline CircuitState operator*(double c, CircuitState s) { return {c * s.x, c * s.y}; }

inline bool all_finite(CircuitState s) { return std::isfinite(s.x) && std::isfinite(s.y); }
inline double distance(CircuitState a, CircuitState b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

struct LorenzState {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline LorenzState operator+(LorenzState a, LorenzState b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
}
inline LorenzState operator-(LorenzState a, LorenzState b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
}
inline LorenzState operator*(double c, LorenzState s) { return {c * s.x, c * s.y, c * s.z}; }

inline bool all_finite(LorenzState s) {
    return std::isfinite(s.x) && std::isfinite(s.y) && std::isfinite(s.z);
}
inline double distance(LorenzState a, LorenzState b) {
    return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) +
                     (a.z - b.z) * (a.z - b.z));
}

inline bool all_finite(double v) { return std::isfinite(v); }
inline double distance(double a, double b) { return std::fabs(a - b); }

// ---------------------------------------------------------------------------
// Circuit model
// ---------------------------------------------------------------------------

/// Physical component values of the forced memristive oscillator.
struct PhysicalComponents {
    double R;    // series resistance, ohm
    double R1;   // ohm
    double R2;   // ohm
    double R3;   // memristor scale resistance, ohm
    double C0;   // farad
    double C1;   // farad
    double g;    // memristor internal gain, dimensionless
    double A;    // forcing amplitude, volt
    double nu;   // forcing frequency, hertz

    void validate() const;
};

/// Dimensionless model coefficients.
/// alpha = R2/R1, beta = R2*C0/(R*C1), gamma = R2*C0/(R3*C1),
/// a_prime = A*sqrt(g), omega_prime = 2*pi*nu*R2*C0.
struct CircuitParams {
    double alpha;
    double beta;
    double gamma;
    double a_prime;
    double omega_prime;
    double forcing_sign = -1.0;  // sign of the beta term; +1 or -1

    /// Forcing period in dimensionless time.
    double period() const { return 2.0 * std::numbers::pi / omega_prime; }

    void validate() const;
};

/// Calibrated drive: the paper never states the forcing frequency, so the
/// dimensionless frequency and the sign of the beta term are fixed by a
/// calibration scan against the four known (R, regime) landmarks at A = 2 V.
/// These constants are the scan result shipped with the library; the
/// `calibrate` CLI subcommand re-derives them.
inline constexpr double kDefaultOmegaPrime = 0.7;
inline constexpr double kDefaultForcingSign = -1.0;

/// Calibration outcome consumed by the reservoir and sweep machinery.
struct Calibration {
    double omega_prime = kDefaultOmegaPrime;
    double forcing_sign = kDefaultForcingSign;
};

inline Calibration default_calibration() { return {}; }

/// Reference component values; R and A sit at the chaotic landmark
/// (2.1 kOhm, 2 V). nu is derived from the calibrated dimensionless
/// frequency.
PhysicalComponents default_components();

/// Exact arithmetic translation of component values into the dimensionless
/// coefficients. Throws invalid_parameter on non-positive inputs.
CircuitParams normalize_components(const PhysicalComponents& pc, double forcing_sign = -1.0);

/// Memductance W(v0) = -(1/R3)*(1 - g*v0^2), in siemens.
double memductance(double v0, double g, double R3);

/// Right-hand side of the dimensionless circuit model:
///   dx/dt = -alpha*y - x
///   dy/dt = forcing_sign*beta*(a_prime*sin(omega_prime*t) - y) + gamma*(1 - x^2)*y
inline CircuitState circuit_rhs(CircuitState s, double t, const CircuitParams& p) {
    const double dx = -p.alpha * s.y - s.x;
    const double dy = p.forcing_sign * p.beta * (p.a_prime * std::sin(p.omega_prime * t) - s.y) +
                      p.gamma * (1.0 - s.x * s.x) * s.y;
    return {dx, dy};
}

// ---------------------------------------------------------------------------
// Lorenz model
// ---------------------------------------------------------------------------

struct LorenzParams {
    double sigma = 10.0;
    double rho = 28.0;
    double beta = 2.667;

    void validate() const;
};

inline LorenzState lorenz_rhs(LorenzState s, const LorenzParams& p) {
    return {p.sigma * (s.y - s.x), p.rho * s.x - s.y - s.x * s.z, s.x * s.y - p.beta * s.z};
}

// ---------------------------------------------------------------------------
// Fixed-step integrator
// ---------------------------------------------------------------------------

enum class TimeFrame { dimensionless, seconds };

template <class State>
struct Trajectory {
    TimeFrame frame = TimeFrame::dimensionless;
    std::vector<double> t;
    std::vector<State> states;

    std::size_t size() const { return t.size(); }
};

/// One classical RK4 step. Deterministic: identical inputs give bit-identical
/// outputs. Throws invalid_parameter for h <= 0 and integration_diverged if
/// the update leaves the finite domain.
template <class State, class Rhs>
State rk4_step(Rhs&& rhs, const State& s, double t, double h) {
    if (!(h > 0.0)) throw invalid_parameter("rk4_step: step size must be > 0");
    const State k1 = rhs(s, t);
    const State k2 = rhs(s + (0.5 * h) * k1, t + 0.5 * h);
    const State k3 = rhs(s + (0.5 * h) * k2, t + 0.5 * h);
    const State k4 = rhs(s + h * k3, t + h);
    State out = s + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!all_finite(out)) {
        throw integration_diverged(t, "rk4_step: non-finite state at t=" + std::to_string(t));
    }
    return out;
}

/// Integrates rhs from t0 to t1 with fixed step h; the final step is
/// shortened so the trajectory ends exactly at t1. The trajectory includes
/// the initial state. Throws invalid_spec for t1 < t0 or h <= 0.
template <class State, class Rhs>
Trajectory<State> integrate(Rhs&& rhs, State s0, double t0, double t1, double h) {
    if (!(h > 0.0)) throw invalid_spec("integrate: step size must be > 0");
    if (t1 < t0) throw invalid_spec("integrate: t1 must be >= t0");

    Trajectory<State> traj;
    traj.t.push_back(t0);
    traj.states.push_back(s0);
    if (t1 == t0) return traj;

    const double span = t1 - t0;
    auto n_full = static_cast<std::size_t>(std::floor(span / h + 1e-12));
    if (n_full * h > span) n_full = (n_full == 0) ? 0 : n_full - 1;

    State s = s0;
    for (std::size_t i = 0; i < n_full; ++i) {
        const double t = t0 + static_cast<double>(i) * h;
        s = rk4_step(rhs, s, t, h);
        traj.t.push_back(t0 + static_cast<double>(i + 1) * h);
        traj.states.push_back(s);
    }

    const double t_last = t0 + static_cast<double>(n_full) * h;
    const double rem = t1 - t_last;
    if (rem > 1e-12 * span) {
        s = rk4_step(rhs, s, t_last, rem);
        traj.t.push_back(t1);
        traj.states.push_back(s);
    } else if (!traj.t.empty()) {
        traj.t.back() = t1;  // absorb sub-eps remainder
    }
    return traj;
}

/// Rescales a dimensionless circuit trajectory to volts and seconds:
/// v = s/sqrt(g), t = R2*C0*t'.
Trajectory<CircuitState> to_physical(const Trajectory<CircuitState>& traj,
                                     const PhysicalComponents& pc);

}  // namespace memrc
