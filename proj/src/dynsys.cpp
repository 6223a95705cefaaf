#include "memrc/dynsys.hpp"

#include <cmath>

namespace memrc {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw invalid_parameter(std::string(name) + " must be finite and > 0");
    }
}

}  // namespace

void PhysicalComponents::validate() const {
    require_positive(R, "R");
    require_positive(R1, "R1");
    require_positive(R2, "R2");
    require_positive(R3, "R3");
    require_positive(C0, "C0");
    require_positive(C1, "C1");
    require_positive(g, "g");
    require_positive(A, "A");
    require_positive(nu, "nu");
}

void CircuitParams::validate() const {
    require_positive(alpha, "alpha");
    require_positive(beta, "beta");
    require_positive(gamma, "gamma");
    require_positive(a_prime, "a_prime");
    require_positive(omega_prime, "omega_prime");
    if (forcing_sign != 1.0 && forcing_sign != -1.0) {
        throw invalid_parameter("forcing_sign must be +1 or -1");
    }
}

PhysicalComponents default_components() {
    PhysicalComponents pc;
    pc.R = 2.1e3;
    pc.R1 = 8.0e3;
    pc.R2 = 4.0e3;
    pc.R3 = 1.4e3;
    pc.C0 = 4.7e-9;
    pc.C1 = 6.8e-9;
    pc.g = 0.1;
    pc.A = 2.0;
    // Chosen so that normalize_components reproduces the calibrated
    // dimensionless frequency (see default_calibration in bifurcation.hpp).
    pc.nu = kDefaultOmegaPrime / (2.0 * std::numbers::pi * pc.R2 * pc.C0);
    return pc;
}

CircuitParams normalize_components(const PhysicalComponents& pc, double forcing_sign) {
    pc.validate();
    CircuitParams p;
    p.alpha = pc.R2 / pc.R1;
    p.beta = pc.R2 * pc.C0 / (pc.R * pc.C1);
    p.gamma = pc.R2 * pc.C0 / (pc.R3 * pc.C1);
    p.a_prime = pc.A * std::sqrt(pc.g);
    p.omega_prime = 2.0 * std::numbers::pi * pc.nu * pc.R2 * pc.C0;
    p.forcing_sign = forcing_sign;
    p.validate();
    return p;
}

double memductance(double v0, double g, double R3) {
    if (!(R3 > 0.0)) throw invalid_parameter("memductance: R3 must be > 0");
    return -(1.0 / R3) * (1.0 - g * v0 * v0);
}

void LorenzParams::validate() const {
    require_positive(sigma, "sigma");
    require_positive(rho, "rho");
    require_positive(beta, "beta");
}

Trajectory<CircuitState> to_physical(const Trajectory<CircuitState>& traj,
                                     const PhysicalComponents& pc) {
    pc.validate();
    const double inv_sqrt_g = 1.0 / std::sqrt(pc.g);
    const double time_scale = pc.R2 * pc.C0;
    Trajectory<CircuitState> out;
    out.frame = TimeFrame::seconds;
    out.t.reserve(traj.size());
    out.states.reserve(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        out.t.push_back(traj.t[i] * time_scale);
        out.states.push_back({traj.states[i].x * inv_sqrt_g, traj.states[i].y * inv_sqrt_g});
    }
    return out;
}

}  // namespace memrc
