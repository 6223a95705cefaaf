#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "memrc/dynsys.hpp"

namespace memrc {

/// Which physical hyperparameter a sweep or reservoir modulates.
enum class Channel { R, A };

std::string to_string(Channel c);
Channel channel_from_string(const std::string& s);

enum class RegimeKind { periodic, chaotic };

struct RegimeLabel {
    RegimeKind kind = RegimeKind::chaotic;
    int period = 0;  // detected period p when kind == periodic

    bool operator==(const RegimeLabel&) const = default;
};

std::string to_string(const RegimeLabel& r);

// ---------------------------------------------------------------------------
// Regime classification
// ---------------------------------------------------------------------------

struct ClassifierSettings {
    double cluster_tol_rel = 1e-3;  // cluster width as a fraction of sample range
    int max_period = 16;
    double lyap_threshold = 1e-3;   // 1/dimensionless-time
};

/// Labels a parameter point from its stroboscopic section and Lyapunov
/// estimate: periodic(p) when the samples collapse onto p <= max_period
/// points and the exponent is non-positive; chaotic otherwise (ties toward
/// chaotic). Needs at least 32 samples.
RegimeLabel classify_regime(const std::vector<double>& samples, double lyap,
                            const ClassifierSettings& cs = {});

// ---------------------------------------------------------------------------
// Largest Lyapunov exponent (Benettin two-trajectory method)
// ---------------------------------------------------------------------------

struct LyapunovSettings {
    double d0 = 1e-8;                    // initial separation
    std::size_t transient_periods = 200;
    std::size_t renorm_periods = 500;    // measured renormalization intervals
    std::size_t steps_per_period = 1000;
};

/// Generic Benettin estimator: evolves a reference and a perturbed copy,
/// renormalizes the separation back to d0 after every interval, and averages
/// the log-stretch per unit time. `dir` must be a unit vector.
template <class State, class Rhs>
double lyapunov_exponent(Rhs&& rhs, State ref, double renorm_interval, State dir,
                         const LyapunovSettings& ls) {
    if (!(renorm_interval > 0.0)) throw invalid_spec("lyapunov: renorm interval must be > 0");
    if (ls.renorm_periods == 0) throw invalid_spec("lyapunov: need at least one interval");

    const double h = renorm_interval / static_cast<double>(ls.steps_per_period);
    State pert = ref + ls.d0 * dir;

    double log_sum = 0.0;
    std::size_t measured = 0;
    const std::size_t total = ls.transient_periods + ls.renorm_periods;

    auto partial = [&] {
        return measured > 0 ? log_sum / (static_cast<double>(measured) * renorm_interval) : 0.0;
    };

    for (std::size_t n = 0; n < total; ++n) {
        try {
            for (std::size_t j = 0; j < ls.steps_per_period; ++j) {
                const double t = static_cast<double>(n * ls.steps_per_period + j) * h;
                ref = rk4_step(rhs, ref, t, h);
                pert = rk4_step(rhs, pert, t, h);
            }
        } catch (const integration_diverged& e) {
            throw lyapunov_diverged(partial(), std::string("lyapunov: ") + e.what());
        }
        double d = distance(pert, ref);
        if (!std::isfinite(d)) throw lyapunov_diverged(partial(), "lyapunov: separation overflow");
        if (d < 1e-300) d = 1e-300;  // fully collapsed separation
        if (n >= ls.transient_periods) {
            log_sum += std::log(d / ls.d0);
            ++measured;
        }
        pert = ref + (ls.d0 / d) * (pert - ref);
    }
    return log_sum / (static_cast<double>(measured) * renorm_interval);
}

/// Largest Lyapunov exponent of the forced circuit, renormalized once per
/// forcing period, started from the fixed reset state (0, 0).
double largest_lyapunov(const CircuitParams& p, const LyapunovSettings& ls = {});

// ---------------------------------------------------------------------------
// Bifurcation sweep
// ---------------------------------------------------------------------------

struct SweepSpec {
    Channel channel = Channel::R;
    double start = 1.9e3;  // ohm or volt
    double stop = 2.8e3;
    std::size_t n_points = 600;
    std::size_t transient_periods = 200;
    std::size_t record_periods = 128;
    bool record_extrema = false;  // additionally collect v1 extrema for plots
    PhysicalComponents base = default_components();
    Calibration calibration{};
    LyapunovSettings lyap{};
    std::size_t steps_per_period = 1000;
    unsigned threads = 0;  // 0 = hardware concurrency

    void validate() const;
};

struct BifurcationScan {
    std::vector<double> param_values;
    std::vector<std::vector<double>> samples;  // stroboscopic v1 per value, volts
    std::vector<std::vector<double>> extrema;  // v1 extrema per value (when requested)
    std::vector<RegimeLabel> regime;
    std::vector<double> lyap;        // 1/dimensionless-time
    std::vector<bool> diverged;      // per-point divergence flag
};

/// Evaluates the stroboscopic section, Lyapunov exponent and regime label on
/// an equally spaced parameter grid. Points run independently (optionally in
/// parallel); divergence is flagged per point, never a sweep failure.
BifurcationScan sweep(const SweepSpec& spec);

/// Counts maximal runs of at least min_len consecutive non-diverged points
/// with the given regime kind.
std::size_t count_regime_windows(const BifurcationScan& scan, RegimeKind kind,
                                 std::size_t min_len = 3);

// ---------------------------------------------------------------------------
// Drive calibration
// ---------------------------------------------------------------------------

/// A known (R, regime) phase-portrait landmark at A = 2 V.
struct Landmark {
    double R;               // ohm
    RegimeLabel expected;
};

/// The four published landmarks: period-1 at 1.9 kOhm, chaos at 2.1 kOhm,
/// period-3 at 2.3 kOhm, chaos at 2.7 kOhm.
std::vector<Landmark> reference_landmarks();

struct CalibrationSettings {
    std::size_t transient_periods = 200;
    std::size_t record_periods = 128;
    LyapunovSettings lyap{};
    ClassifierSettings classifier{};
    std::size_t steps_per_period = 1000;
    unsigned threads = 0;
};

struct LandmarkOutcome {
    double R = 0.0;
    RegimeLabel expected{};
    RegimeLabel got{};
    double lyap = 0.0;
    bool diverged = false;
    bool matched = false;
};

struct CalibrationResult {
    Calibration chosen{};
    int matched = 0;
    int total = 0;
    std::vector<LandmarkOutcome> outcomes;  // for the chosen pair
};

/// Default scan grid: log-spaced dimensionless frequencies in [0.01, 2].
std::vector<double> default_omega_grid(std::size_t n = 64, double lo = 0.01, double hi = 2.0);

/// Classifies every landmark for every (omega', sign) candidate pair and
/// returns the pair matching the most landmarks (first hit wins ties).
/// Throws calibration_failed when no pair reaches 3 matches.
CalibrationResult calibrate_omega(const std::vector<double>& candidates,
                                  const std::vector<Landmark>& landmarks,
                                  const PhysicalComponents& base = default_components(),
                                  const CalibrationSettings& cs = {});

/// Landmark outcomes for one calibration pair (used by `calibrate` reports
/// and the acceptance suite).
std::vector<LandmarkOutcome> evaluate_landmarks(const Calibration& cal,
                                                const std::vector<Landmark>& landmarks,
                                                const PhysicalComponents& base,
                                                const CalibrationSettings& cs);

}  // namespace memrc
