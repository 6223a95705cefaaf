#include "memrc/bifurcation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "memrc/parallel.hpp"

namespace memrc {

std::string to_string(Channel c) { return c == Channel::R ? "R" : "A"; }

Channel channel_from_string(const std::string& s) {
    if (s == "R" || s == "r") return Channel::R;
    if (s == "A" || s == "a") return Channel::A;
    throw invalid_spec("unknown channel '" + s + "' (expected R or A)");
}

std::string to_string(const RegimeLabel& r) {
    if (r.kind == RegimeKind::chaotic) return "chaotic";
    return "periodic(" + std::to_string(r.period) + ")";
}

RegimeLabel classify_regime(const std::vector<double>& samples, double lyap,
                            const ClassifierSettings& cs) {
    if (samples.size() < 32) {
        throw insufficient_data("classify_regime: need >= 32 stroboscopic samples, got " +
                                std::to_string(samples.size()));
    }

    const auto [mn_it, mx_it] = std::minmax_element(samples.begin(), samples.end());
    const double range = *mx_it - *mn_it;
    const double scale = std::max(std::fabs(*mn_it), std::fabs(*mx_it));
    // Floor keeps the tolerance meaningful when the section has collapsed to
    // one point and the only spread left is floating-point wobble.
    const double tol_floor = 1e-9 * std::max(1.0, scale);

    bool clustered = false;
    int period = 0;
    if (range <= tol_floor) {
        // fully converged period-1 section
        clustered = true;
        period = 1;
    } else {
        std::vector<double> sorted(samples);
        std::sort(sorted.begin(), sorted.end());
        const double tol = std::max(cs.cluster_tol_rel * range, tol_floor);
        int clusters = 1;
        double cluster_min = sorted.front();
        for (const double s : sorted) {
            if (s - cluster_min > tol) {
                ++clusters;
                cluster_min = s;
                if (clusters > cs.max_period) break;
            }
        }
        clustered = clusters <= cs.max_period;
        period = clusters;
    }

    if (clustered && lyap <= 0.0) return {RegimeKind::periodic, period};
    return {RegimeKind::chaotic, 0};
}

double largest_lyapunov(const CircuitParams& p, const LyapunovSettings& ls) {
    p.validate();
    auto rhs = [&p](CircuitState s, double t) { return circuit_rhs(s, t, p); };
    return lyapunov_exponent(rhs, CircuitState{0.0, 0.0}, p.period(), CircuitState{1.0, 0.0},
                             ls);
}

void SweepSpec::validate() const {
    if (!(stop > start)) throw invalid_spec("sweep: stop must be > start");
    if (n_points < 2) throw invalid_spec("sweep: need at least 2 points");
    if (transient_periods == 0 || record_periods == 0 || steps_per_period == 0) {
        throw invalid_spec("sweep: period counts must be positive");
    }
    base.validate();
}

namespace {

struct PointResult {
    std::vector<double> strobe_v1;
    std::vector<double> extrema_v1;
    double lyap = 0.0;
    bool diverged = false;
};

// One parameter value: integrates a reference + perturbed pair from the fixed
// reset state (0,0), collecting the stroboscopic section of the reference
// (phase 0, one sample per period) and the Benettin log-stretch sums. The
// renormalization never touches the reference, so its samples equal a solo run.
PointResult eval_point(const CircuitParams& p, double g_gain, std::size_t transient,
                       std::size_t record, bool extrema, const LyapunovSettings& ls,
                       std::size_t spp) {
    PointResult r;
    const double T = p.period();
    const double h = T / static_cast<double>(spp);
    const double inv_sqrt_g = 1.0 / std::sqrt(g_gain);

    const std::size_t strobe_end = transient + record;
    const std::size_t lyap_total = ls.transient_periods + ls.renorm_periods;
    const std::size_t total = std::max(strobe_end, lyap_total);

    auto rhs = [&p](CircuitState s, double t) { return circuit_rhs(s, t, p); };

    CircuitState ref{0.0, 0.0};
    CircuitState pert = ref + ls.d0 * CircuitState{1.0, 0.0};

    double log_sum = 0.0;
    std::size_t measured = 0;
    double prev2 = 0.0, prev1 = 0.0;
    int seen = 0;  // extrema window warm-up

    try {
        for (std::size_t n = 0; n < total; ++n) {
            if (n >= transient && n < strobe_end) r.strobe_v1.push_back(ref.y * inv_sqrt_g);
            const bool track_pair = n < lyap_total;
            for (std::size_t j = 0; j < spp; ++j) {
                const double t = static_cast<double>(n * spp + j) * h;
                ref = rk4_step(rhs, ref, t, h);
                if (track_pair) pert = rk4_step(rhs, pert, t, h);
                if (extrema && n >= transient && n < strobe_end) {
                    if (seen >= 2) {
                        if (prev2 < prev1 && prev1 >= ref.y) {
                            r.extrema_v1.push_back(prev1 * inv_sqrt_g);
                        } else if (prev2 > prev1 && prev1 <= ref.y) {
                            r.extrema_v1.push_back(prev1 * inv_sqrt_g);
                        }
                    }
                    prev2 = prev1;
                    prev1 = ref.y;
                    if (seen < 2) ++seen;
                }
            }
            if (track_pair) {
                double d = distance(pert, ref);
                if (d < 1e-300) d = 1e-300;
                if (n >= ls.transient_periods) {
                    log_sum += std::log(d / ls.d0);
                    ++measured;
                }
                pert = ref + (ls.d0 / d) * (pert - ref);
            }
        }
        r.lyap = log_sum / (static_cast<double>(measured) * T);
    } catch (const integration_diverged&) {
        r.diverged = true;
        r.lyap = measured > 0 ? log_sum / (static_cast<double>(measured) * T) : 0.0;
    }
    return r;
}

CircuitParams params_for(const PhysicalComponents& base, Channel channel, double value,
                         const Calibration& cal) {
    PhysicalComponents pc = base;
    (channel == Channel::R ? pc.R : pc.A) = value;
    CircuitParams p = normalize_components(pc, cal.forcing_sign);
    p.omega_prime = cal.omega_prime;
    p.validate();
    return p;
}

}  // namespace

BifurcationScan sweep(const SweepSpec& spec) {
    spec.validate();

    BifurcationScan scan;
    const std::size_t n = spec.n_points;
    scan.param_values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        scan.param_values[i] =
            spec.start + static_cast<double>(i) * (spec.stop - spec.start) /
                             static_cast<double>(n - 1);
    }
    scan.samples.resize(n);
    scan.extrema.resize(n);
    scan.regime.resize(n);
    scan.lyap.resize(n);
    scan.diverged.assign(n, false);

    LyapunovSettings ls = spec.lyap;
    ls.steps_per_period = spec.steps_per_period;

    parallel_for(n, spec.threads, [&](std::size_t i) {
        const CircuitParams p =
            params_for(spec.base, spec.channel, scan.param_values[i], spec.calibration);
        PointResult r = eval_point(p, spec.base.g, spec.transient_periods, spec.record_periods,
                                   spec.record_extrema, ls, spec.steps_per_period);
        scan.lyap[i] = r.lyap;
        scan.diverged[i] = r.diverged;
        if (!r.diverged) scan.regime[i] = classify_regime(r.strobe_v1, r.lyap);
        scan.samples[i] = std::move(r.strobe_v1);
        scan.extrema[i] = std::move(r.extrema_v1);
    });
    return scan;
}

std::size_t count_regime_windows(const BifurcationScan& scan, RegimeKind kind,
                                 std::size_t min_len) {
    std::size_t windows = 0;
    std::size_t run = 0;
    for (std::size_t i = 0; i < scan.param_values.size(); ++i) {
        const bool hit = !scan.diverged[i] && scan.regime[i].kind == kind;
        if (hit) {
            ++run;
            if (run == min_len) ++windows;
        } else {
            run = 0;
        }
    }
    return windows;
}

std::vector<Landmark> reference_landmarks() {
    return {
        {1.9e3, {RegimeKind::periodic, 1}},
        {2.1e3, {RegimeKind::chaotic, 0}},
        {2.3e3, {RegimeKind::periodic, 3}},
        {2.7e3, {RegimeKind::chaotic, 0}},
    };
}

std::vector<double> default_omega_grid(std::size_t n, double lo, double hi) {
    if (n < 1 || !(lo > 0.0) || !(hi > lo)) throw invalid_spec("bad omega grid");
    std::vector<double> grid(n);
    if (n == 1) {
        grid[0] = lo;
        return grid;
    }
    const double la = std::log(lo), lb = std::log(hi);
    for (std::size_t i = 0; i < n; ++i) {
        grid[i] = std::exp(la + (lb - la) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    return grid;
}

std::vector<LandmarkOutcome> evaluate_landmarks(const Calibration& cal,
                                                const std::vector<Landmark>& landmarks,
                                                const PhysicalComponents& base,
                                                const CalibrationSettings& cs) {
    std::vector<LandmarkOutcome> out(landmarks.size());
    LyapunovSettings ls = cs.lyap;
    ls.steps_per_period = cs.steps_per_period;

    parallel_for(landmarks.size(), cs.threads, [&](std::size_t i) {
        const Landmark& lm = landmarks[i];
        LandmarkOutcome& o = out[i];
        o.R = lm.R;
        o.expected = lm.expected;
        const CircuitParams p = params_for(base, Channel::R, lm.R, cal);
        PointResult r = eval_point(p, base.g, cs.transient_periods, cs.record_periods, false, ls,
                                   cs.steps_per_period);
        o.lyap = r.lyap;
        o.diverged = r.diverged;
        if (!r.diverged) {
            o.got = classify_regime(r.strobe_v1, r.lyap, cs.classifier);
            o.matched = o.got == lm.expected;
        }
    });
    return out;
}

CalibrationResult calibrate_omega(const std::vector<double>& candidates,
                                  const std::vector<Landmark>& landmarks,
                                  const PhysicalComponents& base, const CalibrationSettings& cs) {
    if (candidates.empty()) throw invalid_spec("calibrate: empty candidate grid");
    if (landmarks.empty()) throw invalid_spec("calibrate: empty landmark list");

    struct Pair {
        Calibration cal;
        std::vector<LandmarkOutcome> outcomes;
        int matched = 0;
    };
    std::vector<Pair> pairs;
    pairs.reserve(candidates.size() * 2);
    for (const double omega : candidates) {
        for (const double sign : {-1.0, +1.0}) {
            pairs.push_back({Calibration{omega, sign}, {}, 0});
        }
    }

    CalibrationSettings inner = cs;
    inner.threads = 1;  // parallelism lives at the pair level
    parallel_for(pairs.size(), cs.threads, [&](std::size_t i) {
        pairs[i].outcomes = evaluate_landmarks(pairs[i].cal, landmarks, base, inner);
        for (const auto& o : pairs[i].outcomes) {
            if (o.matched) ++pairs[i].matched;
        }
    });

    std::size_t best = 0;
    for (std::size_t i = 1; i < pairs.size(); ++i) {
        if (pairs[i].matched > pairs[best].matched) best = i;
    }

    CalibrationResult result;
    result.chosen = pairs[best].cal;
    result.matched = pairs[best].matched;
    result.total = static_cast<int>(landmarks.size());
    result.outcomes = std::move(pairs[best].outcomes);

    if (result.matched < 3) {
        std::ostringstream msg;
        msg << "calibration failed: best pair (omega'=" << result.chosen.omega_prime
            << ", sign=" << result.chosen.forcing_sign << ") matched " << result.matched << "/"
            << result.total << " landmarks";
        throw calibration_failed(result.matched, msg.str());
    }
    return result;
}

}  // namespace memrc
