#pragma once

#include <stdexcept>
#include <string>

namespace memrc {

/// Base class for all memrc errors.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A physical component or model parameter violates its invariant.
class invalid_parameter : public error {
public:
    using error::error;
};

/// A spec (sweep, grid, dataset request) is malformed.
class invalid_spec : public error {
public:
    using error::error;
};

/// Configuration file / CLI usage problem. Maps to exit code 2.
class config_error : public error {
public:
    using error::error;
};

/// The integrator produced a non-finite state.
class integration_diverged : public error {
public:
    integration_diverged(double t_fail, const std::string& what)
        : error(what), t_fail_(t_fail) {}
    double t_fail() const noexcept { return t_fail_; }

private:
    double t_fail_;
};

/// Not enough samples to classify a regime.
class insufficient_data : public error {
public:
    using error::error;
};

/// No candidate frequency reproduced enough landmarks.
class calibration_failed : public error {
public:
    calibration_failed(int best_matches, const std::string& what)
        : error(what), best_matches_(best_matches) {}
    int best_matches() const noexcept { return best_matches_; }

private:
    int best_matches_;
};

/// A reservoir harvest aborted; carries the offending input.
class harvest_failed : public error {
public:
    harvest_failed(double u, const std::string& what) : error(what), u_(u) {}
    harvest_failed(double u, std::size_t index, const std::string& what)
        : error(what), u_(u), index_(static_cast<long long>(index)) {}
    double u() const noexcept { return u_; }
    long long index() const noexcept { return index_; }  // -1 if unknown

private:
    double u_;
    long long index_ = -1;
};

/// Lyapunov estimation aborted mid-run; carries the partial estimate.
class lyapunov_diverged : public error {
public:
    lyapunov_diverged(double partial, const std::string& what)
        : error(what), partial_(partial) {}
    double partial_estimate() const noexcept { return partial_; }

private:
    double partial_;
};

}  // namespace memrc
