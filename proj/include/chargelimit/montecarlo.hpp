#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "chargelimit/devices.hpp"

namespace chargelimit {

/// One counting experiment repeated `trials` times. Each trial integrates
/// the channel current over a window of 1/(2 df) in both the open and the
/// blocked state and records the collected charge in units of e.
struct SimConfig {
    double on_current = 0.0;    // A
    double temperature = 0.0;   // K
    double conductance = 0.0;   // S, sets the Johnson noise in both states
    double bandwidth = 1.0;     // Hz
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
    double threshold = 0.5;     // decide "open" iff charge >= threshold (electrons)
    double fano = 1.0;
    unsigned threads = 1;       // does not change the result
};

void validate(const SimConfig& cfg);

// Identity of the random stream layout. Bump the suffix whenever the draw
// order or the derivation of per-trial seeds changes.
inline constexpr const char* kGeneratorId = "mt19937_64[splitmix64(seed,trial)]+libstdc++-poisson/normal/v1";

// Means above this are drawn from a normal law instead of a Poisson law.
inline constexpr double kPoissonLimit = 1e7;

struct Ci95 {
    double snr;
    double err_open;
    double err_blocked;
    double balanced_err;
};

struct SimOutcome {
    std::uint64_t trials;
    std::uint64_t seed_used;
    std::string generator;
    double window;         // s
    double lambda;         // mean electron count in the open state
    double thermal_sigma;  // electrons
    double threshold;
    double sample_mean;
    double sample_stddev;
    double empirical_snr;
    double snr_stderr;     // delta-method standard error of empirical_snr
    double analytic_snr;
    double err_open;       // P(decide blocked | open)
    double err_blocked;    // P(decide open | blocked)
    double balanced_err;
    Ci95 ci95;
    bool within_3sigma;
    bool gaussian_fallback;
};

struct TrialSamples {
    std::vector<double> open;     // collected charge, electrons
    std::vector<double> blocked;
    double window = 0.0;
    double lambda = 0.0;
    double thermal_sigma = 0.0;
    bool gaussian_fallback = false;
};

// Raw per-trial draws; bit-identical for a given (cfg, seed) whatever
// cfg.threads is.
TrialSamples draw_samples(const SimConfig& cfg);

SimOutcome summarize(const SimConfig& cfg, const TrialSamples& samples);

SimOutcome simulate_detection(const SimConfig& cfg);

struct ThresholdPoint {
    double threshold;
    double err_open;
    double err_blocked;
    double balanced_err;
};

std::vector<ThresholdPoint> threshold_scan(const SimConfig& cfg, std::span<const double> thresholds);

struct DeviceValidation {
    DeviceKind kind;
    double bandwidth;
    double closed_form_snr;
    SnrResult analytic;
    SimOutcome outcome;
    bool pass;  // |empirical - analytic| <= 3 stderr
    std::vector<std::string> warnings;
};

/// Runs the counting oracle at T = 0 with the device's own open-state
/// current and conductance.
DeviceValidation validate_device(const DeviceSpec& device, double bandwidth, std::uint64_t trials,
                                 std::uint64_t seed, unsigned threads = 1);

}  // namespace chargelimit
