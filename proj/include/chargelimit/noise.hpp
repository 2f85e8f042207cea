#pragma once

namespace chargelimit {

/// Bias point of a sensing channel. `current` should equal
/// `conductance * bias` whenever both conductance and bias are non-zero.
struct OperatingPoint {
    double current = 0.0;      // A
    double conductance = 0.0;  // S
    double bias = 0.0;         // V
    double temperature = 0.0;  // K
    double bandwidth = 1.0;    // Hz
    // Shot-noise Fano factor; 1 is the full Poissonian value.
    double fano = 1.0;

    static OperatingPoint from_bias(double conductance, double bias, double temperature,
                                    double bandwidth);
};

void validate(const OperatingPoint& op);

struct NoiseBreakdown {
    double shot_sq;     // A^2
    double thermal_sq;  // A^2
    double total_rms;   // A
};

/// Shot noise 2 e I df (times the Fano factor) and Johnson noise 4 k_B T G df,
/// summed in variance.
NoiseBreakdown noise_breakdown(const OperatingPoint& op);

/// Amplitude signal-to-noise ratio I / I_N. Zero when there is no current.
double snr(const OperatingPoint& op);

struct ShotDominance {
    bool dominated;
    // e V / (2 k_B T); infinite at T = 0.
    double margin;
};

ShotDominance shot_dominated(const OperatingPoint& op);

}  // namespace chargelimit
