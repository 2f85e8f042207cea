#include "chargelimit/noise.hpp"

#include <cmath>
#include <limits>

#include "chargelimit/error.hpp"
#include "chargelimit/units.hpp"

namespace chargelimit {

OperatingPoint OperatingPoint::from_bias(double conductance, double bias, double temperature,
                                         double bandwidth) {
    OperatingPoint op;
    op.conductance = conductance;
    op.bias = bias;
    op.current = conductance * bias;
    op.temperature = temperature;
    op.bandwidth = bandwidth;
    return op;
}

void validate(const OperatingPoint& op) {
    if (!(op.bandwidth > 0.0) || !std::isfinite(op.bandwidth))
        throw DomainError("bandwidth must be > 0 Hz");
    if (!(op.current >= 0.0)) throw DomainError("current must be >= 0 A");
    if (!(op.conductance >= 0.0)) throw DomainError("conductance must be >= 0 S");
    if (!(op.bias >= 0.0)) throw DomainError("bias must be >= 0 V");
    if (!(op.temperature >= 0.0)) throw DomainError("temperature must be >= 0 K");
    if (!(op.fano > 0.0)) throw DomainError("Fano factor must be > 0");
    if (op.conductance > 0.0 && op.bias > 0.0) {
        const double ohmic = op.conductance * op.bias;
        if (std::abs(op.current - ohmic) > 1e-12 * ohmic)
            throw DomainError("operating point is inconsistent: I != G * V");
    }
}

NoiseBreakdown noise_breakdown(const OperatingPoint& op) {
    validate(op);
    const auto& k = kConstants;
    NoiseBreakdown n{};
    n.shot_sq = op.fano * 2.0 * k.e * op.current * op.bandwidth;
    n.thermal_sq = 4.0 * k.k_B * op.temperature * op.conductance * op.bandwidth;
    n.total_rms = std::sqrt(n.shot_sq + n.thermal_sq);
    return n;
}

double snr(const OperatingPoint& op) {
    const NoiseBreakdown n = noise_breakdown(op);
    if (op.current == 0.0 || n.total_rms == 0.0) return 0.0;
    return op.current / n.total_rms;
}

ShotDominance shot_dominated(const OperatingPoint& op) {
    if (!(op.temperature >= 0.0)) throw DomainError("temperature must be >= 0 K");
    if (!(op.bias >= 0.0)) throw DomainError("bias must be >= 0 V");
    const double threshold = thermal_voltage_threshold(op.temperature);
    if (threshold == 0.0)
        return {op.bias > 0.0, std::numeric_limits<double>::infinity()};
    return {op.bias > threshold, op.bias / threshold};
}

}  // namespace chargelimit
