#include "chargelimit/units.hpp"

#include <cmath>

#include "chargelimit/error.hpp"

namespace chargelimit {

Material vacuum() { return Material{"vacuum", 1.0, 1.0}; }

void validate(const Material& material) {
    if (!std::isfinite(material.m_star_ratio) || material.m_star_ratio <= 0.0)
        throw DomainError("material '" + material.name + "': effective mass ratio must be > 0");
    if (!std::isfinite(material.epsilon_r) || material.epsilon_r < 1.0)
        throw DomainError("material '" + material.name + "': relative permittivity must be >= 1");
}

EffectiveScales effective_scales(const Material& material) {
    validate(material);
    const double eps = material.epsilon_r;
    const double scale = material.m_star_ratio / (eps * eps);
    EffectiveScales s{};
    s.scale_factor = scale;
    s.ry_star_energy = kConstants.ry_energy * scale;
    s.ry_star_freq = kConstants.ry_freq * scale;
    s.a_star = kConstants.a0 * eps / material.m_star_ratio;
    return s;
}

double energy_to_frequency(double energy_j) { return energy_j / kConstants.h; }
double frequency_to_energy(double freq_hz) { return freq_hz * kConstants.h; }
double energy_to_temperature(double energy_j) { return energy_j / kConstants.k_B; }
double temperature_to_energy(double temperature_k) { return temperature_k * kConstants.k_B; }

double thermal_voltage_threshold(double temperature_k) {
    if (!(temperature_k >= 0.0))
        throw DomainError("temperature must be >= 0 K");
    return 2.0 * kConstants.k_B * temperature_k / kConstants.e;
}

}  // namespace chargelimit
