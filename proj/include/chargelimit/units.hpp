#pragma once

#include <numbers>
#include <string>

namespace chargelimit {

/// SI values of the constants every model is built from. The defining set
/// (e, h, m_e, c, k_B, eps0) is CODATA 2018; alpha, the Rydberg and the Bohr
/// radius are derived from it so that every formula route sees one
/// self-consistent set.
struct PhysicalConstants {
    double e;          // C
    double h;          // J s
    double hbar;       // J s
    double m_e;        // kg
    double c;          // m/s
    double k_B;        // J/K
    double eps0;       // F/m
    double alpha;      // 1
    double ry_energy;  // J
    double ry_freq;    // Hz
    double a0;         // m
};

constexpr PhysicalConstants make_codata2018() {
    constexpr double pi = std::numbers::pi;
    PhysicalConstants k{};
    k.e = 1.602176634e-19;      // exact (2019 SI)
    k.h = 6.62607015e-34;       // exact (2019 SI)
    k.hbar = k.h / (2.0 * pi);
    k.m_e = 9.1093837015e-31;   // CODATA 2018, u_r 3.0e-10
    k.c = 299792458.0;          // exact
    k.k_B = 1.380649e-23;       // exact (2019 SI)
    k.eps0 = 8.8541878128e-12;  // CODATA 2018, u_r 1.5e-10
    k.alpha = k.e * k.e / (4.0 * pi * k.eps0 * k.hbar * k.c);
    k.ry_energy = 0.5 * k.m_e * k.c * k.c * k.alpha * k.alpha;
    k.ry_freq = k.ry_energy / k.h;
    k.a0 = 4.0 * pi * k.eps0 * k.hbar * k.hbar / (k.m_e * k.e * k.e);
    return k;
}

inline constexpr PhysicalConstants kConstants = make_codata2018();

// Recommended CODATA 2018 values, kept only for cross-checking the derived
// members above. Not used by any model.
namespace codata2018 {
inline constexpr double rydberg_frequency = 3.2898419602508e15;  // Hz, c R_inf
inline constexpr double rydberg_energy_ev = 13.605693122994;     // eV
inline constexpr double bohr_radius = 5.29177210903e-11;         // m
inline constexpr double fine_structure = 7.2973525693e-3;
}  // namespace codata2018

struct Material {
    std::string name;
    double m_star_ratio = 1.0;  // m*/m_e
    double epsilon_r = 1.0;
};

Material vacuum();

// Throws DomainError unless m_star_ratio > 0 and epsilon_r >= 1 (both finite).
void validate(const Material& material);

/// Rydberg and Bohr scales of a hydrogenic donor in a medium: the energy
/// scales by m*/(m eps_r^2) and the length by eps_r m/m*.
struct EffectiveScales {
    double ry_star_energy;  // J
    double ry_star_freq;    // Hz
    double a_star;          // m
    double scale_factor;    // m*/(m eps_r^2)
};

EffectiveScales effective_scales(const Material& material);

double energy_to_frequency(double energy_j);
double frequency_to_energy(double freq_hz);
double energy_to_temperature(double energy_j);
double temperature_to_energy(double temperature_k);

/// Bias below which Johnson noise outweighs shot noise: 2 k_B T / e.
double thermal_voltage_threshold(double temperature_k);

// Dimensionless Rydberg units: energies in Ry, lengths in a0, frequencies in
// Ry/h. Paper-style Gaussian expressions are evaluated here and converted to
// SI only at the boundary.
namespace rydberg {

inline double to_joules(double energy_ry) { return energy_ry * kConstants.ry_energy; }
inline double to_hertz(double energy_ry) { return energy_ry * kConstants.ry_freq; }
inline double to_volts(double energy_ry) { return energy_ry * kConstants.ry_energy / kConstants.e; }
inline double from_joules(double energy_j) { return energy_j / kConstants.ry_energy; }
inline double in_bohr(double length_m) { return length_m / kConstants.a0; }

/// Gaussian e^2/(eps_r d) in Ry: since e^2/a0 = 2 Ry, this is 2/(eps_r d/a0).
/// Every Gaussian e^2-over-length term goes through here; in SI it equals
/// e^2/(4 pi eps0 eps_r d).
inline double coulomb_energy(double distance_m, double epsilon_r) {
    return 2.0 / (epsilon_r * in_bohr(distance_m));
}

}  // namespace rydberg

}  // namespace chargelimit
