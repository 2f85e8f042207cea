#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "chargelimit/noise.hpp"
#include "chargelimit/units.hpp"

namespace chargelimit {

// Case 1: cylindrical FET channel of radius R, the charge at its axis.
struct WireGeometry {
    double radius;  // m
};

// Case 2: single-mode point contact of width W in a 2DEG.
struct QpcGeometry {
    double width;  // m
};

// Case 3: single-electron transistor whose island is a thin disk.
struct SetGeometry {
    double island_radius;  // m
};

using Geometry = std::variant<WireGeometry, QpcGeometry, SetGeometry>;

enum class DeviceKind { wire, qpc, set };

std::string_view to_string(DeviceKind kind);
// Throws ParseError on anything but "wire", "qpc" or "set".
DeviceKind parse_device_kind(std::string_view name);

struct DeviceSpec {
    Geometry geometry;
    Material material;

    DeviceKind kind() const;
};

void validate(const DeviceSpec& device);

enum class ModeCounting {
    continuous,  // N_m as the real number the density-of-states estimate gives
    floor,       // whole modes only; breaks the closed-form identities
};

/// Open-state conductance of each device in units of e^2/h. The wire's mode
/// count already includes spin; the point contact and the SET carry the
/// explicit factor 2 of their SNR formulas (the SET prose bound of a single
/// e^2/h is not what the formula uses).
struct ConductanceConvention {
    double wire_per_mode = 1.0;
    double qpc = 2.0;
    double set = 2.0;
};

inline constexpr ConductanceConvention kConductanceConvention{};

/// e^2/h in siemens.
double conductance_quantum();

struct TransportState {
    double modes;           // G in units of e^2/h
    double kinetic_energy;  // J, e * bias
    double bias;            // V
    double conductance;     // S
    double current;         // A
};

struct SetElectrostatics {
    double capacitance;      // F
    double charging_energy;  // J, e^2 / 2C
    double blockade_voltage; // V, e / 2C
};

struct EvalOptions {
    double bandwidth = 1.0;    // Hz
    double temperature = 0.0;  // K, only affects the pipeline SNR
    // Overrides the device's limiting bias (pinch-off, sub-band or blockade).
    std::optional<double> bias;
    // Fraction of the sense current switched by the charge, in (0, 1].
    double modulation = 1.0;
    ModeCounting mode_counting = ModeCounting::continuous;
};

void validate(const EvalOptions& options);

struct SnrResult {
    DeviceKind kind;
    double bandwidth;         // Hz
    double snr;               // closed-form limit at `bandwidth`
    double f_unity;           // Hz, bandwidth at which `snr` is 1
    double sensitivity;       // e/sqrt(Hz)
    double pipeline_snr;      // noise-model SNR at the actual operating point
    OperatingPoint operating_point;
    NoiseBreakdown breakdown;
    ShotDominance shot;
    TransportState transport;
    std::optional<SetElectrostatics> electrostatics;
    bool model_valid = true;
    std::vector<std::string> warnings;
};

// ---- Case 1: wire -------------------------------------------------------

/// Largest bias the charge's Coulomb potential at the channel edge can still
/// pinch off: e / (eps_r R) in Gaussian units.
double wire_optimal_bias(const WireGeometry& geom, const Material& material);

/// Transverse modes within e V of the band edge for a 2D density of states
/// m*/(pi hbar^2) (spin included) over the cross-section pi R^2.
double wire_mode_count(const WireGeometry& geom, const Material& material, double bias,
                       ModeCounting counting = ModeCounting::continuous);

TransportState wire_transport(const WireGeometry& geom, const Material& material,
                              std::optional<double> bias = std::nullopt,
                              ModeCounting counting = ModeCounting::continuous);

/// 2 e times the effective Rydberg frequency; R drops out.
double wire_sense_current(const Material& material);

SnrResult wire_snr(const Material& material, double bandwidth);

// ---- Case 2: quantum point contact --------------------------------------

/// 1 -> 2 level spacing of a hard-wall waveguide, 3 pi^2 hbar^2 / (2 m* W^2).
double qpc_subband_spacing(const QpcGeometry& geom, const Material& material);

SnrResult qpc_snr(const QpcGeometry& geom, const Material& material, double bandwidth);

// ---- Case 3: single-electron transistor ---------------------------------

/// Thin conducting disk, C = 2 eps_r R / pi (Gaussian) = 8 eps0 eps_r R.
double set_island_capacitance(const SetGeometry& geom, double epsilon_r);

SetElectrostatics set_blockade(const SetGeometry& geom, double epsilon_r);

SnrResult set_snr(const SetGeometry& geom, double epsilon_r, double bandwidth);

// ---- Closed forms --------------------------------------------------------

// Each returns the unity-SNR bandwidth in Hz; SNR(df) = sqrt(f / df).
namespace closed_form {

// Ry/h * m*/(m eps_r^2)
double wire_f_unity(const Material& material);
// Delta_subband / h, straight from hbar and m*
double qpc_f_unity_subband(const QpcGeometry& geom, const Material& material);
// 3 pi^2 Ry/h * (m/m*) * (a0/W)^2
double qpc_f_unity_rydberg(const QpcGeometry& geom, const Material& material);
// e^2 / (2 C h) with the disk capacitance
double set_f_unity_capacitance(const SetGeometry& geom, double epsilon_r);
// Ry/h * pi a0 / (2 eps_r R)
double set_f_unity_rydberg(const SetGeometry& geom, double epsilon_r);

inline double snr_at(double f_unity, double bandwidth) { return std::sqrt(f_unity / bandwidth); }

}  // namespace closed_form

// ---- Dispatch -----------------------------------------------------------

SnrResult evaluate(const DeviceSpec& device, const EvalOptions& options = {});

double unity_snr_bandwidth(const DeviceSpec& device);

/// 1/sqrt(f_unity): the charge resolvable at unity SNR in one second.
double sensitivity(const DeviceSpec& device);

}  // namespace chargelimit
