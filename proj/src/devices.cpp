#include "chargelimit/devices.hpp"

#include <cmath>
#include <numbers>

#include "chargelimit/error.hpp"

namespace chargelimit {

namespace {

constexpr double kPi = std::numbers::pi;
// Slack when comparing a user bias against a device limit computed by a
// different floating-point route.
constexpr double kLimitSlack = 1e-12;

void require_positive(double value, const char* what) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw DomainError(std::string(what) + " must be > 0");
}

struct Visitor {
    const Material& material;
    const EvalOptions& options;

    SnrResult operator()(const WireGeometry& g) const;
    SnrResult operator()(const QpcGeometry& g) const;
    SnrResult operator()(const SetGeometry& g) const;
};

SnrResult assemble(DeviceKind kind, double f_unity, const TransportState& transport,
                   const EvalOptions& options) {
    SnrResult r{};
    r.kind = kind;
    r.bandwidth = options.bandwidth;
    r.f_unity = f_unity;
    r.snr = closed_form::snr_at(f_unity, options.bandwidth);
    r.sensitivity = 1.0 / std::sqrt(f_unity);
    r.transport = transport;
    r.operating_point = OperatingPoint::from_bias(transport.conductance, transport.bias,
                                                  options.temperature, options.bandwidth);
    r.breakdown = noise_breakdown(r.operating_point);
    r.pipeline_snr = options.modulation * snr(r.operating_point);
    r.shot = shot_dominated(r.operating_point);
    if (options.temperature > 0.0 && !r.shot.dominated)
        r.warnings.push_back("bias is below 2kT/e: Johnson noise dominates the shot noise");
    return r;
}

void flag_over_limit(SnrResult& r, double bias, double limit, const char* message) {
    if (bias > limit * (1.0 + kLimitSlack)) {
        r.model_valid = false;
        r.warnings.emplace_back(message);
    }
}

SnrResult Visitor::operator()(const WireGeometry& g) const {
    const double v_opt = wire_optimal_bias(g, material);
    const TransportState t = wire_transport(g, material, options.bias, options.mode_counting);
    SnrResult r = assemble(DeviceKind::wire, closed_form::wire_f_unity(material), t, options);
    flag_over_limit(r, t.bias, v_opt,
                    "bias exceeds the pinch-off limit e/(eps_r R); the charge can no longer "
                    "switch the channel off");
    if (options.mode_counting == ModeCounting::floor)
        r.warnings.push_back("mode count floored to whole modes; closed form assumes a "
                             "continuous count");
    return r;
}

SnrResult Visitor::operator()(const QpcGeometry& g) const {
    const auto& k = kConstants;
    const double limit = qpc_subband_spacing(g, material) / k.e;
    TransportState t{};
    t.bias = options.bias.value_or(limit);
    if (!(t.bias >= 0.0)) throw DomainError("bias must be >= 0 V");
    t.modes = kConductanceConvention.qpc;
    t.conductance = t.modes * conductance_quantum();
    t.kinetic_energy = k.e * t.bias;
    t.current = t.conductance * t.bias;
    SnrResult r = assemble(DeviceKind::qpc, closed_form::qpc_f_unity_subband(g, material), t,
                           options);
    flag_over_limit(r, t.bias, limit,
                    "bias exceeds the 1->2 sub-band spacing; more than one mode conducts");
    return r;
}

SnrResult Visitor::operator()(const SetGeometry& g) const {
    const auto& k = kConstants;
    const SetElectrostatics es = set_blockade(g, material.epsilon_r);
    TransportState t{};
    t.bias = options.bias.value_or(es.blockade_voltage);
    if (!(t.bias >= 0.0)) throw DomainError("bias must be >= 0 V");
    t.modes = kConductanceConvention.set;
    t.conductance = t.modes * conductance_quantum();
    t.kinetic_energy = k.e * t.bias;
    t.current = t.conductance * t.bias;
    SnrResult r = assemble(DeviceKind::set,
                           closed_form::set_f_unity_capacitance(g, material.epsilon_r), t, options);
    r.electrostatics = es;
    flag_over_limit(r, t.bias, es.blockade_voltage,
                    "bias exceeds the Coulomb blockade voltage e/2C; the island no longer "
                    "blocks transport");
    return r;
}

}  // namespace

std::string_view to_string(DeviceKind kind) {
    switch (kind) {
        case DeviceKind::wire: return "wire";
        case DeviceKind::qpc: return "qpc";
        case DeviceKind::set: return "set";
    }
    return "unknown";
}

DeviceKind parse_device_kind(std::string_view name) {
    if (name == "wire") return DeviceKind::wire;
    if (name == "qpc") return DeviceKind::qpc;
    if (name == "set") return DeviceKind::set;
    throw ParseError("unknown device kind '" + std::string(name) + "' (expected wire, qpc or set)");
}

DeviceKind DeviceSpec::kind() const { return static_cast<DeviceKind>(geometry.index()); }

void validate(const DeviceSpec& device) {
    validate(device.material);
    std::visit(
        [](const auto& g) {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, WireGeometry>)
                require_positive(g.radius, "wire radius");
            else if constexpr (std::is_same_v<G, QpcGeometry>)
                require_positive(g.width, "point-contact width");
            else
                require_positive(g.island_radius, "island radius");
        },
        device.geometry);
}

void validate(const EvalOptions& options) {
    require_positive(options.bandwidth, "bandwidth");
    if (!(options.temperature >= 0.0)) throw DomainError("temperature must be >= 0 K");
    if (!(options.modulation > 0.0 && options.modulation <= 1.0))
        throw DomainError("modulation depth must lie in (0, 1]");
    if (options.bias && !(*options.bias >= 0.0)) throw DomainError("bias must be >= 0 V");
}

double conductance_quantum() { return kConstants.e * kConstants.e / kConstants.h; }

double wire_optimal_bias(const WireGeometry& geom, const Material& material) {
    require_positive(geom.radius, "wire radius");
    validate(material);
    return rydberg::to_volts(rydberg::coulomb_energy(geom.radius, material.epsilon_r));
}

double wire_mode_count(const WireGeometry& geom, const Material& material, double bias,
                       ModeCounting counting) {
    require_positive(geom.radius, "wire radius");
    validate(material);
    if (!(bias >= 0.0)) throw DomainError("bias must be >= 0 V");
    // (m*/pi hbar^2) pi R^2 E with hbar^2 / (m a0^2) = 2 Ry
    const double r = rydberg::in_bohr(geom.radius);
    const double energy = rydberg::from_joules(kConstants.e * bias);
    const double modes = 0.5 * material.m_star_ratio * r * r * energy;
    return counting == ModeCounting::floor ? std::floor(modes) : modes;
}

TransportState wire_transport(const WireGeometry& geom, const Material& material,
                              std::optional<double> bias, ModeCounting counting) {
    TransportState t{};
    t.bias = bias.value_or(wire_optimal_bias(geom, material));
    t.modes = wire_mode_count(geom, material, t.bias, counting);
    t.kinetic_energy = kConstants.e * t.bias;
    t.conductance = t.modes * kConductanceConvention.wire_per_mode * conductance_quantum();
    t.current = t.conductance * t.bias;
    return t;
}

double wire_sense_current(const Material& material) {
    return 2.0 * kConstants.e * effective_scales(material).ry_star_freq;
}

SnrResult wire_snr(const Material& material, double bandwidth) {
    const double radius = effective_scales(material).a_star;
    EvalOptions options;
    options.bandwidth = bandwidth;
    return evaluate(DeviceSpec{WireGeometry{radius}, material}, options);
}

double qpc_subband_spacing(const QpcGeometry& geom, const Material& material) {
    require_positive(geom.width, "point-contact width");
    validate(material);
    const auto& k = kConstants;
    const double m_star = material.m_star_ratio * k.m_e;
    return 3.0 * kPi * kPi * k.hbar * k.hbar / (2.0 * m_star * geom.width * geom.width);
}

SnrResult qpc_snr(const QpcGeometry& geom, const Material& material, double bandwidth) {
    EvalOptions options;
    options.bandwidth = bandwidth;
    return evaluate(DeviceSpec{geom, material}, options);
}

double set_island_capacitance(const SetGeometry& geom, double epsilon_r) {
    require_positive(geom.island_radius, "island radius");
    if (!(epsilon_r >= 1.0)) throw DomainError("relative permittivity must be >= 1");
    // Gaussian 2 eps_r R / pi times 4 pi eps0
    return 8.0 * kConstants.eps0 * epsilon_r * geom.island_radius;
}

SetElectrostatics set_blockade(const SetGeometry& geom, double epsilon_r) {
    const auto& k = kConstants;
    SetElectrostatics s{};
    s.capacitance = set_island_capacitance(geom, epsilon_r);
    s.blockade_voltage = k.e / (2.0 * s.capacitance);
    s.charging_energy = k.e * k.e / (2.0 * s.capacitance);
    return s;
}

SnrResult set_snr(const SetGeometry& geom, double epsilon_r, double bandwidth) {
    EvalOptions options;
    options.bandwidth = bandwidth;
    return evaluate(DeviceSpec{geom, Material{"custom", 1.0, epsilon_r}}, options);
}

namespace closed_form {

double wire_f_unity(const Material& material) {
    validate(material);
    const double eps = material.epsilon_r;
    return rydberg::to_hertz(material.m_star_ratio / (eps * eps));
}

double qpc_f_unity_subband(const QpcGeometry& geom, const Material& material) {
    return qpc_subband_spacing(geom, material) / kConstants.h;
}

double qpc_f_unity_rydberg(const QpcGeometry& geom, const Material& material) {
    require_positive(geom.width, "point-contact width");
    validate(material);
    const double ratio = 1.0 / rydberg::in_bohr(geom.width);
    return rydberg::to_hertz(3.0 * kPi * kPi / material.m_star_ratio * ratio * ratio);
}

double set_f_unity_capacitance(const SetGeometry& geom, double epsilon_r) {
    return set_blockade(geom, epsilon_r).charging_energy / kConstants.h;
}

double set_f_unity_rydberg(const SetGeometry& geom, double epsilon_r) {
    require_positive(geom.island_radius, "island radius");
    if (!(epsilon_r >= 1.0)) throw DomainError("relative permittivity must be >= 1");
    return rydberg::to_hertz(kPi / (2.0 * epsilon_r * rydberg::in_bohr(geom.island_radius)));
}

}  // namespace closed_form

SnrResult evaluate(const DeviceSpec& device, const EvalOptions& options) {
    validate(device);
    validate(options);
    return std::visit(Visitor{device.material, options}, device.geometry);
}

double unity_snr_bandwidth(const DeviceSpec& device) {
    validate(device);
    return std::visit(
        [&](const auto& g) -> double {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, WireGeometry>)
                return closed_form::wire_f_unity(device.material);
            else if constexpr (std::is_same_v<G, QpcGeometry>)
                return closed_form::qpc_f_unity_subband(g, device.material);
            else
                return closed_form::set_f_unity_capacitance(g, device.material.epsilon_r);
        },
        device.geometry);
}

double sensitivity(const DeviceSpec& device) { return 1.0 / std::sqrt(unity_snr_bandwidth(device)); }

}  // namespace chargelimit
