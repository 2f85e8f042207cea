#include "chargelimit/cli/cli.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "chargelimit/cli/csv.hpp"
#include "chargelimit/cli/quantity.hpp"
#include "chargelimit/cli/report.hpp"
#include "chargelimit/devices.hpp"
#include "chargelimit/error.hpp"
#include "chargelimit/materials.hpp"
#include "chargelimit/montecarlo.hpp"

namespace chargelimit::cli {

namespace {

using Json = nlohmann::ordered_json;

struct CommonFlags {
    std::string format;
    bool deterministic = false;
    std::string materials_path;
};

struct DeviceFlags {
    std::string material = "vacuum";
    std::string m_star;
    std::string epsilon_r;
    std::string radius;
    std::string width;
    std::string bandwidth = "1Hz";
    std::string temperature = "0K";
    std::string bias;
    double modulation = 1.0;
    bool floor_modes = false;
};

struct SweepFlags {
    std::string device;
    std::string axis;
    std::string start;
    std::string stop;
    int points = 0;
    std::string spacing = "linear";
};

struct SimulateFlags {
    std::string current;
    std::string conductance = "0S";
    std::string device;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
    double threshold = 0.5;
    double fano = 1.0;
    unsigned threads = 1;
};

double parse_plain(const std::string& text, const char* what) {
    try {
        return parse_quantity(text, Dimension::dimensionless);
    } catch (const ParseError& e) {
        throw ParseError(std::string(what) + ": " + e.what());
    }
}

std::string timestamp_utc() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Json envelope(std::string_view command, Json inputs, Json outputs, const CommonFlags& common) {
    Json j;
    j["command"] = command;
    j["inputs"] = std::move(inputs);
    j["outputs"] = std::move(outputs);
    j["flags"] = {{"deterministic", common.deterministic}, {"format", common.format}};
    if (!common.deterministic) j["timestamp"] = timestamp_utc();
    return j;
}

void print_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

void print_rows(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& rows) {
    std::size_t width = 0;
    for (const auto& [k, v] : rows) width = std::max(width, k.size());
    for (const auto& [k, v] : rows) out << k << std::string(width + 2 - k.size(), ' ') << v << '\n';
}

// ---- devices ------------------------------------------------------------

Material resolve_material(const DeviceFlags& flags, const MaterialTable& table) {
    Material m = table.at(flags.material);
    if (!flags.m_star.empty() || !flags.epsilon_r.empty()) m.name += "*";
    if (!flags.m_star.empty()) m.m_star_ratio = parse_plain(flags.m_star, "--mstar");
    if (!flags.epsilon_r.empty()) m.epsilon_r = parse_plain(flags.epsilon_r, "--epsr");
    return m;
}

DeviceSpec build_device(DeviceKind kind, const DeviceFlags& flags, const MaterialTable& table,
                        bool require_geometry) {
    const Material material = resolve_material(flags, table);
    auto length = [&](const std::string& text, const char* flag) -> double {
        if (text.empty()) {
            if (require_geometry) throw ParseError(std::string(flag) + " is required");
            return 1e-8;  // placeholder, replaced by the sweep axis
        }
        return parse_quantity(text, Dimension::length);
    };
    switch (kind) {
        case DeviceKind::wire: {
            if (flags.radius.empty()) {
                validate(material);
                return DeviceSpec{WireGeometry{effective_scales(material).a_star}, material};
            }
            return DeviceSpec{WireGeometry{parse_quantity(flags.radius, Dimension::length)},
                              material};
        }
        case DeviceKind::qpc:
            return DeviceSpec{QpcGeometry{length(flags.width, "--width")}, material};
        case DeviceKind::set:
            return DeviceSpec{SetGeometry{length(flags.radius, "--radius")}, material};
    }
    throw ParseError("unknown device kind");
}

EvalOptions build_options(const DeviceFlags& flags) {
    EvalOptions o;
    o.bandwidth = parse_quantity(flags.bandwidth, Dimension::frequency);
    o.temperature = parse_quantity(flags.temperature, Dimension::temperature);
    if (!flags.bias.empty()) o.bias = parse_quantity(flags.bias, Dimension::voltage);
    o.modulation = flags.modulation;
    o.mode_counting = flags.floor_modes ? ModeCounting::floor : ModeCounting::continuous;
    return o;
}

void add_device_flags(CLI::App* app, DeviceFlags& f, bool radius, bool width) {
    app->add_option("--material", f.material, "material name from the material table")
        ->capture_default_str();
    app->add_option("--mstar", f.m_star, "override the effective mass ratio m*/m");
    app->add_option("--epsr", f.epsilon_r, "override the relative permittivity");
    if (radius) app->add_option("--radius", f.radius, "wire radius or SET island radius (e.g. 50nm)");
    if (width) app->add_option("--width", f.width, "point-contact width (e.g. 20nm)");
    app->add_option("--df", f.bandwidth, "measurement bandwidth (e.g. 1Hz, 5kHz)")
        ->capture_default_str();
    app->add_option("--T,--temperature", f.temperature, "temperature (e.g. 4.2K)")
        ->capture_default_str();
    app->add_option("--bias", f.bias, "source-drain bias instead of the limiting value (e.g. 1mV)");
    app->add_option("--modulation", f.modulation, "fraction of the current the charge switches")
        ->capture_default_str();
    app->add_flag("--floor-modes", f.floor_modes, "count whole wire modes only");
}

Json material_json(const Material& m) {
    return {{"name", m.name}, {"m_star_ratio", m.m_star_ratio}, {"epsilon_r", m.epsilon_r}};
}

Json device_inputs(const DeviceSpec& d, const EvalOptions& o) {
    Json j;
    j["device"] = to_string(d.kind());
    j["material"] = material_json(d.material);
    std::visit(
        [&](const auto& g) {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, WireGeometry>)
                j["R_m"] = g.radius;
            else if constexpr (std::is_same_v<G, QpcGeometry>)
                j["W_m"] = g.width;
            else
                j["R_island_m"] = g.island_radius;
        },
        d.geometry);
    j["delta_f_Hz"] = o.bandwidth;
    j["T_K"] = o.temperature;
    if (o.bias) j["bias_V"] = *o.bias;
    j["modulation"] = o.modulation;
    j["mode_counting"] = o.mode_counting == ModeCounting::floor ? "floor" : "continuous";
    return j;
}

Json device_outputs(const SnrResult& r) {
    Json j;
    j["snr"] = r.snr;
    j["f_unity_Hz"] = r.f_unity;
    j["sensitivity_e_per_rtHz"] = r.sensitivity;
    j["pipeline_snr"] = r.pipeline_snr;
    j["transport"] = {{"V_ds_V", r.transport.bias},
                      {"E_kin_J", r.transport.kinetic_energy},
                      {"N_modes", r.transport.modes},
                      {"G_S", r.transport.conductance},
                      {"I_A", r.transport.current}};
    if (r.electrostatics)
        j["electrostatics"] = {{"C_F", r.electrostatics->capacitance},
                               {"E_charging_J", r.electrostatics->charging_energy},
                               {"V_blockade_V", r.electrostatics->blockade_voltage}};
    j["noise"] = {{"shot_sq_A2", r.breakdown.shot_sq},
                  {"thermal_sq_A2", r.breakdown.thermal_sq},
                  {"total_rms_A", r.breakdown.total_rms}};
    j["shot_dominated"] = r.shot.dominated;
    j["shot_margin"] = r.shot.margin;  // null when infinite
    j["model_valid"] = r.model_valid;
    j["warnings"] = r.warnings;
    return j;
}

const std::vector<std::string> kDeviceCsvHeader{
    "device",        "material",        "m_star_ratio", "epsilon_r",   "R_m",
    "W_m",           "R_island_m",      "delta_f_Hz",   "T_K",         "V_ds_V",
    "N_modes",       "G_S",             "I_A",          "f_unity_Hz",  "snr",
    "pipeline_snr",  "sensitivity_e_per_rtHz", "shot_sq_A2", "thermal_sq_A2",
    "total_rms_A",   "shot_dominated",  "model_valid"};

std::vector<std::string> device_csv_row(const DeviceSpec& d, const SnrResult& r) {
    std::string radius, width, island;
    std::visit(
        [&](const auto& g) {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, WireGeometry>)
                radius = format_number(g.radius);
            else if constexpr (std::is_same_v<G, QpcGeometry>)
                width = format_number(g.width);
            else
                island = format_number(g.island_radius);
        },
        d.geometry);
    return {std::string(to_string(d.kind())),
            d.material.name,
            format_number(d.material.m_star_ratio),
            format_number(d.material.epsilon_r),
            radius,
            width,
            island,
            format_number(r.bandwidth),
            format_number(r.operating_point.temperature),
            format_number(r.transport.bias),
            format_number(r.transport.modes),
            format_number(r.transport.conductance),
            format_number(r.transport.current),
            format_number(r.f_unity),
            format_number(r.snr),
            format_number(r.pipeline_snr),
            format_number(r.sensitivity),
            format_number(r.breakdown.shot_sq),
            format_number(r.breakdown.thermal_sq),
            format_number(r.breakdown.total_rms),
            r.shot.dominated ? "true" : "false",
            r.model_valid ? "true" : "false"};
}

void print_device_table(std::ostream& out, const DeviceSpec& d, const SnrResult& r) {
    std::vector<std::pair<std::string, std::string>> rows;
    rows.emplace_back("device", std::string(to_string(d.kind())));
    rows.emplace_back("material", d.material.name + " (m*/m " + format_human(d.material.m_star_ratio) +
                                      ", eps_r " + format_human(d.material.epsilon_r) + ")");
    std::visit(
        [&](const auto& g) {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, WireGeometry>)
                rows.emplace_back("radius [m]", format_human(g.radius));
            else if constexpr (std::is_same_v<G, QpcGeometry>)
                rows.emplace_back("width [m]", format_human(g.width));
            else
                rows.emplace_back("island radius [m]", format_human(g.island_radius));
        },
        d.geometry);
    rows.emplace_back("bandwidth [Hz]", format_human(r.bandwidth));
    rows.emplace_back("temperature [K]", format_human(r.operating_point.temperature));
    rows.emplace_back("SNR", format_human(r.snr));
    rows.emplace_back("unity-SNR bandwidth [Hz]", format_human(r.f_unity));
    rows.emplace_back("sensitivity [e/sqrt(Hz)]", format_human(r.sensitivity));
    rows.emplace_back("pipeline SNR", format_human(r.pipeline_snr));
    rows.emplace_back("bias V_ds [V]", format_human(r.transport.bias));
    rows.emplace_back("modes [e^2/h]", format_human(r.transport.modes));
    rows.emplace_back("conductance [S]", format_human(r.transport.conductance));
    rows.emplace_back("sense current [A]", format_human(r.transport.current));
    if (r.electrostatics) {
        rows.emplace_back("island capacitance [F]", format_human(r.electrostatics->capacitance));
        rows.emplace_back("charging energy [J]", format_human(r.electrostatics->charging_energy));
        rows.emplace_back("blockade voltage [V]", format_human(r.electrostatics->blockade_voltage));
    }
    rows.emplace_back("shot noise^2 [A^2]", format_human(r.breakdown.shot_sq));
    rows.emplace_back("thermal noise^2 [A^2]", format_human(r.breakdown.thermal_sq));
    rows.emplace_back("total noise [A]", format_human(r.breakdown.total_rms));
    rows.emplace_back("shot dominated", r.shot.dominated ? "yes" : "no");
    rows.emplace_back("model valid", r.model_valid ? "yes" : "no");
    print_rows(out, rows);
    for (const auto& w : r.warnings) out << "warning: " << w << '\n';
}

void render_csv_or_table(std::ostream& out, const CsvTable& t, const CommonFlags& common) {
    if (common.format == "csv") {
        out << render_csv(t);
        return;
    }
    // Aligned columns with six significant figures.
    std::vector<std::vector<std::string>> cells;
    cells.push_back(t.header);
    for (const auto& row : t.rows) {
        std::vector<std::string> r;
        for (const auto& c : row) {
            double v = 0.0;
            const auto [p, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
            const bool numeric = !c.empty() && ec == std::errc() && p == c.data() + c.size();
            r.push_back(numeric ? format_human(v) : c);
        }
        cells.push_back(std::move(r));
    }
    std::vector<std::size_t> width(t.header.size(), 0);
    for (const auto& row : cells)
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    for (const auto& row : cells) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << "  ";
            out << row[i] << std::string(width[i] - row[i].size(), ' ');
        }
        out << '\n';
    }
}

int cmd_device(std::ostream& out, DeviceKind kind, const DeviceFlags& flags,
               const CommonFlags& common) {
    const MaterialTable table = load_material_tables(common.materials_path);
    const DeviceSpec device = build_device(kind, flags, table, true);
    const EvalOptions options = build_options(flags);
    const SnrResult r = evaluate(device, options);
    if (common.format == "json") {
        print_json(out, envelope(to_string(kind), device_inputs(device, options), device_outputs(r),
                                 common));
    } else if (common.format == "csv") {
        out << render_csv(CsvTable{kDeviceCsvHeader, {device_csv_row(device, r)}});
    } else {
        print_device_table(out, device, r);
    }
    return kExitOk;
}

// ---- sweep --------------------------------------------------------------

Dimension axis_dimension(const std::string& axis) {
    if (axis == "R" || axis == "W" || axis == "R_island") return Dimension::length;
    if (axis == "delta_f") return Dimension::frequency;
    if (axis == "T") return Dimension::temperature;
    return Dimension::dimensionless;
}

std::vector<double> sweep_points(double start, double stop, int points, bool log_spacing) {
    std::vector<double> v(static_cast<std::size_t>(points));
    const double n = points - 1;
    for (int i = 0; i < points; ++i) {
        const double t = i / n;
        v[i] = log_spacing ? std::exp(std::log(start) + t * (std::log(stop) - std::log(start)))
                           : start + t * (stop - start);
    }
    v.front() = start;
    v.back() = stop;
    return v;
}

int cmd_sweep(std::ostream& out, const SweepFlags& sweep, const DeviceFlags& flags,
              const CommonFlags& common) {
    const DeviceKind kind = parse_device_kind(sweep.device);
    const std::string& axis = sweep.axis;
    const bool geometry_axis = axis == "R" || axis == "W" || axis == "R_island";
    if ((axis == "R" && kind != DeviceKind::wire) || (axis == "W" && kind != DeviceKind::qpc) ||
        (axis == "R_island" && kind != DeviceKind::set))
        throw ParseError("axis '" + axis + "' does not apply to device '" + sweep.device + "'");
    if (sweep.points < 2) throw ParseError("--points must be >= 2");
    const Dimension dim = axis_dimension(axis);
    const double start = parse_quantity(sweep.start, dim);
    const double stop = parse_quantity(sweep.stop, dim);
    if (!(start < stop)) throw ParseError("sweep needs --start < --stop");
    const bool log_spacing = sweep.spacing == "log";
    if (log_spacing && !(start > 0.0)) throw ParseError("log spacing needs --start > 0");

    const MaterialTable table = load_material_tables(common.materials_path);
    const DeviceSpec base = build_device(kind, flags, table, !geometry_axis);
    const EvalOptions base_options = build_options(flags);

    CsvTable csv{kDeviceCsvHeader, {}};
    Json rows = Json::array();
    for (double x : sweep_points(start, stop, sweep.points, log_spacing)) {
        DeviceSpec d = base;
        EvalOptions o = base_options;
        if (axis == "R") d.geometry = WireGeometry{x};
        else if (axis == "W") d.geometry = QpcGeometry{x};
        else if (axis == "R_island") d.geometry = SetGeometry{x};
        else if (axis == "delta_f") o.bandwidth = x;
        else if (axis == "T") o.temperature = x;
        else if (axis == "epsilon_r") d.material.epsilon_r = x;
        else if (axis == "m_star_ratio") d.material.m_star_ratio = x;
        const SnrResult r = evaluate(d, o);
        if (common.format == "json")
            rows.push_back({{"inputs", device_inputs(d, o)}, {"outputs", device_outputs(r)}});
        else
            csv.rows.push_back(device_csv_row(d, r));
    }
    if (common.format == "json") {
        Json inputs = device_inputs(base, base_options);
        inputs["sweep"] = {{"axis", axis},           {"start", start},
                           {"stop", stop},           {"points", sweep.points},
                           {"spacing", sweep.spacing}, {"unit", si_unit(dim)}};
        print_json(out, envelope("sweep", std::move(inputs), {{"rows", std::move(rows)}}, common));
    } else {
        render_csv_or_table(out, csv, common);
    }
    return kExitOk;
}

// ---- simulate -----------------------------------------------------------

Json outcome_json(const SimOutcome& o) {
    return {{"trials", o.trials},
            {"window_s", o.window},
            {"lambda", o.lambda},
            {"thermal_sigma_e", o.thermal_sigma},
            {"threshold_e", o.threshold},
            {"sample_mean_e", o.sample_mean},
            {"sample_stddev_e", o.sample_stddev},
            {"empirical_snr", o.empirical_snr},
            {"snr_stderr", o.snr_stderr},
            {"analytic_snr", o.analytic_snr},
            {"err_open", o.err_open},
            {"err_blocked", o.err_blocked},
            {"balanced_err", o.balanced_err},
            {"ci95",
             {{"snr", o.ci95.snr},
              {"err_open", o.ci95.err_open},
              {"err_blocked", o.ci95.err_blocked},
              {"balanced_err", o.ci95.balanced_err}}},
            {"within_3sigma", o.within_3sigma},
            {"gaussian_fallback", o.gaussian_fallback}};
}

int cmd_simulate(std::ostream& out, const SimulateFlags& sim, const DeviceFlags& flags,
                 const CommonFlags& common) {
    SimConfig cfg;
    cfg.trials = sim.trials;
    cfg.seed = sim.seed;
    cfg.threshold = sim.threshold;
    cfg.fano = sim.fano;
    cfg.threads = sim.threads;
    cfg.bandwidth = parse_quantity(flags.bandwidth, Dimension::frequency);
    cfg.temperature = parse_quantity(flags.temperature, Dimension::temperature);

    Json inputs;
    Json extra;
    std::vector<std::string> warnings;
    if (!sim.device.empty()) {
        if (!sim.current.empty()) throw ParseError("--I and --device are mutually exclusive");
        const DeviceKind kind = parse_device_kind(sim.device);
        const MaterialTable table = load_material_tables(common.materials_path);
        const DeviceSpec device = build_device(kind, flags, table, true);
        EvalOptions options = build_options(flags);
        options.temperature = cfg.temperature;
        const SnrResult r = evaluate(device, options);
        cfg.on_current = r.transport.current;
        cfg.conductance = r.transport.conductance;
        inputs = device_inputs(device, options);
        extra["closed_form_snr"] = r.snr;
        extra["f_unity_Hz"] = r.f_unity;
    } else {
        if (sim.current.empty()) throw ParseError("one of --I or --device is required");
        cfg.on_current = parse_quantity(sim.current, Dimension::current);
        cfg.conductance = parse_quantity(sim.conductance, Dimension::conductance);
    }
    inputs["I_on_A"] = cfg.on_current;
    inputs["G_S"] = cfg.conductance;
    inputs["delta_f_Hz"] = cfg.bandwidth;
    inputs["T_K"] = cfg.temperature;
    inputs["trials"] = cfg.trials;
    inputs["threshold_e"] = cfg.threshold;
    inputs["fano"] = cfg.fano;

    const SimOutcome o = simulate_detection(cfg);
    if (o.lambda < 10.0)
        warnings.push_back("mean count per window is below 10; amplitude SNR and error rate "
                           "diverge as figures of merit in this regime");
    Json outputs = outcome_json(o);
    for (auto& [k, v] : extra.items()) outputs[k] = v;
    outputs["pass"] = o.within_3sigma;
    outputs["warnings"] = warnings;

    if (common.format == "table") {
        std::vector<std::pair<std::string, std::string>> rows{
            {"trials", std::to_string(o.trials)},
            {"seed", std::to_string(o.seed_used)},
            {"generator", o.generator},
            {"mean count lambda", format_human(o.lambda)},
            {"empirical SNR", format_human(o.empirical_snr) + " +/- " + format_human(o.ci95.snr)},
            {"analytic SNR", format_human(o.analytic_snr)},
            {"err open", format_human(o.err_open) + " +/- " + format_human(o.ci95.err_open)},
            {"err blocked", format_human(o.err_blocked) + " +/- " + format_human(o.ci95.err_blocked)},
            {"balanced err", format_human(o.balanced_err)},
            {"within 3 sigma", o.within_3sigma ? "pass" : "FAIL"}};
        print_rows(out, rows);
        for (const auto& w : warnings) out << "warning: " << w << '\n';
        return kExitOk;
    }
    Json j = envelope("simulate", std::move(inputs), std::move(outputs), common);
    j["generator"] = o.generator;
    j["seed"] = o.seed_used;
    print_json(out, j);
    return kExitOk;
}

// ---- constants, materials, report ---------------------------------------

int cmd_constants(std::ostream& out, const CommonFlags& common) {
    const auto& k = kConstants;
    const std::vector<std::tuple<std::string, double, std::string>> values{
        {"e", k.e, "C"},
        {"h", k.h, "J s"},
        {"hbar", k.hbar, "J s"},
        {"m_e", k.m_e, "kg"},
        {"c", k.c, "m/s"},
        {"k_B", k.k_B, "J/K"},
        {"eps0", k.eps0, "F/m"},
        {"alpha", k.alpha, "1"},
        {"ry_energy", k.ry_energy, "J"},
        {"ry_freq", k.ry_freq, "Hz"},
        {"a0", k.a0, "m"},
        {"conductance_quantum", conductance_quantum(), "S"},
    };
    const std::vector<std::tuple<std::string, double, double>> checks{
        {"ry_freq", k.ry_freq, codata2018::rydberg_frequency},
        {"ry_energy_eV", k.ry_energy / k.e, codata2018::rydberg_energy_ev},
        {"a0", k.a0, codata2018::bohr_radius},
        {"alpha", k.alpha, codata2018::fine_structure},
    };
    if (common.format == "json") {
        Json vals = Json::object();
        for (const auto& [n, v, u] : values) vals[n] = {{"value", v}, {"unit", u}};
        Json cross = Json::object();
        for (const auto& [n, v, ref] : checks)
            cross[n] = {{"derived", v}, {"codata_2018", ref}, {"relative_difference", (v - ref) / ref}};
        print_json(out, envelope("constants", {{"source", "CODATA 2018"}},
                                 {{"constants", vals}, {"cross_check", cross}}, common));
        return kExitOk;
    }
    std::vector<std::pair<std::string, std::string>> rows;
    for (const auto& [n, v, u] : values) rows.emplace_back(n + " [" + u + "]", format_human(v));
    print_rows(out, rows);
    out << "\ncross-check against CODATA 2018 recommended values (relative difference)\n";
    rows.clear();
    for (const auto& [n, v, ref] : checks) rows.emplace_back(n, format_human((v - ref) / ref));
    print_rows(out, rows);
    return kExitOk;
}

Json material_details(const Material& m) {
    const EffectiveScales s = effective_scales(m);
    Json j = material_json(m);
    j["scale_factor"] = s.scale_factor;
    j["ry_star_energy_J"] = s.ry_star_energy;
    j["ry_star_freq_Hz"] = s.ry_star_freq;
    j["a_star_m"] = s.a_star;
    return j;
}

int cmd_material(std::ostream& out, bool show, const std::string& name, const CommonFlags& common) {
    const MaterialTable table = load_material_tables(common.materials_path);
    std::vector<Material> selected;
    if (show)
        selected.push_back(table.at(name));
    else
        selected = table.entries();
    if (common.format == "json") {
        Json list = Json::array();
        for (const auto& m : selected) list.push_back(material_details(m));
        print_json(out, envelope(show ? "material show" : "material list",
                                 show ? Json{{"name", name}} : Json::object(),
                                 {{"materials", list}}, common));
        return kExitOk;
    }
    CsvTable t{{"name", "m_star_ratio", "epsilon_r", "ry_star_freq_Hz", "ry_star_energy_J", "a_star_m"},
               {}};
    for (const auto& m : selected) {
        const EffectiveScales s = effective_scales(m);
        t.rows.push_back({m.name, format_number(m.m_star_ratio), format_number(m.epsilon_r),
                          format_number(s.ry_star_freq), format_number(s.ry_star_energy),
                          format_number(s.a_star)});
    }
    render_csv_or_table(out, t, common);
    return kExitOk;
}

int cmd_report(std::ostream& out, const CommonFlags& common) {
    const auto rows = headline_report();
    if (common.format == "json") {
        Json list = Json::array();
        for (const auto& r : rows)
            list.push_back({{"label", r.label},
                            {"device", to_string(r.kind)},
                            {"inputs", r.inputs},
                            {"f_unity_Hz", r.f_unity},
                            {"sensitivity_e_per_rtHz", r.sensitivity},
                            {"paper_claim", r.claim},
                            {"compared", r.quantity},
                            {"band", {r.band_low, r.band_high}},
                            {"within_claim", r.within_claim}});
        print_json(out, envelope("report", Json::object(), {{"rows", list}}, common));
        return kExitOk;
    }
    CsvTable t{{"label", "device", "inputs", "f_unity_Hz", "sensitivity_e_per_rtHz", "claim",
                "compared", "band_low", "band_high", "within_claim"},
               {}};
    for (const auto& r : rows)
        t.rows.push_back({r.label, std::string(to_string(r.kind)), r.inputs, format_number(r.f_unity),
                          format_number(r.sensitivity), r.claim, r.quantity,
                          format_number(r.band_low), format_number(r.band_high),
                          r.within_claim ? "pass" : "FAIL"});
    render_csv_or_table(out, t, common);
    return kExitOk;
}

// The first entry of `formats` is the subcommand's default.
void add_common_flags(CLI::App* app, CommonFlags& common, std::vector<std::string> formats) {
    app->add_option("--format", common.format, "output format (default " + formats.front() + ")")
        ->check(CLI::IsMember(formats));
    app->add_flag("--deterministic", common.deterministic, "omit timestamps from JSON output");
    app->add_option("--materials", common.materials_path,
                    "extra material table (merged after $CHARGE_LIMIT_MATERIALS)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Speed and sensitivity limits of single-electron charge detection", "chargelimit"};
    app.require_subcommand(1);

    CommonFlags common;

    auto* constants = app.add_subcommand("constants", "physical constants in use");
    add_common_flags(constants, common, {"table", "json"});

    auto* material = app.add_subcommand("material", "material table");
    material->require_subcommand(1);
    std::string material_name;
    auto* material_list = material->add_subcommand("list", "list known materials");
    add_common_flags(material_list, common, {"table", "csv", "json"});
    auto* material_show = material->add_subcommand("show", "show one material");
    material_show->add_option("name", material_name, "material name")->required();
    add_common_flags(material_show, common, {"table", "csv", "json"});

    DeviceFlags dev;
    auto* wire = app.add_subcommand("wire", "cylindrical-wire FET");
    add_device_flags(wire, dev, true, false);
    add_common_flags(wire, common, {"table", "json", "csv"});
    auto* qpc = app.add_subcommand("qpc", "quantum point contact");
    add_device_flags(qpc, dev, false, true);
    add_common_flags(qpc, common, {"table", "json", "csv"});
    auto* set = app.add_subcommand("set", "single-electron transistor");
    add_device_flags(set, dev, true, false);
    add_common_flags(set, common, {"table", "json", "csv"});

    SweepFlags sweep_flags;
    auto* sweep = app.add_subcommand("sweep", "sweep one parameter of a device");
    sweep->add_option("device", sweep_flags.device, "wire, qpc or set")->required();
    sweep->add_option("--axis", sweep_flags.axis, "parameter to sweep")
        ->required()
        ->check(CLI::IsMember({"R", "W", "R_island", "delta_f", "epsilon_r", "m_star_ratio", "T"}));
    sweep->add_option("--start", sweep_flags.start, "first value, with unit")->required();
    sweep->add_option("--stop", sweep_flags.stop, "last value, with unit")->required();
    sweep->add_option("--points", sweep_flags.points, "number of points (>= 2)")->required();
    sweep->add_option("--spacing", sweep_flags.spacing, "linear or log")
        ->check(CLI::IsMember({"linear", "log"}))
        ->capture_default_str();
    add_device_flags(sweep, dev, true, true);
    add_common_flags(sweep, common, {"csv", "json", "table"});

    SimulateFlags sim;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo counting oracle");
    simulate->add_option("--I,--current", sim.current, "open-state current (e.g. 1.6e-13A)");
    simulate->add_option("--G,--conductance", sim.conductance, "conductance for Johnson noise")
        ->capture_default_str();
    simulate->add_option("--device", sim.device, "take I and G from a device model instead")
        ->check(CLI::IsMember({"wire", "qpc", "set"}));
    simulate->add_option("--trials", sim.trials, "number of trials (>= 1)")
        ->check(CLI::Range(std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max()))
        ->capture_default_str();
    simulate->add_option("--seed", sim.seed, "RNG seed")->capture_default_str();
    simulate->add_option("--threshold", sim.threshold, "decision threshold in electrons")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    simulate->add_option("--fano", sim.fano, "shot-noise Fano factor")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    simulate->add_option("--threads", sim.threads, "worker threads; results do not depend on it")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_device_flags(simulate, dev, true, true);
    add_common_flags(simulate, common, {"json", "table"});

    auto* report = app.add_subcommand("report", "reproduce the headline numbers");
    add_common_flags(report, common, {"table", "csv", "json"});

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    if (common.format.empty()) {
        if (sweep->parsed())
            common.format = "csv";
        else if (simulate->parsed())
            common.format = "json";
        else
            common.format = "table";
    }

    try {
        if (constants->parsed()) return cmd_constants(out, common);
        if (material_list->parsed()) return cmd_material(out, false, {}, common);
        if (material_show->parsed()) return cmd_material(out, true, material_name, common);
        if (wire->parsed()) return cmd_device(out, DeviceKind::wire, dev, common);
        if (qpc->parsed()) return cmd_device(out, DeviceKind::qpc, dev, common);
        if (set->parsed()) return cmd_device(out, DeviceKind::set, dev, common);
        if (sweep->parsed()) return cmd_sweep(out, sweep_flags, dev, common);
        if (simulate->parsed()) return cmd_simulate(out, sim, dev, common);
        if (report->parsed()) return cmd_report(out, common);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    }
    err << "error: no command\n";
    return kExitUsage;
}

}  // namespace chargelimit::cli
