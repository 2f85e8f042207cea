#include "chargelimit/materials.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "chargelimit/error.hpp"

namespace chargelimit {

namespace {

constexpr std::string_view kBundled = R"(# name      m*/m     eps_r
vacuum      1        1
# GaAs-like 2DEG host; configuration, not a measured reference
gaas        0.067    12.9
)";

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

double parse_number(std::string_view token, std::string_view where) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size())
        throw ParseError(std::string(where) + ": not a number: '" + std::string(token) + "'");
    return value;
}

}  // namespace

MaterialTable MaterialTable::bundled() { return parse(kBundled, "<bundled>"); }

MaterialTable MaterialTable::parse(std::string_view text, std::string_view origin) {
    MaterialTable table;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        const auto tokens = split_ws(line);
        if (tokens.empty()) continue;
        const std::string where = std::string(origin) + ":" + std::to_string(line_no);
        if (tokens.size() != 3)
            throw ParseError(where + ": expected 'name m_star_ratio epsilon_r'");
        Material m{std::string(tokens[0]), parse_number(tokens[1], where),
                   parse_number(tokens[2], where)};
        try {
            validate(m);
        } catch (const DomainError& err) {
            throw DomainError(where + ": " + err.what());
        }
        table.add(std::move(m));
    }
    return table;
}

MaterialTable MaterialTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open material table '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path);
}

void MaterialTable::add(Material material) {
    auto it = std::find_if(entries_.begin(), entries_.end(),
                           [&](const Material& m) { return m.name == material.name; });
    if (it != entries_.end())
        *it = std::move(material);
    else
        entries_.push_back(std::move(material));
}

void MaterialTable::merge(const MaterialTable& other) {
    for (const auto& m : other.entries_) add(m);
}

std::optional<Material> MaterialTable::find(std::string_view name) const {
    for (const auto& m : entries_)
        if (m.name == name) return m;
    return std::nullopt;
}

const Material& MaterialTable::at(std::string_view name) const {
    for (const auto& m : entries_)
        if (m.name == name) return m;
    throw DomainError("unknown material '" + std::string(name) + "'");
}

std::string MaterialTable::render() const {
    std::ostringstream out;
    out << "# name m_star_ratio epsilon_r\n";
    for (const auto& m : entries_) out << m.name << ' ' << m.m_star_ratio << ' ' << m.epsilon_r << '\n';
    return out.str();
}

MaterialTable load_material_tables(const std::string& extra_path) {
    MaterialTable table = MaterialTable::bundled();
    if (const char* env = std::getenv(kMaterialsEnvVar); env != nullptr && *env != '\0')
        table.merge(MaterialTable::load(env));
    if (!extra_path.empty()) table.merge(MaterialTable::load(extra_path));
    return table;
}

}  // namespace chargelimit
