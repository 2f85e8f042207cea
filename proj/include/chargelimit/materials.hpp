#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chargelimit/units.hpp"

namespace chargelimit {

// Plain-text material table, one record per line:
//
//   # comment
//   name  m_star_ratio  epsilon_r
//
// Later records with the same name replace earlier ones.
class MaterialTable {
  public:
    MaterialTable() = default;

    // vacuum and a GaAs-like 2DEG host (0.067, 12.9).
    static MaterialTable bundled();

    static MaterialTable parse(std::string_view text, std::string_view origin = "<string>");
    static MaterialTable load(const std::string& path);

    void add(Material material);
    void merge(const MaterialTable& other);

    std::optional<Material> find(std::string_view name) const;
    // Throws DomainError when the name is unknown.
    const Material& at(std::string_view name) const;

    const std::vector<Material>& entries() const { return entries_; }

    std::string render() const;

  private:
    std::vector<Material> entries_;
};

// Bundled table merged with the file named by CHARGE_LIMIT_MATERIALS (if set)
// and then with `extra_path` (if non-empty).
MaterialTable load_material_tables(const std::string& extra_path = {});

inline constexpr const char* kMaterialsEnvVar = "CHARGE_LIMIT_MATERIALS";

}  // namespace chargelimit
