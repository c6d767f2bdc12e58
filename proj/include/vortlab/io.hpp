#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vortlab/field.hpp"

namespace vortlab {

inline constexpr int kSchemaVersion = 1;

struct FieldMeta {
  std::string preset;
  std::map<std::string, double> params;
};

struct LoadedField {
  ScalarField field;
  FieldMeta meta;
};

/// Writes `<stem>.json` (header) and `<stem>.bin` (nx*ny little-endian doubles, row
/// major, NaN outside the domain). `stem` is a path without extension.
void save_field(const std::filesystem::path& stem, const ScalarField& field,
                const FieldMeta& meta = {});

/// Accepts either the stem or the header path. When `grid` is given and matches the
/// header geometry it is reused so the loaded field compares same_as() with it.
LoadedField load_field(const std::filesystem::path& path, const GridPtr& grid = nullptr);

/// {"type": "disk", "center", "radius"} or {"type": "polygon", "vertices"}.
nlohmann::json domain_to_json(const ConvexDomain& d);
ConvexDomain domain_from_json(const nlohmann::json& j);

std::string sha256_hex(const std::vector<std::uint8_t>& bytes);

/// Two-column CSV with a one-line header; values printed with 17 significant digits.
void save_csv(const std::filesystem::path& path, const std::vector<double>& abscissa,
              const std::vector<double>& values, const std::string& header = "abscissa,value");
std::pair<std::vector<double>, std::vector<double>> load_csv(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

/// 8-bit binary PGM of the field on the full lattice, min..max mapped to 1..255 and
/// exterior cells to 0. Row 0 of the image is the top of the domain.
void save_pgm(const std::filesystem::path& path, const ScalarField& field);

}  // namespace vortlab
