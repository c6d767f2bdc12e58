#include "vortlab/io.hpp"

#include <openssl/evp.h>

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "vortlab/error.hpp"

namespace vortlab {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void put_le(std::vector<std::uint8_t>& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<std::uint8_t>(bits >> (8 * b)));
}

double get_le(const std::uint8_t* p) {
  std::uint64_t bits = 0;
  for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(p[b]) << (8 * b);
  return std::bit_cast<double>(bits);
}

std::vector<std::uint8_t> read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const fs::path& path, const std::vector<std::uint8_t>& bytes) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
}

fs::path header_path_of(const fs::path& path) {
  if (path.extension() == ".json") return path;
  fs::path p = path;
  p += ".json";
  return p;
}

}  // namespace

json domain_to_json(const ConvexDomain& d) {
  if (d.is_disk()) {
    return {{"type", "disk"}, {"center", {d.center().x, d.center().y}}, {"radius", d.radius()}};
  }
  json verts = json::array();
  for (const Point& p : d.vertices()) verts.push_back({p.x, p.y});
  return {{"type", "polygon"}, {"vertices", verts}};
}

ConvexDomain domain_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "disk") {
    return ConvexDomain::disk({j.at("center").at(0).get<double>(), j.at("center").at(1).get<double>()},
                              j.at("radius").get<double>());
  }
  if (type == "polygon") {
    std::vector<Point> v;
    for (const auto& p : j.at("vertices")) v.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    return ConvexDomain::polygon(std::move(v));
  }
  throw Error(ErrorCode::IoError, "unknown domain type '" + type + "'");
}


std::string sha256_hex(const std::vector<std::uint8_t>& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::IoError, "SHA-256 failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

void save_field(const fs::path& stem, const ScalarField& field, const FieldMeta& meta) {
  const Grid& g = field.grid();
  std::vector<double> lattice(static_cast<std::size_t>(g.nx()) * g.ny(),
                              std::numeric_limits<double>::quiet_NaN());
  for (std::size_t k = 0; k < field.size(); ++k) {
    lattice[static_cast<std::size_t>(g.node_j(k)) * g.nx() + g.node_i(k)] = field[k];
  }
  std::vector<std::uint8_t> payload;
  payload.reserve(lattice.size() * 8);
  for (double v : lattice) put_le(payload, v);

  fs::path bin = stem;
  bin += ".bin";
  json header = {{"schema_version", kSchemaVersion},
                 {"kind", "field"},
                 {"domain", domain_to_json(g.domain())},
                 {"h", g.h()},
                 {"nx", g.nx()},
                 {"ny", g.ny()},
                 {"preset", meta.preset},
                 {"params", meta.params},
                 {"payload", bin.filename().string()},
                 {"sha256", sha256_hex(payload)}};
  write_bytes(bin, payload);
  write_text(header_path_of(stem), header.dump(2) + "\n");
}

LoadedField load_field(const fs::path& path, const GridPtr& grid) {
  const fs::path hpath = header_path_of(path);
  json header;
  try {
    header = json::parse(read_text(hpath));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::IoError, "malformed header " + hpath.string() + ": " + e.what());
  }
  try {
    if (header.at("schema_version").get<int>() != kSchemaVersion) {
      throw Error(ErrorCode::VersionMismatch,
                  "schema version " + header.at("schema_version").dump() + ", expected " +
                      std::to_string(kSchemaVersion));
    }
    const ConvexDomain domain = domain_from_json(header.at("domain"));
    const double h = header.at("h").get<double>();
    const int nx = header.at("nx").get<int>();
    const int ny = header.at("ny").get<int>();

    GridPtr g = grid;
    if (!g || !(g->domain() == domain) || g->h() != h) {
      g = build_grid(domain, h, GridOptions{.enforce_resolution = false});
    }
    if (g->nx() != nx || g->ny() != ny) {
      throw Error(ErrorCode::GridMismatch, "header lattice size disagrees with rebuilt grid");
    }

    const auto payload = read_bytes(hpath.parent_path() / header.at("payload").get<std::string>());
    if (sha256_hex(payload) != header.at("sha256").get<std::string>()) {
      throw Error(ErrorCode::ChecksumMismatch, "payload hash differs from header");
    }
    if (payload.size() != static_cast<std::size_t>(nx) * ny * 8) {
      throw Error(ErrorCode::IoError, "payload size disagrees with header");
    }
    std::vector<double> values(g->size());
    for (std::size_t k = 0; k < values.size(); ++k) {
      const std::size_t cell = static_cast<std::size_t>(g->node_j(k)) * nx + g->node_i(k);
      values[k] = get_le(payload.data() + 8 * cell);
    }
    FieldMeta meta;
    meta.preset = header.value("preset", "");
    if (header.contains("params")) meta.params = header.at("params").get<std::map<std::string, double>>();
    return {ScalarField(g, std::move(values)), std::move(meta)};
  } catch (const json::exception& e) {
    throw Error(ErrorCode::IoError, "malformed header " + hpath.string() + ": " + e.what());
  }
}

void save_csv(const fs::path& path, const std::vector<double>& abscissa,
              const std::vector<double>& values, const std::string& header) {
  if (abscissa.size() != values.size()) throw Error(ErrorCode::BadParams, "CSV column lengths differ");
  std::string text = header + "\n";
  char buf[64];
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", abscissa[i], values[i]);
    text += buf;
  }
  write_text(path, text);
}

std::pair<std::vector<double>, std::vector<double>> load_csv(const fs::path& path) {
  std::istringstream in(read_text(path));
  std::string line;
  std::getline(in, line);  // header
  std::vector<double> a, v;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::IoError, "bad CSV line: " + line);
    try {
      a.push_back(std::stod(line.substr(0, comma)));
      v.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw Error(ErrorCode::IoError, "bad CSV line: " + line);
    }
  }
  return {std::move(a), std::move(v)};
}

void write_text(const fs::path& path, const std::string& text) {
  write_bytes(path, std::vector<std::uint8_t>(text.begin(), text.end()));
}

std::string read_text(const fs::path& path) {
  const auto bytes = read_bytes(path);
  return {bytes.begin(), bytes.end()};
}

void save_pgm(const fs::path& path, const ScalarField& field) {
  const Grid& g = field.grid();
  const double lo = field.min();
  const double span = field.max() - lo;
  std::vector<std::uint8_t> img(static_cast<std::size_t>(g.nx()) * g.ny(), 0);
  for (std::size_t k = 0; k < field.size(); ++k) {
    const double t = span > 0.0 ? (field[k] - lo) / span : 0.5;
    const auto row = static_cast<std::size_t>(g.ny() - 1 - g.node_j(k));
    img[row * g.nx() + g.node_i(k)] = static_cast<std::uint8_t>(1 + std::lround(t * 254.0));
  }
  const std::string head = "P5\n" + std::to_string(g.nx()) + " " + std::to_string(g.ny()) + "\n255\n";
  std::vector<std::uint8_t> bytes(head.begin(), head.end());
  bytes.insert(bytes.end(), img.begin(), img.end());
  write_bytes(path, bytes);
}

}  // namespace vortlab
