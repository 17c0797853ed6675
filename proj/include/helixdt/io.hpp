#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "helixdt/point_cloud.hpp"
#include "helixdt/triangulation.hpp"

namespace helixdt {

/// File could not be opened, read or written, or its contents are malformed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest decimal string that reads back to exactly the same double.
std::string format_double(double v);

/// One "x y z" line per point, shortest round-trip decimals.
void write_xyz(const std::filesystem::path& path, const PointCloud& cloud);
std::string to_xyz(const PointCloud& cloud);
/// Parses "x y z" lines; blank lines and lines starting with '#' are skipped.
/// Throws IoError naming the offending line. Duplicates are not checked.
PointCloud read_xyz(const std::filesystem::path& path);
PointCloud parse_xyz(const std::string& text);

/// Sidecar next to an xyz file: the same path with ".json" appended.
std::filesystem::path provenance_path(const std::filesystem::path& xyz_path);
void write_provenance(const std::filesystem::path& path, const PointCloud& cloud);
/// Reads the sidecar if present; returns false and leaves the cloud as is
/// otherwise.
bool read_provenance(const std::filesystem::path& path, PointCloud& cloud);

/// One finite tet per line, four vertex indices (zero-based, positively
/// oriented).
void write_tets(const std::filesystem::path& path, const Triangulation& tri);
/// OFF mesh: all input vertices followed by the hull triangles, oriented
/// with outward normals.
void write_off(const std::filesystem::path& path, const Triangulation& tri);

/// ComplexityStats as JSON with a "schema" version field.
nlohmann::ordered_json stats_json(const ComplexityStats& stats);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& j);

}  // namespace helixdt
