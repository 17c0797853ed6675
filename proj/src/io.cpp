#include "helixdt/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "helixdt/surface.hpp"

namespace helixdt {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string to_xyz(const PointCloud& cloud) {
  std::string out;
  out.reserve(cloud.size() * 64);
  for (const Point3& p : cloud.points) {
    out += format_double(p.x);
    out += ' ';
    out += format_double(p.y);
    out += ' ';
    out += format_double(p.z);
    out += '\n';
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << text;
  f.close();
  if (!f) throw IoError("failed writing " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  if (f.bad()) throw IoError("failed reading " + path.string());
  return ss.str();
}

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& j) {
  write_text(path, j.dump(2) + "\n");
}

void write_xyz(const std::filesystem::path& path, const PointCloud& cloud) { write_text(path, to_xyz(cloud)); }

PointCloud parse_xyz(const std::string& text) {
  PointCloud cloud;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    ++line_no;
    const char* first = text.data() + pos;
    const char* last = text.data() + end;
    if (last > first && last[-1] == '\r') --last;
    pos = end + 1;
    auto skip_ws = [&] {
      while (first < last && (*first == ' ' || *first == '\t')) ++first;
    };
    skip_ws();
    if (first == last || *first == '#') continue;
    double c[3];
    for (double& v : c) {
      skip_ws();
      if (first < last && *first == '+') ++first;
      const auto res = std::from_chars(first, last, v);
      if (res.ec != std::errc())
        throw IoError("line " + std::to_string(line_no) + ": expected three numbers");
      first = res.ptr;
    }
    skip_ws();
    if (first != last) throw IoError("line " + std::to_string(line_no) + ": trailing characters");
    cloud.points.push_back({c[0], c[1], c[2]});
  }
  return cloud;
}

PointCloud read_xyz(const std::filesystem::path& path) {
  try {
    return parse_xyz(read_text(path));
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

std::filesystem::path provenance_path(const std::filesystem::path& xyz_path) {
  return std::filesystem::path(xyz_path.string() + ".json");
}

void write_provenance(const std::filesystem::path& path, const PointCloud& cloud) {
  nlohmann::ordered_json j = cloud.provenance.to_json();
  j["count"] = cloud.size();
  if (cloud.surface) j["surface"] = cloud.surface->to_json();
  write_json(path, j);
}

bool read_provenance(const std::filesystem::path& path, PointCloud& cloud) {
  if (!std::filesystem::exists(path)) return false;
  try {
    cloud.provenance = Provenance::from_json(nlohmann::ordered_json::parse(read_text(path)));
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path.string() + ": bad provenance record: " + e.what());
  }
  return true;
}

void write_tets(const std::filesystem::path& path, const Triangulation& tri) {
  std::string out;
  for (const Tet& t : tri.tets()) {
    if (t.is_ghost()) continue;
    out += std::to_string(t.v[0]) + ' ' + std::to_string(t.v[1]) + ' ' + std::to_string(t.v[2]) + ' ' +
           std::to_string(t.v[3]) + '\n';
  }
  write_text(path, out);
}

void write_off(const std::filesystem::path& path, const Triangulation& tri) {
  std::string faces;
  std::size_t n_faces = 0;
  for (const Tet& t : tri.tets()) {
    if (!t.is_ghost()) continue;
    faces += "3 " + std::to_string(t.v[0]) + ' ' + std::to_string(t.v[1]) + ' ' + std::to_string(t.v[2]) + '\n';
    ++n_faces;
  }
  std::string out = "OFF\n" + std::to_string(tri.points().size()) + ' ' + std::to_string(n_faces) + " 0\n";
  out += to_xyz(tri.cloud());
  out += faces;
  write_text(path, out);
}

nlohmann::ordered_json stats_json(const ComplexityStats& s) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["n_vertices"] = s.n_vertices;
  j["n_edges"] = s.n_edges;
  j["n_triangles"] = s.n_triangles;
  j["n_tets"] = s.n_tets;
  auto hist = nlohmann::ordered_json::object();
  for (const auto& [degree, count] : s.degree_histogram) hist[std::to_string(degree)] = count;
  j["degree_histogram"] = std::move(hist);
  j["max_edge_length"] = s.max_edge_length;
  return j;
}

}  // namespace helixdt
