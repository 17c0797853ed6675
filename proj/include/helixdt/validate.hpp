#pragma once

#include <cstdint>
#include <string>

#include "helixdt/triangulation.hpp"

namespace helixdt {

enum class Violation {
  None,
  BadIndex,
  BadLink,
  Orientation,
  MissingVertex,
  Euler,
  HullEuler,
  NotDelaunay,
  HullNotConvex,
};

const char* to_string(Violation v);

struct ValidateOptions {
  /// Clouds up to this size get the exhaustive empty-circumsphere scan;
  /// larger ones get `sample_pairs` random (vertex, tet) probes.
  std::size_t global_scan_limit = 20000;
  std::size_t sample_pairs = 1000;
  std::uint64_t seed = 0;
};

struct ValidationReport {
  bool ok = true;
  Violation kind = Violation::None;
  std::string message;
  bool global_scan = false;
  /// Exact insphere evaluations performed by the empty-sphere checks.
  std::size_t exact_checks = 0;
};

/// Checks the structural and Delaunay invariants of a triangulation and
/// reports the first violation found. Never throws on a bad complex.
ValidationReport validate(const Triangulation& tri, const ValidateOptions& options = {});

}  // namespace helixdt
