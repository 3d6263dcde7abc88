#pragma once

// Deterministic CSV / JSON / SVG emission for the command-line tool: numbers
// carry 17 significant digits, objects keep insertion order, files are
// written atomically (temp file + rename).

#include "sl2geo/hyperbolic_plane.hpp"

#include <string>
#include <vector>

namespace sl2geo::cli {

std::string format_number(double v);

/// Minimal ordered JSON writer for the flat report objects the CLI emits.
class JsonObject {
 public:
  JsonObject& number(const std::string& key, double v);
  JsonObject& integer(const std::string& key, long long v);
  JsonObject& boolean(const std::string& key, bool v);
  JsonObject& text(const std::string& key, const std::string& v);
  JsonObject& raw(const std::string& key, const std::string& v);
  std::string str() const;

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

std::string json_array(const std::vector<std::string>& elements);

/// Write content to path via a temporary file and rename.
void write_file_atomic(const std::string& path, const std::string& content);

struct SvgOptions {
  bool modular_overlay = false;  // draw {|Re z| = 1/2, |z| = 1}
  int width = 640;
};

/// Projected trajectory as an SVG 1.1 polyline, auto-fit with a 10% margin.
std::string trajectory_svg(const std::vector<HPoint>& points, const SvgOptions& options);

}  // namespace sl2geo::cli
