#include "output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace sl2geo::cli {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

JsonObject& JsonObject::number(const std::string& key, double v) {
  if (std::isnan(v)) return text(key, "undefined");
  if (std::isinf(v)) return text(key, v > 0 ? "inf" : "-inf");
  fields_.emplace_back(key, format_number(v));
  return *this;
}

JsonObject& JsonObject::integer(const std::string& key, long long v) {
  fields_.emplace_back(key, std::to_string(v));
  return *this;
}

JsonObject& JsonObject::boolean(const std::string& key, bool v) {
  fields_.emplace_back(key, v ? "true" : "false");
  return *this;
}

JsonObject& JsonObject::text(const std::string& key, const std::string& v) {
  std::string escaped = "\"";
  for (char c : v) {
    if (c == '"' || c == '\\') escaped += '\\';
    escaped += c;
  }
  escaped += '"';
  fields_.emplace_back(key, escaped);
  return *this;
}

JsonObject& JsonObject::raw(const std::string& key, const std::string& v) {
  fields_.emplace_back(key, v);
  return *this;
}

std::string JsonObject::str() const {
  std::string out = "{";
  for (size_t i = 0; i < fields_.size(); ++i) {
    if (i) out += ",";
    out += "\"" + fields_[i].first + "\":" + fields_[i].second;
  }
  return out + "}";
}

std::string json_array(const std::vector<std::string>& elements) {
  std::string out = "[";
  for (size_t i = 0; i < elements.size(); ++i) {
    if (i) out += ",";
    out += elements[i];
  }
  return out + "]";
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open output file: " + tmp);
    f << content;
    if (!f) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("rename failed: " + path);
}

std::string trajectory_svg(const std::vector<HPoint>& points, const SvgOptions& options) {
  if (points.empty()) throw std::invalid_argument("trajectory_svg: no points");
  double xmin = points[0].x, xmax = points[0].x, ymin = points[0].y, ymax = points[0].y;
  for (const HPoint& p : points) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  if (options.modular_overlay) {
    xmin = std::min(xmin, -0.75);
    xmax = std::max(xmax, 0.75);
    ymin = std::min(ymin, 0.5);
    ymax = std::max(ymax, 1.25);
  }
  const double spanx = std::max(xmax - xmin, 1e-9);
  const double spany = std::max(ymax - ymin, 1e-9);
  xmin -= 0.1 * spanx;
  xmax += 0.1 * spanx;
  ymin -= 0.1 * spany;
  ymax += 0.1 * spany;

  const double width = options.width;
  const double scale = width / (xmax - xmin);
  const double height = (ymax - ymin) * scale;
  const auto sx = [&](double x) { return (x - xmin) * scale; };
  const auto sy = [&](double y) { return height - (y - ymin) * scale; };
  const auto coord = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return std::string(buf);
  };

  std::string svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + coord(width) +
         "\" height=\"" + coord(height) + "\" viewBox=\"0 0 " + coord(width) + " " +
         coord(height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  if (options.modular_overlay) {
    // fundamental domain boundary: Re z = +-1/2 above the unit circle, and
    // the arc |z| = 1 between them
    const double wall_base = std::sqrt(3.0) / 2.0;
    for (double x : {-0.5, 0.5}) {
      if (x >= xmin && x <= xmax) {
        svg += "<line x1=\"" + coord(sx(x)) + "\" y1=\"" + coord(sy(std::max(ymin, wall_base))) +
               "\" x2=\"" + coord(sx(x)) + "\" y2=\"" + coord(sy(ymax)) +
               "\" stroke=\"#999999\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";
      }
    }
    svg += "<path d=\"M " + coord(sx(-0.5)) + " " + coord(sy(wall_base)) + " A " + coord(scale) +
           " " + coord(scale) + " 0 0 1 " + coord(sx(0.5)) + " " + coord(sy(wall_base)) +
           "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";
  }

  svg += "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" points=\"";
  for (size_t i = 0; i < points.size(); ++i) {
    if (i) svg += ' ';
    svg += coord(sx(points[i].x)) + "," + coord(sy(points[i].y));
  }
  svg += "\"/>\n";
  svg += "<circle cx=\"" + coord(sx(points.front().x)) + "\" cy=\"" + coord(sy(points.front().y)) +
         "\" r=\"3\" fill=\"#c03030\"/>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace sl2geo::cli
