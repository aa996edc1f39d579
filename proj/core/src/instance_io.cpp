#include "udr/instance_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "udr/errors.hpp"
#include "udr/rng.hpp"

namespace udr {
namespace io {

namespace {

bool is_blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream stream(line);
  std::string token;
  while (stream >> token) tokens.push_back(token);
  return tokens;
}

double parse_finite(const std::string& token, int line, const char* what) {
  char* end = nullptr;
  const double value = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size() || token.empty()) {
    throw ParseError(line, std::string("malformed ") + what + " '" + token + "'");
  }
  if (!std::isfinite(value)) {
    throw ParseError(line, std::string("non-finite ") + what + " '" + token + "'");
  }
  return value;
}

long parse_integer(const std::string& token, int line, const char* what) {
  char* end = nullptr;
  const long value = std::strtol(token.c_str(), &end, 10);
  if (end != token.c_str() + token.size() || token.empty()) {
    throw ParseError(line, std::string("malformed ") + what + " '" + token + "'");
  }
  return value;
}

}  // namespace

std::string format_number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

Instance read_instance(std::istream& in) {
  Instance instance;
  std::string line;
  int line_number = 0;
  bool saw_range = false;
  int next_id = 0;

  while (std::getline(in, line)) {
    ++line_number;
    if (is_blank_or_comment(line)) continue;
    const auto tokens = tokenize(line);
    if (tokens[0] == "r") {
      if (saw_range) throw ParseError(line_number, "duplicate r line");
      if (!instance.nodes.empty() || next_id > 0) {
        throw ParseError(line_number, "r line must come before node lines");
      }
      if (tokens.size() != 2) {
        throw ParseError(line_number, "expected 'r <range>'");
      }
      instance.range = parse_finite(tokens[1], line_number, "range");
      if (!(instance.range > 0.0)) {
        throw ParseError(line_number, "range must be positive");
      }
      saw_range = true;
    } else if (tokens[0] == "v") {
      if (!saw_range) {
        throw ParseError(line_number, "missing r line before first node");
      }
      if (tokens.size() != 4) {
        throw ParseError(line_number, "expected 'v <id> <x> <y>'");
      }
      const long id = parse_integer(tokens[1], line_number, "node id");
      if (id != next_id) {
        throw ParseError(line_number,
                         "node ids must be consecutive from 0 (expected " +
                             std::to_string(next_id) + ", got " +
                             std::to_string(id) + ")");
      }
      ++next_id;
      instance.nodes.push_back({parse_finite(tokens[2], line_number, "x"),
                                parse_finite(tokens[3], line_number, "y")});
    } else {
      throw ParseError(line_number, "unknown directive '" + tokens[0] + "'");
    }
  }
  if (!saw_range) {
    throw ParseError(1, "missing r line");
  }
  return instance;
}

Instance parse_instance(const std::string& text) {
  std::istringstream stream(text);
  return read_instance(stream);
}

Instance load_instance(const std::string& path) {
  std::ifstream file(path);
  if (!file) {
    throw InvalidParameterError("cannot open instance file '" + path + "'");
  }
  return read_instance(file);
}

std::string write_instance(const Instance& instance) {
  instance.validate();
  std::string out = "r " + format_number(instance.range) + "\n";
  for (std::size_t v = 0; v < instance.nodes.size(); ++v) {
    out += "v " + std::to_string(v) + " " + format_number(instance.nodes[v].x) +
           " " + format_number(instance.nodes[v].y) + "\n";
  }
  return out;
}

void save_instance(const Instance& instance, const std::string& path) {
  save_text(write_instance(instance), path);
}

void save_text(const std::string& text, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw InvalidParameterError("cannot write file '" + path + "'");
  }
  file << text;
}

std::string write_solution(const st::SteinerSolution& solution) {
  std::string out = "# steiner solution h=" +
                    std::to_string(solution.steiner_points.size()) + "\n";
  for (const Point& p : solution.steiner_points) {
    out += "s " + format_number(p.x) + " " + format_number(p.y) + "\n";
  }
  return out;
}

std::string write_mapping(const mcr::Mapping& mapping) {
  std::string out = "cost " + format_number(mapping.total_cost) + "\n";
  for (std::size_t v = 0; v < mapping.targets.size(); ++v) {
    out += "m " + std::to_string(v) + " " + format_number(mapping.targets[v].x) +
           " " + format_number(mapping.targets[v].y) + "\n";
  }
  return out;
}

SolutionDocument read_solution(std::istream& in) {
  st::SteinerSolution steiner;
  mcr::Mapping mapping;
  bool saw_cost = false;
  bool saw_steiner = false;
  int next_id = 0;

  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (is_blank_or_comment(line)) continue;
    const auto tokens = tokenize(line);
    if (tokens[0] == "s") {
      if (saw_cost) {
        throw ParseError(line_number, "mixed steiner and mapping lines");
      }
      if (tokens.size() != 3) {
        throw ParseError(line_number, "expected 's <x> <y>'");
      }
      saw_steiner = true;
      steiner.steiner_points.push_back(
          {parse_finite(tokens[1], line_number, "x"),
           parse_finite(tokens[2], line_number, "y")});
    } else if (tokens[0] == "cost") {
      if (saw_steiner) {
        throw ParseError(line_number, "mixed steiner and mapping lines");
      }
      if (saw_cost) throw ParseError(line_number, "duplicate cost line");
      if (tokens.size() != 2) {
        throw ParseError(line_number, "expected 'cost <value>'");
      }
      mapping.total_cost = parse_finite(tokens[1], line_number, "cost");
      saw_cost = true;
    } else if (tokens[0] == "m") {
      if (saw_steiner) {
        throw ParseError(line_number, "mixed steiner and mapping lines");
      }
      if (!saw_cost) {
        throw ParseError(line_number, "missing cost line before mappings");
      }
      if (tokens.size() != 4) {
        throw ParseError(line_number, "expected 'm <id> <x> <y>'");
      }
      const long id = parse_integer(tokens[1], line_number, "node id");
      if (id != next_id) {
        throw ParseError(line_number,
                         "mapping ids must be consecutive from 0 (expected " +
                             std::to_string(next_id) + ", got " +
                             std::to_string(id) + ")");
      }
      ++next_id;
      mapping.targets.push_back({parse_finite(tokens[2], line_number, "x"),
                                 parse_finite(tokens[3], line_number, "y")});
    } else {
      throw ParseError(line_number, "unknown directive '" + tokens[0] + "'");
    }
  }
  if (saw_cost) return mapping;
  return steiner;
}

SolutionDocument parse_solution(const std::string& text) {
  std::istringstream stream(text);
  return read_solution(stream);
}

SolutionDocument load_solution(const std::string& path) {
  std::ifstream file(path);
  if (!file) {
    throw InvalidParameterError("cannot open solution file '" + path + "'");
  }
  return read_solution(file);
}

Instance generate_random(int count, double box_side, double range,
                         std::uint64_t seed) {
  if (count < 1) {
    throw InvalidParameterError("node count must be at least 1");
  }
  if (!(box_side > 0.0) || !std::isfinite(box_side)) {
    throw InvalidParameterError("box side must be positive");
  }
  if (!(range > 0.0) || !std::isfinite(range)) {
    throw InvalidParameterError("range must be positive");
  }
  Instance instance;
  instance.range = range;
  instance.nodes.reserve(static_cast<std::size_t>(count));
  SplitMix64 rng(seed);
  for (int i = 0; i < count; ++i) {
    const double x = rng.uniform(0.0, box_side);
    const double y = rng.uniform(0.0, box_side);
    instance.nodes.push_back({x, y});
  }
  return instance;
}

namespace {

struct SvgCanvas {
  double min_x, max_y, scale;

  double x(double wx) const { return (wx - min_x) * scale; }
  double y(double wy) const { return (max_y - wy) * scale; }

  static std::string num(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.2f", v);
    return buffer;
  }
};

void append_circle(std::string& out, const SvgCanvas& canvas, const Point& p,
                   double radius_px, const char* style) {
  out += "  <circle cx=\"" + SvgCanvas::num(canvas.x(p.x)) + "\" cy=\"" +
         SvgCanvas::num(canvas.y(p.y)) + "\" r=\"" + SvgCanvas::num(radius_px) +
         "\" " + style + "/>\n";
}

void append_line(std::string& out, const SvgCanvas& canvas, const Point& a,
                 const Point& b, const char* style) {
  out += "  <line x1=\"" + SvgCanvas::num(canvas.x(a.x)) + "\" y1=\"" +
         SvgCanvas::num(canvas.y(a.y)) + "\" x2=\"" + SvgCanvas::num(canvas.x(b.x)) +
         "\" y2=\"" + SvgCanvas::num(canvas.y(b.y)) + "\" " + style + "/>\n";
}

}  // namespace

std::string render_svg(const Instance& instance,
                       const st::SteinerSolution* solution,
                       const mcr::Mapping* mapping) {
  instance.validate();

  // The drawing shows the final configuration: V plus Steiner points, or the
  // mapped positions with arrows from the originals.
  std::vector<Point> final_points = instance.nodes;
  if (solution != nullptr) {
    final_points.insert(final_points.end(), solution->steiner_points.begin(),
                        solution->steiner_points.end());
  }
  if (mapping != nullptr) {
    final_points = mapping->targets;
  }

  std::vector<Point> extent = final_points;
  extent.insert(extent.end(), instance.nodes.begin(), instance.nodes.end());
  if (extent.empty()) extent.push_back({0.0, 0.0});
  const BoundingBox box =
      BoundingBox::of(extent).inflated(instance.range * 1.25);
  const double span = std::max(std::max(box.width(), box.height()), 1e-6);
  const double scale = 640.0 / span;
  const SvgCanvas canvas{box.min.x, box.max.y, scale};
  const double width = box.width() * scale;
  const double height = box.height() * scale;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         SvgCanvas::num(width) + "\" height=\"" + SvgCanvas::num(height) +
         "\" viewBox=\"0 0 " + SvgCanvas::num(width) + " " +
         SvgCanvas::num(height) + "\">\n";
  out += "  <defs>\n"
         "    <marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" "
         "markerWidth=\"7\" markerHeight=\"7\" orient=\"auto-start-reverse\">\n"
         "      <path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"#d97706\"/>\n"
         "    </marker>\n"
         "  </defs>\n";
  out += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Coverage disks around every point of the final configuration.
  for (const Point& p : final_points) {
    append_circle(out, canvas, p, instance.range * scale,
                  "fill=\"none\" stroke=\"#3b82f6\" stroke-width=\"1\" "
                  "stroke-dasharray=\"6,4\"");
  }

  // Links induced at the final configuration.
  Instance final_instance{final_points, instance.range};
  for (const auto& [u, v] : induce(final_instance).edges()) {
    append_line(out, canvas, final_points[static_cast<std::size_t>(u)],
                final_points[static_cast<std::size_t>(v)],
                "stroke=\"#9ca3af\" stroke-width=\"1.5\"");
  }

  // Movement arrows (only for nodes that actually move).
  if (mapping != nullptr) {
    for (std::size_t v = 0; v < instance.nodes.size(); ++v) {
      if (!coincident(instance.nodes[v], mapping->targets[v])) {
        append_line(out, canvas, instance.nodes[v], mapping->targets[v],
                    "stroke=\"#d97706\" stroke-width=\"1.5\" "
                    "marker-end=\"url(#arrow)\"");
      }
    }
  }

  // Nodes: original positions in red (or targets when a mapping is drawn).
  const std::vector<Point>& node_points =
      mapping != nullptr ? mapping->targets : instance.nodes;
  for (const Point& p : node_points) {
    append_circle(out, canvas, p, 5.0,
                  "fill=\"#dc2626\" stroke=\"#7f1d1d\" stroke-width=\"1\"");
  }

  // Steiner points in green with a dotted rim.
  if (solution != nullptr) {
    for (const Point& p : solution->steiner_points) {
      append_circle(out, canvas, p, 5.0,
                    "fill=\"#16a34a\" stroke=\"#14532d\" stroke-width=\"1\" "
                    "stroke-dasharray=\"2,2\"");
    }
  }

  out += "</svg>\n";
  return out;
}

}  // namespace io
}  // namespace udr
