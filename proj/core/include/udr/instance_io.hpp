#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>

#include "udr/disk_graph.hpp"
#include "udr/mcr_solver.hpp"
#include "udr/st_solver.hpp"

namespace udr {
namespace io {

// Instance documents are plain text: one `r <decimal>` line first, then one
// `v <id> <x> <y>` line per node with consecutive ids from 0. Lines starting
// with `#` and blank lines are ignored. Solution documents hold either
// Steiner points (`s <x> <y>` lines) or a mapping (`cost <decimal>` header
// followed by `m <id> <x> <y>` lines covering every id exactly once).
// Coordinates are written with 12 significant digits, which round-trips
// desk-scale coordinates well within 1e-9.

Instance read_instance(std::istream& in);
Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);

std::string write_instance(const Instance& instance);
void save_instance(const Instance& instance, const std::string& path);

using SolutionDocument = std::variant<st::SteinerSolution, mcr::Mapping>;

std::string write_solution(const st::SteinerSolution& solution);
std::string write_mapping(const mcr::Mapping& mapping);
SolutionDocument read_solution(std::istream& in);
SolutionDocument parse_solution(const std::string& text);
SolutionDocument load_solution(const std::string& path);
void save_text(const std::string& text, const std::string& path);

/// n points uniform in the L x L square from a SplitMix64 stream seeded with
/// `seed` (x then y per node). Identical seeds give bit-identical documents.
Instance generate_random(int count, double box_side, double range,
                         std::uint64_t seed);

/// Standalone SVG 1.1 drawing: filled dots for nodes, dashed radius-r
/// coverage circles, induced links, plus either green dotted-rim dots for
/// Steiner points or movement arrows for a mapping. Byte-identical output
/// for identical inputs.
std::string render_svg(const Instance& instance,
                       const st::SteinerSolution* solution = nullptr,
                       const mcr::Mapping* mapping = nullptr);

/// Shared numeric formatting (12 significant digits).
std::string format_number(double value);

}  // namespace io
}  // namespace udr
