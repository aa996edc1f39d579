#include <doctest.h>

#include <string>

#include "udr/errors.hpp"
#include "udr/instance_io.hpp"
#include "udr/rng.hpp"

using namespace udr;

TEST_CASE("instance parsing") {
  SUBCASE("minimal document") {
    const auto inst = io::parse_instance("r 1.0\nv 0 0 0\nv 1 0 2\n");
    CHECK(inst.range == 1.0);
    REQUIRE(inst.nodes.size() == 2);
    CHECK(coincident(inst.nodes[1], {0, 2}));
  }
  SUBCASE("comments and blank lines are skipped") {
    const auto inst =
        io::parse_instance("# generated\n\nr 2.5\n# nodes\nv 0 1.5 -0.5\n");
    CHECK(inst.range == 2.5);
    REQUIRE(inst.nodes.size() == 1);
  }
  SUBCASE("missing r line names line 1") {
    try {
      io::parse_instance("v 0 0 0\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 1);
    }
  }
  SUBCASE("empty document is missing its r line") {
    CHECK_THROWS_AS(io::parse_instance(""), ParseError);
  }
  SUBCASE("node ids must be consecutive") {
    CHECK_THROWS_AS(io::parse_instance("r 1\nv 0 0 0\nv 2 1 1\n"), ParseError);
  }
  SUBCASE("non-finite coordinates are rejected") {
    CHECK_THROWS_AS(io::parse_instance("r 1\nv 0 nan 0\n"), ParseError);
    CHECK_THROWS_AS(io::parse_instance("r 1\nv 0 inf 0\n"), ParseError);
  }
  SUBCASE("duplicate r line is rejected") {
    CHECK_THROWS_AS(io::parse_instance("r 1\nr 2\n"), ParseError);
  }
  SUBCASE("nonpositive range is rejected") {
    CHECK_THROWS_AS(io::parse_instance("r 0\nv 0 0 0\n"), ParseError);
  }
  SUBCASE("unknown directives are rejected") {
    CHECK_THROWS_AS(io::parse_instance("r 1\nq 0 0 0\n"), ParseError);
  }
}

TEST_CASE("instance round-trip stays within tolerance") {
  for (int seed = 1; seed <= 10; ++seed) {
    const auto inst = io::generate_random(6, 17.3, 1.25, seed);
    const auto back = io::parse_instance(io::write_instance(inst));
    CHECK(back.range == doctest::Approx(inst.range).epsilon(1e-9));
    REQUIRE(back.nodes.size() == inst.nodes.size());
    for (std::size_t v = 0; v < inst.nodes.size(); ++v) {
      CHECK(back.nodes[v].x == doctest::Approx(inst.nodes[v].x).epsilon(1e-9));
      CHECK(back.nodes[v].y == doctest::Approx(inst.nodes[v].y).epsilon(1e-9));
    }
    // Re-serialization of the parsed instance is byte-identical.
    CHECK(io::write_instance(back) == io::write_instance(inst));
  }
}

TEST_CASE("solution documents") {
  SUBCASE("steiner round-trip") {
    st::SteinerSolution solution;
    solution.steiner_points = {{1, 0}, {2, 0.5}};
    const auto doc = io::parse_solution(io::write_solution(solution));
    REQUIRE(std::holds_alternative<st::SteinerSolution>(doc));
    const auto& back = std::get<st::SteinerSolution>(doc);
    REQUIRE(back.steiner_points.size() == 2);
    CHECK(coincident(back.steiner_points[1], {2, 0.5}));
  }
  SUBCASE("empty steiner solution reads back empty") {
    const auto doc = io::parse_solution(io::write_solution({}));
    REQUIRE(std::holds_alternative<st::SteinerSolution>(doc));
    CHECK(std::get<st::SteinerSolution>(doc).steiner_points.empty());
  }
  SUBCASE("mapping round-trip") {
    mcr::Mapping mapping;
    mapping.targets = {{0, 0}, {0, 1}};
    mapping.total_cost = 1.0;
    const auto doc = io::parse_solution(io::write_mapping(mapping));
    REQUIRE(std::holds_alternative<mcr::Mapping>(doc));
    const auto& back = std::get<mcr::Mapping>(doc);
    CHECK(back.total_cost == 1.0);
    REQUIRE(back.targets.size() == 2);
  }
  SUBCASE("mapping ids must be dense") {
    CHECK_THROWS_AS(io::parse_solution("cost 0\nm 0 0 0\nm 2 1 1\n"),
                    ParseError);
  }
  SUBCASE("mixed documents are rejected") {
    CHECK_THROWS_AS(io::parse_solution("cost 0\ns 1 1\n"), ParseError);
    CHECK_THROWS_AS(io::parse_solution("s 1 1\nm 0 0 0\n"), ParseError);
  }
}

TEST_CASE("generate_random is deterministic and validated") {
  SUBCASE("same seed, same document") {
    const auto a = io::generate_random(3, 10.0, 1.0, 42);
    const auto b = io::generate_random(3, 10.0, 1.0, 42);
    CHECK(io::write_instance(a) == io::write_instance(b));
  }
  SUBCASE("single node") {
    const auto inst = io::generate_random(1, 5.0, 2.0, 9);
    CHECK(inst.nodes.size() == 1);
    CHECK(inst.nodes[0].x >= 0.0);
    CHECK(inst.nodes[0].x < 5.0);
  }
  SUBCASE("seed sweep produces at least one disconnected instance") {
    int disconnected = 0;
    for (int seed = 1; seed <= 10; ++seed) {
      const auto inst = io::generate_random(5, 20.0, 1.0, seed);
      if (!induce(inst).is_connected()) ++disconnected;
    }
    CHECK(disconnected >= 1);
  }
  SUBCASE("invalid parameters") {
    CHECK_THROWS_AS(io::generate_random(0, 1.0, 1.0, 1), InvalidParameterError);
    CHECK_THROWS_AS(io::generate_random(1, 0.0, 1.0, 1), InvalidParameterError);
    CHECK_THROWS_AS(io::generate_random(1, 1.0, -1.0, 1),
                    InvalidParameterError);
  }
}

TEST_CASE("SplitMix64 matches its published stream") {
  SplitMix64 rng(42);
  CHECK(rng.next() == 5139283748462763858ULL);
  CHECK(rng.next() == 2949826092126892291ULL);
  CHECK(rng.next() == 13679457532755275413ULL);
  SplitMix64 uniform(42);
  CHECK(uniform.uniform01() == doctest::Approx(0.1599103928769201).epsilon(1e-15));
}

namespace {

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
  std::size_t count = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size())) {
    ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("SVG rendering") {
  SUBCASE("single node draws one dot and one coverage circle") {
    const Instance inst{{{0, 0}}, 1.0};
    const auto svg = io::render_svg(inst);
    CHECK(count_occurrences(svg, "<circle") == 2);
    CHECK(svg.find("stroke-dasharray=\"6,4\"") != std::string::npos);
  }
  SUBCASE("steiner render adds a distinct dotted-rim dot and links") {
    const Instance inst{{{0, 0}, {2, 0}}, 1.0};
    st::SteinerSolution solution;
    solution.steiner_points = {{1, 0}};
    const auto svg = io::render_svg(inst, &solution);
    // 3 coverage circles + 2 node dots + 1 steiner dot
    CHECK(count_occurrences(svg, "<circle") == 6);
    CHECK(count_occurrences(svg, "stroke-dasharray=\"2,2\"") == 1);
    CHECK(count_occurrences(svg, "<line") == 2);  // two induced links
  }
  SUBCASE("mapping render draws arrows only for moved nodes") {
    const Instance inst{{{0, 0}, {0, 2}}, 1.0};
    mcr::Mapping mapping;
    mapping.targets = {{0, 0}, {0, 1}};
    mapping.total_cost = 1.0;
    const auto svg = io::render_svg(inst, nullptr, &mapping);
    CHECK(count_occurrences(svg, "marker-end") == 1);
  }
  SUBCASE("output is byte-identical across calls") {
    const auto inst = io::generate_random(4, 6.0, 1.0, 3);
    CHECK(io::render_svg(inst) == io::render_svg(inst));
  }
}
