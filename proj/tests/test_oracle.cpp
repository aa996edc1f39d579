#include <doctest.h>

#include "udr/errors.hpp"
#include "udr/instance_io.hpp"
#include "udr/oracle.hpp"

using namespace udr;

namespace {

Grid covering_grid(const Instance& inst, double step) {
  return Grid::covering(inst.bounding_box().inflated(inst.range), step);
}

}  // namespace

TEST_CASE("brute_force_min_steiner on the two-terminal closed forms") {
  const Instance two{{{0, 0}, {2, 0}}, 1.0};
  CHECK(oracle::brute_force_min_steiner(two, covering_grid(two, 1.0), 3) == 1);

  const Instance connected{{{0, 0}, {0.5, 0.5}}, 1.0};
  CHECK(oracle::brute_force_min_steiner(connected, covering_grid(connected, 0.5),
                                        3) == 0);

  const Instance far{{{0, 0}, {3.5, 0}}, 1.0};
  CHECK(oracle::brute_force_min_steiner(far, covering_grid(far, 0.5), 4) == 3);
}

TEST_CASE("brute_force_min_steiner reports an unreachable cap") {
  const Instance far{{{0, 0}, {3.5, 0}}, 1.0};
  CHECK_THROWS_AS(
      oracle::brute_force_min_steiner(far, covering_grid(far, 0.5), 2),
      InfeasibleError);
}

TEST_CASE("brute_force_mcr reference values") {
  SUBCASE("two nodes at distance 2, euclidean, integer grid") {
    const Instance inst{{{0, 0}, {0, 2}}, 1.0};
    const auto mapping = oracle::brute_force_mcr(
        inst, mcr::CostModel::euclidean(), covering_grid(inst, 1.0));
    CHECK(mapping.total_cost == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("connected instance keeps the identity") {
    const Instance inst{{{0, 0}, {0.9, 0}}, 1.0};
    const auto mapping = oracle::brute_force_mcr(
        inst, mcr::CostModel::euclidean(), covering_grid(inst, 0.5));
    CHECK(mapping.total_cost == 0.0);
    CHECK(coincident(mapping.targets[0], inst.nodes[0]));
    CHECK(coincident(mapping.targets[1], inst.nodes[1]));
  }
  SUBCASE("free nodes absorb all the movement") {
    const Instance inst{{{0, 0}, {0, 2}, {1, 1}}, 1.0};
    const auto mapping = oracle::brute_force_mcr(
        inst, mcr::CostModel::indicator({0, 1}), covering_grid(inst, 1.0));
    CHECK(mapping.total_cost == 0.0);
  }
}

TEST_CASE("oracles are deterministic across repeated calls") {
  const auto inst = io::generate_random(3, 3.0, 1.0, 77);
  const Grid grid = covering_grid(inst, 1.0);
  const int a = oracle::brute_force_min_steiner(inst, grid, 6);
  const int b = oracle::brute_force_min_steiner(inst, grid, 6);
  CHECK(a == b);
  const auto m1 =
      oracle::brute_force_mcr(inst, mcr::CostModel::euclidean(), grid);
  const auto m2 =
      oracle::brute_force_mcr(inst, mcr::CostModel::euclidean(), grid);
  CHECK(m1.total_cost == m2.total_cost);
  for (std::size_t v = 0; v < inst.nodes.size(); ++v) {
    CHECK(coincident(m1.targets[v], m2.targets[v]));
  }
}

TEST_CASE("brute_force_mcr enforces its assignment-space cap") {
  const auto inst = io::generate_random(5, 4.0, 1.0, 5);
  CHECK_THROWS_AS(oracle::brute_force_mcr(inst, mcr::CostModel::euclidean(),
                                          covering_grid(inst, 0.5)),
                  BudgetExceededError);
}
