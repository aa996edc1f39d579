// Acceptance suite: runs the release gate end to end and prints one
// PASS/FAIL line per criterion. Exits nonzero when any criterion fails.
//
//   1  reduction count == brute-force Steiner count, 50 seeded instances
//   2  loop exit: final indicator cost exactly 0, originals unmoved
//   3  reduction iterations within the covering bound
//   4  two-terminal closed form h = max(0, ceil(d/r) - 1)
//   5  solver/oracle agreement (Steiner count; relocation cost, both models)
//   6  every produced solution and mapping re-verifies as connected
//   7  euclidean two-node cost within [d-r, d-r + 2*step]
//   8  byte-identical CLI reruns and serialization round-trip

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "udr/disk_graph.hpp"
#include "udr/errors.hpp"
#include "udr/instance_io.hpp"
#include "udr/mcr_solver.hpp"
#include "udr/oracle.hpp"
#include "udr/reduction.hpp"
#include "udr/st_solver.hpp"

namespace {

using namespace udr;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Gate {
  int passed = 0;
  int failed = 0;

  void report(int criterion, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion,
                detail.c_str());
    (ok ? passed : failed) += 1;
  }
};

// Criterion 6 runs as a tally over every artifact the other criteria create.
struct FeasibilityLedger {
  long checks = 0;
  long failures = 0;

  void steiner(const Instance& inst, const st::SteinerSolution& sol) {
    ++checks;
    if (!st::verify_solution(inst, sol)) ++failures;
  }
  void mapping(const Instance& inst, const mcr::Mapping& map) {
    ++checks;
    if (!mcr::verify_mapping(inst, map)) ++failures;
  }
};

Grid covering_grid(const Instance& inst, double step) {
  return Grid::covering(inst.bounding_box().inflated(inst.range), step);
}

std::string slurp(const fs::path& path) {
  std::ifstream file(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

int run_tool(const std::string& args, const fs::path& sink) {
  const std::string command = std::string(UDR_TOOL_PATH) + " " + args + " > " +
                              sink.string() + " 2> /dev/null";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

int main() {
  Gate gate;
  FeasibilityLedger ledger;
  const double r = 1.0;

  // ------------------------------------------------------------------
  // Criteria 1-3: the 50-instance reduction campaign, L = 4r, step r/2.
  // ------------------------------------------------------------------
  {
    const double box_side = 4.0 * r;
    const int generation_bound =
        (static_cast<int>(std::floor(box_side / r)) + 1) *
        (static_cast<int>(std::floor(box_side / r)) + 1);

    int equal = 0;
    int clean_exits = 0;
    int within_bound = 0;
    int max_iterations = 0;
    const auto t0 = Clock::now();
    for (int seed = 1; seed <= 50; ++seed) {
      const int n = 2 + (seed % 3);
      const Instance inst = io::generate_random(n, box_side, r, seed);
      const Grid grid = covering_grid(inst, r / 2.0);
      const auto result = reduction::st_via_mcr(inst, grid);
      const int oracle_count = oracle::brute_force_min_steiner(
          inst, grid, result.steiner_count);
      if (oracle_count == result.steiner_count) ++equal;

      double max_move = 0.0;
      for (std::size_t v = 0; v < inst.nodes.size(); ++v) {
        max_move = std::max(
            max_move, distance(inst.nodes[v], result.last_mapping.targets[v]));
      }
      if (result.last_mapping.total_cost == 0.0 && max_move <= 1e-9) {
        ++clean_exits;
      }
      if (result.iterations <= generation_bound &&
          result.iterations <= reduction::iteration_bound(inst)) {
        ++within_bound;
      }
      max_iterations = std::max(max_iterations, result.iterations);

      st::SteinerSolution as_solution;
      as_solution.steiner_points = result.placements;
      ledger.steiner(inst, as_solution);
      ledger.mapping(result.final_instance, result.last_mapping);
    }
    const double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();

    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "reduction equals oracle on %d/50 instances in %.1f s (< 60 s)",
                  equal, elapsed);
    gate.report(1, equal == 50 && elapsed < 60.0, detail);
    std::snprintf(detail, sizeof(detail),
                  "loop exit clean (cost 0, originals unmoved) on %d/50",
                  clean_exits);
    gate.report(2, clean_exits == 50, detail);
    std::snprintf(detail, sizeof(detail),
                  "iterations within covering bound %d on %d/50 (max seen %d)",
                  generation_bound, within_bound, max_iterations);
    gate.report(3, within_bound == 50, detail);
  }

  // ------------------------------------------------------------------
  // Criterion 4: two-terminal closed form on segment-aligned grids.
  // ------------------------------------------------------------------
  {
    int ok = 0;
    int fast = 0;
    const std::vector<double> ratios = {0.5, 1.0, 1.5, 2.0, 2.5, 3.7};
    for (const double ratio : ratios) {
      const double d = ratio * r;
      const Instance inst{{{0, 0}, {d, 0}}, r};
      const int segments =
          std::max(1, static_cast<int>(std::ceil(d / r - kEps)));
      const double step = segments > 1 ? d / segments : r / 2.0;
      const int margin = static_cast<int>(std::ceil(r / step + kEps));
      const Grid grid({-margin * step, -margin * step}, step,
                      segments + 2 * margin + 1, 2 * margin + 1);
      const auto t0 = Clock::now();
      const auto sol = st::solve_exact_grid(inst, grid);
      const double elapsed =
          std::chrono::duration<double>(Clock::now() - t0).count();
      const int expected = std::max(0, static_cast<int>(std::ceil(d / r)) - 1);
      if (sol.count() == expected) ++ok;
      if (elapsed < 5.0) ++fast;
      ledger.steiner(inst, sol);
    }
    char detail[128];
    std::snprintf(detail, sizeof(detail),
                  "closed form h = max(0, ceil(d/r)-1) on %d/6 (all < 5 s: %s)",
                  ok, fast == 6 ? "yes" : "no");
    gate.report(4, ok == 6 && fast == 6, detail);
  }

  // ------------------------------------------------------------------
  // Criterion 5: solver/oracle agreement on 30 seeded instances.
  // ------------------------------------------------------------------
  {
    int agree = 0;
    for (int seed = 1; seed <= 30; ++seed) {
      const int n = 2 + (seed % 3);
      const Instance inst = io::generate_random(n, 2.0 * r, r, 1000 + seed);
      const double step = n == 4 ? r : r / 2.0;  // keeps the oracle in budget
      const Grid grid = covering_grid(inst, step);

      bool instance_ok = true;

      const auto st_solution = st::solve_exact_grid(inst, grid);
      ledger.steiner(inst, st_solution);
      if (oracle::brute_force_min_steiner(inst, grid,
                                          st_solution.count() + 1) !=
          st_solution.count()) {
        instance_ok = false;
      }

      std::vector<int> all_ids(inst.nodes.size());
      std::iota(all_ids.begin(), all_ids.end(), 0);
      const std::vector<mcr::CostModel> models = {
          mcr::CostModel::euclidean(), mcr::CostModel::indicator(all_ids)};
      for (const auto& cost : models) {
        const auto mine = mcr::solve_exact_grid(inst, cost, grid);
        const auto reference = oracle::brute_force_mcr(inst, cost, grid);
        ledger.mapping(inst, mine);
        ledger.mapping(inst, reference);
        if (std::fabs(mine.total_cost - reference.total_cost) > 1e-9) {
          instance_ok = false;
        }
      }
      if (instance_ok) ++agree;
    }
    char detail[96];
    std::snprintf(detail, sizeof(detail),
                  "exact solvers match both oracles on %d/30 instances", agree);
    gate.report(5, agree == 30, detail);
  }

  // ------------------------------------------------------------------
  // Criterion 7: euclidean relocation cost window for two-node instances.
  // ------------------------------------------------------------------
  {
    int ok = 0;
    int total = 0;
    for (const double d : {1.3 * r, 1.7 * r, 2.2 * r, 2.9 * r, 3.6 * r}) {
      for (const double step : {r / 2.0, r / 4.0}) {
        const Instance inst{{{0, 0}, {d, 0}}, r};
        const auto mapping = mcr::solve_exact_grid(
            inst, mcr::CostModel::euclidean(), covering_grid(inst, step));
        ledger.mapping(inst, mapping);
        ++total;
        if (mapping.total_cost >= d - r - 1e-9 &&
            mapping.total_cost <= d - r + 2.0 * step + 1e-9) {
          ++ok;
        }
      }
    }
    char detail[96];
    std::snprintf(detail, sizeof(detail),
                  "cost within [d-r, d-r+2*step] on %d/%d cases", ok, total);
    gate.report(7, ok == total, detail);
  }

  // A couple of heuristic artifacts so the feasibility tally also covers the
  // practical solver.
  {
    for (int seed = 1; seed <= 5; ++seed) {
      const Instance inst = io::generate_random(4, 6.0, r, 3000 + seed);
      ledger.mapping(inst,
                     mcr::solve_heuristic(inst, mcr::CostModel::euclidean()));
      ledger.steiner(inst, st::steinerized_mst(inst));
    }
  }

  // ------------------------------------------------------------------
  // Criterion 6: the feasibility tally across everything produced above.
  // ------------------------------------------------------------------
  {
    char detail[96];
    std::snprintf(detail, sizeof(detail),
                  "%ld/%ld produced artifacts re-verified connected",
                  ledger.checks - ledger.failures, ledger.checks);
    gate.report(6, ledger.failures == 0 && ledger.checks > 0, detail);
  }

  // ------------------------------------------------------------------
  // Criterion 8: reproducibility. Every CLI command is byte-identical when
  // re-run with identical flags, and serialization round-trips.
  // ------------------------------------------------------------------
  {
    std::string templ = (fs::temp_directory_path() / "udr_accept_XXXXXX").string();
    char* made = mkdtemp(templ.data());
    bool ok = made != nullptr;
    int compared = 0;
    if (ok) {
      const fs::path dir(made);
      const fs::path sink = dir / "sink.txt";
      const fs::path inst = dir / "case.inst";
      ok &= run_tool("gen -n 4 -L 4 -r 1 --seed 9 -o " + inst.string(), sink) == 0;

      struct Step {
        const char* name;
        std::string args;
        std::string output;
      };
      std::vector<Step> steps = {
          {"gen", "gen -n 4 -L 4 -r 1 --seed 9 -o ", "g.inst"},
          {"solve-st", "solve-st -i " + inst.string() + " --mode exact -o ",
           "st.sol"},
          {"solve-mcr",
           "solve-mcr -i " + inst.string() + " --cost indicator --mode exact -o ",
           "mcr.map"},
          {"reduce", "reduce -i " + inst.string() + " -o ", "red.sol"},
          {"render", "render -i " + inst.string() + " -o ", "draw.svg"},
      };
      for (const auto& step : steps) {
        const fs::path first = dir / ("run1_" + step.output);
        const fs::path second = dir / ("run2_" + step.output);
        ok &= run_tool(step.args + first.string(), sink) == 0;
        ok &= run_tool(step.args + second.string(), sink) == 0;
        const std::string a = slurp(first);
        ok &= !a.empty() && a == slurp(second);
        ++compared;
      }

      // Serialization round-trip identity within 1e-9.
      const Instance generated = io::load_instance(inst.string());
      const Instance back = io::parse_instance(io::write_instance(generated));
      for (std::size_t v = 0; v < generated.nodes.size(); ++v) {
        ok &= distance(generated.nodes[v], back.nodes[v]) <= 1e-9;
      }
      fs::remove_all(dir);
    }
    char detail[96];
    std::snprintf(detail, sizeof(detail),
                  "%d/5 commands byte-identical across reruns; round-trip ok",
                  compared);
    gate.report(8, ok, detail);
  }

  std::printf("%d/%d criteria passed\n", gate.passed, gate.passed + gate.failed);
  return gate.failed == 0 ? 0 : 1;
}
