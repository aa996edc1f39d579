// Command-line front end: instance generation, both solvers, the
// relocation-oracle reduction, feasibility checks, SVG rendering, and a
// seeded agreement campaign. Summary values go to stdout as single
// key=value lines; configuration echoes and diagnostics go to stderr.
//
// Exit codes: 0 success, 1 verification failed, 2 usage/parse error,
// 3 search budget or iteration cap exceeded.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "udr/disk_graph.hpp"
#include "udr/errors.hpp"
#include "udr/instance_io.hpp"
#include "udr/mcr_solver.hpp"
#include "udr/oracle.hpp"
#include "udr/reduction.hpp"
#include "udr/st_solver.hpp"

namespace {

using namespace udr;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

Grid solver_grid(const Instance& instance, double step) {
  return Grid::covering(instance.bounding_box().inflated(instance.range), step);
}

double effective_step(const Instance& instance, double requested) {
  return requested > 0.0 ? requested : instance.range / 2.0;
}

void echo_config(const std::string& text) { std::cerr << "# " << text << "\n"; }

std::string minimum_gap_report(const std::vector<Point>& points, double range) {
  Instance configuration{points, range};
  const auto blocks = components(induce(configuration));
  if (blocks.size() <= 1) return "";
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < blocks.size(); ++a) {
    for (std::size_t b = a + 1; b < blocks.size(); ++b) {
      for (int u : blocks[a]) {
        for (int v : blocks[b]) {
          gap = std::min(gap, distance(points[static_cast<std::size_t>(u)],
                                       points[static_cast<std::size_t>(v)]));
        }
      }
    }
  }
  return std::to_string(blocks.size()) + " components remain; smallest gap " +
         io::format_number(gap) + " exceeds range " + io::format_number(range);
}

int cmd_gen(int count, double box_side, double range, std::uint64_t seed,
            const std::string& out_path) {
  echo_config("gen n=" + std::to_string(count) +
              " L=" + io::format_number(box_side) +
              " r=" + io::format_number(range) +
              " seed=" + std::to_string(seed) + " out=" + out_path);
  const Instance instance = io::generate_random(count, box_side, range, seed);
  const std::string text = io::write_instance(instance);
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    io::save_text(text, out_path);
  }
  return kExitOk;
}

int cmd_solve_st(const std::string& in_path, const std::string& mode,
                 double grid_step, const std::string& out_path,
                 const SolverOptions& options) {
  const Instance instance = io::load_instance(in_path);
  const double step = effective_step(instance, grid_step);
  echo_config("solve-st in=" + in_path + " mode=" + mode +
              " grid-step=" + io::format_number(step) +
              " subset-cap=" + std::to_string(options.subset_cap) +
              " jobs=" + std::to_string(options.jobs));

  st::SteinerSolution solution;
  if (mode == "exact") {
    solution = st::solve_exact_grid(instance, solver_grid(instance, step), options);
  } else {
    solution = st::steinerized_mst(instance);
  }
  if (!out_path.empty()) {
    io::save_text(io::write_solution(solution), out_path);
  }
  std::printf("h=%d\n", solution.count());
  return kExitOk;
}

int cmd_solve_mcr(const std::string& in_path, const std::string& cost_name,
                  const std::string& mode, double grid_step,
                  const std::string& out_path, const SolverOptions& options) {
  const Instance instance = io::load_instance(in_path);
  const double step = effective_step(instance, grid_step);
  echo_config("solve-mcr in=" + in_path + " cost=" + cost_name +
              " mode=" + mode + " grid-step=" + io::format_number(step) +
              " assign-cap=" + std::to_string(options.assignment_cap));

  mcr::CostModel cost = mcr::CostModel::euclidean();
  if (cost_name == "indicator") {
    std::vector<int> ids(instance.nodes.size());
    std::iota(ids.begin(), ids.end(), 0);
    cost = mcr::CostModel::indicator(ids);
  }

  mcr::Mapping mapping;
  if (mode == "exact") {
    mapping = mcr::solve_exact_grid(instance, cost, solver_grid(instance, step),
                                    options);
  } else {
    mapping = mcr::solve_heuristic(instance, cost);
  }
  if (!out_path.empty()) {
    io::save_text(io::write_mapping(mapping), out_path);
  }
  std::printf("cost=%s\n", io::format_number(mapping.total_cost).c_str());
  return kExitOk;
}

int cmd_reduce(const std::string& in_path, double grid_step,
               const std::string& out_path, bool verbose,
               const SolverOptions& options) {
  const Instance instance = io::load_instance(in_path);
  const double step = effective_step(instance, grid_step);
  echo_config("reduce in=" + in_path + " grid-step=" + io::format_number(step) +
              " assign-cap=" + std::to_string(options.assignment_cap));

  const auto result =
      reduction::st_via_mcr(instance, solver_grid(instance, step), options);
  if (verbose) {
    for (const auto& entry : result.trace) {
      std::fprintf(stderr, "iter=%d aux=%d cost=%s\n", entry.iteration,
                   entry.auxiliary_count,
                   io::format_number(entry.total_cost).c_str());
    }
  }
  if (!out_path.empty()) {
    st::SteinerSolution as_solution;
    as_solution.steiner_points = result.placements;
    io::save_text(io::write_solution(as_solution), out_path);
  }
  std::printf("steiner_count=%d\n", result.steiner_count);
  return kExitOk;
}

int cmd_verify(const std::string& in_path, const std::string& solution_path) {
  const Instance instance = io::load_instance(in_path);
  const auto document = io::load_solution(solution_path);
  echo_config("verify in=" + in_path + " solution=" + solution_path);

  bool feasible = false;
  std::string gap_report;
  if (std::holds_alternative<st::SteinerSolution>(document)) {
    const auto& solution = std::get<st::SteinerSolution>(document);
    feasible = st::verify_solution(instance, solution);
    if (!feasible) {
      std::vector<Point> all = instance.nodes;
      all.insert(all.end(), solution.steiner_points.begin(),
                 solution.steiner_points.end());
      gap_report = minimum_gap_report(all, instance.range);
    }
  } else {
    const auto& mapping = std::get<mcr::Mapping>(document);
    if (mapping.targets.size() != instance.nodes.size()) {
      throw ParseError(1, "mapping covers " +
                              std::to_string(mapping.targets.size()) +
                              " nodes but the instance has " +
                              std::to_string(instance.nodes.size()));
    }
    feasible = mcr::verify_mapping(instance, mapping);
    if (!feasible) {
      gap_report = minimum_gap_report(mapping.targets, instance.range);
    }
  }
  std::printf("feasible=%s\n", feasible ? "true" : "false");
  if (!feasible) {
    std::cerr << "infeasible: " << gap_report << "\n";
    return kExitInfeasible;
  }
  return kExitOk;
}

int cmd_render(const std::string& in_path, const std::string& solution_path,
               const std::string& out_path) {
  const Instance instance = io::load_instance(in_path);
  echo_config("render in=" + in_path + " solution=" +
              (solution_path.empty() ? "<none>" : solution_path) +
              " out=" + out_path);
  std::string svg;
  if (solution_path.empty()) {
    svg = io::render_svg(instance);
  } else {
    const auto document = io::load_solution(solution_path);
    if (std::holds_alternative<st::SteinerSolution>(document)) {
      const auto& solution = std::get<st::SteinerSolution>(document);
      svg = io::render_svg(instance, &solution, nullptr);
    } else {
      const auto& mapping = std::get<mcr::Mapping>(document);
      svg = io::render_svg(instance, nullptr, &mapping);
    }
  }
  io::save_text(svg, out_path);
  return kExitOk;
}

int cmd_bench(int seeds, int count, double box_side, double range,
              double grid_step, const SolverOptions& options) {
  echo_config("bench seeds=" + std::to_string(seeds) +
              " n=" + std::to_string(count) +
              " L=" + io::format_number(box_side) +
              " r=" + io::format_number(range) + " grid-step=" +
              io::format_number(grid_step > 0.0 ? grid_step : range / 2.0));
  std::printf("seed,exact_h,mst_h,reduce_h,agree\n");
  for (int seed = 1; seed <= seeds; ++seed) {
    const Instance instance = io::generate_random(
        count, box_side, range, static_cast<std::uint64_t>(seed));
    const double step = effective_step(instance, grid_step);
    const Grid grid = solver_grid(instance, step);
    const auto exact = st::solve_exact_grid(instance, grid, options);
    const auto mst = st::steinerized_mst(instance);
    const auto reduced = reduction::st_via_mcr(instance, grid, options);
    const bool agree = exact.count() == reduced.steiner_count;
    std::printf("%d,%d,%d,%d,%s\n", seed, exact.count(), mst.count(),
                reduced.steiner_count, agree ? "true" : "false");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unit-disk network connectivity restoration toolkit"};
  app.require_subcommand(1);

  SolverOptions options;

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a seeded random instance");
  int gen_n = 5;
  double gen_box = 10.0;
  double gen_range = 1.0;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  gen->add_option("-n,--count", gen_n, "Number of nodes");
  gen->add_option("-L,--box-side", gen_box, "Side of the square region");
  gen->add_option("-r,--range", gen_range, "Communication range");
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("-o,--out", gen_out, "Output file ('-' for stdout)");

  // solve-st
  auto* solve_st = app.add_subcommand("solve-st", "Solve the Steiner-point problem");
  std::string st_in, st_mode = "exact", st_out;
  double st_step = 0.0;
  solve_st->add_option("-i,--instance", st_in, "Instance file")->required();
  solve_st->add_option("--mode", st_mode, "exact or mst")
      ->check(CLI::IsMember({"exact", "mst"}));
  solve_st->add_option("--grid-step", st_step, "Candidate grid step (default r/2)");
  solve_st->add_option("-o,--out", st_out, "Solution file");
  solve_st->add_option("--subset-cap", options.subset_cap,
                       "Subset budget per cardinality level");
  solve_st->add_option("--jobs", options.jobs, "Worker threads (default 1)");

  // solve-mcr
  auto* solve_mcr = app.add_subcommand("solve-mcr", "Solve the relocation problem");
  std::string mcr_in, mcr_cost = "euclidean", mcr_mode = "exact", mcr_out;
  double mcr_step = 0.0;
  solve_mcr->add_option("-i,--instance", mcr_in, "Instance file")->required();
  solve_mcr->add_option("--cost", mcr_cost, "indicator or euclidean")
      ->check(CLI::IsMember({"indicator", "euclidean"}));
  solve_mcr->add_option("--mode", mcr_mode, "exact or heuristic")
      ->check(CLI::IsMember({"exact", "heuristic"}));
  solve_mcr->add_option("--grid-step", mcr_step, "Target grid step (default r/2)");
  solve_mcr->add_option("-o,--out", mcr_out, "Mapping file");
  solve_mcr->add_option("--assign-cap", options.assignment_cap,
                        "Explored-state budget");

  // reduce
  auto* reduce = app.add_subcommand(
      "reduce", "Solve the Steiner problem through the relocation oracle");
  std::string red_in, red_out;
  double red_step = 0.0;
  bool red_verbose = false;
  reduce->add_option("-i,--instance", red_in, "Instance file")->required();
  reduce->add_option("--grid-step", red_step, "Grid step (default r/2)");
  reduce->add_option("-o,--out", red_out, "Write placements as a solution file");
  reduce->add_flag("--verbose", red_verbose, "Trace one line per iteration");
  reduce->add_option("--assign-cap", options.assignment_cap,
                     "Explored-state budget");

  // verify
  auto* verify = app.add_subcommand("verify", "Check a solution or mapping");
  std::string ver_in, ver_solution;
  verify->add_option("-i,--instance", ver_in, "Instance file")->required();
  verify->add_option("-s,--solution", ver_solution, "Solution or mapping file")
      ->required();

  // render
  auto* render = app.add_subcommand("render", "Draw an instance as SVG");
  std::string ren_in, ren_solution, ren_out;
  render->add_option("-i,--instance", ren_in, "Instance file")->required();
  render->add_option("-s,--solution", ren_solution,
                     "Optional solution or mapping file");
  render->add_option("-o,--out", ren_out, "Output SVG file")->required();

  // bench
  auto* bench = app.add_subcommand(
      "bench", "Seeded agreement campaign (CSV to stdout)");
  int bench_seeds = 10, bench_n = 3;
  double bench_box = 4.0, bench_range = 1.0, bench_step = 0.0;
  bench->add_option("--seeds", bench_seeds, "Number of seeds (1..N)");
  bench->add_option("-n,--count", bench_n, "Nodes per instance");
  bench->add_option("-L,--box-side", bench_box, "Side of the square region");
  bench->add_option("-r,--range", bench_range, "Communication range");
  bench->add_option("--grid-step", bench_step, "Grid step (default r/2)");
  bench->add_option("--subset-cap", options.subset_cap, "Subset budget");
  bench->add_option("--assign-cap", options.assignment_cap,
                    "Explored-state budget");
  bench->add_option("--jobs", options.jobs, "Worker threads (default 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      return cmd_gen(gen_n, gen_box, gen_range, gen_seed, gen_out);
    }
    if (solve_st->parsed()) {
      return cmd_solve_st(st_in, st_mode, st_step, st_out, options);
    }
    if (solve_mcr->parsed()) {
      return cmd_solve_mcr(mcr_in, mcr_cost, mcr_mode, mcr_step, mcr_out,
                           options);
    }
    if (reduce->parsed()) {
      return cmd_reduce(red_in, red_step, red_out, red_verbose, options);
    }
    if (verify->parsed()) {
      return cmd_verify(ver_in, ver_solution);
    }
    if (render->parsed()) {
      return cmd_render(ren_in, ren_solution, ren_out);
    }
    if (bench->parsed()) {
      return cmd_bench(bench_seeds, bench_n, bench_box, bench_range, bench_step,
                       options);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidParameterError& e) {
    std::cerr << "invalid parameter: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BudgetExceededError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const IterationCapError& e) {
    std::cerr << "iteration cap exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible within caps: " << e.what() << "\n";
    return kExitBudget;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
