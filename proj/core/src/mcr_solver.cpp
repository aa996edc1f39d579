#include "udr/mcr_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "relay_steiner.hpp"
#include "udr/errors.hpp"
#include "udr/st_solver.hpp"

namespace udr {
namespace mcr {

CostModel CostModel::indicator(std::vector<int> original_ids) {
  CostModel model;
  model.kind_ = CostKind::kIndicatorOriginalMoved;
  std::sort(original_ids.begin(), original_ids.end());
  original_ids.erase(std::unique(original_ids.begin(), original_ids.end()),
                     original_ids.end());
  model.original_ids_ = std::move(original_ids);
  return model;
}

CostModel CostModel::euclidean() {
  CostModel model;
  model.kind_ = CostKind::kEuclideanDistance;
  return model;
}

CostModel CostModel::per_node_table(std::vector<double> move_charges) {
  CostModel model;
  model.kind_ = CostKind::kPerNodeTable;
  model.move_charges_ = std::move(move_charges);
  return model;
}

double CostModel::cost(const Instance& instance, int id,
                       const Point& target) const {
  const Point& from = instance.nodes[static_cast<std::size_t>(id)];
  switch (kind_) {
    case CostKind::kEuclideanDistance:
      return distance(from, target);
    case CostKind::kIndicatorOriginalMoved:
    case CostKind::kPerNodeTable:
      return coincident(from, target) ? 0.0 : move_charge(id);
  }
  return 0.0;
}

double CostModel::move_charge(int id) const {
  switch (kind_) {
    case CostKind::kIndicatorOriginalMoved:
      return std::binary_search(original_ids_.begin(), original_ids_.end(), id)
                 ? 1.0
                 : 0.0;
    case CostKind::kPerNodeTable:
      return id < static_cast<int>(move_charges_.size())
                 ? move_charges_[static_cast<std::size_t>(id)]
                 : 0.0;
    case CostKind::kEuclideanDistance:
      break;
  }
  throw InvalidParameterError("move_charge is undefined for euclidean cost");
}

void CostModel::validate(const Instance& instance) const {
  const int n = static_cast<int>(instance.nodes.size());
  for (int id : original_ids_) {
    if (id < 0 || id >= n) {
      throw InvalidParameterError("original set references unknown node id " +
                                  std::to_string(id));
    }
  }
  if (kind_ == CostKind::kPerNodeTable) {
    if (static_cast<int>(move_charges_.size()) != n) {
      throw InvalidParameterError("move-charge table must cover every node");
    }
    for (double c : move_charges_) {
      if (!(c >= 0.0) || !std::isfinite(c)) {
        throw InvalidParameterError("move charges must be nonnegative and finite");
      }
    }
  }
}

double total_cost(const Instance& instance, const CostModel& cost,
                  const Mapping& mapping) {
  if (mapping.targets.size() != instance.nodes.size()) {
    throw InvalidParameterError("mapping must assign a target to every node");
  }
  double sum = 0.0;
  for (int v = 0; v < static_cast<int>(instance.nodes.size()); ++v) {
    sum += cost.cost(instance, v, mapping.targets[static_cast<std::size_t>(v)]);
  }
  return sum;
}

bool verify_mapping(const Instance& instance, const Mapping& mapping) {
  if (mapping.targets.size() != instance.nodes.size()) return false;
  return points_connected(mapping.targets, instance.range);
}

namespace {

// Shared candidate bookkeeping. The master list holds the grid points in
// enumeration order followed by every node position that is not already a
// grid point, in node-id order. A node's own candidate order starts with its
// current position so that "stay put" wins all ties it is allowed to win.
struct CandidateSpace {
  std::vector<Point> points;      // master list
  std::vector<int> identity_of;   // node id -> index into points

  CandidateSpace(const Instance& instance, const Grid& grid) {
    points = grid.points();
    identity_of.resize(instance.nodes.size());
    for (std::size_t v = 0; v < instance.nodes.size(); ++v) {
      const Point& pos = instance.nodes[v];
      int found = -1;
      for (std::size_t c = 0; c < points.size(); ++c) {
        if (coincident(points[c], pos)) {
          found = static_cast<int>(c);
          break;
        }
      }
      if (found < 0) {
        found = static_cast<int>(points.size());
        points.push_back(pos);
      }
      identity_of[v] = found;
    }
  }

  int size() const { return static_cast<int>(points.size()); }

  // Candidate indices in node v's tie-break order.
  std::vector<int> order_for(int v) const {
    std::vector<int> order;
    order.reserve(points.size());
    order.push_back(identity_of[static_cast<std::size_t>(v)]);
    for (int c = 0; c < size(); ++c) {
      if (c != order.front()) order.push_back(c);
    }
    return order;
  }
};

struct BudgetCounter {
  std::uint64_t used = 0;
  std::uint64_t cap = 0;

  void charge(std::uint64_t amount) {
    used += amount;
    if (used > cap) {
      throw BudgetExceededError(
          "relocation search exceeded its cap of " + std::to_string(cap) +
          " explored states");
    }
  }
};

// ---------------------------------------------------------------------------
// Position-independent charges (indicator / per-node table).
//
// Moving a charged node decouples its cost from its destination, so a moved
// node is interchangeable with a free node: both become relays the search
// may park anywhere. The optimum is therefore
//
//   min over mover sets W:  sum of charges(W)
//   s.t. the identities of the unmoved charged nodes can be connected with
//        at most |W| + (#free nodes) relay points from the candidate set,
//
// and the relay feasibility question is solved exactly by RelaySolver.
// ---------------------------------------------------------------------------

class ChargeModelSearch {
 public:
  ChargeModelSearch(const Instance& instance, const CostModel& cost,
                    const CandidateSpace& space, BudgetCounter& budget)
      : instance_(instance), space_(space), budget_(budget) {
    const int n = static_cast<int>(instance.nodes.size());
    charges_.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      charges_[static_cast<std::size_t>(v)] = cost.move_charge(v);
    }
  }

  Mapping solve() {
    const double best = optimal_cost();
    return reconstruct(best);
  }

 private:
  const Instance& instance_;
  const CandidateSpace& space_;
  BudgetCounter& budget_;
  std::vector<double> charges_;
  // RelaySolver results keyed by the sorted candidate indices of the
  // terminal set; entries are reused heavily across reconstruction steps.
  std::map<std::vector<int>, int> relay_cache_;

  bool charged(int v) const { return charges_[static_cast<std::size_t>(v)] > 0.0; }

  int relay_pool_size(const std::vector<int>& suffix_ids,
                      const std::vector<int>& movers) const {
    int pool = static_cast<int>(movers.size());
    for (int v : suffix_ids) {
      if (!charged(v)) ++pool;
    }
    return pool;
  }

  int min_relays_for(std::vector<int> terminal_candidates) {
    std::sort(terminal_candidates.begin(), terminal_candidates.end());
    terminal_candidates.erase(
        std::unique(terminal_candidates.begin(), terminal_candidates.end()),
        terminal_candidates.end());
    auto it = relay_cache_.find(terminal_candidates);
    if (it != relay_cache_.end()) return it->second;

    std::vector<Point> terminals;
    terminals.reserve(terminal_candidates.size());
    for (int c : terminal_candidates) {
      terminals.push_back(space_.points[static_cast<std::size_t>(c)]);
    }
    detail::RelaySolver solver(terminals, space_.points, instance_.range);
    budget_.charge(1 + solver.work() / 1024);
    relay_cache_.emplace(std::move(terminal_candidates), solver.min_relays());
    return solver.min_relays();
  }

  // Enumerate mover subsets of `eligible` (charged suffix nodes) whose total
  // charge stays within `budget`, invoking fn(movers, charge). Subsets are
  // visited smallest-charge-prefix first via plain DFS; order does not
  // matter to the callers.
  template <typename Fn>
  void for_each_mover_set(const std::vector<int>& eligible, double budget,
                          Fn&& fn) {
    std::vector<int> movers;
    enumerate_movers(eligible, 0, budget, movers, fn);
  }

  template <typename Fn>
  void enumerate_movers(const std::vector<int>& eligible, std::size_t from,
                        double budget, std::vector<int>& movers, Fn&& fn) {
    fn(movers);
    for (std::size_t i = from; i < eligible.size(); ++i) {
      const double charge = charges_[static_cast<std::size_t>(eligible[i])];
      if (charge > budget + kEps) continue;
      movers.push_back(eligible[i]);
      enumerate_movers(eligible, i + 1, budget - charge, movers, fn);
      movers.pop_back();
    }
  }

  double mover_total(const std::vector<int>& movers) const {
    double sum = 0.0;
    for (int v : movers) sum += charges_[static_cast<std::size_t>(v)];
    return sum;
  }

  double optimal_cost() {
    const int n = static_cast<int>(instance_.nodes.size());
    std::vector<int> charged_ids;
    std::vector<int> all_ids(static_cast<std::size_t>(n));
    std::iota(all_ids.begin(), all_ids.end(), 0);
    for (int v = 0; v < n; ++v) {
      if (charged(v)) charged_ids.push_back(v);
    }

    // Upper bound: everything stacks on one point, so every charged node off
    // that point pays its charge.
    double best = 0.0;
    for (int v : charged_ids) best += charges_[static_cast<std::size_t>(v)];

    for_each_mover_set(charged_ids, best, [&](const std::vector<int>& movers) {
      budget_.charge(1);
      const double cost = mover_total(movers);
      if (cost >= best - kEps && cost > kEps) return;
      std::vector<int> terminals;
      for (int v : charged_ids) {
        if (!std::binary_search(movers.begin(), movers.end(), v)) {
          terminals.push_back(space_.identity_of[static_cast<std::size_t>(v)]);
        }
      }
      const int pool = relay_pool_size(all_ids, movers);
      if (min_relays_for(std::move(terminals)) <= pool) {
        best = std::min(best, cost);
      }
    });
    return best;
  }

  // Can the nodes in `suffix` complete the assignment within `budget` extra
  // charge, given the prefix pinned at `fixed_terminals`?
  bool suffix_feasible(const std::vector<int>& fixed_terminals,
                       const std::vector<int>& suffix, double budget) {
    std::vector<int> eligible;
    for (int v : suffix) {
      if (charged(v)) eligible.push_back(v);
    }
    bool ok = false;
    for_each_mover_set(eligible, budget, [&](const std::vector<int>& movers) {
      if (ok) return;
      budget_.charge(1);
      std::vector<int> terminals = fixed_terminals;
      for (int v : eligible) {
        if (!std::binary_search(movers.begin(), movers.end(), v)) {
          terminals.push_back(space_.identity_of[static_cast<std::size_t>(v)]);
        }
      }
      if (min_relays_for(std::move(terminals)) <=
          relay_pool_size(suffix, movers)) {
        ok = true;
      }
    });
    return ok;
  }

  Mapping reconstruct(double optimum) {
    const int n = static_cast<int>(instance_.nodes.size());
    Mapping mapping;
    mapping.targets.resize(static_cast<std::size_t>(n));
    std::vector<int> fixed_terminals;
    double spent = 0.0;

    for (int v = 0; v < n; ++v) {
      std::vector<int> suffix;
      for (int u = v + 1; u < n; ++u) suffix.push_back(u);

      int chosen = -1;
      for (int candidate : space_.order_for(v)) {
        budget_.charge(1);
        const double step =
            candidate == space_.identity_of[static_cast<std::size_t>(v)]
                ? 0.0
                : charges_[static_cast<std::size_t>(v)];
        if (spent + step > optimum + kEps) continue;
        std::vector<int> terminals = fixed_terminals;
        terminals.push_back(candidate);
        if (suffix_feasible(terminals, suffix, optimum - spent - step)) {
          chosen = candidate;
          spent += step;
          break;
        }
      }
      if (chosen < 0) {
        throw Error("internal error: optimal relocation not reconstructible");
      }
      fixed_terminals.push_back(chosen);
      mapping.targets[static_cast<std::size_t>(v)] =
          space_.points[static_cast<std::size_t>(chosen)];
    }
    mapping.total_cost = spent;
    return mapping;
  }
};

// ---------------------------------------------------------------------------
// Position-dependent costs (euclidean): depth-first branch and bound over
// assignments in tie-break order, pruned by the best known cost. Sound at
// the scales this model is used at; the charge-model path above carries the
// heavy reduction workload.
// ---------------------------------------------------------------------------

class PositionalSearch {
 public:
  PositionalSearch(const Instance& instance, const CostModel& cost,
                   const CandidateSpace& space, BudgetCounter& budget)
      : instance_(instance), cost_(cost), space_(space), budget_(budget) {
    const int n = static_cast<int>(instance.nodes.size());
    candidate_cost_.assign(static_cast<std::size_t>(n), {});
    order_.assign(static_cast<std::size_t>(n), {});
    for (int v = 0; v < n; ++v) {
      order_[static_cast<std::size_t>(v)] = space.order_for(v);
      auto& row = candidate_cost_[static_cast<std::size_t>(v)];
      row.resize(space.points.size());
      for (int c = 0; c < space.size(); ++c) {
        row[static_cast<std::size_t>(c)] =
            cost.cost(instance, v, space.points[static_cast<std::size_t>(c)]);
      }
    }
    adjacency_.assign(
        static_cast<std::size_t>(space.size()) * space.size(), 0);
    for (int a = 0; a < space.size(); ++a) {
      for (int b = 0; b < space.size(); ++b) {
        adjacency_[static_cast<std::size_t>(a) * space.size() + b] =
            within_range(space.points[static_cast<std::size_t>(a)],
                         space.points[static_cast<std::size_t>(b)],
                         instance.range)
                ? 1
                : 0;
      }
    }
  }

  Mapping solve() {
    const int n = static_cast<int>(instance_.nodes.size());
    assignment_.assign(static_cast<std::size_t>(n), -1);

    // Stack-everything upper bound keeps the search from wandering.
    incumbent_cost_ = std::numeric_limits<double>::infinity();
    for (int c = 0; c < space_.size(); ++c) {
      double stack = 0.0;
      for (int v = 0; v < n; ++v) {
        stack += candidate_cost_[static_cast<std::size_t>(v)]
                                [static_cast<std::size_t>(c)];
      }
      incumbent_cost_ = std::min(incumbent_cost_, stack);
    }

    descend(0, 0.0);
    if (incumbent_.empty()) {
      throw Error("internal error: no feasible relocation found");
    }
    Mapping mapping;
    mapping.targets.reserve(static_cast<std::size_t>(n));
    for (int c : incumbent_) {
      mapping.targets.push_back(space_.points[static_cast<std::size_t>(c)]);
    }
    mapping.total_cost = incumbent_cost_;
    return mapping;
  }

 private:
  void descend(int v, double spent) {
    const int n = static_cast<int>(instance_.nodes.size());
    if (v == n) {
      if (!connected()) return;
      if (spent < incumbent_cost_ - kEps ||
          (incumbent_.empty() && spent <= incumbent_cost_ + kEps)) {
        incumbent_cost_ = std::min(incumbent_cost_, spent);
        incumbent_ = assignment_;
      }
      return;
    }
    for (int candidate : order_[static_cast<std::size_t>(v)]) {
      budget_.charge(1);
      const double next = spent + candidate_cost_[static_cast<std::size_t>(v)]
                                                 [static_cast<std::size_t>(candidate)];
      // Unvisited assignments are lexicographically later, so once an
      // incumbent exists, matching its cost cannot improve the answer.
      if (next > incumbent_cost_ + kEps) continue;
      if (!incumbent_.empty() && next >= incumbent_cost_ - kEps) continue;
      assignment_[static_cast<std::size_t>(v)] = candidate;
      descend(v + 1, next);
      assignment_[static_cast<std::size_t>(v)] = -1;
    }
  }

  bool connected() const {
    const int n = static_cast<int>(assignment_.size());
    if (n <= 1) return true;
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x) {
        parent[static_cast<std::size_t>(x)] =
            parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        x = parent[static_cast<std::size_t>(x)];
      }
      return x;
    };
    int blocks = n;
    for (int u = 0; u < n && blocks > 1; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (adjacency_[static_cast<std::size_t>(assignment_[static_cast<std::size_t>(u)]) *
                           space_.size() +
                       assignment_[static_cast<std::size_t>(v)]]) {
          const int a = find(u);
          const int b = find(v);
          if (a != b) {
            parent[static_cast<std::size_t>(b)] = a;
            --blocks;
          }
        }
      }
    }
    return blocks == 1;
  }

  const Instance& instance_;
  const CostModel& cost_;
  const CandidateSpace& space_;
  BudgetCounter& budget_;
  std::vector<std::vector<double>> candidate_cost_;
  std::vector<std::vector<int>> order_;
  std::vector<char> adjacency_;
  std::vector<int> assignment_;
  std::vector<int> incumbent_;
  double incumbent_cost_ = 0.0;
};

}  // namespace

Mapping solve_exact_grid(const Instance& instance, const CostModel& cost,
                         const Grid& candidates, const SolverOptions& options) {
  instance.validate();
  cost.validate(instance);
  if (instance.nodes.empty()) {
    return Mapping{};
  }

  CandidateSpace space(instance, candidates);
  BudgetCounter budget{0, options.assignment_cap};

  Mapping mapping;
  if (cost.position_independent()) {
    ChargeModelSearch search(instance, cost, space, budget);
    mapping = search.solve();
  } else {
    PositionalSearch search(instance, cost, space, budget);
    mapping = search.solve();
  }
  mapping.total_cost = total_cost(instance, cost, mapping);
  return mapping;
}

Mapping solve_heuristic(const Instance& instance, const CostModel& cost) {
  instance.validate();
  cost.validate(instance);
  const int n = static_cast<int>(instance.nodes.size());
  if (n < 1) {
    throw InvalidParameterError("instance must contain at least one node");
  }

  Mapping identity;
  identity.targets = instance.nodes;
  identity.total_cost = 0.0;
  if (points_connected(instance.nodes, instance.range)) {
    return identity;
  }

  std::vector<int> free_ids;
  std::vector<int> anchored_ids;
  for (int v = 0; v < n; ++v) {
    const bool is_free =
        cost.position_independent() && cost.move_charge(v) <= 0.0;
    (is_free ? free_ids : anchored_ids).push_back(v);
  }

  if (!free_ids.empty() && !anchored_ids.empty()) {
    // Relay spots come from the steinerized MST of the nodes that stay.
    Instance anchored;
    anchored.range = instance.range;
    for (int v : anchored_ids) {
      anchored.nodes.push_back(instance.nodes[static_cast<std::size_t>(v)]);
    }
    const auto tree = st::steinerized_mst(anchored);
    if (static_cast<int>(tree.steiner_points.size()) <=
        static_cast<int>(free_ids.size())) {
      Mapping mapping;
      mapping.targets = instance.nodes;
      std::vector<char> used(free_ids.size(), 0);
      for (const Point& spot : tree.steiner_points) {
        int pick = -1;
        double pick_dist = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < free_ids.size(); ++i) {
          if (used[i]) continue;
          const double d = distance(
              instance.nodes[static_cast<std::size_t>(free_ids[i])], spot);
          if (d < pick_dist - kEps) {
            pick = static_cast<int>(i);
            pick_dist = d;
          }
        }
        used[static_cast<std::size_t>(pick)] = 1;
        mapping.targets[static_cast<std::size_t>(free_ids[static_cast<std::size_t>(pick)])] =
            spot;
      }
      // Surplus free nodes park on the nearest point of the final structure.
      std::vector<Point> structure;
      for (int v : anchored_ids) {
        structure.push_back(instance.nodes[static_cast<std::size_t>(v)]);
      }
      structure.insert(structure.end(), tree.steiner_points.begin(),
                       tree.steiner_points.end());
      for (std::size_t i = 0; i < free_ids.size(); ++i) {
        if (used[i]) continue;
        const Point& from =
            instance.nodes[static_cast<std::size_t>(free_ids[i])];
        Point best = structure.front();
        double best_dist = distance(from, best);
        for (const Point& p : structure) {
          const double d = distance(from, p);
          if (d < best_dist - kEps) {
            best = p;
            best_dist = d;
          }
        }
        mapping.targets[static_cast<std::size_t>(free_ids[i])] = best;
      }
      mapping.total_cost = total_cost(instance, cost, mapping);
      if (verify_mapping(instance, mapping)) {
        return mapping;
      }
    }
  } else if (anchored_ids.empty()) {
    // Everything is free: stack on the first node.
    Mapping mapping;
    mapping.targets.assign(static_cast<std::size_t>(n), instance.nodes[0]);
    mapping.total_cost = total_cost(instance, cost, mapping);
    return mapping;
  }

  // Fallback: contract everything toward the centroid until connected.
  Point centroid{0.0, 0.0};
  for (const Point& p : instance.nodes) {
    centroid.x += p.x;
    centroid.y += p.y;
  }
  centroid.x /= n;
  centroid.y /= n;

  Mapping mapping;
  mapping.targets = instance.nodes;
  const double shrink = 0.9;  // each round moves 10% of the way in
  for (int round = 0; round < 10'000; ++round) {
    if (points_connected(mapping.targets, instance.range)) {
      mapping.total_cost = total_cost(instance, cost, mapping);
      return mapping;
    }
    for (Point& p : mapping.targets) {
      p.x = centroid.x + shrink * (p.x - centroid.x);
      p.y = centroid.y + shrink * (p.y - centroid.y);
    }
  }
  // Distances shrink geometrically, so this point is unreachable for finite
  // inputs; stack everything as a last resort.
  mapping.targets.assign(static_cast<std::size_t>(n), centroid);
  mapping.total_cost = total_cost(instance, cost, mapping);
  return mapping;
}

}  // namespace mcr
}  // namespace udr
