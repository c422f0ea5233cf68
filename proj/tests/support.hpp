#pragma once

// Reference implementations used only by the tests. None of these share code
// paths with the library algorithms they check.

#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "pbsched/pbsched.hpp"

namespace pbsched::reference {

// Kuhn's algorithm, one augmenting path per job, on the graph with every slot
// expanded into `multiplicity` separate vertices.
inline std::size_t naive_max_matching(const BipartiteGraph& g) {
  std::vector<std::size_t> first_copy;
  std::size_t copies = 0;
  for (const auto& s : g.slots()) {
    first_copy.push_back(copies);
    copies += s.multiplicity;
  }
  std::vector<std::vector<std::size_t>> adj(g.x_count());
  for (const auto& e : g.edges())
    for (std::size_t c = 0; c < g.slots()[e.slot].multiplicity; ++c) adj[e.x].push_back(first_copy[e.slot] + c);

  std::vector<std::optional<std::size_t>> owner(copies);
  std::size_t size = 0;
  for (std::size_t x = 0; x < g.x_count(); ++x) {
    std::vector<bool> seen(copies, false);
    std::function<bool(std::size_t)> augment = [&](std::size_t u) {
      for (auto y : adj[u]) {
        if (seen[y]) continue;
        seen[y] = true;
        if (!owner[y] || augment(*owner[y])) {
          owner[y] = u;
          return true;
        }
      }
      return false;
    };
    if (augment(x)) ++size;
  }
  return size;
}

// Minimum total cost over every X-saturating assignment, by enumeration.
inline std::optional<Rat> exhaustive_min_cost(const BipartiteGraph& g) {
  std::vector<std::vector<const Edge*>> by_x(g.x_count());
  for (const auto& e : g.edges()) by_x[e.x].push_back(&e);
  std::vector<std::size_t> used(g.slots().size(), 0);
  std::optional<Rat> best;
  std::function<void(std::size_t, Rat)> go = [&](std::size_t x, Rat acc) {
    if (x == g.x_count()) {
      if (!best || acc < *best) best = acc;
      return;
    }
    for (const Edge* e : by_x[x]) {
      if (used[e->slot] >= g.slots()[e->slot].multiplicity) continue;
      ++used[e->slot];
      go(x + 1, acc + *e->cost);
      --used[e->slot];
    }
  };
  go(0, Rat(0));
  return best;
}

// Bellman-Ford on the residual network of a saturating matching. Returns true
// if some cycle of negative cost exists, i.e. the matching is not optimal.
inline bool has_negative_residual_cycle(const BipartiteGraph& g, const MatchingResult& result) {
  const std::size_t n = g.x_count();
  const std::size_t s = g.slots().size();
  const std::size_t sink = n + s;
  std::vector<std::optional<std::size_t>> matched(n);
  std::vector<std::size_t> load(s, 0);
  for (const auto& p : result.pairs) {
    matched[p.job] = p.slot;
    ++load[p.slot];
  }
  struct Arc { std::size_t from, to; Rat cost; };
  std::vector<Arc> arcs;
  for (const auto& e : g.edges()) {
    if (matched[e.x] == e.slot) arcs.push_back({n + e.slot, e.x, -*e.cost});
    else arcs.push_back({e.x, n + e.slot, *e.cost});
  }
  for (std::size_t y = 0; y < s; ++y) {
    if (load[y] < g.slots()[y].multiplicity) arcs.push_back({n + y, sink, Rat(0)});
    if (load[y] > 0) arcs.push_back({sink, n + y, Rat(0)});
  }
  std::vector<Rat> dist(n + s + 1, Rat(0));  // virtual source at distance 0 to all
  for (std::size_t round = 0; round <= n + s + 1; ++round) {
    bool changed = false;
    for (const auto& a : arcs) {
      if (dist[a.from] + a.cost < dist[a.to]) {
        dist[a.to] = dist[a.from] + a.cost;
        changed = true;
      }
    }
    if (!changed) return false;
  }
  return true;
}

// Tree-hierarchical check by trying every parent array on m machines.
inline bool brute_tree_hierarchical(const std::vector<std::vector<MachineId>>& sets, std::size_t m) {
  std::vector<std::size_t> parent(m, 0);  // value m means "root"
  std::function<bool(std::size_t)> assign = [&](std::size_t node) -> bool {
    if (node == m) {
      std::size_t roots = 0;
      for (auto p : parent) roots += p == m;
      if (roots != 1) return false;
      std::vector<std::vector<MachineId>> paths(m);
      for (MachineId a = 0; a < m; ++a) {
        MachineId cur = a;
        for (std::size_t steps = 0; steps <= m; ++steps) {
          paths[a].push_back(cur);
          if (parent[cur] == m) break;
          cur = parent[cur];
          if (steps == m) return false;  // cycle
        }
        if (paths[a].size() > m) return false;
        std::sort(paths[a].begin(), paths[a].end());
        if (std::adjacent_find(paths[a].begin(), paths[a].end()) != paths[a].end()) return false;
      }
      for (const auto& s : sets)
        if (std::find(paths.begin(), paths.end(), s) == paths.end()) return false;
      return true;
    }
    for (std::size_t p = 0; p <= m; ++p) {
      if (p == node) continue;
      parent[node] = p;
      if (assign(node + 1)) return true;
    }
    return false;
  };
  return assign(0);
}

inline BipartiteGraph random_graph(std::mt19937_64& rng, std::size_t nx, std::size_t ny, double density,
                                   bool costed, std::size_t max_mult = 3, long max_cost = 9) {
  std::uniform_int_distribution<std::size_t> mult(1, max_mult);
  std::uniform_int_distribution<long> cost(0, max_cost);
  std::bernoulli_distribution keep(density);
  std::vector<Slot> slots;
  for (std::size_t y = 0; y < ny; ++y) slots.push_back({y % 4, y / 4 + 1, mult(rng)});
  std::vector<Edge> edges;
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y)
      if (keep(rng)) edges.push_back({x, y, costed ? std::optional<Rat>(Rat(cost(rng))) : std::nullopt});
  return BipartiteGraph(nx, std::move(slots), std::move(edges));
}

// The random distribution shared by the property and acceptance suites:
// n in [1,6], m in [1,3], K in [1,3], v in {1, 3/2, 2}.
inline Instance random_small_instance(std::uint64_t seed, bool with_releases, std::size_t max_n = 6,
                                      std::size_t max_m = 3) {
  std::mt19937_64 rng(seed * 7919 + 17);
  std::uniform_int_distribution<std::size_t> pick_n(1, max_n), pick_m(1, max_m);
  GenParams params;
  params.p_min = 1;
  params.p_max = 3;
  params.release_max = with_releases ? Rat(3) : Rat(0);
  params.release_step = Rat(1, 2);
  const std::size_t n = pick_n(rng);
  const std::size_t m = pick_m(rng);
  return generate_instance(seed, n, m, SetStructure::arbitrary, params);
}

}  // namespace pbsched::reference
