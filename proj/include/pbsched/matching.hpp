#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <queue>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "pbsched/error.hpp"
#include "pbsched/model.hpp"

namespace pbsched {

// A batch on a machine, standing for `multiplicity` interchangeable job
// positions (the batch capacity, clamped to n).
struct Slot {
  MachineId machine = 0;
  std::size_t k = 1;
  std::size_t multiplicity = 1;
  friend bool operator==(const Slot&, const Slot&) = default;
};

struct Edge {
  JobId x = 0;
  std::size_t slot = 0;
  std::optional<Rat> cost;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Bipartite graph between job vertices X and batch slots Y.
class BipartiteGraph {
 public:
  BipartiteGraph(std::size_t x_count, std::vector<Slot> slots, std::vector<Edge> edges)
      : x_count_(x_count), slots_(std::move(slots)), edges_(std::move(edges)) {
    for (const auto& s : slots_)
      if (s.multiplicity < 1) throw std::invalid_argument("slot multiplicity must be >= 1");
    std::set<std::pair<JobId, std::size_t>> seen;
    for (const auto& e : edges_) {
      if (e.x >= x_count_ || e.slot >= slots_.size()) throw std::invalid_argument("edge endpoint out of range");
      if (!seen.emplace(e.x, e.slot).second) throw std::invalid_argument("duplicate edge");
      if (e.cost) {
        if (*e.cost < 0) throw std::invalid_argument("edge cost must be >= 0");
        max_cost_ = max(max_cost_, *e.cost);
      }
    }
  }

  std::size_t x_count() const { return x_count_; }
  const std::vector<Slot>& slots() const { return slots_; }
  const std::vector<Edge>& edges() const { return edges_; }
  // Largest edge cost (the coefficient C); 0 when uncosted.
  const Rat& max_cost() const { return max_cost_; }

  std::size_t y_capacity() const {
    std::size_t total = 0;
    for (const auto& s : slots_) total += s.multiplicity;
    return total;
  }

  bool fully_costed() const {
    return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.cost.has_value(); });
  }

  // Edge indices per job, ordered by (machine, batch index) of the slot.
  std::vector<std::vector<std::size_t>> adjacency() const {
    std::vector<std::vector<std::size_t>> adj(x_count_);
    for (std::size_t e = 0; e < edges_.size(); ++e) adj[edges_[e].x].push_back(e);
    for (auto& list : adj)
      std::sort(list.begin(), list.end(), [&](std::size_t a, std::size_t b) {
        const auto& sa = slots_[edges_[a].slot];
        const auto& sb = slots_[edges_[b].slot];
        return std::tie(sa.machine, sa.k, edges_[a].slot) < std::tie(sb.machine, sb.k, edges_[b].slot);
      });
    return adj;
  }

 private:
  std::size_t x_count_;
  std::vector<Slot> slots_;
  std::vector<Edge> edges_;
  Rat max_cost_{0};
};

struct MatchedPair {
  JobId job = 0;
  MachineId machine = 0;
  std::size_t k = 1;
  std::size_t slot = 0;
  friend auto operator<=>(const MatchedPair&, const MatchedPair&) = default;
};

struct MatchingResult {
  std::vector<MatchedPair> pairs;  // ascending job id
  std::size_t cardinality = 0;
  Rat total_cost;
};

namespace detail {

inline MatchingResult collect(const BipartiteGraph& g, const std::vector<std::optional<std::size_t>>& edge_of) {
  MatchingResult out;
  for (JobId x = 0; x < g.x_count(); ++x) {
    if (!edge_of[x]) continue;
    const auto& e = g.edges()[*edge_of[x]];
    const auto& s = g.slots()[e.slot];
    out.pairs.push_back({x, s.machine, s.k, e.slot});
    if (e.cost) out.total_cost += *e.cost;
  }
  out.cardinality = out.pairs.size();
  return out;
}

}  // namespace detail

// Maximum-cardinality matching honouring slot multiplicities, by
// Hopcroft-Karp phases (BFS layering from all free jobs, then vertex-disjoint
// shortest augmenting paths by DFS). Free jobs are served in ascending id and
// adjacency in (machine, batch) order, so the result is deterministic.
inline MatchingResult max_cardinality_matching(const BipartiteGraph& g) {
  const std::size_t n = g.x_count();
  const auto adj = g.adjacency();
  const auto& edges = g.edges();
  const auto& slots = g.slots();
  constexpr std::size_t inf = std::numeric_limits<std::size_t>::max();

  std::vector<std::optional<std::size_t>> edge_of(n);  // matched edge per job
  std::vector<std::size_t> load(slots.size(), 0);
  std::vector<std::vector<JobId>> occupants(slots.size());
  std::vector<std::size_t> dist(n);
  std::vector<std::size_t> cursor(n);

  auto place = [&](JobId x, std::size_t e) {
    if (edge_of[x]) {
      std::size_t old = edges[*edge_of[x]].slot;
      auto& occ = occupants[old];
      occ.erase(std::find(occ.begin(), occ.end(), x));
      --load[old];
    }
    edge_of[x] = e;
    occupants[edges[e].slot].push_back(x);
    ++load[edges[e].slot];
  };

  auto bfs = [&]() {
    std::queue<JobId> q;
    for (JobId x = 0; x < n; ++x) {
      dist[x] = edge_of[x] ? inf : 0;
      if (!edge_of[x]) q.push(x);
    }
    std::size_t limit = inf;
    while (!q.empty()) {
      JobId x = q.front();
      q.pop();
      if (dist[x] >= limit) continue;
      for (auto e : adj[x]) {
        std::size_t y = edges[e].slot;
        if (load[y] < slots[y].multiplicity) {
          limit = std::min(limit, dist[x]);
          continue;
        }
        for (JobId other : occupants[y]) {
          if (dist[other] == inf) {
            dist[other] = dist[x] + 1;
            q.push(other);
          }
        }
      }
    }
    return limit != inf;
  };

  auto dfs = [&](auto&& self, JobId x) -> bool {
    for (; cursor[x] < adj[x].size(); ++cursor[x]) {
      std::size_t e = adj[x][cursor[x]];
      std::size_t y = edges[e].slot;
      if (load[y] < slots[y].multiplicity) {
        place(x, e);
        return true;
      }
      const std::vector<JobId> occ = occupants[y];
      for (JobId other : occ) {
        if (dist[other] == dist[x] + 1 && self(self, other)) {
          place(x, e);
          return true;
        }
      }
    }
    dist[x] = inf;
    return false;
  };

  while (bfs()) {
    std::fill(cursor.begin(), cursor.end(), 0);
    bool progressed = false;
    for (JobId x = 0; x < n; ++x)
      if (!edge_of[x] && dist[x] == 0 && dfs(dfs, x)) progressed = true;
    if (!progressed) break;
  }
  return detail::collect(g, edge_of);
}

// Minimum-cost matching covering every job vertex, by successive shortest
// paths: jobs are inserted one at a time (ascending id), each along a
// shortest augmenting path found by Dijkstra over reduced costs. Potentials
// start at 0, which is valid because all costs are non-negative.
//
// Throws NoSaturatingMatching listing every job that could not be inserted.
inline MatchingResult min_cost_saturating_matching(const BipartiteGraph& g) {
  if (!g.fully_costed()) throw std::invalid_argument("min-cost matching needs a cost on every edge");
  const std::size_t n = g.x_count();
  const std::size_t s = g.slots().size();
  const auto adj = g.adjacency();
  const auto& edges = g.edges();
  const auto& slots = g.slots();

  // Node ids: jobs 0..n-1, slots n..n+s-1, sink n+s.
  const std::size_t sink = n + s;
  const std::size_t nodes = n + s + 1;
  std::vector<Rat> potential(nodes, Rat(0));
  std::vector<std::optional<std::size_t>> edge_of(n);
  std::vector<std::size_t> load(s, 0);
  std::vector<std::vector<JobId>> occupants(s);
  std::vector<JobId> unsaturated;

  struct Pred {
    std::size_t node;
    std::size_t edge;  // edge index used to reach a slot from a job
  };

  for (JobId root = 0; root < n; ++root) {
    std::vector<std::optional<Rat>> dist(nodes);
    std::vector<std::optional<Pred>> pred(nodes);
    std::vector<bool> done(nodes, false);
    using Item = std::pair<Rat, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[root] = Rat(0);
    pq.emplace(Rat(0), root);

    auto relax = [&](std::size_t from, std::size_t to, const Rat& cost, std::size_t via) {
      Rat d = *dist[from] + cost + potential[from] - potential[to];
      if (!dist[to] || d < *dist[to]) {
        dist[to] = d;
        pred[to] = Pred{from, via};
        pq.emplace(std::move(d), to);
      }
    };

    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (done[u] || d != *dist[u]) continue;
      done[u] = true;
      if (u == sink) continue;
      if (u < n) {
        // job -> slot along unmatched edges
        for (auto e : adj[u]) {
          if (edge_of[u] == e) continue;
          relax(u, n + edges[e].slot, *edges[e].cost, e);
        }
      } else {
        std::size_t y = u - n;
        if (load[y] < slots[y].multiplicity) relax(u, sink, Rat(0), 0);
        // slot -> job along matched edges, negated cost
        for (JobId x : occupants[y]) relax(u, x, -*edges[*edge_of[x]].cost, *edge_of[x]);
      }
    }

    if (!dist[sink]) {
      unsaturated.push_back(root);
      continue;
    }
    const Rat reach = *dist[sink];
    for (std::size_t v = 0; v < nodes; ++v)
      potential[v] += dist[v] ? min(*dist[v], reach) : reach;

    // Walk back from the sink: ... job -> slot -> (matched job -> slot) ...
    std::size_t y = pred[sink]->node - n;
    ++load[y];
    std::size_t cur = n + y;
    while (true) {
      const Pred p = *pred[cur];
      JobId x = p.node;
      std::size_t e = p.edge;
      if (edge_of[x]) {
        std::size_t old = edges[*edge_of[x]].slot;
        auto& occ = occupants[old];
        occ.erase(std::find(occ.begin(), occ.end(), x));
      }
      bool was_matched = edge_of[x].has_value();
      std::size_t prev_slot = was_matched ? edges[*edge_of[x]].slot : 0;
      edge_of[x] = e;
      occupants[edges[e].slot].push_back(x);
      if (!was_matched) break;
      cur = n + prev_slot;
    }
  }

  if (!unsaturated.empty()) throw NoSaturatingMatching(std::move(unsaturated));
  return detail::collect(g, edge_of);
}

}  // namespace pbsched
