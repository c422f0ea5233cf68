#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "pbsched/error.hpp"
#include "pbsched/model.hpp"

namespace pbsched {

enum class SetStructure { arbitrary, inclusive, nested, interval, tree };

inline SetStructure parse_structure(std::string_view name) {
  if (name == "arbitrary") return SetStructure::arbitrary;
  if (name == "inclusive") return SetStructure::inclusive;
  if (name == "nested") return SetStructure::nested;
  if (name == "interval") return SetStructure::interval;
  if (name == "tree") return SetStructure::tree;
  throw BadParams("unknown processing-set structure '" + std::string(name) + "'");
}

// Ranges for random instances. Integer ranges are inclusive. Releases are
// multiples of release_step in [0, release_max].
struct GenParams {
  long p_min = 1, p_max = 3;
  std::vector<Rat> speeds{Rat(1), Rat(3, 2), Rat(2)};
  std::size_t capacity_min = 1, capacity_max = 3;
  Rat release_max{0};
  Rat release_step{1, 2};
  long due_min = 0, due_max = 6;
  long weight_min = 0, weight_max = 4;
  std::vector<ObjectiveKind> objectives{ObjectiveKind::linear, ObjectiveKind::unit_step};
};

namespace detail {

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  std::size_t index(std::size_t size) { return static_cast<std::size_t>(integer(0, static_cast<long>(size) - 1)); }
  bool coin() { return integer(0, 1) == 1; }
  std::vector<MachineId> permutation(std::size_t m) {
    std::vector<MachineId> out(m);
    std::iota(out.begin(), out.end(), 0);
    for (std::size_t i = m; i > 1; --i) std::swap(out[i - 1], out[index(i)]);
    return out;
  }

 private:
  std::mt19937_64 rng_;
};

// Laminar family from recursively splitting `block` into random parts.
inline void laminar_split(Draw& draw, std::vector<MachineId> block, std::vector<std::vector<MachineId>>& out) {
  std::sort(block.begin(), block.end());
  out.push_back(block);
  if (block.size() <= 1) return;
  const std::size_t parts = static_cast<std::size_t>(draw.integer(2, static_cast<long>(std::min<std::size_t>(block.size(), 3))));
  std::vector<std::vector<MachineId>> pieces(parts);
  for (std::size_t t = 0; t < block.size(); ++t) pieces[t < parts ? t : draw.index(parts)].push_back(block[t]);
  for (auto& piece : pieces) laminar_split(draw, std::move(piece), out);
}

inline std::vector<std::vector<MachineId>> processing_sets(Draw& draw, std::size_t n, std::size_t m, SetStructure structure) {
  std::vector<std::vector<MachineId>> sets(n);
  switch (structure) {
    case SetStructure::arbitrary:
      for (auto& s : sets) {
        while (s.empty())
          for (MachineId i = 0; i < m; ++i)
            if (draw.coin()) s.push_back(i);
      }
      break;
    case SetStructure::inclusive: {
      const auto order = draw.permutation(m);
      for (auto& s : sets) {
        s.assign(order.begin(), order.begin() + draw.integer(1, static_cast<long>(m)));
        std::sort(s.begin(), s.end());
      }
      break;
    }
    case SetStructure::nested: {
      std::vector<std::vector<MachineId>> family;
      laminar_split(draw, draw.permutation(m), family);
      for (auto& s : sets) s = family[draw.index(family.size())];
      break;
    }
    case SetStructure::interval:
      for (auto& s : sets) {
        long a = draw.integer(0, static_cast<long>(m) - 1);
        long b = draw.integer(a, static_cast<long>(m) - 1);
        for (long i = a; i <= b; ++i) s.push_back(static_cast<MachineId>(i));
      }
      break;
    case SetStructure::tree: {
      const auto order = draw.permutation(m);
      std::vector<MachineId> parent(m, order[0]);
      for (std::size_t t = 1; t < m; ++t) parent[order[t]] = order[draw.index(t)];
      for (auto& s : sets) {
        MachineId node = order[draw.index(m)];
        s.push_back(node);
        while (node != order[0]) {
          node = parent[node];
          s.push_back(node);
        }
        std::sort(s.begin(), s.end());
      }
      break;
    }
  }
  return sets;
}

}  // namespace detail

// Random instance, deterministic for a fixed seed and parameter set.
inline Instance generate_instance(std::uint64_t seed, std::size_t n, std::size_t m, SetStructure structure,
                                  const GenParams& params = {}) {
  if (n < 1 || m < 1) throw BadParams("need n >= 1 and m >= 1");
  if (n > 100000 || m > 10000) throw BadParams("instance size out of range");
  if (params.p_min < 0 || params.p_min > params.p_max) throw BadParams("bad p range");
  if (params.speeds.empty()) throw BadParams("no speeds to draw from");
  for (const auto& v : params.speeds)
    if (v < 1) throw BadParams("speeds must be >= 1");
  if (params.capacity_min < 1 || params.capacity_min > params.capacity_max) throw BadParams("bad capacity range");
  if (params.release_max < 0 || params.release_step <= 0) throw BadParams("bad release grid");
  if (params.due_min < 0 || params.due_min > params.due_max) throw BadParams("bad due range");
  if (params.weight_min < 0 || params.weight_min > params.weight_max) throw BadParams("bad weight range");
  if (params.objectives.empty()) throw BadParams("no objective kinds to draw from");
  for (auto kind : params.objectives)
    if (kind == ObjectiveKind::piecewise_linear) throw BadParams("generator draws only linear and unit_step objectives");

  detail::Draw draw(seed);
  const Rat p(draw.integer(params.p_min, params.p_max));
  std::vector<Machine> machines;
  for (MachineId i = 0; i < m; ++i) {
    machines.push_back({i, params.speeds[draw.index(params.speeds.size())],
                        static_cast<std::size_t>(draw.integer(static_cast<long>(params.capacity_min),
                                                              static_cast<long>(params.capacity_max)))});
  }
  const long release_slots = (params.release_max / params.release_step).floor().get_si();
  auto sets = detail::processing_sets(draw, n, m, structure);
  std::vector<Job> jobs;
  for (JobId j = 0; j < n; ++j) {
    Job job;
    job.id = j;
    job.release = Rat(draw.integer(0, release_slots)) * params.release_step;
    job.due = Rat(draw.integer(params.due_min, params.due_max));
    job.weight = Rat(draw.integer(params.weight_min, params.weight_max));
    job.eligible = std::move(sets[j]);
    job.objective = params.objectives[draw.index(params.objectives.size())] == ObjectiveKind::unit_step
                        ? ObjectiveSpec::unit_step()
                        : ObjectiveSpec::linear();
    jobs.push_back(std::move(job));
  }
  return Instance(p, std::move(machines), std::move(jobs));
}

}  // namespace pbsched
