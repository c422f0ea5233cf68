#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "pbsched/error.hpp"
#include "pbsched/matching.hpp"
#include "pbsched/model.hpp"
#include "pbsched/schedule.hpp"

namespace pbsched {

// Sorted, strictly increasing candidate objective values.
struct CandidateSet {
  std::vector<Rat> values;

  static CandidateSet from(std::vector<Rat> raw) {
    std::sort(raw.begin(), raw.end());
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    return CandidateSet{std::move(raw)};
  }
  bool contains(const Rat& v) const { return std::binary_search(values.begin(), values.end(), v); }
  std::size_t size() const { return values.size(); }
};

struct SolveResult {
  Schedule schedule;
  Rat objective_value;
  std::size_t probes = 0;  // feasibility tests performed
};

namespace detail {

// The shared release time of an equal-release instance.
inline Rat common_release(const Instance& instance) {
  if (!instance.equal_releases())
    throw UnequalReleases("this objective is only solved for equal release times; jobs have different releases");
  return instance.jobs().front().release;
}

// One slot per batch B_{k,i}, k = 1..n_i, on every machine some job may use;
// edge (j, B_{k,i}) for M_i in M_j costs f_j(T_j) at completion r0 + k p / v_i.
inline BipartiteGraph position_graph(const Instance& instance, const Rat& r0) {
  const std::size_t n = instance.n();
  const auto used = instance.used_machines();
  std::vector<Slot> slots;
  std::vector<std::size_t> base(instance.m(), 0);
  for (const auto& mach : instance.machines()) {
    base[mach.id] = slots.size();
    if (!used[mach.id]) continue;
    const std::size_t nb = num_batches(mach, n);
    for (std::size_t k = 1; k <= nb; ++k) slots.push_back({mach.id, k, effective_capacity(mach, n)});
  }
  std::vector<Edge> edges;
  for (const auto& job : instance.jobs()) {
    for (auto i : job.eligible) {
      const auto& mach = instance.machine(i);
      const std::size_t nb = num_batches(mach, n);
      for (std::size_t k = 1; k <= nb; ++k)
        edges.push_back({job.id, base[i] + k - 1, eval_cost(job, r0 + batch_completion_time(instance.p(), mach, k))});
    }
  }
  return BipartiteGraph(n, std::move(slots), std::move(edges));
}

using BatchClock = std::function<BatchTime(MachineId, std::size_t)>;

inline Schedule schedule_from_matching(const MatchingResult& matching, const BatchClock& clock) {
  Schedule out;
  for (const auto& pair : matching.pairs) {
    out.assignments.push_back({pair.job, pair.machine, pair.k});
    BatchKey key{pair.machine, pair.k};
    if (!out.batches.count(key)) out.batches.emplace(key, clock(pair.machine, pair.k));
  }
  std::sort(out.assignments.begin(), out.assignments.end());
  return out;
}

inline BatchClock back_to_back_from(const Instance& instance, Rat r0) {
  return [&instance, r0](MachineId i, std::size_t k) {
    const auto& mach = instance.machine(i);
    return BatchTime{r0 + batch_completion_time(instance.p(), mach, k - 1),
                     r0 + batch_completion_time(instance.p(), mach, k)};
  };
}

// Least index in [0, size) whose probe succeeds, given that the last one does.
// Returns the index and the number of probes made.
template <typename Probe>
std::pair<std::size_t, std::size_t> lower_bound_search(std::size_t size, Probe&& probe) {
  std::size_t lo = 0, hi = size - 1, probes = 0;
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    ++probes;
    if (probe(mid)) hi = mid;
    else lo = mid + 1;
  }
  return {lo, probes};
}

}  // namespace detail

// Equal release times, minimise sum_j f_j(T_j): min-cost X-saturating
// matching of jobs to batch positions.
inline SolveResult solve_min_sum(const Instance& instance) {
  instance.require_solvable();
  const Rat r0 = detail::common_release(instance);
  const auto graph = detail::position_graph(instance, r0);
  const auto matching = min_cost_saturating_matching(graph);
  SolveResult out;
  out.schedule = detail::schedule_from_matching(matching, detail::back_to_back_from(instance, r0));
  out.objective_value = evaluate_schedule(instance, out.schedule, Aggregation::sum);
  out.schedule.objective_value = out.objective_value;
  out.probes = 1;
  return out;
}

// Every value f_j(T_j) a job can take in some batch position.
inline CandidateSet minmax_candidates(const Instance& instance) {
  instance.require_solvable();
  const Rat r0 = detail::common_release(instance);
  const auto graph = detail::position_graph(instance, r0);
  std::vector<Rat> values;
  values.reserve(graph.edges().size());
  for (const auto& e : graph.edges()) values.push_back(*e.cost);
  return CandidateSet::from(std::move(values));
}

// Equal release times, minimise max_j f_j(T_j): binary search over the
// candidate values, testing each threshold with a maximum matching on the
// positions whose cost does not exceed it.
inline SolveResult solve_min_max(const Instance& instance) {
  instance.require_solvable();
  const Rat r0 = detail::common_release(instance);
  const auto graph = detail::position_graph(instance, r0);
  std::vector<Rat> raw;
  for (const auto& e : graph.edges()) raw.push_back(*e.cost);
  const auto candidates = CandidateSet::from(std::move(raw));

  auto threshold_matching = [&](const Rat& lambda) {
    std::vector<Edge> kept;
    for (const auto& e : graph.edges())
      if (*e.cost <= lambda) kept.push_back({e.x, e.slot, std::nullopt});
    return max_cardinality_matching(BipartiteGraph(graph.x_count(), graph.slots(), std::move(kept)));
  };

  std::optional<std::pair<std::size_t, MatchingResult>> last;
  auto probe = [&](std::size_t idx) {
    auto m = threshold_matching(candidates.values[idx]);
    bool ok = m.cardinality == instance.n();
    if (ok) last.emplace(idx, std::move(m));
    return ok;
  };
  auto [best, probes] = detail::lower_bound_search(candidates.size(), probe);
  if (!last || last->first != best) {
    ++probes;
    last.emplace(best, threshold_matching(candidates.values[best]));
  }

  SolveResult out;
  out.schedule = detail::schedule_from_matching(last->second, detail::back_to_back_from(instance, r0));
  out.objective_value = evaluate_schedule(instance, out.schedule, Aggregation::max);
  out.schedule.objective_value = out.objective_value;
  out.probes = probes;
  return out;
}

// All r_j + k p / v_i for jobs j, k = 1..n and machines eligible to some job.
// With p = 0 this degenerates to the set of release times.
inline CandidateSet makespan_candidates(const Instance& instance) {
  const std::size_t n = instance.n();
  const auto used = instance.used_machines();
  std::vector<Rat> values;
  if (instance.p() == 0) {
    for (const auto& job : instance.jobs()) values.push_back(job.release);
    return CandidateSet::from(std::move(values));
  }
  std::vector<Rat> offsets;
  for (const auto& mach : instance.machines()) {
    if (!used[mach.id]) continue;
    for (std::size_t k = 1; k <= n; ++k) offsets.push_back(batch_completion_time(instance.p(), mach, k));
  }
  offsets = CandidateSet::from(std::move(offsets)).values;
  std::vector<Rat> releases;
  for (const auto& job : instance.jobs()) releases.push_back(job.release);
  releases = CandidateSet::from(std::move(releases)).values;
  values.reserve(offsets.size() * releases.size());
  for (const auto& r : releases)
    for (const auto& o : offsets) values.push_back(r + o);
  return CandidateSet::from(std::move(values));
}

// Batches right-justified to end at lambda: b_i = min(n_i, floor(lambda v_i / p))
// back-to-back batches per machine, the k-th starting at
// lambda - (b_i - k + 1) p / v_i.
struct AnchoredBatches {
  std::vector<std::size_t> count;            // b_i per machine
  std::vector<std::vector<Rat>> starts;      // starts[i][k-1]

  BatchTime time(const Instance& instance, MachineId i, std::size_t k) const {
    const Rat& s = starts[i][k - 1];
    return BatchTime{s, s + instance.p() / instance.machine(i).speed};
  }
};

inline AnchoredBatches anchor_batches(const Instance& instance, const Rat& lambda) {
  if (instance.p() == 0) throw std::invalid_argument("batch anchoring requires p > 0");
  AnchoredBatches out;
  out.count.resize(instance.m(), 0);
  out.starts.resize(instance.m());
  if (lambda < 0) return out;
  const auto used = instance.used_machines();
  for (const auto& mach : instance.machines()) {
    if (!used[mach.id]) continue;
    const mpz_class fit = (lambda * mach.speed / instance.p()).floor();
    const std::size_t nb = num_batches(mach, instance.n());
    const std::size_t b = fit < static_cast<unsigned long>(nb) ? fit.get_ui() : nb;
    out.count[mach.id] = b;
    const Rat length = instance.p() / mach.speed;
    for (std::size_t k = 1; k <= b; ++k)
      out.starts[mach.id].push_back(lambda - Rat(static_cast<unsigned long>(b - k + 1)) * length);
  }
  return out;
}

// Feasibility test for makespan lambda: anchor the batches, join job j to
// every anchored batch on an eligible machine that starts no earlier than
// r_j, and look for a matching covering all jobs.
inline std::optional<Schedule> assign_jobs(const Instance& instance, const Rat& lambda) {
  const auto anchors = anchor_batches(instance, lambda);
  const std::size_t n = instance.n();
  std::vector<Slot> slots;
  std::vector<std::size_t> base(instance.m(), 0);
  for (const auto& mach : instance.machines()) {
    base[mach.id] = slots.size();
    for (std::size_t k = 1; k <= anchors.count[mach.id]; ++k)
      slots.push_back({mach.id, k, effective_capacity(mach, n)});
  }
  std::vector<Edge> edges;
  for (const auto& job : instance.jobs()) {
    for (auto i : job.eligible) {
      const auto& starts = anchors.starts[i];
      // starts ascend with k; keep the suffix that begins at or after r_j
      auto first = std::lower_bound(starts.begin(), starts.end(), job.release);
      for (auto it = first; it != starts.end(); ++it)
        edges.push_back({job.id, base[i] + static_cast<std::size_t>(it - starts.begin()), std::nullopt});
    }
  }
  const auto matching = max_cardinality_matching(BipartiteGraph(n, std::move(slots), std::move(edges)));
  if (matching.cardinality != n) return std::nullopt;
  auto schedule = detail::schedule_from_matching(
      matching, [&](MachineId i, std::size_t k) { return anchors.time(instance, i, k); });
  schedule.objective_value = schedule_makespan(instance, schedule);
  return schedule;
}

// Minimise makespan with arbitrary release times: binary search over the
// makespan candidates with assign_jobs as the feasibility test.
inline SolveResult solve_makespan(const Instance& instance) {
  instance.require_solvable();
  SolveResult out;
  if (instance.p() == 0) {
    // Every job runs in its own zero-length batch at its release time.
    std::vector<JobId> order(instance.n());
    for (JobId j = 0; j < instance.n(); ++j) order[j] = j;
    std::stable_sort(order.begin(), order.end(),
                     [&](JobId a, JobId b) { return instance.job(a).release < instance.job(b).release; });
    std::vector<std::size_t> next_k(instance.m(), 1);
    for (auto j : order) {
      const auto& job = instance.job(j);
      MachineId i = job.eligible.front();
      std::size_t k = next_k[i]++;
      out.schedule.assignments.push_back({j, i, k});
      out.schedule.batches.emplace(BatchKey{i, k}, BatchTime{job.release, job.release});
    }
    std::sort(out.schedule.assignments.begin(), out.schedule.assignments.end());
    out.objective_value = schedule_makespan(instance, out.schedule);
    out.schedule.objective_value = out.objective_value;
    return out;
  }

  const auto candidates = makespan_candidates(instance);
  std::optional<std::pair<std::size_t, Schedule>> last;
  auto probe = [&](std::size_t idx) {
    auto s = assign_jobs(instance, candidates.values[idx]);
    const bool ok = s.has_value();
    if (ok) last.emplace(idx, std::move(*s));
    return ok;
  };
  auto [best, probes] = detail::lower_bound_search(candidates.size(), probe);
  if (!last || last->first != best) {
    ++probes;
    auto s = assign_jobs(instance, candidates.values[best]);
    if (!s) throw Error("largest makespan candidate is infeasible; this should not happen");
    last.emplace(best, std::move(*s));
  }
  out.schedule = std::move(last->second);
  out.objective_value = out.schedule.objective_value;
  out.probes = probes;
  return out;
}

enum class Mode { min_sum, min_max, makespan };

inline std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::min_sum: return "min-sum";
    case Mode::min_max: return "min-max";
    case Mode::makespan: return "makespan";
  }
  return "?";
}

// Dispatch to the polynomial solver for a mode.
inline SolveResult solve(const Instance& instance, Mode mode) {
  switch (mode) {
    case Mode::min_sum: return solve_min_sum(instance);
    case Mode::min_max: return solve_min_max(instance);
    case Mode::makespan: return solve_makespan(instance);
  }
  throw std::invalid_argument("unknown mode");
}

}  // namespace pbsched
