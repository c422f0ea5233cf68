#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pbsched/error.hpp"
#include "pbsched/model.hpp"
#include "pbsched/schedule.hpp"
#include "pbsched/solvers.hpp"

namespace pbsched {

struct OracleLimits {
  std::size_t max_jobs = 7;
  std::size_t max_machines = 3;
};

namespace detail {

using Mask = std::uint32_t;

// Iterates every subset of `set` including the empty one.
template <typename F>
void for_each_subset(Mask set, F&& f) {
  Mask sub = set;
  while (true) {
    f(sub);
    if (sub == 0) break;
    sub = (sub - 1) & set;
  }
}

inline Mask eligible_mask(const Instance& instance, MachineId i) {
  Mask out = 0;
  for (const auto& job : instance.jobs())
    if (job.eligible_on(i)) out |= Mask{1} << job.id;
  return out;
}

// Equal releases: exhaustive search over every capacity-respecting way of
// filling the batch positions (i, k), k = 1..n_i, which complete at
// r0 + k p / v_i. Memoised on the set of jobs already placed.
inline SolveResult oracle_equal_release(const Instance& instance, bool sum) {
  const std::size_t n = instance.n();
  const Rat r0 = common_release(instance);
  struct Position {
    MachineId machine;
    std::size_t k;
    Mask allowed;
    std::size_t capacity;
    std::vector<Rat> cost;  // per job
  };
  std::vector<Position> positions;
  for (const auto& mach : instance.machines()) {
    const Mask allowed = eligible_mask(instance, mach.id);
    if (allowed == 0) continue;
    for (std::size_t k = 1; k <= num_batches(mach, n); ++k) {
      Position pos{mach.id, k, allowed, mach.capacity, {}};
      const Rat completion = r0 + batch_completion_time(instance.p(), mach, k);
      for (const auto& job : instance.jobs()) pos.cost.push_back(eval_cost(job, completion));
      positions.push_back(std::move(pos));
    }
  }

  const Mask full = (Mask{1} << n) - 1;
  const std::size_t states = std::size_t{1} << n;
  // best[t][mask]: optimal value with positions 0..t-1 holding exactly `mask`
  std::vector<std::vector<std::optional<Rat>>> best(positions.size() + 1,
                                                    std::vector<std::optional<Rat>>(states));
  std::vector<std::vector<Mask>> choice(positions.size() + 1, std::vector<Mask>(states, 0));
  best[0][0] = Rat(0);
  for (std::size_t t = 0; t < positions.size(); ++t) {
    const auto& pos = positions[t];
    for (Mask mask = 0; mask <= full; ++mask) {
      if (!best[t][mask]) continue;
      for_each_subset(pos.allowed & ~mask & full, [&](Mask batch) {
        if (static_cast<std::size_t>(std::popcount(batch)) > pos.capacity) return;
        Rat value = *best[t][mask];
        for (JobId j = 0; j < n; ++j) {
          if (!(batch >> j & 1)) continue;
          if (sum) value += pos.cost[j];
          else value = max(value, pos.cost[j]);
        }
        auto& slot = best[t + 1][mask | batch];
        if (!slot || value < *slot) {
          slot = value;
          choice[t + 1][mask | batch] = batch;
        }
      });
    }
  }
  const std::size_t last = positions.size();
  if (!best[last][full]) throw InfeasibleInstance(instance.unschedulable_jobs());

  SolveResult out;
  Mask mask = full;
  for (std::size_t t = last; t > 0; --t) {
    const Mask batch = choice[t][mask];
    const auto& pos = positions[t - 1];
    if (batch != 0) {
      for (JobId j = 0; j < n; ++j)
        if (batch >> j & 1) out.schedule.assignments.push_back({j, pos.machine, pos.k});
      const auto& mach = instance.machine(pos.machine);
      out.schedule.batches.emplace(BatchKey{pos.machine, pos.k},
                                   BatchTime{r0 + batch_completion_time(instance.p(), mach, pos.k - 1),
                                             r0 + batch_completion_time(instance.p(), mach, pos.k)});
    }
    mask &= ~batch;
  }
  std::sort(out.schedule.assignments.begin(), out.schedule.assignments.end());
  out.objective_value = *best[last][full];
  out.schedule.objective_value = out.objective_value;
  return out;
}

// Releases allowed: for one machine, the earliest completion of any ordered
// sequence of batches covering exactly S, each batch starting at
// max(previous completion, latest release inside it). Minimising over all
// sequences and all splittings of the jobs among machines is exhaustive.
inline SolveResult oracle_makespan(const Instance& instance) {
  const std::size_t n = instance.n();
  const Mask full = (Mask{1} << n) - 1;
  const std::size_t states = std::size_t{1} << n;

  std::vector<Rat> latest_release(states, Rat(0));
  for (Mask s = 1; s <= full; ++s) {
    const JobId low = static_cast<JobId>(std::countr_zero(s));
    latest_release[s] = max(latest_release[s & (s - 1)], instance.job(low).release);
  }

  const std::size_t m = instance.m();
  std::vector<std::vector<std::optional<Rat>>> finish(m, std::vector<std::optional<Rat>>(states));
  std::vector<std::vector<Mask>> last_batch(m, std::vector<Mask>(states, 0));
  for (const auto& mach : instance.machines()) {
    const Mask allowed = eligible_mask(instance, mach.id);
    const Rat length = instance.p() / mach.speed;
    auto& h = finish[mach.id];
    h[0] = Rat(0);
    for (Mask s = 1; s <= full; ++s) {
      if ((s & ~allowed) != 0) continue;
      for_each_subset(s, [&](Mask batch) {
        if (batch == 0 || static_cast<std::size_t>(std::popcount(batch)) > mach.capacity) return;
        const auto& before = h[s & ~batch];
        if (!before) return;
        Rat done = max(*before, latest_release[batch]) + length;
        if (!h[s] || done < *h[s]) {
          h[s] = done;
          last_batch[mach.id][s] = batch;
        }
      });
    }
  }

  // split[i][mask]: best makespan with machines 0..i-1 processing `mask`
  std::vector<std::vector<std::optional<Rat>>> split(m + 1, std::vector<std::optional<Rat>>(states));
  std::vector<std::vector<Mask>> share(m + 1, std::vector<Mask>(states, 0));
  split[0][0] = Rat(0);
  for (MachineId i = 0; i < m; ++i) {
    for (Mask mask = 0; mask <= full; ++mask) {
      for_each_subset(mask, [&](Mask mine) {
        const auto& rest = split[i][mask & ~mine];
        const auto& own = finish[i][mine];
        if (!rest || !own) return;
        Rat value = max(*rest, *own);
        auto& slot = split[i + 1][mask];
        if (!slot || value < *slot) {
          slot = value;
          share[i + 1][mask] = mine;
        }
      });
    }
  }
  if (!split[m][full]) throw InfeasibleInstance(instance.unschedulable_jobs());

  SolveResult out;
  Mask mask = full;
  for (MachineId i = m; i > 0; --i) {
    const MachineId machine = i - 1;
    Mask mine = share[i][mask];
    mask &= ~mine;
    std::vector<Mask> sequence;
    for (Mask s = mine; s != 0; s &= ~last_batch[machine][s]) sequence.push_back(last_batch[machine][s]);
    std::reverse(sequence.begin(), sequence.end());
    const Rat length = instance.p() / instance.machine(machine).speed;
    Rat clock = 0;
    for (std::size_t k = 1; k <= sequence.size(); ++k) {
      const Mask batch = sequence[k - 1];
      Rat start = max(clock, latest_release[batch]);
      clock = start + length;
      out.schedule.batches.emplace(BatchKey{machine, k}, BatchTime{start, clock});
      for (JobId j = 0; j < n; ++j)
        if (batch >> j & 1) out.schedule.assignments.push_back({j, machine, k});
    }
  }
  std::sort(out.schedule.assignments.begin(), out.schedule.assignments.end());
  out.objective_value = *split[m][full];
  out.schedule.objective_value = out.objective_value;
  return out;
}

}  // namespace detail

// Exact optimum by exhaustive search, for tiny instances only.
inline SolveResult brute_force_solve(const Instance& instance, Mode mode, OracleLimits limits = {}) {
  if (instance.n() > limits.max_jobs || instance.m() > limits.max_machines || instance.n() > 20)
    throw TooLarge("oracle limited to " + std::to_string(limits.max_jobs) + " jobs and " +
                   std::to_string(limits.max_machines) + " machines");
  instance.require_solvable();
  switch (mode) {
    case Mode::min_sum: return detail::oracle_equal_release(instance, true);
    case Mode::min_max: return detail::oracle_equal_release(instance, false);
    case Mode::makespan: return detail::oracle_makespan(instance);
  }
  throw std::invalid_argument("unknown mode");
}

}  // namespace pbsched
