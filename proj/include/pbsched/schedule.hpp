#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pbsched/error.hpp"
#include "pbsched/model.hpp"

namespace pbsched {

struct BatchKey {
  MachineId machine = 0;
  std::size_t k = 1;  // 1-based batch index on the machine
  friend auto operator<=>(const BatchKey&, const BatchKey&) = default;
};

struct BatchTime {
  Rat start;
  Rat completion;
  friend bool operator==(const BatchTime&, const BatchTime&) = default;
};

struct Assignment {
  JobId job = 0;
  MachineId machine = 0;
  std::size_t k = 1;
  friend auto operator<=>(const Assignment&, const Assignment&) = default;
};

// Jobs placed into batches. Assignments are kept as a list (sorted by job id
// for schedules built here) so that a malformed schedule read from disk can
// still be represented and reported on.
struct Schedule {
  std::vector<Assignment> assignments;
  std::map<BatchKey, BatchTime> batches;
  Rat objective_value;

  // Jobs of each batch, ascending.
  std::map<BatchKey, std::vector<JobId>> batch_members() const {
    std::map<BatchKey, std::vector<JobId>> out;
    for (const auto& [key, t] : batches) out[key];
    for (const auto& a : assignments) out[{a.machine, a.k}].push_back(a.job);
    for (auto& [key, jobs] : out) std::sort(jobs.begin(), jobs.end());
    return out;
  }

  std::optional<Rat> completion_of(JobId j) const {
    for (const auto& a : assignments) {
      if (a.job != j) continue;
      auto it = batches.find({a.machine, a.k});
      if (it == batches.end()) return std::nullopt;
      return it->second.completion;
    }
    return std::nullopt;
  }

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

enum class ViolationKind { assignment, capacity, eligibility, release, overlap, batch_timing };

inline std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::assignment: return "assignment";
    case ViolationKind::capacity: return "capacity";
    case ViolationKind::eligibility: return "eligibility";
    case ViolationKind::release: return "release";
    case ViolationKind::overlap: return "overlap";
    case ViolationKind::batch_timing: return "batch_timing";
  }
  return "?";
}

struct Violation {
  ViolationKind kind;
  std::string subject;  // "job 3" or "batch (1,2)"
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const {
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == kind; });
  }
};

namespace detail {
inline std::string batch_name(const BatchKey& key) {
  return "batch (" + std::to_string(key.machine) + "," + std::to_string(key.k) + ")";
}
}  // namespace detail

// Checks every job is placed once, batch capacities, eligibility, release
// times, per-machine non-overlap and batch lengths of exactly p/v_i.
inline ValidationReport validate_schedule(const Instance& instance, const Schedule& schedule) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, std::string subject, std::string detail) {
    report.violations.push_back({kind, std::move(subject), std::move(detail)});
  };

  std::vector<std::size_t> seen(instance.n(), 0);
  std::map<BatchKey, std::vector<JobId>> members;
  for (const auto& a : schedule.assignments) {
    const std::string who = "job " + std::to_string(a.job);
    if (a.job >= instance.n()) {
      add(ViolationKind::assignment, who, "job does not exist");
      continue;
    }
    ++seen[a.job];
    if (a.machine >= instance.m()) {
      add(ViolationKind::assignment, who, "machine " + std::to_string(a.machine) + " does not exist");
      continue;
    }
    if (a.k < 1) {
      add(ViolationKind::assignment, who, "batch index must be >= 1");
      continue;
    }
    if (!instance.job(a.job).eligible_on(a.machine))
      add(ViolationKind::eligibility, who, "machine " + std::to_string(a.machine) + " not in eligible set");
    BatchKey key{a.machine, a.k};
    if (!schedule.batches.count(key))
      add(ViolationKind::assignment, who, detail::batch_name(key) + " has no start/completion times");
    members[key].push_back(a.job);
  }
  for (JobId j = 0; j < instance.n(); ++j) {
    if (seen[j] == 0) add(ViolationKind::assignment, "job " + std::to_string(j), "job is not scheduled");
    if (seen[j] > 1) add(ViolationKind::assignment, "job " + std::to_string(j), "job is scheduled " + std::to_string(seen[j]) + " times");
  }

  for (const auto& [key, jobs] : members) {
    if (key.machine >= instance.m()) continue;
    const auto& mach = instance.machine(key.machine);
    if (jobs.size() > mach.capacity)
      add(ViolationKind::capacity, detail::batch_name(key),
          std::to_string(jobs.size()) + " jobs exceed capacity " + std::to_string(mach.capacity));
    auto it = schedule.batches.find(key);
    if (it == schedule.batches.end()) continue;
    for (auto j : jobs) {
      if (j < instance.n() && it->second.start < instance.job(j).release)
        add(ViolationKind::release, "job " + std::to_string(j),
            "batch starts at " + it->second.start.str() + " before release " + instance.job(j).release.str());
    }
  }

  std::map<MachineId, std::vector<const std::pair<const BatchKey, BatchTime>*>> per_machine;
  for (const auto& entry : schedule.batches) {
    const auto& [key, t] = entry;
    if (key.machine >= instance.m()) {
      add(ViolationKind::assignment, detail::batch_name(key), "machine does not exist");
      continue;
    }
    if (!members.count(key)) continue;  // empty batches occupy no time
    const Rat length = instance.p() / instance.machine(key.machine).speed;
    if (t.completion - t.start != length)
      add(ViolationKind::batch_timing, detail::batch_name(key),
          "length " + (t.completion - t.start).str() + " differs from p/v = " + length.str());
    if (t.start < 0) add(ViolationKind::batch_timing, detail::batch_name(key), "negative start time");
    per_machine[key.machine].push_back(&entry);
  }
  for (auto& [machine, list] : per_machine) {
    std::sort(list.begin(), list.end(), [](auto* a, auto* b) {
      if (a->second.start != b->second.start) return a->second.start < b->second.start;
      return a->first < b->first;
    });
    for (std::size_t i = 1; i < list.size(); ++i) {
      const auto& prev = *list[i - 1];
      const auto& cur = *list[i];
      if (cur.second.start < prev.second.completion)
        add(ViolationKind::overlap, detail::batch_name(cur.first),
            "overlaps " + detail::batch_name(prev.first));
    }
  }
  return report;
}

enum class Aggregation { sum, max };

// Sum or max of f_j(T_j). The max over no jobs is 0.
inline Rat evaluate_schedule(const Instance& instance, const Schedule& schedule, Aggregation aggregation) {
  auto report = validate_schedule(instance, schedule);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    throw InvalidSchedule(std::string(to_string(v.kind)) + " violation at " + v.subject + ": " + v.detail);
  }
  Rat total = 0;
  for (const auto& a : schedule.assignments) {
    Rat c = eval_cost(instance.job(a.job), schedule.batches.at({a.machine, a.k}).completion);
    if (aggregation == Aggregation::sum) total += c;
    else total = max(total, c);
  }
  return total;
}

// Largest job completion time; 0 for a schedule without jobs.
inline Rat schedule_makespan(const Instance& instance, const Schedule& schedule) {
  auto report = validate_schedule(instance, schedule);
  if (!report.ok()) throw InvalidSchedule("makespan of an invalid schedule");
  Rat out = 0;
  for (const auto& a : schedule.assignments) out = max(out, schedule.batches.at({a.machine, a.k}).completion);
  return out;
}

}  // namespace pbsched
