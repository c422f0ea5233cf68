#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pbsched/error.hpp"
#include "pbsched/rational.hpp"

namespace pbsched {

using JobId = std::size_t;
using MachineId = std::size_t;

enum class ObjectiveKind { linear, unit_step, piecewise_linear };

inline std::string_view to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::linear: return "linear";
    case ObjectiveKind::unit_step: return "unit_step";
    case ObjectiveKind::piecewise_linear: return "piecewise_linear";
  }
  return "?";
}

struct Breakpoint {
  Rat t;
  Rat value;
  friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

// Non-decreasing, non-negative cost f(T) of a job's tardiness T.
//
//  linear            f(T) = w * T
//  unit_step         f(T) = w if T > 0, else 0
//  piecewise_linear  interpolates (t, value) breakpoints; flat to the left of
//                    the first breakpoint, continues with the last segment's
//                    slope to the right of the last one.
class ObjectiveSpec {
 public:
  ObjectiveSpec() = default;

  static ObjectiveSpec linear() { return ObjectiveSpec(ObjectiveKind::linear, {}); }
  static ObjectiveSpec unit_step() { return ObjectiveSpec(ObjectiveKind::unit_step, {}); }

  static ObjectiveSpec piecewise_linear(std::vector<Breakpoint> points) {
    if (points.empty()) throw InvalidInstance("piecewise_linear objective needs at least one breakpoint");
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (points[i].t < 0 || points[i].value < 0)
        throw InvalidInstance("piecewise_linear breakpoints must be non-negative");
      if (i > 0 && !(points[i - 1].t < points[i].t))
        throw InvalidInstance("piecewise_linear breakpoint times must be strictly increasing");
      if (i > 0 && points[i].value < points[i - 1].value)
        throw InvalidInstance("piecewise_linear breakpoint values must be non-decreasing");
    }
    return ObjectiveSpec(ObjectiveKind::piecewise_linear, std::move(points));
  }

  ObjectiveKind kind() const { return kind_; }
  const std::vector<Breakpoint>& breakpoints() const { return points_; }

  // Cost at tardiness t >= 0, with weight used by the linear and step forms.
  Rat operator()(const Rat& t, const Rat& weight) const {
    switch (kind_) {
      case ObjectiveKind::linear: return weight * t;
      case ObjectiveKind::unit_step: return t > 0 ? weight : Rat(0);
      case ObjectiveKind::piecewise_linear: return interpolate(t);
    }
    return Rat(0);
  }

  friend bool operator==(const ObjectiveSpec&, const ObjectiveSpec&) = default;

 private:
  ObjectiveSpec(ObjectiveKind kind, std::vector<Breakpoint> points)
      : kind_(kind), points_(std::move(points)) {}

  Rat interpolate(const Rat& t) const {
    if (t <= points_.front().t) return points_.front().value;
    auto hi = std::upper_bound(points_.begin(), points_.end(), t,
                               [](const Rat& x, const Breakpoint& b) { return x < b.t; });
    if (hi == points_.end()) {
      if (points_.size() == 1) return points_.back().value;
      const auto& a = points_[points_.size() - 2];
      const auto& b = points_.back();
      return b.value + (b.value - a.value) / (b.t - a.t) * (t - b.t);
    }
    const auto& b = *hi;
    const auto& a = *(hi - 1);
    return a.value + (b.value - a.value) / (b.t - a.t) * (t - a.t);
  }

  ObjectiveKind kind_ = ObjectiveKind::linear;
  std::vector<Breakpoint> points_;
};

struct Job {
  JobId id = 0;
  Rat release;
  Rat due;
  Rat weight{1};
  std::vector<MachineId> eligible;  // sorted, unique
  ObjectiveSpec objective;

  bool eligible_on(MachineId i) const { return std::binary_search(eligible.begin(), eligible.end(), i); }
  friend bool operator==(const Job&, const Job&) = default;
};

struct Machine {
  MachineId id = 0;
  Rat speed{1};
  std::size_t capacity = 1;
  friend bool operator==(const Machine&, const Machine&) = default;
};

// A validated problem instance: common job length p, jobs and machines with
// dense ids. Jobs may have an empty eligible set; solvers reject those.
class Instance {
 public:
  Instance(Rat p, std::vector<Machine> machines, std::vector<Job> jobs)
      : p_(std::move(p)), machines_(std::move(machines)), jobs_(std::move(jobs)) {
    if (p_ < 0) throw InvalidInstance("job length p must be >= 0");
    if (machines_.empty()) throw InvalidInstance("instance needs at least one machine");
    if (jobs_.empty()) throw InvalidInstance("instance needs at least one job");
    std::sort(machines_.begin(), machines_.end(), [](auto& a, auto& b) { return a.id < b.id; });
    std::sort(jobs_.begin(), jobs_.end(), [](auto& a, auto& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < machines_.size(); ++i) {
      const auto& mach = machines_[i];
      if (mach.id != i) throw InvalidInstance("machine ids must be unique and dense from 0 (missing " + std::to_string(i) + ")");
      if (mach.speed < 1) throw InvalidInstance("machine " + std::to_string(i) + ": speed must be >= 1");
      if (mach.capacity < 1) throw InvalidInstance("machine " + std::to_string(i) + ": capacity must be >= 1");
    }
    for (std::size_t j = 0; j < jobs_.size(); ++j) {
      auto& job = jobs_[j];
      const std::string name = "job " + std::to_string(j);
      if (job.id != j) throw InvalidInstance("job ids must be unique and dense from 0 (missing " + std::to_string(j) + ")");
      if (job.release < 0) throw InvalidInstance(name + ": release must be >= 0");
      if (job.due < 0) throw InvalidInstance(name + ": due must be >= 0");
      if (job.weight < 0) throw InvalidInstance(name + ": weight must be >= 0");
      std::sort(job.eligible.begin(), job.eligible.end());
      if (std::adjacent_find(job.eligible.begin(), job.eligible.end()) != job.eligible.end())
        throw InvalidInstance(name + ": duplicate machine in eligible set");
      if (!job.eligible.empty() && job.eligible.back() >= machines_.size())
        throw InvalidInstance(name + ": eligible machine " + std::to_string(job.eligible.back()) + " does not exist");
    }
  }

  const Rat& p() const { return p_; }
  const std::vector<Job>& jobs() const { return jobs_; }
  const std::vector<Machine>& machines() const { return machines_; }
  const Job& job(JobId j) const { return jobs_.at(j); }
  const Machine& machine(MachineId i) const { return machines_.at(i); }
  std::size_t n() const { return jobs_.size(); }
  std::size_t m() const { return machines_.size(); }

  // Jobs with no eligible machine; empty when the instance is solvable.
  std::vector<JobId> unschedulable_jobs() const {
    std::vector<JobId> out;
    for (const auto& j : jobs_)
      if (j.eligible.empty()) out.push_back(j.id);
    return out;
  }

  void require_solvable() const {
    auto bad = unschedulable_jobs();
    if (!bad.empty()) throw InfeasibleInstance(std::move(bad));
  }

  // Machines that appear in at least one eligible set.
  std::vector<bool> used_machines() const {
    std::vector<bool> used(machines_.size(), false);
    for (const auto& j : jobs_)
      for (auto i : j.eligible) used[i] = true;
    return used;
  }

  bool equal_releases() const {
    return std::all_of(jobs_.begin(), jobs_.end(), [&](const Job& j) { return j.release == jobs_.front().release; });
  }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  Rat p_;
  std::vector<Machine> machines_;
  std::vector<Job> jobs_;
};

// Capacity beyond n can never be used; clamp it.
inline std::size_t effective_capacity(const Machine& machine, std::size_t n) {
  return std::min(machine.capacity, n);
}

// Least n_i with n_i * K_i >= n.
inline std::size_t num_batches(const Machine& machine, std::size_t n) {
  const std::size_t k = effective_capacity(machine, n);
  return (n + k - 1) / k;
}

// Completion time k*p/v of the k-th back-to-back batch started at time 0.
inline Rat batch_completion_time(const Rat& p, const Machine& machine, std::size_t k) {
  return Rat(static_cast<unsigned long>(k)) * p / machine.speed;
}

// f_j(max(C - d_j, 0)).
inline Rat eval_cost(const Job& job, const Rat& completion) {
  Rat tardiness = completion - job.due;
  if (tardiness < 0) tardiness = 0;
  return job.objective(tardiness, job.weight);
}

}  // namespace pbsched
