#include <gtest/gtest.h>

#include <random>

#include "pbsched/pbsched.hpp"
#include "support.hpp"

using namespace pbsched;

namespace {

Instance one_machine(Rat p, std::size_t capacity, std::vector<Rat> releases) {
  std::vector<Job> jobs;
  for (JobId j = 0; j < releases.size(); ++j) jobs.push_back({j, releases[j], 0, 1, {0}, ObjectiveSpec::linear()});
  return Instance(p, {{0, 1, capacity}}, jobs);
}

// A random schedule that respects every constraint: jobs dealt onto random
// eligible machines, batched in release order, started as early as allowed.
Schedule random_feasible_schedule(const Instance& inst, std::mt19937_64& rng) {
  std::vector<std::vector<JobId>> per_machine(inst.m());
  for (const auto& job : inst.jobs()) per_machine[job.eligible[rng() % job.eligible.size()]].push_back(job.id);
  Schedule s;
  for (MachineId i = 0; i < inst.m(); ++i) {
    auto& list = per_machine[i];
    std::shuffle(list.begin(), list.end(), rng);
    const Rat length = inst.p() / inst.machine(i).speed;
    Rat clock = 0;
    std::size_t k = 0;
    for (std::size_t at = 0; at < list.size();) {
      std::size_t size = 1 + rng() % inst.machine(i).capacity;
      Rat start = clock;
      ++k;
      for (std::size_t c = 0; c < size && at < list.size(); ++c, ++at) {
        start = max(start, inst.job(list[at]).release);
        s.assignments.push_back({list[at], i, k});
      }
      s.batches[{i, k}] = {start, start + length};
      clock = start + length;
    }
  }
  std::sort(s.assignments.begin(), s.assignments.end());
  return s;
}

}  // namespace

TEST(Oracle, SingleJobUsesBestPosition) {
  Job job{0, 0, 1, 3, {0, 1}, ObjectiveSpec::linear()};
  Instance inst(6, {{0, 1, 1}, {1, 3, 1}}, {job});
  // best position: machine 1, k = 1, completion 6/3 = 2
  EXPECT_EQ(brute_force_solve(inst, Mode::min_sum).objective_value, eval_cost(job, 2));
  EXPECT_EQ(brute_force_solve(inst, Mode::min_max).objective_value, Rat(3));
  EXPECT_EQ(brute_force_solve(inst, Mode::makespan).objective_value, Rat(2));
}

TEST(Oracle, HandEnumeratedExamples) {
  // {01}{2} or {0}{12} etc.: two jobs complete at 1, one at 2
  EXPECT_EQ(brute_force_solve(one_machine(1, 2, {0, 0, 0}), Mode::min_sum).objective_value, Rat(4));
  // batch together starting at 3, or split: both end at 4
  EXPECT_EQ(brute_force_solve(one_machine(1, 2, {0, 3}), Mode::makespan).objective_value, Rat(4));
  // K = 1: second job waits for the first
  EXPECT_EQ(brute_force_solve(one_machine(2, 1, {1, 1}), Mode::makespan).objective_value, Rat(5));
}

TEST(Oracle, Limits) {
  auto big = generate_instance(1, 8, 2, SetStructure::arbitrary);
  EXPECT_THROW(brute_force_solve(big, Mode::min_sum), TooLarge);
  EXPECT_NO_THROW(brute_force_solve(big, Mode::min_sum, {8, 3}));
  auto wide = generate_instance(1, 3, 4, SetStructure::arbitrary);
  EXPECT_THROW(brute_force_solve(wide, Mode::makespan), TooLarge);
  Instance empty(1, {{0, 1, 1}}, {Job{0, 0, 0, 1, {}, ObjectiveSpec::linear()}});
  EXPECT_THROW(brute_force_solve(empty, Mode::makespan), InfeasibleInstance);
}

TEST(Oracle, MakespanAgreesWithMinMaxIdentityCost) {
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    GenParams params;
    params.due_min = params.due_max = 0;
    params.weight_min = params.weight_max = 1;
    params.objectives = {ObjectiveKind::linear};
    auto inst = generate_instance(seed, 1 + seed % 6, 1 + seed % 3, SetStructure::arbitrary, params);
    ASSERT_EQ(brute_force_solve(inst, Mode::makespan).objective_value,
              brute_force_solve(inst, Mode::min_max).objective_value)
        << "seed " << seed;
  }
}

TEST(Oracle, SchedulesAreValidAndDeterministic) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    auto inst = reference::random_small_instance(seed, true);
    auto a = brute_force_solve(inst, Mode::makespan);
    auto b = brute_force_solve(inst, Mode::makespan);
    ASSERT_EQ(a.schedule, b.schedule);
    ASSERT_TRUE(validate_schedule(inst, a.schedule).ok());
    ASSERT_EQ(schedule_makespan(inst, a.schedule), a.objective_value);
    auto eq = reference::random_small_instance(seed, false);
    auto s = brute_force_solve(eq, Mode::min_sum);
    ASSERT_TRUE(validate_schedule(eq, s.schedule).ok());
    ASSERT_EQ(evaluate_schedule(eq, s.schedule, Aggregation::sum), s.objective_value);
  }
}

TEST(Oracle, NeverWorseThanAnyFeasibleSchedule) {
  std::mt19937_64 rng(314);
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    auto rel = reference::random_small_instance(seed, true);
    auto eq = reference::random_small_instance(seed, false);
    const Rat best_makespan = brute_force_solve(rel, Mode::makespan).objective_value;
    const Rat best_sum = brute_force_solve(eq, Mode::min_sum).objective_value;
    const Rat best_max = brute_force_solve(eq, Mode::min_max).objective_value;
    for (int draw = 0; draw < 20; ++draw) {
      auto s = random_feasible_schedule(rel, rng);
      ASSERT_TRUE(validate_schedule(rel, s).ok());
      ASSERT_LE(best_makespan, schedule_makespan(rel, s));
      auto t = random_feasible_schedule(eq, rng);
      ASSERT_TRUE(validate_schedule(eq, t).ok());
      ASSERT_LE(best_sum, evaluate_schedule(eq, t, Aggregation::sum));
      ASSERT_LE(best_max, evaluate_schedule(eq, t, Aggregation::max));
    }
  }
}
