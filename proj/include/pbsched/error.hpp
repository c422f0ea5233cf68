#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pbsched {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structural problem with an Instance (ids, ranges, objective shape).
class InvalidInstance : public Error {
 public:
  using Error::Error;
};

// Some job has no eligible machine, so no schedule exists.
class InfeasibleInstance : public Error {
 public:
  explicit InfeasibleInstance(std::vector<std::size_t> jobs)
      : Error(describe(jobs)), jobs_(std::move(jobs)) {}
  const std::vector<std::size_t>& jobs() const { return jobs_; }

 private:
  static std::string describe(const std::vector<std::size_t>& jobs) {
    std::string s = "infeasible instance: no eligible machine for job(s)";
    for (auto j : jobs) s += " " + std::to_string(j);
    return s;
  }
  std::vector<std::size_t> jobs_;
};

// An equal-release solver was handed jobs with different release times.
class UnequalReleases : public Error {
 public:
  using Error::Error;
};

class InvalidSchedule : public Error {
 public:
  using Error::Error;
};

// The min-cost engine could not cover every job vertex.
class NoSaturatingMatching : public Error {
 public:
  explicit NoSaturatingMatching(std::vector<std::size_t> unsaturated)
      : Error(describe(unsaturated)), unsaturated_(std::move(unsaturated)) {}
  const std::vector<std::size_t>& unsaturated() const { return unsaturated_; }

 private:
  static std::string describe(const std::vector<std::size_t>& xs) {
    std::string s = "no saturating matching; unsaturated job vertices:";
    for (auto x : xs) s += " " + std::to_string(x);
    return s;
  }
  std::vector<std::size_t> unsaturated_;
};

// Instance exceeds the brute-force oracle's size limits.
class TooLarge : public Error {
 public:
  using Error::Error;
};

// Malformed JSON or CSV text.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Well-formed JSON that does not describe a valid instance or schedule.
class SchemaError : public Error {
 public:
  using Error::Error;
};

class BadParams : public Error {
 public:
  using Error::Error;
};

}  // namespace pbsched
