#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "pbsched/model.hpp"

namespace pbsched {

struct ProcessingSetStructure {
  bool inclusive = false;
  bool nested = false;
  bool interval = false;
  bool tree_hierarchical = false;

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    if (inclusive) out.emplace_back("inclusive");
    if (nested) out.emplace_back("nested");
    if (interval) out.emplace_back("interval");
    if (tree_hierarchical) out.emplace_back("tree_hierarchical");
    return out;
  }
  friend bool operator==(const ProcessingSetStructure&, const ProcessingSetStructure&) = default;
};

namespace detail {

inline bool is_subset(const std::vector<MachineId>& a, const std::vector<MachineId>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline bool disjoint(const std::vector<MachineId>& a, const std::vector<MachineId>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return false;
    if (*i < *j) ++i;
    else ++j;
  }
  return true;
}

// Parent array (nullopt for the root) of a rooted tree on m machines in which
// every set is the path from some node up to the root, if one exists.
//
// Along any root path, machines that lie in more sets sit higher. Machines in
// exactly the same sets are interchangeable and are ordered by id. Sorting
// every set by that key therefore recovers the only candidate chains; the
// family is tree-hierarchical iff those chains agree on every parent link and
// all start at the same root.
inline std::optional<std::vector<std::optional<MachineId>>> root_path_tree(
    const std::vector<std::vector<MachineId>>& sets, std::size_t m) {
  std::vector<std::size_t> count(m, 0);
  for (const auto& s : sets)
    for (auto i : s) ++count[i];
  auto above = [&](MachineId a, MachineId b) {
    if (count[a] != count[b]) return count[a] > count[b];
    return a < b;
  };

  constexpr MachineId unset = static_cast<MachineId>(-1);
  std::vector<MachineId> parent(m, unset);
  std::vector<bool> is_root(m, false);
  std::optional<MachineId> root;
  for (const auto& s : sets) {
    if (s.empty()) continue;
    std::vector<MachineId> chain = s;
    std::sort(chain.begin(), chain.end(), above);
    if (root && *root != chain.front()) return std::nullopt;
    root = chain.front();
    is_root[chain.front()] = true;
    for (std::size_t t = 1; t < chain.size(); ++t) {
      MachineId c = chain[t];
      if (is_root[c]) return std::nullopt;
      if (parent[c] != unset && parent[c] != chain[t - 1]) return std::nullopt;
      parent[c] = chain[t - 1];
    }
  }
  if (!root) return std::nullopt;

  std::vector<std::optional<MachineId>> out(m);
  for (MachineId i = 0; i < m; ++i) {
    if (i == *root) continue;
    out[i] = parent[i] == unset ? *root : parent[i];  // unused machines hang off the root
  }
  return out;
}

}  // namespace detail

// Reports every structural label the instance's processing sets satisfy.
// Interval is judged in machine-id order.
inline ProcessingSetStructure classify_processing_sets(const Instance& instance) {
  std::vector<std::vector<MachineId>> sets;
  sets.reserve(instance.n());
  for (const auto& j : instance.jobs()) sets.push_back(j.eligible);

  ProcessingSetStructure out;
  out.inclusive = true;
  out.nested = true;
  for (std::size_t a = 0; a < sets.size(); ++a) {
    for (std::size_t b = a + 1; b < sets.size(); ++b) {
      bool comparable = detail::is_subset(sets[a], sets[b]) || detail::is_subset(sets[b], sets[a]);
      if (!comparable) out.inclusive = false;
      if (!comparable && !detail::disjoint(sets[a], sets[b])) out.nested = false;
    }
  }

  out.interval = std::all_of(sets.begin(), sets.end(), [](const auto& s) {
    return !s.empty() && s.back() - s.front() + 1 == s.size();
  });

  out.tree_hierarchical = detail::root_path_tree(sets, instance.m()).has_value();
  return out;
}

}  // namespace pbsched
