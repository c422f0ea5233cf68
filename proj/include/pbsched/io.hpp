#pragma once

#include <nlohmann/json.hpp>

#include <initializer_list>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

#include "pbsched/error.hpp"
#include "pbsched/model.hpp"
#include "pbsched/schedule.hpp"

namespace pbsched {

using nlohmann::json;

namespace detail {

inline void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> known, const std::string& where) {
  if (!obj.is_object()) throw SchemaError(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (auto k : known) ok = ok || key == k;
    if (!ok) throw SchemaError(where + ": unknown key '" + key + "'");
  }
}

inline const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(where + ": missing '" + key + "'");
  return *it;
}

// Integers or "num/den" strings; negative values rejected.
inline Rat rat_field(const json& v, const std::string& where) {
  Rat out;
  if (v.is_number_integer()) {
    out = v.is_number_unsigned() ? Rat(v.get<unsigned long>()) : Rat(v.get<long>());
  } else if (v.is_string()) {
    try {
      out = Rat::parse(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw SchemaError(where + ": " + e.what());
    }
  } else {
    throw SchemaError(where + ": expected an integer or a \"num/den\" string");
  }
  if (out < 0) throw SchemaError(where + ": must be non-negative");
  return out;
}

inline std::size_t index_field(const json& v, const std::string& where) {
  if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<long>() < 0))
    throw SchemaError(where + ": expected a non-negative integer");
  return v.get<std::size_t>();
}

inline json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

inline ObjectiveSpec objective_field(const json& v, const std::string& where) {
  reject_unknown_keys(v, {"kind", "breakpoints"}, where);
  const auto& kind = require(v, "kind", where);
  if (!kind.is_string()) throw SchemaError(where + ".kind: expected a string");
  const auto name = kind.get<std::string>();
  if (name != "piecewise_linear" && v.contains("breakpoints"))
    throw SchemaError(where + ": breakpoints only apply to piecewise_linear");
  if (name == "linear") return ObjectiveSpec::linear();
  if (name == "unit_step") return ObjectiveSpec::unit_step();
  if (name != "piecewise_linear") throw SchemaError(where + ".kind: unknown objective '" + name + "'");
  const auto& list = require(v, "breakpoints", where);
  if (!list.is_array()) throw SchemaError(where + ".breakpoints: expected an array");
  std::vector<Breakpoint> points;
  for (std::size_t b = 0; b < list.size(); ++b) {
    const std::string at = where + ".breakpoints[" + std::to_string(b) + "]";
    reject_unknown_keys(list[b], {"t", "value"}, at);
    points.push_back({rat_field(require(list[b], "t", at), at + ".t"),
                      rat_field(require(list[b], "value", at), at + ".value")});
  }
  try {
    return ObjectiveSpec::piecewise_linear(std::move(points));
  } catch (const InvalidInstance& e) {
    throw SchemaError(where + ": " + e.what());
  }
}

}  // namespace detail

inline json rat_to_json(const Rat& r) { return r.str(); }

struct ParseOptions {
  // Keep jobs with no eligible machine so a solver can report them as infeasible.
  bool allow_empty_eligible = false;
};

// Parses and validates an instance document.
inline Instance parse_instance(std::string_view text, ParseOptions options = {}) {
  const json doc = detail::parse_json(text);
  detail::reject_unknown_keys(doc, {"p", "machines", "jobs"}, "instance");
  const Rat p = detail::rat_field(detail::require(doc, "p", "instance"), "p");

  const auto& machines_json = detail::require(doc, "machines", "instance");
  if (!machines_json.is_array()) throw SchemaError("machines: expected an array");
  std::vector<Machine> machines;
  std::set<std::size_t> machine_ids;
  for (std::size_t idx = 0; idx < machines_json.size(); ++idx) {
    const auto& mj = machines_json[idx];
    const std::string where = "machines[" + std::to_string(idx) + "]";
    detail::reject_unknown_keys(mj, {"id", "speed", "capacity"}, where);
    Machine mach;
    mach.id = detail::index_field(detail::require(mj, "id", where), where + ".id");
    mach.speed = detail::rat_field(detail::require(mj, "speed", where), where + ".speed");
    mach.capacity = detail::index_field(detail::require(mj, "capacity", where), where + ".capacity");
    if (!machine_ids.insert(mach.id).second) throw SchemaError(where + ".id: duplicate machine id " + std::to_string(mach.id));
    if (mach.speed < 1) throw SchemaError(where + ".speed: must be >= 1");
    if (mach.capacity < 1) throw SchemaError(where + ".capacity: must be >= 1");
    machines.push_back(std::move(mach));
  }

  const auto& jobs_json = detail::require(doc, "jobs", "instance");
  if (!jobs_json.is_array()) throw SchemaError("jobs: expected an array");
  std::vector<Job> jobs;
  std::set<std::size_t> job_ids;
  for (std::size_t idx = 0; idx < jobs_json.size(); ++idx) {
    const auto& jj = jobs_json[idx];
    const std::string where = "jobs[" + std::to_string(idx) + "]";
    detail::reject_unknown_keys(jj, {"id", "release", "due", "weight", "eligible", "objective"}, where);
    Job job;
    job.id = detail::index_field(detail::require(jj, "id", where), where + ".id");
    const std::string name = "job " + std::to_string(job.id);
    if (!job_ids.insert(job.id).second) throw SchemaError(where + ".id: duplicate job id " + std::to_string(job.id));
    if (jj.contains("release")) job.release = detail::rat_field(jj["release"], name + ".release");
    if (jj.contains("due")) job.due = detail::rat_field(jj["due"], name + ".due");
    if (jj.contains("weight")) job.weight = detail::rat_field(jj["weight"], name + ".weight");
    const auto& elig = detail::require(jj, "eligible", where);
    if (!elig.is_array()) throw SchemaError(name + ".eligible: expected an array");
    if (elig.empty() && !options.allow_empty_eligible) throw SchemaError(name + ".eligible: empty eligible set");
    std::set<MachineId> members;
    for (const auto& e : elig) {
      auto i = detail::index_field(e, name + ".eligible");
      if (!members.insert(i).second) throw SchemaError(name + ".eligible: duplicate machine " + std::to_string(i));
      if (!machine_ids.count(i)) throw SchemaError(name + ".eligible: unknown machine " + std::to_string(i));
    }
    job.eligible.assign(members.begin(), members.end());
    job.objective = jj.contains("objective") ? detail::objective_field(jj["objective"], name + ".objective")
                                             : ObjectiveSpec::linear();
    jobs.push_back(std::move(job));
  }
  try {
    return Instance(p, std::move(machines), std::move(jobs));
  } catch (const InvalidInstance& e) {
    throw SchemaError(e.what());
  }
}

inline json instance_to_json(const Instance& instance) {
  json doc;
  doc["p"] = rat_to_json(instance.p());
  doc["machines"] = json::array();
  for (const auto& m : instance.machines())
    doc["machines"].push_back({{"id", m.id}, {"speed", rat_to_json(m.speed)}, {"capacity", m.capacity}});
  doc["jobs"] = json::array();
  for (const auto& j : instance.jobs()) {
    json obj{{"kind", std::string(to_string(j.objective.kind()))}};
    if (j.objective.kind() == ObjectiveKind::piecewise_linear) {
      obj["breakpoints"] = json::array();
      for (const auto& b : j.objective.breakpoints())
        obj["breakpoints"].push_back({{"t", rat_to_json(b.t)}, {"value", rat_to_json(b.value)}});
    }
    doc["jobs"].push_back({{"id", j.id},
                           {"release", rat_to_json(j.release)},
                           {"due", rat_to_json(j.due)},
                           {"weight", rat_to_json(j.weight)},
                           {"eligible", j.eligible},
                           {"objective", obj}});
  }
  return doc;
}

inline std::string serialize_instance(const Instance& instance) { return instance_to_json(instance).dump(2) + "\n"; }

inline json schedule_to_json(const Schedule& schedule) {
  json doc;
  doc["objective_value"] = rat_to_json(schedule.objective_value);
  doc["batches"] = json::array();
  for (const auto& [key, jobs] : schedule.batch_members()) {
    auto it = schedule.batches.find(key);
    json b{{"machine", key.machine}, {"k", key.k}, {"jobs", jobs}};
    if (it != schedule.batches.end()) {
      b["start"] = rat_to_json(it->second.start);
      b["completion"] = rat_to_json(it->second.completion);
    }
    doc["batches"].push_back(std::move(b));
  }
  return doc;
}

// Deterministic: keys sorted, batches ordered by (machine, k).
inline std::string serialize_schedule(const Schedule& schedule) { return schedule_to_json(schedule).dump(2) + "\n"; }

inline Schedule parse_schedule(std::string_view text) {
  const json doc = detail::parse_json(text);
  detail::reject_unknown_keys(doc, {"objective_value", "batches"}, "schedule");
  Schedule out;
  out.objective_value = detail::rat_field(detail::require(doc, "objective_value", "schedule"), "objective_value");
  const auto& batches = detail::require(doc, "batches", "schedule");
  if (!batches.is_array()) throw SchemaError("batches: expected an array");
  for (std::size_t idx = 0; idx < batches.size(); ++idx) {
    const auto& bj = batches[idx];
    const std::string where = "batches[" + std::to_string(idx) + "]";
    detail::reject_unknown_keys(bj, {"machine", "k", "start", "completion", "jobs"}, where);
    BatchKey key{detail::index_field(detail::require(bj, "machine", where), where + ".machine"),
                 detail::index_field(detail::require(bj, "k", where), where + ".k")};
    if (key.k < 1) throw SchemaError(where + ".k: batch index must be >= 1");
    BatchTime t{detail::rat_field(detail::require(bj, "start", where), where + ".start"),
                detail::rat_field(detail::require(bj, "completion", where), where + ".completion")};
    if (!out.batches.emplace(key, t).second) throw SchemaError(where + ": duplicate batch");
    const auto& jobs = detail::require(bj, "jobs", where);
    if (!jobs.is_array()) throw SchemaError(where + ".jobs: expected an array");
    for (const auto& j : jobs) out.assignments.push_back({detail::index_field(j, where + ".jobs"), key.machine, key.k});
  }
  std::sort(out.assignments.begin(), out.assignments.end());
  return out;
}

// machine,k,start,completion,job_ids with job ids joined by ';'.
inline std::string export_gantt_csv(const Schedule& schedule) {
  std::ostringstream os;
  os << "machine,k,start,completion,job_ids\n";
  for (const auto& [key, jobs] : schedule.batch_members()) {
    auto it = schedule.batches.find(key);
    if (it == schedule.batches.end()) continue;
    os << key.machine << ',' << key.k << ',' << it->second.start << ',' << it->second.completion << ',';
    for (std::size_t i = 0; i < jobs.size(); ++i) os << (i ? ";" : "") << jobs[i];
    os << '\n';
  }
  return os.str();
}

}  // namespace pbsched
