// Command-line front end: solve, validate, oracle, candidates, generate,
// export-gantt, classify.
//
// Exit codes: 0 success, 1 input error, 2 infeasible instance (or, for
// `validate`, a schedule that violates the instance).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "pbsched/pbsched.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kInfeasible = 2;

std::string read_source(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw pbsched::ParseError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_sink(const std::string& path, const std::string& bytes) {
  if (path == "-") {
    std::cout << bytes;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw pbsched::ParseError("cannot write '" + path + "'");
  out << bytes;
}

pbsched::Mode parse_mode(const std::string& name) {
  if (name == "min-sum") return pbsched::Mode::min_sum;
  if (name == "min-max") return pbsched::Mode::min_max;
  if (name == "makespan") return pbsched::Mode::makespan;
  throw pbsched::BadParams("unknown mode '" + name + "'");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

// Runs a command body, mapping library errors onto exit codes.
template <typename Body>
int guarded(Body&& body) {
  try {
    return body();
  } catch (const pbsched::InfeasibleInstance& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const pbsched::NoSaturatingMatching& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact schedules for equal-length jobs on uniform parallel batch machines with eligibility"};
  app.require_subcommand(1);
  const std::vector<std::string> modes{"min-sum", "min-max", "makespan"};

  std::string mode, input = "-", output = "-", instance_path, schedule_path;

  auto* solve = app.add_subcommand("solve", "Solve an instance with the polynomial algorithm for a mode");
  solve->add_option("--mode", mode, "Objective")->required()->check(CLI::IsMember(modes));
  solve->add_option("--input", input, "Instance JSON ('-' for stdin)");
  solve->add_option("--output", output, "Schedule JSON ('-' for stdout)");

  auto* oracle = app.add_subcommand("oracle", "Solve a tiny instance by exhaustive search");
  oracle->add_option("--mode", mode, "Objective")->required()->check(CLI::IsMember(modes));
  oracle->add_option("--input", input, "Instance JSON ('-' for stdin)");
  oracle->add_option("--output", output, "Schedule JSON ('-' for stdout)");
  std::size_t oracle_jobs = 7, oracle_machines = 3;
  oracle->add_option("--max-jobs", oracle_jobs, "Job limit");
  oracle->add_option("--max-machines", oracle_machines, "Machine limit");

  auto* validate = app.add_subcommand("validate", "Check a schedule against an instance");
  validate->add_option("--instance", instance_path, "Instance JSON")->required();
  validate->add_option("--schedule", schedule_path, "Schedule JSON")->required();
  std::string validate_mode;
  validate->add_option("--mode", validate_mode, "Also check objective_value for this objective")
      ->check(CLI::IsMember(modes));

  auto* candidates = app.add_subcommand("candidates", "Print the sorted candidate objective values");
  candidates->add_option("--mode", mode, "min-max or makespan")->required()->check(CLI::IsMember({"min-max", "makespan"}));
  candidates->add_option("--input", input, "Instance JSON ('-' for stdin)");

  auto* classify = app.add_subcommand("classify", "Report the processing-set structure of an instance");
  classify->add_option("--input", input, "Instance JSON ('-' for stdin)");

  auto* gantt = app.add_subcommand("export-gantt", "Convert a schedule to CSV");
  gantt->add_option("--schedule", schedule_path, "Schedule JSON ('-' for stdin)")->required();
  gantt->add_option("--output", output, "CSV ('-' for stdout)");

  auto* generate = app.add_subcommand("generate", "Write a random instance");
  std::uint64_t seed = 1;
  std::size_t n = 6, m = 3;
  std::string structure = "arbitrary", speeds = "1,3/2,2", objectives = "linear,unit_step";
  std::string release_max = "0", release_step = "1/2";
  pbsched::GenParams gp;
  generate->add_option("--seed", seed, "Random seed");
  generate->add_option("--n", n, "Number of jobs");
  generate->add_option("--m", m, "Number of machines");
  generate->add_option("--structure", structure, "arbitrary|inclusive|nested|interval|tree")
      ->check(CLI::IsMember({"arbitrary", "inclusive", "nested", "interval", "tree"}));
  generate->add_option("--p-min", gp.p_min, "Smallest job length");
  generate->add_option("--p-max", gp.p_max, "Largest job length");
  generate->add_option("--speeds", speeds, "Comma-separated speeds to draw from");
  generate->add_option("--capacity-min", gp.capacity_min, "Smallest capacity");
  generate->add_option("--capacity-max", gp.capacity_max, "Largest capacity");
  generate->add_option("--release-max", release_max, "Largest release time");
  generate->add_option("--release-step", release_step, "Release grid step");
  generate->add_option("--due-min", gp.due_min, "Smallest due date");
  generate->add_option("--due-max", gp.due_max, "Largest due date");
  generate->add_option("--weight-min", gp.weight_min, "Smallest weight");
  generate->add_option("--weight-max", gp.weight_max, "Largest weight");
  generate->add_option("--objectives", objectives, "Comma-separated objective kinds (linear, unit_step)");
  generate->add_option("--output", output, "Instance JSON ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInputError;
  }

  if (*solve) {
    return guarded([&] {
      const auto instance = pbsched::parse_instance(read_source(input), {.allow_empty_eligible = true});
      const auto result = pbsched::solve(instance, parse_mode(mode));
      write_sink(output, pbsched::serialize_schedule(result.schedule));
      return kOk;
    });
  }
  if (*oracle) {
    return guarded([&] {
      const auto instance = pbsched::parse_instance(read_source(input), {.allow_empty_eligible = true});
      const auto result = pbsched::brute_force_solve(instance, parse_mode(mode), {oracle_jobs, oracle_machines});
      write_sink(output, pbsched::serialize_schedule(result.schedule));
      return kOk;
    });
  }
  if (*validate) {
    return guarded([&] {
      const auto instance = pbsched::parse_instance(read_source(instance_path));
      const auto schedule = pbsched::parse_schedule(read_source(schedule_path));
      auto report = pbsched::validate_schedule(instance, schedule);
      for (const auto& v : report.violations)
        std::cout << pbsched::to_string(v.kind) << "\t" << v.subject << "\t" << v.detail << "\n";
      if (!report.ok()) return kInfeasible;
      if (!validate_mode.empty()) {
        pbsched::Rat value;
        switch (parse_mode(validate_mode)) {
          case pbsched::Mode::min_sum: value = evaluate_schedule(instance, schedule, pbsched::Aggregation::sum); break;
          case pbsched::Mode::min_max: value = evaluate_schedule(instance, schedule, pbsched::Aggregation::max); break;
          case pbsched::Mode::makespan: value = schedule_makespan(instance, schedule); break;
        }
        if (value != schedule.objective_value) {
          std::cout << "objective\tschedule\treported " << schedule.objective_value << " but recomputed " << value << "\n";
          return kInfeasible;
        }
      }
      std::cout << "ok\n";
      return kOk;
    });
  }
  if (*candidates) {
    return guarded([&] {
      const auto instance = pbsched::parse_instance(read_source(input));
      const auto set = mode == "makespan" ? pbsched::makespan_candidates(instance) : pbsched::minmax_candidates(instance);
      std::string text;
      for (const auto& v : set.values) text += v.str() + "\n";
      write_sink("-", text);
      return kOk;
    });
  }
  if (*classify) {
    return guarded([&] {
      const auto instance = pbsched::parse_instance(read_source(input));
      std::string text;
      for (const auto& label : pbsched::classify_processing_sets(instance).labels()) text += label + "\n";
      write_sink("-", text);
      return kOk;
    });
  }
  if (*gantt) {
    return guarded([&] {
      write_sink(output, pbsched::export_gantt_csv(pbsched::parse_schedule(read_source(schedule_path))));
      return kOk;
    });
  }
  if (*generate) {
    return guarded([&] {
      gp.speeds.clear();
      for (const auto& s : split_list(speeds)) gp.speeds.push_back(pbsched::Rat::parse(s));
      gp.objectives.clear();
      for (const auto& o : split_list(objectives)) {
        if (o == "linear") gp.objectives.push_back(pbsched::ObjectiveKind::linear);
        else if (o == "unit_step") gp.objectives.push_back(pbsched::ObjectiveKind::unit_step);
        else throw pbsched::BadParams("unknown objective kind '" + o + "'");
      }
      gp.release_max = pbsched::Rat::parse(release_max);
      gp.release_step = pbsched::Rat::parse(release_step);
      const auto instance = pbsched::generate_instance(seed, n, m, pbsched::parse_structure(structure), gp);
      write_sink(output, pbsched::serialize_instance(instance));
      return kOk;
    });
  }
  return kInputError;
}
