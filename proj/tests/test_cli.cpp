#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string("'") + PBSCHED_CLI + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, {}};
  std::string out;
  char buf[4096];
  for (std::size_t got; (got = fread(buf, 1, sizeof buf, pipe)) > 0;) out.append(buf, got);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("pbsched_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& content) {
    auto path = dir_ / name;
    std::ofstream(path, std::ios::binary) << content;
    return path.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

constexpr const char* kTwoJobs = R"({"p": 2,
  "machines": [{"id": 0, "speed": 1, "capacity": 2}],
  "jobs": [{"id": 0, "release": 0, "eligible": [0]}, {"id": 1, "release": 1, "eligible": [0]}]})";

}  // namespace

TEST_F(Cli, SolveWritesScheduleAndValidates) {
  auto inst = file("inst.json", kTwoJobs);
  auto r = run("solve --mode makespan --input " + inst + " --output " + path("s.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(fs::exists(path("s.json")));
  auto v = run("validate --mode makespan --instance " + inst + " --schedule " + path("s.json"));
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(v.out, "ok\n");
  auto stdout_run = run("solve --mode makespan --input " + inst);
  EXPECT_NE(stdout_run.out.find("\"objective_value\": \"3\""), std::string::npos) << stdout_run.out;
}

TEST_F(Cli, InputErrorsExitOneWithoutOutput) {
  auto bad = file("bad.json", "{ nope");
  auto r = run("solve --mode makespan --input " + bad + " --output " + path("out.json"));
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(fs::exists(path("out.json")));
  EXPECT_EQ(run("solve --mode min-sum --input " + file("rel.json", kTwoJobs)).code, 1);
  EXPECT_EQ(run("solve --mode fastest --input " + bad).code, 1);
  EXPECT_EQ(run("solve --mode makespan --input " + path("missing.json")).code, 1);
  EXPECT_EQ(run("bogus").code, 1);
}

TEST_F(Cli, InfeasibleExitsTwo) {
  auto empty = file("e.json", R"({"p": 1, "machines": [{"id": 0, "speed": 1, "capacity": 1}],
    "jobs": [{"id": 0, "eligible": [0]}, {"id": 1, "eligible": []}]})");
  for (const char* mode : {"min-sum", "min-max", "makespan"}) {
    auto r = run(std::string("solve --mode ") + mode + " --input " + empty + " --output " + path("out.json"));
    EXPECT_EQ(r.code, 2) << mode;
    EXPECT_FALSE(fs::exists(path("out.json")));
  }
  EXPECT_EQ(run("oracle --mode makespan --input " + empty).code, 2);
  // other commands keep the strict reading
  EXPECT_EQ(run("classify --input " + empty).code, 1);
  auto unknown = file("u.json", R"({"p": 1, "machines": [{"id": 0, "speed": 1, "capacity": 1}],
    "jobs": [{"id": 0, "eligible": [1]}]})");
  EXPECT_EQ(run("solve --mode makespan --input " + unknown).code, 1);
}

TEST_F(Cli, ValidateReportsViolations) {
  auto inst = file("inst.json", kTwoJobs);
  auto early = file("early.json", R"({"objective_value": "2", "batches": [
    {"machine": 0, "k": 1, "start": 0, "completion": 2, "jobs": [0, 1]}]})");
  auto r = run("validate --instance " + inst + " --schedule " + early);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("release"), std::string::npos) << r.out;
  auto wrong_value = file("w.json", R"({"objective_value": "7", "batches": [
    {"machine": 0, "k": 1, "start": 1, "completion": 3, "jobs": [0, 1]}]})");
  EXPECT_EQ(run("validate --instance " + inst + " --schedule " + wrong_value).code, 0);
  EXPECT_EQ(run("validate --mode makespan --instance " + inst + " --schedule " + wrong_value).code, 2);
}

TEST_F(Cli, CandidatesAndClassify) {
  auto inst = file("inst.json", kTwoJobs);
  auto c = run("candidates --mode makespan --input " + inst);
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(c.out, "2\n3\n4\n5\n");
  auto k = run("classify --input " + inst);
  ASSERT_EQ(k.code, 0);
  EXPECT_NE(k.out.find("inclusive"), std::string::npos);
}

TEST_F(Cli, OracleMatchesSolve) {
  auto gen = run("generate --seed 11 --n 5 --m 3 --release-max 2 --output " + path("g.json"));
  ASSERT_EQ(gen.code, 0);
  auto a = run("solve --mode makespan --input " + path("g.json"));
  auto b = run("oracle --mode makespan --input " + path("g.json"));
  ASSERT_EQ(a.code, 0);
  ASSERT_EQ(b.code, 0);
  auto value = [](const std::string& s) { return s.substr(s.find("\"objective_value\"")); };
  EXPECT_EQ(value(a.out), value(b.out));
  EXPECT_EQ(run("oracle --mode makespan --max-jobs 3 --input " + path("g.json")).code, 1);
}

TEST_F(Cli, ExportGantt) {
  auto s = file("s.json", R"({"objective_value": "2", "batches": [
    {"machine": 0, "k": 1, "start": 0, "completion": 2, "jobs": [0, 1]}]})");
  auto r = run("export-gantt --schedule " + s);
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "machine,k,start,completion,job_ids\n0,1,0,2,0;1\n");
}

TEST_F(Cli, GenerateSolvePipelineIsByteIdentical) {
  const std::string pipeline = "generate --seed 7 --n 12 --m 4 --release-max 3 | '" + std::string(PBSCHED_CLI) +
                               "' solve --mode makespan";
  auto first = run(pipeline);
  ASSERT_EQ(first.code, 0);
  ASSERT_FALSE(first.out.empty());
  for (int rep = 0; rep < 3; ++rep) EXPECT_EQ(run(pipeline).out, first.out);
}
