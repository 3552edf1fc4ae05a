#include "support.hpp"

#include <ngacsafe/cli.hpp>

#include <gtest/gtest.h>

using namespace ngacsafe;
using namespace ngacsafe::testing;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Run run(std::vector<std::string> args, const std::string &input = "") {
  args.insert(args.begin(), "ngacsafe");
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

} // namespace

TEST(Cli, SafeModel) {
  const auto r = run({"check-safety", fixture_path("minimal_safe.json")});
  EXPECT_EQ(r.code, 0);
  const auto j = r.doc();
  EXPECT_EQ(j["verdict"], "safe");
  EXPECT_EQ(j["schema"], "ngacsafe/1");
  EXPECT_EQ(j["stats"]["tuplesChecked"], 1);
  EXPECT_FALSE(j["stats"].contains("elapsedMs"));
  EXPECT_FALSE(j.contains("witness"));
}

TEST(Cli, UnsafeModelWitness) {
  auto r = run({"check-safety", fixture_path("clinic_unsafe.json")});
  EXPECT_EQ(r.code, 0);
  auto j = r.doc();
  EXPECT_EQ(j["verdict"], "unsafe");
  EXPECT_EQ(j["witness"], (json{{"user", "alice"}, {"resource", "chart"},
                                {"right", "write"}}));

  r = run({"check-safety", fixture_path("clinic_unsafe.json"), "--witness"});
  j = r.doc();
  EXPECT_EQ(j["witness"]["verified"], true);
  ASSERT_EQ(j["witness"]["sequence"].size(), 2u);
  EXPECT_EQ(j["witness"]["sequence"][1]["command"], "promote_alice");
  EXPECT_EQ(j["witness"]["path"],
            (json{"alice", "doctors", "records", "chart"}));
}

TEST(Cli, WitnessOutputVerifies) {
  const auto m = load_model("c5_model.json");
  const auto j = run({"check-safety", fixture_path("c5_model.json"), "--witness"}).doc();
  ASSERT_EQ(j["verdict"], "unsafe");
  CommandSequence seq;
  for (const auto &step : j["witness"]["sequence"]) {
    const auto it = std::find_if(m.commands.begin(), m.commands.end(),
                                 [&](const Command &c) {
                                   return c.name == step["command"].get<std::string>();
                                 });
    ASSERT_NE(it, m.commands.end());
    seq.push_back({*it, io::argument_from(io::detail::Reader(step["argument"], ""))});
  }
  const auto &w = j["witness"];
  EXPECT_TRUE(verify_unsafety_certificate(m, w["user"].get<std::string>(),
                                          w["resource"].get<std::string>(),
                                          w["right"].get<std::string>(), seq));
}

TEST(Cli, TimingIsOptIn) {
  const auto j = run({"check-safety", fixture_path("clinic_safe.json"), "--timing"}).doc();
  EXPECT_TRUE(j["stats"].contains("elapsedMs"));
}

TEST(Cli, JobsFlag) {
  const auto a = run({"check-safety", fixture_path("c5_model.json"), "--witness"});
  const auto b = run({"check-safety", fixture_path("c5_model.json"), "--witness",
                      "--jobs", "3"});
  EXPECT_EQ(a.doc()["witness"], b.doc()["witness"]);
  EXPECT_EQ(run({"check-safety", fixture_path("c5_model.json"), "--jobs", "0"}).code, 2);
}

TEST(Cli, ReadsStdin) {
  const auto r = run({"check-safety", "-"}, read_fixture("clinic_safe.json"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.doc()["verdict"], "safe");
}

TEST(Cli, ValidateReportsDiagnostics) {
  auto r = run({"validate", fixture_path("clinic_safe.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.doc()["verdict"], "valid");
  r = run({"validate", fixture_path("clinic_asymmetric.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.doc()["verdict"], "invalid");
  EXPECT_EQ(r.doc()["diagnostics"][0]["code"], "asymmetric condition");
  r = run({"validate", fixture_path("clinic_asymmetric.json"), "--lenient"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.doc()["diagnostics"][0]["severity"], "warning");
}

TEST(Cli, InvalidInputExitCode) {
  auto r = run({"check-safety", fixture_path("clinic_cyclic.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.doc()["error"]["kind"], "invalid model");
  r = run({"solve-dacc", fixture_path("broken.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.doc()["error"]["kind"], "parse error");
  r = run({"check-safety", fixture_path("no_such_file.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST(Cli, ResourceExitCode) {
  const auto r = run({"check-safety", fixture_path("mutex_2x333.json"),
                      "--max-mis", "10"});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(r.doc()["error"]["kind"], "resource limit");
}

TEST(Cli, SolveDacc) {
  auto j = run({"solve-dacc", fixture_path("k4_dacc.json")}).doc();
  EXPECT_EQ(j["verdict"], "unreachable");
  j = run({"solve-dacc", fixture_path("small_dacc.json")}).doc();
  EXPECT_EQ(j["verdict"], "reachable");
  EXPECT_EQ(j["witness"]["path"], (json{"s", "a", "t"}));
}

TEST(Cli, ReductionPipeline) {
  auto r = run({"reduce-3col", fixture_path("k4_graph.json")});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(run({"solve-dacc", "-"}, r.out).doc()["verdict"], "unreachable");
  r = run({"reduce-3col", fixture_path("c5_graph.json")});
  const auto dacc = r.out;
  EXPECT_EQ(run({"solve-dacc", "-"}, dacc).doc()["verdict"], "reachable");
  r = run({"reduce-dacc", "-"}, dacc);
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, read_fixture("c5_model.json"));
  EXPECT_EQ(run({"check-safety", "-"}, r.out).doc()["verdict"], "unsafe");
}

TEST(Cli, Generators) {
  auto r = run({"gen", "triangles", "3"});
  ASSERT_EQ(r.code, 0);
  const auto bench = run({"bench", "mis"}, r.out);
  ASSERT_EQ(bench.code, 0);
  const auto j = bench.doc();
  EXPECT_EQ(j["stats"]["misEnumerated"], 27);
  EXPECT_EQ(j["stats"]["bruteForceMis"], 27);
  EXPECT_EQ(j["stats"]["agree"], true);

  r = run({"gen", "mutex", "--users", "2", "--groups", "3,3,3"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, read_fixture("mutex_2x333.json"));
  EXPECT_EQ(run({"gen", "mutex", "--users", "1", "--groups", "1"}).code, 2);
}

TEST(Cli, BenchMisSkipsLargeBruteForce) {
  const auto j = run({"bench", "mis", "7"}).doc();
  EXPECT_EQ(j["stats"]["misEnumerated"], 2187);
  EXPECT_TRUE(j["stats"].contains("bruteForce"));
  EXPECT_FALSE(j["stats"].contains("bruteForceMis"));
}

TEST(Cli, BenchSafety) {
  const auto j = run({"bench", "safety", fixture_path("mutex_2x333.json")}).doc();
  EXPECT_EQ(j["verdict"], "safe");
  EXPECT_EQ(j["stats"]["maxMisPerTuple"], 729);
  EXPECT_EQ(j["stats"]["naiveSubsetsPerTuple"], 262144);
  EXPECT_EQ(j["stats"]["constraintVertices"], 18);
}

TEST(Cli, OutputIsDeterministic) {
  for (const char *f : {"clinic_unsafe.json", "c5_model.json", "k4_model.json"}) {
    const auto a = run({"check-safety", fixture_path(f), "--witness"});
    const auto b = run({"check-safety", fixture_path(f), "--witness"});
    EXPECT_EQ(a.out, b.out) << f;
    EXPECT_EQ(a.out.find('\n'), a.out.size() - 1) << "single line";
  }
}
