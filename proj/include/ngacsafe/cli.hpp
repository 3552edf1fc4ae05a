#ifndef NGACSAFE_CLI_HPP
#define NGACSAFE_CLI_HPP

// Command-line front end. `run` is the whole program minus process setup
// so that it can be driven from tests with string streams.
//
// Exit codes: 0 analysis completed (verdict in the JSON on stdout),
// 2 invalid input, 3 size guard or resource limit hit.

#include <ngacsafe/dacc.hpp>
#include <ngacsafe/diagnostics.hpp>
#include <ngacsafe/io.hpp>
#include <ngacsafe/mis.hpp>
#include <ngacsafe/oracles.hpp>
#include <ngacsafe/reductions.hpp>
#include <ngacsafe/safety.hpp>
#include <ngacsafe/validate.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

namespace ngacsafe::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitResource = 3;

using io::json;

namespace detail {

class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline std::string slurp(const std::string &path, std::istream &in) {
  if (path.empty() || path == "-")
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::ifstream f(path, std::ios::binary);
  if (!f)
    throw InputError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

inline json diagnostics_json(const std::vector<Diagnostic> &ds) {
  json a = json::array();
  for (const auto &d : ds)
    a.push_back({{"severity", std::string(to_string(d.severity))},
                 {"code", d.code},
                 {"message", d.message}});
  return a;
}

inline json envelope() { return json{{"schema", std::string(io::kSchema)}}; }

class Stopwatch {
public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline json round_ms(double ms) { return std::round(ms * 1000.0) / 1000.0; }

inline json witness_json(const SafetyVerdict &v, bool full) {
  const auto &w = *v.witness;
  json j{{"user", w.user}, {"resource", w.resource}, {"right", w.right}};
  if (!full)
    return j;
  j["path"] = w.path;
  json seq = json::array();
  for (const auto &s : w.sequence)
    seq.push_back({{"command", s.command.name},
                   {"argument", io::to_json(s.argument)}});
  j["sequence"] = std::move(seq);
  j["verified"] = v.certified;
  return j;
}

struct Options {
  std::string input;
  bool lenient = false;
  bool all_potential = false;
  bool witness = false;
  unsigned jobs = 1;
  std::size_t max_mis = 0;
  bool timing = false;
  std::size_t k = 0;
  std::size_t users = 1;
  std::vector<std::size_t> groups;
  std::string bench_input;
};

inline int cmd_validate(const Options &o, std::istream &in, std::ostream &out) {
  const NgacModel m = io::parse_policy(slurp(o.input, in));
  const auto ds = validate_model(m, {o.lenient});
  json j = envelope();
  j["verdict"] = has_errors(ds) ? "invalid" : "valid";
  j["diagnostics"] = diagnostics_json(ds);
  out << j.dump() << "\n";
  return has_errors(ds) ? kExitInvalidInput : kExitOk;
}

inline int cmd_check_safety(const Options &o, std::istream &in,
                            std::ostream &out) {
  const NgacModel m = io::parse_policy(slurp(o.input, in));
  SafetyOptions so;
  so.scope = o.all_potential ? CandidateScope::AllPotential
                             : CandidateScope::Initial;
  so.jobs = o.jobs;
  so.lenient = o.lenient;
  so.max_mis = o.max_mis;
  Stopwatch sw;
  const SafetyVerdict v = check_safety(m, so);
  json j = envelope();
  j["verdict"] = v.safe ? "safe" : "unsafe";
  json stats{{"tuplesChecked", v.stats.tuples_checked},
             {"misEnumerated", v.stats.mis_enumerated}};
  if (o.timing)
    stats["elapsedMs"] = round_ms(sw.ms());
  j["stats"] = std::move(stats);
  if (v.witness)
    j["witness"] = witness_json(v, o.witness);
  std::vector<Diagnostic> warnings;
  for (const auto &d : v.diagnostics)
    if (d.severity == Severity::Warning)
      warnings.push_back(d);
  if (!warnings.empty())
    j["warnings"] = diagnostics_json(warnings);
  out << j.dump() << "\n";
  return kExitOk;
}

inline int cmd_solve_dacc(const Options &o, std::istream &in, std::ostream &out) {
  const DaccInstance inst = io::parse_dacc(slurp(o.input, in));
  Stopwatch sw;
  const DaccVerdict v = solve_dacc(inst, {o.max_mis});
  json j = envelope();
  j["verdict"] = v.reachable ? "reachable" : "unreachable";
  if (v.reachable) {
    json path = json::array();
    for (Index x : *v.path)
      path.push_back(inst.dag().name(x));
    j["witness"] = {{"path", std::move(path)}, {"edgeSet", *v.edge_set}};
  }
  json stats{{"misEnumerated", v.mis_enumerated}};
  if (o.timing)
    stats["elapsedMs"] = round_ms(sw.ms());
  j["stats"] = std::move(stats);
  out << j.dump() << "\n";
  return kExitOk;
}

inline int cmd_reduce_3col(const Options &o, std::istream &in, std::ostream &out) {
  const SimpleGraph g = io::parse_simple_graph(slurp(o.input, in));
  out << io::to_json(reduce_3col_to_dacc(g)).dump(2) << "\n";
  return kExitOk;
}

inline int cmd_reduce_dacc(const Options &o, std::istream &in, std::ostream &out) {
  const DaccInstance inst = io::parse_dacc(slurp(o.input, in));
  out << io::serialize_policy(reduce_dacc_to_cosp(inst));
  return kExitOk;
}

inline int cmd_bench_mis(const Options &o, bool have_k, std::istream &in,
                         std::ostream &out) {
  const ConstraintGraph g =
      have_k ? gen_disjoint_triangles(o.k)
             : io::parse_constraint_graph(slurp(o.bench_input, in));
  json stats{{"vertices", g.size()}, {"conflicts", g.conflicts().size()}};
  Stopwatch sw;
  std::set<std::vector<Index>> fast;
  for_each_mis(g, [&](const std::vector<Index> &s) {
    fast.insert(s);
    return true;
  });
  stats["misEnumerated"] = fast.size();
  stats["misElapsedMs"] = round_ms(sw.ms());
  try {
    Stopwatch bw;
    const auto slow = oracles::brute_force_mis(g);
    stats["bruteForceElapsedMs"] = round_ms(bw.ms());
    stats["bruteForceSubsets"] = std::uint64_t{1} << g.size();
    stats["bruteForceMis"] = slow.size();
    stats["agree"] = slow == fast;
  } catch (const SizeGuardExceeded &e) {
    stats["bruteForce"] = std::string("skipped: ") + e.what();
  }
  json j = envelope();
  j["stats"] = std::move(stats);
  out << j.dump() << "\n";
  return kExitOk;
}

inline int cmd_bench_safety(const Options &o, std::istream &in,
                            std::ostream &out) {
  const NgacModel m = io::parse_policy(slurp(o.input, in));
  SafetyOptions so;
  so.lenient = o.lenient;
  so.max_mis = o.max_mis;
  Stopwatch sw;
  const SafetyVerdict v = check_safety(m, so);
  const double ms = sw.ms();
  const std::size_t cv = v.stats.constraint_vertices;
  json stats{{"tuplesChecked", v.stats.tuples_checked},
             {"misEnumerated", v.stats.mis_enumerated},
             {"maxMisPerTuple", v.stats.max_mis_per_tuple},
             {"constraintVertices", cv},
             {"naiveSubsetsLog2", cv},
             {"elapsedMs", round_ms(ms)}};
  stats["naiveSubsetsPerTuple"] =
      cv < 64 ? json(std::uint64_t{1} << cv) : json(nullptr);
  json j = envelope();
  j["verdict"] = v.safe ? "safe" : "unsafe";
  j["stats"] = std::move(stats);
  out << j.dump() << "\n";
  return kExitOk;
}

inline int fail(std::ostream &out, std::ostream &err, int code,
                const std::string &kind, const std::string &msg,
                const std::vector<Diagnostic> *ds = nullptr) {
  json j = envelope();
  j["error"] = {{"kind", kind}, {"message", msg}};
  if (ds != nullptr)
    j["error"]["diagnostics"] = diagnostics_json(*ds);
  out << j.dump() << "\n";
  err << "ngacsafe: " << msg << "\n";
  return code;
}

} // namespace detail

/// Runs one invocation. `args[0]` is the program name.
inline int run(const std::vector<std::string> &args, std::istream &in,
               std::ostream &out, std::ostream &err) {
  CLI::App app{"Safety analysis for NGAC access-control models", "ngacsafe"};
  app.require_subcommand(1);
  detail::Options o;

  auto *validate = app.add_subcommand("validate", "check model well-formedness");
  validate->add_option("model", o.input, "model document ('-' for stdin)")
      ->required();
  validate->add_flag("--lenient", o.lenient,
                     "report inexact constraint encodings as warnings");

  auto *check = app.add_subcommand("check-safety", "decide model safety");
  check->add_option("model", o.input, "model document ('-' for stdin)")
      ->required();
  check->add_flag("--all-potential", o.all_potential,
                  "also test users/resources that commands can create");
  check->add_flag("--witness", o.witness, "print the full command sequence");
  check->add_option("--jobs", o.jobs, "parallel tuple checks")
      ->check(CLI::Range(1u, 1024u));
  check->add_flag("--lenient", o.lenient,
                  "accept models whose constraints are inexact");
  check->add_option("--max-mis", o.max_mis, "per-tuple MIS limit (0 = none)");
  check->add_flag("--timing", o.timing, "add elapsedMs to the stats");

  auto *dacc = app.add_subcommand("solve-dacc", "solve a DACC instance");
  dacc->add_option("instance", o.input, "instance document ('-' for stdin)")
      ->required();
  dacc->add_option("--max-mis", o.max_mis, "MIS limit (0 = none)");
  dacc->add_flag("--timing", o.timing, "add elapsedMs to the stats");

  auto *r3 = app.add_subcommand("reduce-3col", "3-colouring graph -> DACC");
  r3->add_option("graph", o.input, "graph document ('-' for stdin)")->required();

  auto *rd = app.add_subcommand("reduce-dacc", "DACC instance -> NGAC model");
  rd->add_option("instance", o.input, "instance document ('-' for stdin)")
      ->required();

  auto *gen = app.add_subcommand("gen", "generate worst-case inputs");
  gen->require_subcommand(1);
  auto *tri = gen->add_subcommand("triangles", "k disjoint triangles");
  tri->add_option("k", o.k, "number of triangles")->required();
  auto *mutex = gen->add_subcommand("mutex", "mutually exclusive attribute groups");
  mutex->add_option("--users", o.users, "number of users")->required();
  mutex->add_option("--groups", o.groups, "group sizes, e.g. 3,3,3")
      ->required()
      ->delimiter(',');

  auto *bench = app.add_subcommand("bench", "timing comparisons");
  bench->require_subcommand(1);
  auto *bmis = bench->add_subcommand(
      "mis", "MIS enumeration vs brute force on k triangles or a graph");
  auto *kopt = bmis->add_option("k", o.k, "triangles to generate");
  bmis->add_option("--input", o.bench_input,
                   "constraint graph document (default: stdin)");
  auto *bsafe = bench->add_subcommand("safety", "MIS vs naive search counts");
  bsafe->add_option("model", o.input, "model document ('-' for stdin)")
      ->required();
  bsafe->add_flag("--lenient", o.lenient, "accept inexact constraints");
  bsafe->add_option("--max-mis", o.max_mis, "per-tuple MIS limit (0 = none)");

  std::vector<const char *> argv;
  for (const auto &a : args)
    argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (*validate)
      return detail::cmd_validate(o, in, out);
    if (*check)
      return detail::cmd_check_safety(o, in, out);
    if (*dacc)
      return detail::cmd_solve_dacc(o, in, out);
    if (*r3)
      return detail::cmd_reduce_3col(o, in, out);
    if (*rd)
      return detail::cmd_reduce_dacc(o, in, out);
    if (*tri) {
      out << io::to_json(gen_disjoint_triangles(o.k)).dump() << "\n";
      return kExitOk;
    }
    if (*mutex) {
      out << io::serialize_policy(gen_mutex_groups_model(o.users, o.groups));
      return kExitOk;
    }
    if (*bmis)
      return detail::cmd_bench_mis(o, kopt->count() > 0, in, out);
    if (*bsafe)
      return detail::cmd_bench_safety(o, in, out);
  } catch (const ModelRejected &e) {
    return detail::fail(out, err, kExitInvalidInput, "invalid model", e.what(),
                        &e.diagnostics());
  } catch (const io::ParseError &e) {
    return detail::fail(out, err, kExitInvalidInput, "parse error", e.what());
  } catch (const detail::InputError &e) {
    return detail::fail(out, err, kExitInvalidInput, "input error", e.what());
  } catch (const InvalidArgument &e) {
    return detail::fail(out, err, kExitInvalidInput, "invalid input", e.what());
  } catch (const SizeGuardExceeded &e) {
    return detail::fail(out, err, kExitResource, "size guard", e.what());
  } catch (const ResourceExhausted &e) {
    return detail::fail(out, err, kExitResource, "resource limit", e.what());
  }
  return kExitInvalidInput;
}

} // namespace ngacsafe::cli

#endif // NGACSAFE_CLI_HPP
