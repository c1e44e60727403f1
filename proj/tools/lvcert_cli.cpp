// lvcert: command-line front end over the lvcert C API.
//
//   lvcert analyze    SYSTEM.json [--mode rational|float] [--out report.json]
//   lvcert simulate   SYSTEM.json (--x0 a,b,... | --samples N --seed S) [--out traj.csv]
//   lvcert verify     SYSTEM.json [--samples N --seed S --t-end T --tol TOL]
//   lvcert equilibria SYSTEM.json
//
// Exit codes: 0 success (any verdict), 1 input/validation/I-O error,
// 2 usage error, 3 a certified verdict was contradicted by verification.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "lvcert/lvcert.h"

namespace {

using Json = nlohmann::json;

constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitContradiction = 3;

struct Settings {
  std::string input;
  std::string mode = "rational";
  double eps = 1e-9;
  std::string variant = "U";
  std::string ordering = "greedy";
  std::string out;
  double t_end = 1000.0;
  double dt = 1e-2;
  std::size_t stride = 10;
  std::size_t samples = 20;
  std::uint64_t seed = 1;
  double tol = 1e-6;
  std::vector<double> x0;
  bool inject_fault = false;
};

struct SystemDeleter {
  void operator()(lvc_system* s) const { lvc_system_free(s); }
};
struct TrajectoryDeleter {
  void operator()(lvc_trajectory* t) const { lvc_trajectory_free(t); }
};
using SystemPtr = std::unique_ptr<lvc_system, SystemDeleter>;
using TrajectoryPtr = std::unique_ptr<lvc_trajectory, TrajectoryDeleter>;

struct Failure {
  int code;
  std::string message;
};

void check(lvc_status s, const std::string& what) {
  if (s != LVC_OK) throw Failure{kExitError, what + ": " + lvc_last_error()};
}

Json take_json(char* text) {
  Json j = Json::parse(text);
  lvc_string_free(text);
  return j;
}

SystemPtr load(const Settings& st) {
  lvc_system* raw = nullptr;
  lvc_mode mode = st.mode == "float" ? LVC_MODE_FLOAT : LVC_MODE_RATIONAL;
  check(lvc_system_load_file(st.input.c_str(), mode, st.eps, &raw), st.input);
  return SystemPtr(raw);
}

lvc_analyze_options analyze_options(const Settings& st) {
  lvc_analyze_options o;
  lvc_analyze_options_init(&o);
  o.variant = st.variant == "Y" ? LVC_VARIANT_CAPACITY : LVC_VARIANT_ULTIMATE;
  o.ordering = st.ordering == "exhaustive" ? LVC_ORDERING_EXHAUSTIVE : LVC_ORDERING_GREEDY;
  return o;
}

Json meta(const std::string& command, const Settings& st) {
  Json flags{{"mode", st.mode},     {"eps", st.eps},         {"variant", st.variant}, {"ordering-search", st.ordering},
             {"t-end", st.t_end},   {"dt", st.dt},           {"stride", st.stride},   {"samples", st.samples},
             {"seed", st.seed},     {"tol", st.tol},         {"out", st.out}};
  if (!st.x0.empty()) flags["x0"] = st.x0;
  return Json{{"version", lvc_version()}, {"command", command}, {"input", st.input}, {"flags", std::move(flags)}};
}

void emit(const Json& report, const std::string& out) {
  const std::string text = report.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw Failure{kExitError, "cannot write " + out};
  f << text;
  if (!f) throw Failure{kExitError, "error writing " + out};
}

int run_analyze(const Settings& st) {
  auto sys = load(st);
  auto opts = analyze_options(st);
  char* text = nullptr;
  check(lvc_analyze(sys.get(), &opts, &text), "analyze");
  Json report = take_json(text);
  check(lvc_equilibria(sys.get(), &text), "equilibria");
  report["equilibria"] = take_json(text);
  report["meta"] = meta("analyze", st);
  emit(report, st.out);
  return 0;
}

int run_equilibria(const Settings& st) {
  auto sys = load(st);
  char* text = nullptr;
  check(lvc_equilibria(sys.get(), &text), "equilibria");
  Json report{{"equilibria", take_json(text)}, {"meta", meta("equilibria", st)}};
  emit(report, st.out);
  return 0;
}

int run_verify(const Settings& st) {
  auto sys = load(st);
  auto aopts = analyze_options(st);
  lvc_verify_options vopts;
  lvc_verify_options_init(&vopts);
  vopts.samples = st.samples;
  vopts.seed = st.seed;
  vopts.t_end = st.t_end;
  vopts.dt = st.dt;
  vopts.stride = st.stride;
  vopts.tol = st.tol;
  vopts.inject_fault = st.inject_fault ? 1 : 0;
  char* text = nullptr;
  int contradicted = 0;
  check(lvc_verify(sys.get(), &aopts, &vopts, &text, &contradicted), "verify");
  Json report = take_json(text);
  report["meta"] = meta("verify", st);
  emit(report, st.out);
  if (contradicted) {
    std::cerr << "lvcert: verification contradicts the certified verdict\n";
    return kExitContradiction;
  }
  return 0;
}

// "<stem>_<k><ext>" for the k-th of several trajectories.
std::string numbered(const std::string& out, std::size_t k) {
  std::filesystem::path p(out);
  std::filesystem::path name = p.stem().string() + "_" + std::to_string(k) + p.extension().string();
  return (p.parent_path() / name).string();
}

int run_simulate(const Settings& st) {
  auto sys = load(st);
  const std::size_t n = lvc_system_dim(sys.get());
  std::vector<std::vector<double>> starts;
  if (!st.x0.empty()) {
    if (st.x0.size() != n)
      throw Failure{kExitError, "--x0 has " + std::to_string(st.x0.size()) + " components, system has " +
                                    std::to_string(n)};
    starts.push_back(st.x0);
  } else {
    std::vector<double> flat(st.samples * n);
    check(lvc_random_starts(sys.get(), st.samples, st.seed, flat.data()), "random starts");
    for (std::size_t s = 0; s < st.samples; ++s) starts.emplace_back(flat.begin() + s * n, flat.begin() + (s + 1) * n);
  }
  if (starts.size() > 1 && st.out.empty()) throw Failure{kExitUsage, "--out is required with several samples"};
  const std::string single = st.out.empty() ? "/dev/stdout" : st.out;

  for (std::size_t k = 0; k < starts.size(); ++k) {
    lvc_trajectory* raw = nullptr;
    check(lvc_simulate(sys.get(), starts[k].data(), n, st.t_end, st.dt, st.stride, &raw), "simulate");
    TrajectoryPtr traj(raw);
    const std::string path = starts.size() == 1 ? single : numbered(st.out, k + 1);
    check(lvc_trajectory_write_csv(traj.get(), path.c_str()), "write");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certifying analyzer for competitive Lotka-Volterra systems"};
  app.set_version_flag("--version", std::string(lvc_version()));
  app.require_subcommand(1);

  Settings st;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("input", st.input, "System file (JSON)")->required();
    cmd->add_option("--mode", st.mode, "Arithmetic")->check(CLI::IsMember({"rational", "float"}));
    cmd->add_option("--eps", st.eps, "Comparison tolerance in float mode")->check(CLI::NonNegativeNumber);
    cmd->add_option("--out", st.out, "Output path (default: stdout)");
  };
  auto add_analysis = [&](CLI::App* cmd) {
    cmd->add_option("--variant", st.variant, "Bound used for partial persistence")->check(CLI::IsMember({"U", "Y"}));
    cmd->add_option("--ordering-search", st.ordering, "Chain-ordering search")
        ->check(CLI::IsMember({"greedy", "exhaustive"}));
  };
  auto add_sim = [&](CLI::App* cmd) {
    cmd->add_option("--t-end", st.t_end, "Integration horizon")->check(CLI::NonNegativeNumber);
    cmd->add_option("--dt", st.dt, "Step size")->check(CLI::PositiveNumber);
    cmd->add_option("--stride", st.stride, "Store every k-th step")->check(CLI::PositiveNumber);
    cmd->add_option("--samples", st.samples, "Number of random starts");
    cmd->add_option("--seed", st.seed, "Seed for random starts");
  };

  auto* analyze = app.add_subcommand("analyze", "Certify the long-term behaviour of a system");
  add_common(analyze);
  add_analysis(analyze);

  auto* simulate = app.add_subcommand("simulate", "Integrate trajectories and write CSV");
  add_common(simulate);
  add_sim(simulate);
  simulate->add_option("--x0", st.x0, "Initial state, comma separated")->delimiter(',');

  auto* verify = app.add_subcommand("verify", "Analyze, then check the verdict by simulation");
  add_common(verify);
  add_analysis(verify);
  add_sim(verify);
  verify->add_option("--tol", st.tol, "Convergence tolerance")->check(CLI::PositiveNumber);
  verify->add_flag("--inject-fault", st.inject_fault, "Corrupt the verdict before checking (testing)")->group("");

  auto* equilibria = app.add_subcommand("equilibria", "List all equilibria and their positions");
  add_common(equilibria);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*analyze) return run_analyze(st);
    if (*simulate) return run_simulate(st);
    if (*verify) return run_verify(st);
    if (*equilibria) return run_equilibria(st);
  } catch (const Failure& f) {
    std::cerr << "lvcert: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "lvcert: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}
