#include "lvcert/lvcert.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <string>
#include <variant>

#include "lv/io.hpp"

struct lvc_system {
  std::variant<lv::SystemFile<lv::Rational>, lv::SystemFile<double>> file;
};

struct lvc_trajectory {
  lv::Trajectory traj;
  std::size_t dim;
};

namespace {

thread_local std::string g_last_error;

constexpr const char* kVersion = "0.1.0";

lvc_status status_of(lv::Errc c) {
  switch (c) {
    case lv::Errc::InvalidArgument: return LVC_ERR_INVALID_ARGUMENT;
    case lv::Errc::Dimension: return LVC_ERR_DIMENSION;
    case lv::Errc::Validation: return LVC_ERR_VALIDATION;
    case lv::Errc::Parse: return LVC_ERR_PARSE;
    case lv::Errc::Io: return LVC_ERR_IO;
    case lv::Errc::Precondition: return LVC_ERR_PRECONDITION;
    case lv::Errc::Inconsistent: return LVC_ERR_INCONSISTENT;
    case lv::Errc::Numeric: return LVC_ERR_NUMERIC;
  }
  return LVC_ERR_INTERNAL;
}

lvc_status fail(lvc_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

template <class F>
lvc_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return LVC_OK;
  } catch (const lv::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(LVC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LVC_ERR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

lv::AnalyzeOptions to_options(const lvc_analyze_options* o) {
  lv::AnalyzeOptions opt;
  if (!o) return opt;
  opt.variant = o->variant == LVC_VARIANT_CAPACITY ? lv::BoundVariant::Capacity : lv::BoundVariant::Ultimate;
  opt.ordering = o->ordering == LVC_ORDERING_EXHAUSTIVE ? lv::OrderingSearch::Exhaustive : lv::OrderingSearch::Greedy;
  return opt;
}

lv::VerifyOptions to_options(const lvc_verify_options* o) {
  lv::VerifyOptions opt;
  if (!o) return opt;
  opt.samples = o->samples;
  opt.seed = o->seed;
  opt.t_end = o->t_end;
  opt.dt = o->dt;
  opt.stride = o->stride;
  opt.tol = o->tol;
  return opt;
}

template <class T>
lv::Json analysis_json(const lv::Verdict<T>& v) {
  return lv::Json{{"verdict", lv::verdict_to_json(v)},
                  {"certificate", lv::certificate_to_json(v.certificate)},
                  {"bounds", lv::bounds_to_json(v.certificate)}};
}

template <class T>
void corrupt(lv::Verdict<T>& v) {
  if (v.attractor && !v.attractor->empty()) (*v.attractor)[0] += T(1) / T(10);
  if (!v.certificate.reports.empty()) v.certificate.reports.front().holds = !v.certificate.reports.front().holds;
}

template <class T>
lv::Json verify_impl(const lv::SystemFile<T>& file, const lv::AnalyzeOptions& aopt, const lvc_verify_options* vo,
                     int* contradicted) {
  const auto& sys = file.system;
  auto verdict = lv::analyze(sys, aopt);
  if (vo && vo->inject_fault) corrupt(verdict);
  const bool certified = verdict.outcome != lv::Outcome::Inconclusive;
  auto issues = lv::replay_certificate(sys, verdict, aopt);
  auto sim = lv::verify_verdict(sys, verdict, to_options(vo));

  const bool bad = certified && (!issues.empty() || !sim.converged || !sim.upper_ok || !sim.lower_ok);
  if (contradicted) *contradicted = bad ? 1 : 0;

  lv::Json out = analysis_json(verdict);
  out["replay"] = issues;
  lv::Json s = lv::sim_report_to_json(sim);
  s["status"] = !certified ? "evidence only" : (bad ? "contradicts verdict" : "consistent with verdict");
  out["sim"] = std::move(s);
  return out;
}

}  // namespace

extern "C" {

const char* lvc_version(void) { return kVersion; }

const char* lvc_last_error(void) { return g_last_error.c_str(); }

void lvc_analyze_options_init(lvc_analyze_options* opts) {
  if (!opts) return;
  opts->variant = LVC_VARIANT_ULTIMATE;
  opts->ordering = LVC_ORDERING_GREEDY;
}

void lvc_verify_options_init(lvc_verify_options* opts) {
  if (!opts) return;
  lv::VerifyOptions d;
  opts->samples = d.samples;
  opts->seed = d.seed;
  opts->t_end = d.t_end;
  opts->dt = d.dt;
  opts->stride = d.stride;
  opts->tol = d.tol;
  opts->inject_fault = 0;
}

static lvc_status make_system(lvc_mode mode, double eps, lvc_system** out, const std::string& text) {
  if (!out) return fail(LVC_ERR_INVALID_ARGUMENT, "null output pointer");
  *out = nullptr;
  if (mode != LVC_MODE_RATIONAL && mode != LVC_MODE_FLOAT) return fail(LVC_ERR_INVALID_ARGUMENT, "unknown mode");
  if (mode == LVC_MODE_FLOAT && !(eps >= 0.0)) return fail(LVC_ERR_INVALID_ARGUMENT, "eps must be >= 0");
  return guarded([&] {
    if (mode == LVC_MODE_RATIONAL)
      *out = new lvc_system{lv::parse_system_text<lv::Rational>(text)};
    else
      *out = new lvc_system{lv::parse_system_text<double>(text, lv::Arith<double>(eps))};
  });
}

lvc_status lvc_system_from_json(const char* json, lvc_mode mode, double eps, lvc_system** out) {
  if (!json) return fail(LVC_ERR_INVALID_ARGUMENT, "null JSON text");
  return make_system(mode, eps, out, json);
}

lvc_status lvc_system_load_file(const char* path, lvc_mode mode, double eps, lvc_system** out) {
  if (!path) return fail(LVC_ERR_INVALID_ARGUMENT, "null path");
  std::ifstream in(path);
  if (!in) {
    if (out) *out = nullptr;
    return fail(LVC_ERR_IO, std::string("cannot open ") + path);
  }
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return make_system(mode, eps, out, text);
}

void lvc_system_free(lvc_system* sys) { delete sys; }

size_t lvc_system_dim(const lvc_system* sys) {
  if (!sys) return 0;
  return std::visit([](const auto& f) { return f.system.dim(); }, sys->file);
}

lvc_mode lvc_system_mode(const lvc_system* sys) {
  return sys && sys->file.index() == 1 ? LVC_MODE_FLOAT : LVC_MODE_RATIONAL;
}

lvc_status lvc_system_to_json(const lvc_system* sys, char** out_json) {
  if (!sys || !out_json) return fail(LVC_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out_json = dup_string(std::visit([](const auto& f) { return lv::system_to_json(f); }, sys->file).dump(2)); });
}

lvc_status lvc_analyze(const lvc_system* sys, const lvc_analyze_options* opts, char** out_json) {
  if (!sys || !out_json) return fail(LVC_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto opt = to_options(opts);
    auto j = std::visit([&](const auto& f) { return analysis_json(lv::analyze(f.system, opt)); }, sys->file);
    *out_json = dup_string(j.dump(2));
  });
}

lvc_status lvc_equilibria(const lvc_system* sys, char** out_json) {
  if (!sys || !out_json) return fail(LVC_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto j = std::visit(
        [](const auto& f) { return lv::equilibria_to_json(f.system, lv::enumerate_equilibria(f.system)); }, sys->file);
    *out_json = dup_string(j.dump(2));
  });
}

lvc_status lvc_verify(const lvc_system* sys, const lvc_analyze_options* aopts, const lvc_verify_options* vopts,
                      char** out_json, int* contradicted) {
  if (!sys || !out_json) return fail(LVC_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto aopt = to_options(aopts);
    auto j = std::visit([&](const auto& f) { return verify_impl(f, aopt, vopts, contradicted); }, sys->file);
    *out_json = dup_string(j.dump(2));
  });
}

lvc_status lvc_random_starts(const lvc_system* sys, size_t count, uint64_t seed, double* out) {
  if (!sys || (!out && count > 0)) return fail(LVC_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto starts = std::visit([&](const auto& f) { return lv::random_starts(lv::to_double(f.system), count, seed); },
                             sys->file);
    const std::size_t n = lvc_system_dim(sys);
    for (std::size_t s = 0; s < starts.size(); ++s) std::copy(starts[s].begin(), starts[s].end(), out + s * n);
  });
}

lvc_status lvc_simulate(const lvc_system* sys, const double* x0, size_t dim, double t_end, double dt, size_t stride,
                        lvc_trajectory** out) {
  if (!sys || !x0 || !out) return fail(LVC_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  if (dim != lvc_system_dim(sys))
    return fail(LVC_ERR_DIMENSION, "initial state has " + std::to_string(dim) + " components, system has " +
                                       std::to_string(lvc_system_dim(sys)));
  return guarded([&] {
    lv::Vec<double> start(x0, x0 + dim);
    auto traj = std::visit(
        [&](const auto& f) { return lv::integrate(lv::to_double(f.system), start, t_end, dt, stride); }, sys->file);
    *out = new lvc_trajectory{std::move(traj), dim};
  });
}

size_t lvc_trajectory_length(const lvc_trajectory* traj) { return traj ? traj->traj.times.size() : 0; }
size_t lvc_trajectory_dim(const lvc_trajectory* traj) { return traj ? traj->dim : 0; }

double lvc_trajectory_time(const lvc_trajectory* traj, size_t k) {
  if (!traj || k >= traj->traj.times.size()) return 0.0;
  return traj->traj.times[k];
}

const double* lvc_trajectory_state(const lvc_trajectory* traj, size_t k) {
  if (!traj || k >= traj->traj.states.size()) return nullptr;
  return traj->traj.states[k].data();
}

lvc_status lvc_trajectory_write_csv(const lvc_trajectory* traj, const char* path) {
  if (!traj || !path) return fail(LVC_ERR_INVALID_ARGUMENT, "null argument");
  std::FILE* fp = std::fopen(path, "w");
  if (!fp) return fail(LVC_ERR_IO, std::string("cannot write ") + path);
  std::string line = "t";
  for (std::size_t i = 0; i < traj->dim; ++i) line += ",x" + std::to_string(i + 1);
  std::fprintf(fp, "%s\n", line.c_str());
  for (std::size_t k = 0; k < traj->traj.times.size(); ++k) {
    std::fprintf(fp, "%.17g", traj->traj.times[k]);
    for (double x : traj->traj.states[k]) std::fprintf(fp, ",%.17g", x);
    std::fputc('\n', fp);
  }
  if (std::fclose(fp) != 0) return fail(LVC_ERR_IO, std::string("error writing ") + path);
  g_last_error.clear();
  return LVC_OK;
}

void lvc_trajectory_free(lvc_trajectory* traj) { delete traj; }

void lvc_string_free(char* s) { std::free(s); }

}  // extern "C"
