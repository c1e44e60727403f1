#include "lv/analyzer.hpp"

#include <algorithm>
#include <sstream>

namespace lv {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::InteriorAttractor: return "InteriorAttractor";
    case Outcome::BoundaryAttractor: return "BoundaryAttractor";
    case Outcome::SingleSurvivor: return "SingleSurvivor";
    case Outcome::Inconclusive: return "Inconclusive";
  }
  return "?";
}

const char* to_string(Criterion c) {
  switch (c) {
    case Criterion::AllPersist: return "Th2.1";
    case Criterion::PartialPersist: return "Th2.5";
    case Criterion::PartialPersistCapacity: return "Th2.5-Yvariant";
    case Criterion::Cascade: return "Th2.10";
    case Criterion::SingleDominant: return "Cor2.8";
    case Criterion::ChainDominance: return "Cor2.13";
    case Criterion::None: return "none";
  }
  return "?";
}

const char* to_string(BoundVariant v) { return v == BoundVariant::Ultimate ? "U" : "Y"; }

namespace {

std::string one_based(std::size_t i) { return std::to_string(i + 1); }

std::string set_label(IndexSet s) {
  std::string out = "{";
  bool first = true;
  for (auto i : s.to_vector()) {
    if (!first) out += ",";
    out += one_based(i);
    first = false;
  }
  return out + "}";
}

template <class T>
struct Persistence {
  std::vector<bool> holds;  // indexed by species; false for inactive
  IndexSet passing;
};

// Runs the algebraic test (and the geometric one on small communities) for
// every active species, appending the reports to `out`.
template <class T>
Persistence<T> persistence_sweep(const LVSystem<T>& sys, const Vec<T>& bound, IndexSet active,
                                 const std::string& label, const AnalyzeOptions& opt,
                                 std::vector<ConditionReport<T>>& out) {
  Persistence<T> p{std::vector<bool>(sys.dim(), false), {}};
  for (auto k : active.to_vector()) {
    auto alg = persistence_algebraic(sys, bound, k, active, label);
    bool ok = alg.holds;
    out.push_back(std::move(alg));
    if (active.size() <= opt.geometric_limit) {
      auto geo = persistence_geometric(sys, bound, k, active, label);
      ok = ok || geo.holds;
      out.push_back(std::move(geo));
    }
    p.holds[k] = ok;
    if (ok) p.passing = p.passing.with(k);
  }
  return p;
}

template <class T>
ConditionReport<T> on_nullclines(const LVSystem<T>& sys, const Vec<T>& x, IndexSet species) {
  ConditionReport<T> r;
  r.name = "attractor_on_nullclines";
  r.indices = species.to_vector();
  for (auto j : r.indices)
    record(r, sys.arith(), "row " + one_based(j) + " . x*", sys.row_dot(j, x), Relation::Equal, T(1));
  return r;
}

template <class T>
ConditionReport<T> off_support_loads(const LVSystem<T>& sys, const Vec<T>& x, IndexSet species, Relation rel) {
  ConditionReport<T> r;
  r.name = "attractor_off_support";
  r.indices = species.to_vector();
  for (auto k : r.indices) record(r, sys.arith(), "row " + one_based(k) + " . x*", sys.row_dot(k, x), rel, T(1));
  return r;
}

template <class T>
ConditionReport<T> within_bound(const LVSystem<T>& sys, const Vec<T>& x, const Vec<T>& bound,
                                const std::string& label) {
  ConditionReport<T> r;
  r.name = "attractor_within_bound";
  r.bound = label;
  for (std::size_t i = 0; i < x.size(); ++i) {
    r.indices.push_back(i);
    record(r, sys.arith(), "x*_" + one_based(i) + " <= " + label + "_" + one_based(i), x[i], Relation::LessEqual,
           bound[i]);
  }
  return r;
}

// Column k of A equals its diagonal (exact form) or dominates it (relaxed).
template <class T>
ConditionReport<T> column_condition(const LVSystem<T>& sys, std::size_t k, bool relaxed) {
  ConditionReport<T> r;
  r.name = relaxed ? "column_dominates_diagonal" : "column_equals_diagonal";
  r.indices = {k};
  for (std::size_t j = 0; j < sys.dim(); ++j) {
    if (j == k) continue;
    record(r, sys.arith(), "a[" + one_based(k) + "][" + one_based(k) + "] vs a[" + one_based(j) + "][" + one_based(k) + "]",
           sys.a(k, k), relaxed ? Relation::LessEqual : Relation::Equal, sys.a(j, k));
  }
  if (r.details.empty()) record(r, sys.arith(), "single species", T(0), Relation::LessEqual, T(0));
  return r;
}

// Equalities the verdict hinges on (not the round-off check of the solve).
template <class T>
bool has_loose_equality(const std::vector<ConditionReport<T>>& reports) {
  for (const auto& r : reports) {
    if (!r.holds || (r.name != "attractor_off_support" && r.name != "column_equals_diagonal")) continue;
    for (const auto& d : r.details)
      if (d.rel == Relation::Equal && d.lhs != d.rhs) return true;
  }
  return false;
}

template <class T>
Outcome outcome_for(IndexSet survivors, std::size_t n) {
  if (survivors.size() == 1) return Outcome::SingleSurvivor;
  return survivors.size() == n ? Outcome::InteriorAttractor : Outcome::BoundaryAttractor;
}

// Attempts to certify the equilibrium on `support`: it must exist, lie under
// `bound`, and satisfy `off_rel` against every nullcline in `off`. All checks
// are appended to the certificate; returns the point on success.
template <class T>
std::optional<Vec<T>> certify_support(const LVSystem<T>& sys, IndexSet support, const Vec<T>& bound,
                                      const std::string& label, IndexSet off, Relation off_rel, Certificate<T>& cert) {
  auto solve = solve_support(sys, support);
  cert.solve = solve;
  if (!solve.equilibrium) {
    cert.notes.push_back("no positive equilibrium on support " + set_label(support));
    return std::nullopt;
  }
  const Vec<T>& x = solve.equilibrium->point;
  auto on = on_nullclines(sys, x, support);
  auto under = within_bound(sys, x, bound, label);
  on.active = support;
  under.active = support;
  bool ok = on.holds && under.holds;
  cert.reports.push_back(std::move(on));
  cert.reports.push_back(std::move(under));
  if (!off.empty()) {
    auto offr = off_support_loads(sys, x, off, off_rel);
    offr.active = support;
    ok = ok && offr.holds;
    cert.reports.push_back(std::move(offr));
  }
  if (!ok) return std::nullopt;
  return x;
}

template <class T>
Verdict<T> conclude(Verdict<T> v, Criterion c, IndexSet survivors, Vec<T> x, std::string label, std::size_t n) {
  v.criterion = c;
  v.survivors = survivors;
  v.attractor = std::move(x);
  v.bound_label = std::move(label);
  v.outcome = outcome_for<T>(survivors, n);
  return v;
}

}  // namespace

template <class T>
ConditionReport<T> face_equilibria_below_nullclines(const LVSystem<T>& sys) {
  ConditionReport<T> r;
  r.name = "face_equilibria_below_nullclines";
  const std::size_t n = sys.dim();
  auto eqs = enumerate_equilibria(sys);
  for (std::size_t i = 0; i < n; ++i) {
    r.indices.push_back(i);
    for (const auto& e : eqs) {
      if (e.support.contains(i)) continue;
      record(r, sys.arith(), "equilibrium " + set_label(e.support) + " vs nullcline " + one_based(i),
             sys.row_dot(i, e.point), Relation::Less, T(1));
    }
  }
  return r;
}

template <class T>
const Vec<T>& certified_bound(const Verdict<T>& v) {
  if (v.bound_label == "V") return v.certificate.cascade_bound;
  if (v.bound_label == "Y") return v.certificate.capacity;
  return v.certificate.ultimate;
}

template <class T>
Verdict<T> analyze(const LVSystem<T>& sys, const AnalyzeOptions& opt) {
  const std::size_t n = sys.dim();
  const IndexSet all = IndexSet::all(n);
  const bool capacity_variant = opt.variant == BoundVariant::Capacity;

  Verdict<T> v;
  Certificate<T>& cert = v.certificate;
  cert.capacity = carrying_capacities(sys);
  cert.ultimate = ultimate_upper_bound(sys);
  auto cascade = extinction_cascade(sys);
  cert.extinct = cascade.extinct;
  cert.cascade_bound = cascade.bound;

  auto finish = [&](Verdict<T> out) {
    if (sys.arith().mode == Mode::Float) out.certificate.tolerance_dependent = has_loose_equality(out.certificate.reports);
    return out;
  };

  // (a) every species persists under U.
  auto pu = persistence_sweep(sys, cert.ultimate, all, "U", opt, cert.reports);
  if (pu.passing == all) {
    if (auto x = certify_support(sys, all, cert.ultimate, "U", IndexSet{}, Relation::Equal, cert))
      return finish(conclude(std::move(v), Criterion::AllPersist, all, std::move(*x), "U", n));
    cert.notes.push_back("all species persist but the interior equilibrium could not be certified");
  }

  // (b) maximal persisting subset.
  Persistence<T> pw = pu;
  const std::string wlabel = capacity_variant ? "Y" : "U";
  const Vec<T>& wbound = capacity_variant ? cert.capacity : cert.ultimate;
  if (capacity_variant) pw = persistence_sweep(sys, cert.capacity, all, "Y", opt, cert.reports);
  if (!pw.passing.empty() && pw.passing != all) {
    IndexSet J = pw.passing;
    auto rel = capacity_variant ? Relation::GreaterEqual : Relation::Equal;
    if (auto x = certify_support(sys, J, wbound, wlabel, all.minus(J), rel, cert)) {
      auto c = capacity_variant ? Criterion::PartialPersistCapacity : Criterion::PartialPersist;
      return finish(conclude(std::move(v), c, J, std::move(*x), wlabel, n));
    }
  }

  // (c) extinction cascade, then persistence of the rest under V.
  if (!cert.extinct.empty() && cert.extinct.size() < n) {
    auto order = extinction_order_criterion(sys, cert.extinct);
    bool ok = order.holds;
    cert.reports.push_back(std::move(order));
    IndexSet rest = all.minus(IndexSet::from(cert.extinct));
    if (rest.size() > 1) {
      auto pv = persistence_sweep(sys, cert.cascade_bound, rest, "V", opt, cert.reports);
      ok = ok && pv.passing == rest;
    }
    if (ok) {
      if (auto x = certify_support(sys, rest, cert.cascade_bound, "V", IndexSet{}, Relation::Equal, cert))
        return finish(conclude(std::move(v), Criterion::Cascade, rest, std::move(*x), "V", n));
    }
  }

  // (d) single-survivor fast paths.
  for (std::size_t k = 0; k < n; ++k) {
    if (!pw.holds[k]) continue;
    auto col = column_condition(sys, k, capacity_variant);
    bool ok = col.holds;
    cert.reports.push_back(std::move(col));
    if (ok) {
      IndexSet s{k};
      if (auto x = certify_support(sys, s, cert.capacity, "Y", IndexSet{}, Relation::Equal, cert))
        return finish(conclude(std::move(v), Criterion::SingleDominant, s, std::move(*x), "Y", n));
    }
  }
  if (n >= 2) {
    if (auto ordering = find_chain_ordering(sys, opt.ordering)) {
      cert.reports.push_back(chain_dominance_criterion(sys, *ordering));
      IndexSet s{ordering->back()};
      if (auto x = certify_support(sys, s, cert.capacity, "Y", IndexSet{}, Relation::Equal, cert))
        return finish(conclude(std::move(v), Criterion::ChainDominance, s, std::move(*x), "Y", n));
    } else {
      cert.notes.push_back("no chain-dominance ordering found");
    }
  }

  // (e) inconclusive.
  v.outcome = Outcome::Inconclusive;
  v.criterion = Criterion::None;
  if (n <= opt.census_limit) v.face_census = face_equilibria_below_nullclines(sys);
  return finish(std::move(v));
}

namespace {

template <class T>
std::optional<ConditionReport<T>> recompute(const LVSystem<T>& sys, const Verdict<T>& v, const ConditionReport<T>& r) {
  const auto& cert = v.certificate;
  auto bound_of = [&](const std::string& label) -> const Vec<T>& {
    if (label == "V") return cert.cascade_bound;
    if (label == "Y") return cert.capacity;
    return cert.ultimate;
  };
  if (r.name == "persistence_algebraic")
    return persistence_algebraic(sys, bound_of(r.bound), r.indices.at(0), r.active, r.bound);
  if (r.name == "persistence_geometric")
    return persistence_geometric(sys, bound_of(r.bound), r.indices.at(0), r.active, r.bound);
  if (r.name == "extinction_order") return extinction_order_criterion(sys, r.indices);
  if (r.name == "chain_dominance") return chain_dominance_criterion(sys, r.indices);
  if (r.name == "column_equals_diagonal") return column_condition(sys, r.indices.at(0), false);
  if (r.name == "column_dominates_diagonal") return column_condition(sys, r.indices.at(0), true);
  // Checks on an equilibrium are re-evaluated at a freshly solved point; the
  // report's active set holds the support it was solved on.
  if (r.name == "attractor_on_nullclines" || r.name == "attractor_off_support" || r.name == "attractor_within_bound") {
    auto solve = solve_support(sys, r.active);
    if (!solve.equilibrium) return std::nullopt;
    const Vec<T>& x = solve.equilibrium->point;
    if (r.name == "attractor_on_nullclines") return on_nullclines(sys, x, IndexSet::from(r.indices));
    if (r.name == "attractor_within_bound") return within_bound(sys, x, bound_of(r.bound), r.bound);
    Relation rel = r.details.empty() ? Relation::Equal : r.details.front().rel;
    return off_support_loads(sys, x, IndexSet::from(r.indices), rel);
  }
  return std::nullopt;
}

}  // namespace

template <class T>
std::vector<std::string> replay_certificate(const LVSystem<T>& sys, const Verdict<T>& v, const AnalyzeOptions& opt) {
  std::vector<std::string> issues;
  const auto& arith = sys.arith();
  const auto& cert = v.certificate;
  auto same_vec = [&](const Vec<T>& a, const Vec<T>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!arith.eq(a[i], b[i])) return false;
    return true;
  };

  if (!same_vec(cert.capacity, carrying_capacities(sys))) issues.push_back("carrying-capacity vector differs");
  if (!same_vec(cert.ultimate, ultimate_upper_bound(sys))) issues.push_back("ultimate bound differs");
  auto cascade = extinction_cascade(sys);
  if (cascade.extinct != cert.extinct) issues.push_back("extinction order differs");
  if (!same_vec(cert.cascade_bound, cascade.bound)) issues.push_back("cascade bound differs");

  for (std::size_t idx = 0; idx < cert.reports.size(); ++idx) {
    const auto& r = cert.reports[idx];
    std::string where = "report " + std::to_string(idx) + " (" + r.name + ")";
    std::optional<ConditionReport<T>> fresh;
    try {
      fresh = recompute(sys, v, r);
    } catch (const Error& e) {
      issues.push_back(where + ": " + e.what());
      continue;
    }
    if (!fresh) {
      issues.push_back(where + ": cannot be re-evaluated");
      continue;
    }
    if (fresh->holds != r.holds) issues.push_back(where + ": recorded verdict differs");
    if (fresh->details.size() != r.details.size()) {
      issues.push_back(where + ": number of inequalities differs");
      continue;
    }
    for (std::size_t d = 0; d < r.details.size(); ++d)
      if (fresh->details[d].holds != r.details[d].holds)
        issues.push_back(where + ": inequality '" + r.details[d].label + "' differs");
  }

  if (v.outcome != Outcome::Inconclusive) {
    if (!v.attractor) {
      issues.push_back("attractor missing");
    } else {
      auto eq = solve_support_equilibrium(sys, v.survivors);
      if (!eq || !same_vec(eq->point, *v.attractor)) issues.push_back("attractor does not solve its support system");
      for (auto j : v.survivors.to_vector())
        if (!arith.eq(sys.row_dot(j, *v.attractor), T(1)))
          issues.push_back("attractor off nullcline " + one_based(j));
      const auto& bound = certified_bound(v);
      if (!componentwise_le(*v.attractor, bound, arith)) issues.push_back("attractor exceeds bound " + v.bound_label);
    }
  } else if (v.attractor) {
    issues.push_back("inconclusive verdict carries an attractor");
  }

  auto again = analyze(sys, opt);
  if (again.outcome != v.outcome || again.criterion != v.criterion || again.survivors != v.survivors)
    issues.push_back("re-analysis yields a different verdict");
  return issues;
}

#define LV_INSTANTIATE(T)                                                                                       \
  template Verdict<T> analyze<T>(const LVSystem<T>&, const AnalyzeOptions&);                                    \
  template ConditionReport<T> face_equilibria_below_nullclines<T>(const LVSystem<T>&);                          \
  template std::vector<std::string> replay_certificate<T>(const LVSystem<T>&, const Verdict<T>&,                \
                                                          const AnalyzeOptions&);                               \
  template const Vec<T>& certified_bound<T>(const Verdict<T>&);

LV_INSTANTIATE(Rational)
LV_INSTANTIATE(double)

#undef LV_INSTANTIATE

}  // namespace lv
