#include "lv/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace lv {

namespace {

std::string shortest_decimal(double d) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, d);
  return std::string(buf, res.ptr);
}

template <class T>
T parse_entry(const Json& j, const std::string& where);

template <>
Rational parse_entry<Rational>(const Json& j, const std::string& where) {
  try {
    if (j.is_number_integer()) {
      if (j.is_number_unsigned()) return Rational(j.get<std::uint64_t>());
      return Rational(j.get<std::int64_t>());
    }
    if (j.is_number_float()) {
      double d = j.get<double>();
      if (!std::isfinite(d)) throw Error(Errc::Parse, "not finite");
      return parse_rational(shortest_decimal(d));
    }
    if (j.is_string()) return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    throw Error(Errc::Parse, where + ": " + e.what());
  }
  throw Error(Errc::Parse, where + ": expected a number or a numeric string");
}

template <>
double parse_entry<double>(const Json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.find('/') != std::string::npos)
      throw Error(Errc::Parse, where + ": rational string \"" + s + "\" requires exact mode");
    double d = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), d);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || s.empty())
      throw Error(Errc::Parse, where + ": malformed number \"" + s + "\"");
    return d;
  }
  throw Error(Errc::Parse, where + ": expected a number or a numeric string");
}

}  // namespace

template <class T>
SystemFile<T> parse_system(const Json& doc, Arith<T> arith) {
  if (!doc.is_object()) throw Error(Errc::Parse, "system file must be a JSON object");
  std::string name;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw Error(Errc::Parse, "field 'name' must be a string");
    name = doc["name"].get<std::string>();
  }
  if (!doc.contains("b") || !doc["b"].is_array()) throw Error(Errc::Parse, "field 'b' must be an array");
  if (!doc.contains("A") || !doc["A"].is_array()) throw Error(Errc::Parse, "field 'A' must be an array of rows");
  Vec<T> b;
  for (std::size_t i = 0; i < doc["b"].size(); ++i)
    b.push_back(parse_entry<T>(doc["b"][i], "b[" + std::to_string(i + 1) + "]"));
  std::vector<Vec<T>> A;
  for (std::size_t i = 0; i < doc["A"].size(); ++i) {
    const Json& row = doc["A"][i];
    if (!row.is_array()) throw Error(Errc::Parse, "A[" + std::to_string(i + 1) + "] must be an array");
    Vec<T> r;
    for (std::size_t j = 0; j < row.size(); ++j)
      r.push_back(parse_entry<T>(row[j], "A[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "]"));
    A.push_back(std::move(r));
  }
  return SystemFile<T>{std::move(name), LVSystem<T>(std::move(b), std::move(A), arith)};
}

template <class T>
SystemFile<T> parse_system_text(std::string_view text, Arith<T> arith) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(Errc::Parse, std::string("malformed JSON: ") + e.what());
  }
  return parse_system<T>(doc, arith);
}

template <class T>
SystemFile<T> load_system_file(const std::filesystem::path& path, Arith<T> arith) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_system_text<T>(ss.str(), arith);
}

Json scalar_to_json(const Rational& x) { return format(x); }
Json scalar_to_json(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

template <class T>
Json vec_to_json(const Vec<T>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(scalar_to_json(x));
  return out;
}

Json indices_to_json(const std::vector<std::size_t>& idx) {
  Json out = Json::array();
  for (auto i : idx) out.push_back(i + 1);
  return out;
}

Json indices_to_json(IndexSet s) { return indices_to_json(s.to_vector()); }

template <class T>
Json system_to_json(const SystemFile<T>& file) {
  const auto& sys = file.system;
  Json A = Json::array();
  for (const auto& row : sys.interaction()) A.push_back(vec_to_json(row));
  return Json{{"name", file.name}, {"b", vec_to_json(sys.growth())}, {"A", std::move(A)}};
}

template <class T>
Json report_to_json(const ConditionReport<T>& r) {
  Json details = Json::array();
  for (const auto& d : r.details)
    details.push_back({{"label", d.label},
                       {"lhs", scalar_to_json(d.lhs)},
                       {"rel", to_string(d.rel)},
                       {"rhs", scalar_to_json(d.rhs)},
                       {"holds", d.holds}});
  Json out{{"name", r.name},
           {"indices", indices_to_json(r.indices)},
           {"holds", r.holds},
           {"margin", scalar_to_json(r.margin)},
           {"boundary", r.boundary},
           {"details", std::move(details)}};
  if (!r.bound.empty()) out["bound"] = r.bound;
  if (!r.active.empty()) out["active"] = indices_to_json(r.active);
  if (!r.clause.empty()) out["clause"] = r.clause;
  return out;
}

template <class T>
Json verdict_to_json(const Verdict<T>& v) {
  Json out{{"outcome", to_string(v.outcome)},
           {"criterion", to_string(v.criterion)},
           {"survivors", indices_to_json(v.survivors)},
           {"attractor", v.attractor ? vec_to_json(*v.attractor) : Json(nullptr)},
           {"tolerance_dependent", v.certificate.tolerance_dependent}};
  if (!v.bound_label.empty()) out["bound"] = v.bound_label;
  if (v.face_census) {
    Json census = report_to_json(*v.face_census);
    census["informational"] = true;
    out["face_equilibria_census"] = std::move(census);
  }
  return out;
}

template <class T>
Json certificate_to_json(const Certificate<T>& c) {
  Json reports = Json::array();
  for (const auto& r : c.reports) reports.push_back(report_to_json(r));
  Json out{{"Y", vec_to_json(c.capacity)},
           {"U", vec_to_json(c.ultimate)},
           {"V", vec_to_json(c.cascade_bound)},
           {"extinct", indices_to_json(c.extinct)},
           {"reports", std::move(reports)},
           {"tolerance_dependent", c.tolerance_dependent},
           {"notes", c.notes}};
  if (c.solve) {
    Json s{{"support", indices_to_json(c.solve->support)},
           {"nonsingular", c.solve->nonsingular},
           {"boundary", c.solve->boundary},
           {"solution", c.solve->solution ? vec_to_json(*c.solve->solution) : Json(nullptr)}};
    out["solve"] = std::move(s);
  }
  return out;
}

template <class T>
Json bounds_to_json(const Certificate<T>& c) {
  return Json{{"Y", vec_to_json(c.capacity)}, {"U", vec_to_json(c.ultimate)}, {"V", vec_to_json(c.cascade_bound)}};
}

template <class T>
Json equilibria_to_json(const LVSystem<T>& sys, const std::vector<Equilibrium<T>>& eqs) {
  Json out = Json::array();
  for (const auto& e : eqs) {
    Json pos = Json::array();
    for (std::size_t i = 0; i < sys.dim(); ++i) {
      auto p = classify_point(Plane<T>::nullcline(sys, i), e.point, sys.arith());
      std::string s = to_string(p);
      for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      pos.push_back(s);
    }
    out.push_back({{"support", indices_to_json(e.support)}, {"point", vec_to_json(e.point)}, {"position", std::move(pos)}});
  }
  return out;
}

Json sim_report_to_json(const SimReport& rep) {
  Json runs = Json::array();
  for (const auto& r : rep.runs) {
    Json j{{"start", r.start},
           {"final", r.final_state},
           {"liminf", r.limits.liminf},
           {"limsup", r.limits.limsup}};
    j["distance"] = r.distance ? Json(*r.distance) : Json(nullptr);
    runs.push_back(std::move(j));
  }
  return Json{{"converged", rep.converged},
              {"max_distance", rep.max_distance},
              {"max_upper_excess", rep.max_upper_excess},
              {"upper_ok", rep.upper_ok},
              {"lower_ok", rep.lower_ok},
              {"margin_species", indices_to_json(rep.margin_species)},
              {"margins", rep.margins},
              {"runs", std::move(runs)}};
}

#define LV_INSTANTIATE(T)                                                                          \
  template SystemFile<T> parse_system<T>(const Json&, Arith<T>);                                   \
  template SystemFile<T> parse_system_text<T>(std::string_view, Arith<T>);                         \
  template SystemFile<T> load_system_file<T>(const std::filesystem::path&, Arith<T>);              \
  template Json system_to_json<T>(const SystemFile<T>&);                                           \
  template Json vec_to_json<T>(const Vec<T>&);                                                     \
  template Json report_to_json<T>(const ConditionReport<T>&);                                      \
  template Json verdict_to_json<T>(const Verdict<T>&);                                             \
  template Json certificate_to_json<T>(const Certificate<T>&);                                     \
  template Json bounds_to_json<T>(const Certificate<T>&);                                          \
  template Json equilibria_to_json<T>(const LVSystem<T>&, const std::vector<Equilibrium<T>>&);

LV_INSTANTIATE(Rational)
LV_INSTANTIATE(double)

#undef LV_INSTANTIATE

}  // namespace lv
