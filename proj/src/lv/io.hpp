#pragma once

// JSON system files and JSON reports. Indices in every serialized form are
// 1-based; rationals are written as "p/q" strings, doubles as numbers.

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "lv/analyzer.hpp"
#include "lv/sim.hpp"

namespace lv {

using Json = nlohmann::json;

template <class T>
struct SystemFile {
  std::string name;
  LVSystem<T> system;
};

/// {"name": str, "b": [...], "A": [[...]]}; entries are JSON numbers or
/// strings. JSON numbers are read through their shortest decimal form, so
/// 2.1 means 21/10 in exact mode. "p/q" strings are rejected in float mode.
template <class T>
SystemFile<T> parse_system(const Json& doc, Arith<T> arith = {});

template <class T>
SystemFile<T> parse_system_text(std::string_view text, Arith<T> arith = {});

template <class T>
SystemFile<T> load_system_file(const std::filesystem::path& path, Arith<T> arith = {});

template <class T>
Json system_to_json(const SystemFile<T>& file);

Json scalar_to_json(const Rational& x);
Json scalar_to_json(double x);

template <class T>
Json vec_to_json(const Vec<T>& v);

Json indices_to_json(const std::vector<std::size_t>& idx);
Json indices_to_json(IndexSet s);

template <class T>
Json report_to_json(const ConditionReport<T>& r);

template <class T>
Json verdict_to_json(const Verdict<T>& v);

template <class T>
Json certificate_to_json(const Certificate<T>& c);

template <class T>
Json bounds_to_json(const Certificate<T>& c);

/// Each equilibrium with its support and its position against every nullcline.
template <class T>
Json equilibria_to_json(const LVSystem<T>& sys, const std::vector<Equilibrium<T>>& eqs);

Json sim_report_to_json(const SimReport& rep);

}  // namespace lv
