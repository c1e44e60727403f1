#pragma once

// Decision engine: applies the persistence/extinction criteria in order of
// strength and returns a verdict together with a certificate recording every
// inequality that was evaluated.

#include <optional>
#include <string>
#include <vector>

#include "lv/bounds.hpp"
#include "lv/conditions.hpp"
#include "lv/equilibria.hpp"

namespace lv {

enum class Outcome { InteriorAttractor, BoundaryAttractor, SingleSurvivor, Inconclusive };

enum class Criterion {
  AllPersist,              // every species passes the persistence test
  PartialPersist,          // persisting subset; attractor on the other nullclines
  PartialPersistCapacity,  // same with the carrying-capacity bound; attractor on or above
  Cascade,                 // extinction cascade followed by persistence of the rest
  SingleDominant,          // one persisting species whose column dominates
  ChainDominance,          // strict chain of row dominance down to the last species
  None,
};

/// Bound used by the partial-persistence tests: the ultimate bound, or the
/// carrying-capacity point (weaker test, relaxed equality on the attractor).
enum class BoundVariant { Ultimate, Capacity };

const char* to_string(Outcome o);
/// External label of a criterion ("Th2.1", "Th2.5", ...).
const char* to_string(Criterion c);
const char* to_string(BoundVariant v);

struct AnalyzeOptions {
  BoundVariant variant = BoundVariant::Ultimate;
  OrderingSearch ordering = OrderingSearch::Greedy;
  /// Largest community for which the vertex-enumeration persistence test runs.
  std::size_t geometric_limit = 15;
  /// Largest community for which the informational face-equilibrium census runs.
  std::size_t census_limit = 12;
};

template <class T>
struct Certificate {
  Vec<T> capacity;
  Vec<T> ultimate;
  Vec<T> cascade_bound;
  std::vector<std::size_t> extinct;
  std::vector<ConditionReport<T>> reports;
  std::optional<SupportSolve<T>> solve;
  /// Float-mode verdict that relied on an equality accepted within eps.
  bool tolerance_dependent = false;
  std::vector<std::string> notes;
};

template <class T>
struct Verdict {
  Outcome outcome = Outcome::Inconclusive;
  IndexSet survivors;
  std::optional<Vec<T>> attractor;
  Criterion criterion = Criterion::None;
  /// "U", "V" or "Y": the bound the attractor is certified to lie under.
  std::string bound_label;
  Certificate<T> certificate;
  /// Informational: every equilibrium on each coordinate face lies below the
  /// nullcline of the missing species. Never used as a certificate.
  std::optional<ConditionReport<T>> face_census;
};

template <class T>
Verdict<T> analyze(const LVSystem<T>& sys, const AnalyzeOptions& options = {});

/// Every equilibrium missing species i lies below nullcline i, for all i.
template <class T>
ConditionReport<T> face_equilibria_below_nullclines(const LVSystem<T>& sys);

/// Re-evaluates every recorded inequality of the certificate from the system
/// and checks the attractor against its support equations. Returns a
/// description of each mismatch; empty means the certificate replays.
template <class T>
std::vector<std::string> replay_certificate(const LVSystem<T>& sys, const Verdict<T>& verdict,
                                            const AnalyzeOptions& options = {});

/// The bound vector a verdict refers to (by its label).
template <class T>
const Vec<T>& certified_bound(const Verdict<T>& verdict);

}  // namespace lv
