#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "protpref/external_agg.hpp"

namespace protpref {

enum class AxiomId {
  agreement,
  transitivity,
  unrestricted_domain,
  unanimity,
  anonymity,
  non_dictatorship,
  neutrality,
  iia,
  proximity_preservation,
  positive_responsiveness,
  monotonic_responsiveness,
  utility_iia,
  strict_unanimity,
};

std::string_view to_string(AxiomId axiom);
AxiomId axiom_from_string(std::string_view name);
std::vector<AxiomId> all_axioms();
/// agreement, transitivity, unrestricted_domain, unanimity, non_dictatorship, iia.
std::vector<AxiomId> arrow_axioms();

/// Individual preferences enumerated or sampled by the auditor.
enum class Domain { strict_orders, weak_orders, utility_grid };

std::string_view to_string(Domain domain);
Domain domain_from_string(std::string_view name);
Domain default_domain(ProfileMode mode);

/// Utility values used by the utility_grid domain unless overridden.
std::vector<double> default_utility_grid();

/// Bound on profile pairs (or profiles, for single-profile axioms) a search
/// may examine.
inline constexpr std::uint64_t kSearchBudget = 10'000'000;

struct SearchSpace {
  enum class Kind { exhaustive, sampled };

  Kind kind = Kind::exhaustive;
  std::size_t m = 3;
  std::size_t n = 3;
  std::size_t trials = 0;  // sampled only
  std::uint64_t seed = 0;  // sampled only
  std::optional<Domain> domain;  // default_domain(rule.mode) when empty
  std::vector<double> grid;      // default_utility_grid() when empty

  static SearchSpace exhaustive(std::size_t m, std::size_t n,
                                std::optional<Domain> domain = std::nullopt);
  static SearchSpace sampled(std::size_t m, std::size_t n, std::size_t trials, std::uint64_t seed,
                             std::optional<Domain> domain = std::nullopt);
};

enum class Exec { parallel, serial };

enum class Verdict { pass_within_search, fail };

std::string_view to_string(Verdict verdict);

/// Concrete counterexample. `outcomes[i]` is the rule applied to
/// `profiles[i]`; the remaining fields depend on the property:
///  - single-profile axioms: one profile, the offending pair or triple;
///  - anonymity / neutrality: the profile, its permuted copy, the permutation;
///  - iia / utility_iia: two profiles and the pair;
///  - responsiveness: two profiles, the ordered pair, the uplifted individual;
///  - proximity: three profiles, D(I,I'), D(I,I''), d(O,O'), d(O,O'');
///  - non_dictatorship: the dictator and one profile where they prevail.
struct Witness {
  std::vector<Profile> profiles;
  std::vector<AggregationOutcome> outcomes;
  std::vector<std::size_t> alternatives;
  std::optional<std::size_t> individual;  // 0-based
  std::vector<std::size_t> permutation;
  std::vector<double> profile_distances;
  std::vector<double> outcome_distances;
  std::string description;
};

struct AuditResult {
  std::string rule_name;
  std::string property;  // axiom name, or "may_coincidence"
  Verdict verdict = Verdict::pass_within_search;
  std::optional<Witness> witness;
  std::string search_budget;
  std::uint64_t seed = 0;
  std::string note;
  std::vector<AuditResult> premises;

  bool failed() const { return verdict == Verdict::fail; }
};

/// Searches `space` for a violation of `axiom` by `rule`. A pass only
/// speaks for the searched space. Exhaustive witnesses are the smallest
/// under the documented enumeration order, identical for both Exec modes.
///
/// Errors: Error{BudgetExceeded}, Error{InapplicableAxiom},
/// Error{TooLarge} (domain cannot be enumerated), Error{BadSpec}.
AuditResult audit(const Rule& rule, AxiomId axiom, const SearchSpace& space,
                  Exec exec = Exec::parallel);

/// Re-runs the rule on the witness profiles; true when the outcomes match
/// the stored ones exactly and still violate the property.
bool reverify(const Rule& rule, const AuditResult& result);

/// Exhaustive audit of the Arrow axiom set.
std::vector<AuditResult> arrow_audit(const Rule& rule, std::size_t m, std::size_t n,
                                     Exec exec = Exec::parallel);

/// True when every Arrow axiom passed an exhaustive search, which
/// Arrow's theorem rules out; such a report needs investigation.
bool arrow_contradiction(const std::vector<AuditResult>& results);

/// Audits unanimity, neutrality and positive responsiveness (weak-order
/// domain; exhaustive within budget, otherwise sampled) and, if they hold,
/// compares the rule's pairwise relation with the majority count formula
/// on `trials` sampled weak-order profiles.
AuditResult may_coincidence_check(const Rule& rule, std::size_t m, std::size_t n,
                                  std::size_t trials, std::uint64_t seed,
                                  Exec exec = Exec::parallel);

inline constexpr std::string_view kProximityNote =
    "proximity preservation quantifies over all distance functions; this audit "
    "refutes only the Kendall instantiation (ties weigh 1/2), not every d";

namespace reference {

/// Brute-force exhaustive searches, serial, same enumeration order as
/// audit(). Kept as oracles for the grouped/pruned kernels.
AuditResult audit_exhaustive(const Rule& rule, AxiomId axiom, const SearchSpace& space);

}  // namespace reference

}  // namespace protpref
