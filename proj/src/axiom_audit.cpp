#include "protpref/axiom_audit.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

#include "audit_space.hpp"
#include "protpref/rng.hpp"

namespace protpref {

using detail::Digits;
using detail::Hit;
using detail::OutcomeTable;
using detail::ProfileSpace;

std::string_view to_string(AxiomId axiom) {
  switch (axiom) {
    case AxiomId::agreement: return "agreement";
    case AxiomId::transitivity: return "transitivity";
    case AxiomId::unrestricted_domain: return "unrestricted_domain";
    case AxiomId::unanimity: return "unanimity";
    case AxiomId::anonymity: return "anonymity";
    case AxiomId::non_dictatorship: return "non_dictatorship";
    case AxiomId::neutrality: return "neutrality";
    case AxiomId::iia: return "iia";
    case AxiomId::proximity_preservation: return "proximity_preservation";
    case AxiomId::positive_responsiveness: return "positive_responsiveness";
    case AxiomId::monotonic_responsiveness: return "monotonic_responsiveness";
    case AxiomId::utility_iia: return "utility_iia";
    case AxiomId::strict_unanimity: return "strict_unanimity";
  }
  return "unknown";
}

std::vector<AxiomId> all_axioms() {
  return {AxiomId::agreement,
          AxiomId::transitivity,
          AxiomId::unrestricted_domain,
          AxiomId::unanimity,
          AxiomId::anonymity,
          AxiomId::non_dictatorship,
          AxiomId::neutrality,
          AxiomId::iia,
          AxiomId::proximity_preservation,
          AxiomId::positive_responsiveness,
          AxiomId::monotonic_responsiveness,
          AxiomId::utility_iia,
          AxiomId::strict_unanimity};
}

AxiomId axiom_from_string(std::string_view name) {
  for (auto axiom : all_axioms())
    if (to_string(axiom) == name) return axiom;
  if (name == "proximity") return AxiomId::proximity_preservation;
  if (name == "positive-responsiveness" || name == "pr") return AxiomId::positive_responsiveness;
  if (name == "monotonic-responsiveness" || name == "mr") return AxiomId::monotonic_responsiveness;
  if (name == "non-dictatorship") return AxiomId::non_dictatorship;
  if (name == "unrestricted-domain") return AxiomId::unrestricted_domain;
  throw Error(ErrorKind::BadSpec, "unknown axiom '" + std::string(name) + "'");
}

std::vector<AxiomId> arrow_axioms() {
  return {AxiomId::agreement, AxiomId::transitivity,     AxiomId::unrestricted_domain,
          AxiomId::unanimity, AxiomId::non_dictatorship, AxiomId::iia};
}

std::string_view to_string(Domain domain) {
  switch (domain) {
    case Domain::strict_orders: return "strict_orders";
    case Domain::weak_orders: return "weak_orders";
    case Domain::utility_grid: return "utility_grid";
  }
  return "strict_orders";
}

Domain domain_from_string(std::string_view name) {
  if (name == "strict_orders" || name == "strict") return Domain::strict_orders;
  if (name == "weak_orders" || name == "weak") return Domain::weak_orders;
  if (name == "utility_grid" || name == "grid") return Domain::utility_grid;
  throw Error(ErrorKind::BadSpec, "unknown domain '" + std::string(name) + "'");
}

Domain default_domain(ProfileMode mode) {
  return mode == ProfileMode::utility ? Domain::utility_grid : Domain::strict_orders;
}

std::vector<double> default_utility_grid() { return {-1.0, -0.5, 0.0, 0.5, 1.0}; }

std::string_view to_string(Verdict verdict) {
  return verdict == Verdict::fail ? "fail" : "pass_within_search";
}

SearchSpace SearchSpace::exhaustive(std::size_t m, std::size_t n, std::optional<Domain> domain) {
  SearchSpace s;
  s.kind = Kind::exhaustive;
  s.m = m;
  s.n = n;
  s.domain = domain;
  return s;
}

SearchSpace SearchSpace::sampled(std::size_t m, std::size_t n, std::size_t trials,
                                 std::uint64_t seed, std::optional<Domain> domain) {
  SearchSpace s;
  s.kind = Kind::sampled;
  s.m = m;
  s.n = n;
  s.trials = trials;
  s.seed = seed;
  s.domain = domain;
  return s;
}

namespace {

using Pair = std::pair<std::size_t, std::size_t>;

std::vector<Pair> unordered_pairs(std::size_t m) {
  std::vector<Pair> out;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) out.emplace_back(a, b);
  return out;
}

std::vector<Pair> ordered_pairs(std::size_t m) {
  std::vector<Pair> out;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (a != b) out.emplace_back(a, b);
  return out;
}

bool utility_only(AxiomId axiom) {
  return axiom == AxiomId::utility_iia || axiom == AxiomId::strict_unanimity;
}

Domain resolve_domain(const Rule& rule, const SearchSpace& space) {
  const Domain domain = space.domain.value_or(default_domain(rule.mode));
  const bool utility_domain = domain == Domain::utility_grid;
  if (utility_domain != (rule.mode == ProfileMode::utility))
    throw Error(ErrorKind::BadSpec, "domain " + std::string(to_string(domain)) +
                                        " does not match the " +
                                        std::string(to_string(rule.mode)) + " rule " + rule.name);
  return domain;
}

void check_applicable(const Rule& rule, AxiomId axiom) {
  if (utility_only(axiom) && rule.mode != ProfileMode::utility)
    throw Error(ErrorKind::InapplicableAxiom,
                std::string(to_string(axiom)) + " applies to utility rules, not " + rule.name);
  if (axiom == AxiomId::proximity_preservation && rule.mode != ProfileMode::ordinal)
    throw Error(ErrorKind::InapplicableAxiom,
                "proximity preservation is audited for ordinal rules only");
}

void require_budget(std::uint64_t work, std::string_view what) {
  if (work > kSearchBudget)
    throw Error(ErrorKind::BudgetExceeded, std::string(what) + " needs " + std::to_string(work) +
                                               " profile pairs; the bound is " +
                                               std::to_string(kSearchBudget));
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r = saturating_mul(r, base);
  return r;
}

Witness build_witness(const Rule& rule, const ProfileSpace& ps, const Hit& hit) {
  Witness w;
  for (const auto& digits : hit.profiles) w.profiles.push_back(ps.make(digits));
  for (const auto& p : w.profiles) {
    try {
      w.outcomes.push_back(rule(p));
    } catch (const std::exception&) {
      break;
    }
  }
  w.alternatives = hit.alternatives;
  w.individual = hit.individual;
  w.permutation = hit.permutation;
  for (auto h : hit.profile_half_units) w.profile_distances.push_back(static_cast<double>(h) / 2.0);
  for (auto h : hit.outcome_half_units) w.outcome_distances.push_back(static_cast<double>(h) / 2.0);
  w.description = hit.description;
  return w;
}

std::string label_of(const ProfileSpace& ps, std::size_t a) { return ps.universe()->labels[a]; }

// --- predicates shared by exhaustive and sampled single-profile checks ---

/// `relation` is null when the rule threw (`error` holds the message).
std::optional<Hit> single_profile_violation(AxiomId axiom, const ProfileSpace& ps,
                                            const Digits& digits,
                                            const PairwiseRelation* relation,
                                            const std::string& error) {
  const std::size_t m = ps.m();
  const std::size_t n = ps.n();
  if (axiom == AxiomId::unrestricted_domain) {
    if (relation) return std::nullopt;
    return Hit{{digits}, {}, {}, {}, {}, {}, "rule rejected the profile: " + error};
  }
  if (!relation) return std::nullopt;

  switch (axiom) {
    case AxiomId::agreement:
      if (relation->size() == m && relation->is_complete()) return std::nullopt;
      return Hit{{digits}, {}, {}, {}, {}, {}, "outcome is not a complete relation"};
    case AxiomId::transitivity: {
      const auto v = relation->find_transitivity_violation();
      if (!v) return std::nullopt;
      return Hit{{digits},
                 {(*v)[0], (*v)[1], (*v)[2]},
                 {},
                 {},
                 {},
                 {},
                 label_of(ps, (*v)[0]) + " >= " + label_of(ps, (*v)[1]) + " >= " +
                     label_of(ps, (*v)[2]) + " but not " + label_of(ps, (*v)[0]) +
                     " >= " + label_of(ps, (*v)[2])};
    }
    case AxiomId::unanimity:
      for (const auto& [a, b] : unordered_pairs(m)) {
        const auto s = ps.state(digits, 0, a, b);
        bool unanimous = true;
        for (std::size_t i = 1; i < n && unanimous; ++i) unanimous = ps.state(digits, i, a, b) == s;
        if (unanimous && relation->state(a, b) != s)
          return Hit{{digits}, {a, b}, {}, {}, {}, {},
                     "all individuals agree on " + label_of(ps, a) + " vs " + label_of(ps, b) +
                         " but the outcome does not"};
      }
      return std::nullopt;
    case AxiomId::strict_unanimity:
      for (const auto& [a, b] : ordered_pairs(m)) {
        bool all_weak = true;
        bool some_strict = false;
        bool unanimous = true;
        const auto s0 = ps.state(digits, 0, a, b);
        for (std::size_t i = 0; i < n; ++i) {
          const auto s = ps.state(digits, i, a, b);
          all_weak = all_weak && s != PairState::b_preferred;
          some_strict = some_strict || s == PairState::a_preferred;
          unanimous = unanimous && s == s0;
        }
        const auto out = relation->state(a, b);
        if ((unanimous && out != s0) || (all_weak && some_strict && out != PairState::a_preferred))
          return Hit{{digits}, {a, b}, {}, {}, {}, {},
                     "every individual weakly prefers " + label_of(ps, a) + " to " +
                         label_of(ps, b) + ", one strictly, but the outcome is not strict"};
      }
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

bool is_single_profile(AxiomId axiom) {
  switch (axiom) {
    case AxiomId::agreement:
    case AxiomId::transitivity:
    case AxiomId::unrestricted_domain:
    case AxiomId::unanimity:
    case AxiomId::strict_unanimity:
      return true;
    default:
      return false;
  }
}

/// Relabeling check: outcome of the relabeled profile must be the relabeled outcome.
bool relabel_consistent(const PairwiseRelation& original, const PairwiseRelation& relabeled,
                        const std::vector<std::size_t>& pi) {
  for (std::size_t a = 0; a < original.size(); ++a)
    for (std::size_t b = 0; b < original.size(); ++b)
      if (relabeled.at_least(pi[a], pi[b]) != original.at_least(a, b)) return false;
  return true;
}

// --- buckets of domain items by (pair, key) ---

/// items_by_state[(a*m+b)*3 + state] = items (ascending) with that state on (a, b).
std::vector<std::vector<std::size_t>> bucket_by_state(const detail::DomainItems& items) {
  const std::size_t m = items.m();
  std::vector<std::vector<std::size_t>> buckets(m * m * 3);
  for (std::size_t item = 0; item < items.size(); ++item)
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        buckets[(a * m + b) * 3 + static_cast<std::size_t>(items.state(item, a, b))].push_back(item);
  return buckets;
}

/// Key of each item for an IIA-style pair signature.
struct PairKeys {
  std::vector<std::uint32_t> key;  // per item
  std::uint32_t radix = 0;
  std::vector<std::vector<std::size_t>> members;  // per key, ascending items
};

PairKeys pair_keys(const detail::DomainItems& items, std::size_t a, std::size_t b, bool by_difference) {
  PairKeys k;
  k.key.resize(items.size());
  if (!by_difference) {
    k.radix = 3;
    k.members.resize(3);
    for (std::size_t item = 0; item < items.size(); ++item) {
      k.key[item] = static_cast<std::uint32_t>(items.state(item, a, b));
      k.members[k.key[item]].push_back(item);
    }
    return k;
  }
  std::map<double, std::uint32_t> ids;
  for (std::size_t item = 0; item < items.size(); ++item)
    ids.emplace(items.values(item)[a] - items.values(item)[b], 0);
  std::uint32_t next = 0;
  for (auto& [diff, id] : ids) id = next++;
  k.radix = next;
  k.members.resize(next);
  for (std::size_t item = 0; item < items.size(); ++item) {
    k.key[item] = ids.at(items.values(item)[a] - items.values(item)[b]);
    k.members[k.key[item]].push_back(item);
  }
  return k;
}

// --- exhaustive kernels ---

struct Found {
  std::optional<Hit> hit;
  std::uint64_t work = 0;
};

Found exhaustive_single_profile(AxiomId axiom, const ProfileSpace& ps, const OutcomeTable& table,
                                Exec exec) {
  const auto hit = detail::first_hit(ps.count(), exec, [&](std::uint64_t p) {
    const auto digits = ps.decode(p);
    if (!table.ok[p]) return single_profile_violation(axiom, ps, digits, nullptr, table.errors.at(p));
    const auto relation = table.relation(p);
    return single_profile_violation(axiom, ps, digits, &relation, {});
  });
  return {hit ? std::optional<Hit>(hit->second) : std::nullopt, ps.count()};
}

Found exhaustive_anonymity(const ProfileSpace& ps, const OutcomeTable& table, Exec exec) {
  const auto perms = detail::all_permutations(ps.n());
  const auto hit = detail::first_hit(ps.count(), exec, [&](std::uint64_t p) -> std::optional<Hit> {
    if (!table.ok[p]) return std::nullopt;
    const auto digits = ps.decode(p);
    for (std::size_t k = 1; k < perms.size(); ++k) {
      Digits moved(ps.n());
      for (std::size_t i = 0; i < ps.n(); ++i) moved[i] = digits[perms[k][i]];
      const auto q = ps.encode(moved);
      if (!table.ok[q]) continue;
      for (std::size_t a = 0; a < ps.m(); ++a)
        for (std::size_t b = 0; b < ps.m(); ++b)
          if (table.at_least(p, a, b) != table.at_least(q, a, b))
            return Hit{{digits, moved}, {a, b}, {}, perms[k], {}, {},
                       "reordering the individuals changes the outcome on " +
                           label_of(ps, a) + " vs " + label_of(ps, b)};
    }
    return std::nullopt;
  });
  return {hit ? std::optional<Hit>(hit->second) : std::nullopt,
          saturating_mul(ps.count(), perms.size())};
}

Found exhaustive_neutrality(const ProfileSpace& ps, const OutcomeTable& table, Exec exec) {
  const auto perms = detail::all_permutations(ps.m());
  // relabeled_item[k][item]
  std::vector<std::vector<std::size_t>> relabeled_item(perms.size());
  for (std::size_t k = 0; k < perms.size(); ++k)
    for (std::size_t item = 0; item < ps.items().size(); ++item)
      relabeled_item[k].push_back(ps.items().relabeled(item, perms[k]));

  const auto hit = detail::first_hit(ps.count(), exec, [&](std::uint64_t p) -> std::optional<Hit> {
    if (!table.ok[p]) return std::nullopt;
    const auto digits = ps.decode(p);
    for (std::size_t k = 1; k < perms.size(); ++k) {
      Digits moved(ps.n());
      for (std::size_t i = 0; i < ps.n(); ++i) moved[i] = relabeled_item[k][digits[i]];
      const auto q = ps.encode(moved);
      if (!table.ok[q]) continue;
      if (!relabel_consistent(table.relation(p), table.relation(q), perms[k]))
        return Hit{{digits, moved}, {}, {}, perms[k], {}, {},
                   "renaming the alternatives does not rename the outcome"};
    }
    return std::nullopt;
  });
  return {hit ? std::optional<Hit>(hit->second) : std::nullopt,
          saturating_mul(ps.count(), perms.size())};
}

std::uint64_t signature(const Digits& digits, const PairKeys& keys) {
  std::uint64_t sig = 0;
  for (auto d : digits) sig = sig * keys.radix + keys.key[d];
  return sig;
}

Found exhaustive_iia(const ProfileSpace& ps, const OutcomeTable& table, bool by_difference,
                     Exec exec) {
  const auto pairs = unordered_pairs(ps.m());
  std::vector<PairKeys> keys;
  for (const auto& [a, b] : pairs) keys.push_back(pair_keys(ps.items(), a, b, by_difference));

  // Smallest profile that conflicts with another one on some pair: the
  // first member of a signature group whose outcome is not constant.
  std::vector<std::uint64_t> first_conflict(pairs.size(), UINT64_MAX);
  const auto pair_count = static_cast<std::int64_t>(pairs.size());
#pragma omp parallel for schedule(dynamic, 1) if (exec == Exec::parallel)
  for (std::int64_t k = 0; k < pair_count; ++k) {
    const auto [a, b] = pairs[k];
    std::unordered_map<std::uint64_t, std::pair<std::uint64_t, PairState>> heads;
    std::uint64_t best = UINT64_MAX;
    for (std::uint64_t p = 0; p < ps.count(); ++p) {
      if (!table.ok[p]) continue;
      const auto sig = signature(ps.decode(p), keys[k]);
      const auto state = table.state(p, a, b);
      auto [it, inserted] = heads.try_emplace(sig, p, state);
      if (!inserted && it->second.second != state) best = std::min(best, it->second.first);
    }
    first_conflict[k] = best;
  }

  const auto first = *std::min_element(first_conflict.begin(), first_conflict.end());
  const std::uint64_t work = saturating_mul(ps.count(), pairs.size());
  if (first == UINT64_MAX) return {std::nullopt, work};

  const auto d1 = ps.decode(first);
  std::uint64_t best_second = UINT64_MAX;
  std::size_t best_pair = 0;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [a, b] = pairs[k];
    const auto sig = signature(d1, keys[k]);
    const auto state = table.state(first, a, b);
    for (std::uint64_t q = first + 1; q < ps.count() && q < best_second; ++q) {
      if (!table.ok[q] || table.state(q, a, b) == state) continue;
      if (signature(ps.decode(q), keys[k]) == sig) {
        best_second = q;
        best_pair = k;
        break;
      }
    }
  }
  const auto [a, b] = pairs[best_pair];
  return {Hit{{d1, ps.decode(best_second)}, {a, b}, {}, {}, {}, {},
              std::string(by_difference ? "every individual's utility difference"
                                        : "every individual's preference") +
                  " on " + label_of(ps, a) + " vs " + label_of(ps, b) +
                  " is unchanged, but the outcome on that pair changes"},
          work};
}

/// Items whose (a, b) state is strictly above `state`, ascending.
std::vector<std::size_t> uplift_items(const std::vector<std::vector<std::size_t>>& buckets,
                                      std::size_t m, std::size_t a, std::size_t b, PairState state) {
  std::vector<std::size_t> out;
  for (int s = static_cast<int>(state) + 1; s <= 2; ++s) {
    const auto& bucket = buckets[(a * m + b) * 3 + static_cast<std::size_t>(s)];
    out.insert(out.end(), bucket.begin(), bucket.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool responsiveness_violated(AxiomId axiom, PairState after) {
  return axiom == AxiomId::positive_responsiveness ? after != PairState::a_preferred
                                                   : after == PairState::b_preferred;
}

std::string responsiveness_text(AxiomId axiom, const ProfileSpace& ps, std::size_t a,
                                std::size_t b, std::size_t j) {
  return "individual " + std::to_string(j + 1) + " raises " + label_of(ps, a) + " against " +
         label_of(ps, b) + ", yet the outcome " +
         (axiom == AxiomId::positive_responsiveness ? "does not become strict"
                                                    : "turns against it");
}

Found exhaustive_responsiveness(AxiomId axiom, const ProfileSpace& ps, const OutcomeTable& table,
                                Exec exec) {
  const std::size_t m = ps.m();
  const std::size_t n = ps.n();
  const auto buckets = bucket_by_state(ps.items());
  const auto pairs = ordered_pairs(m);

  std::uint64_t widest = 0;
  std::uint64_t widest_up = 0;
  for (const auto& [a, b] : pairs)
    for (int s = 0; s < 3; ++s) {
      widest = std::max<std::uint64_t>(widest, buckets[(a * m + b) * 3 + s].size());
      widest_up = std::max<std::uint64_t>(
          widest_up, uplift_items(buckets, m, a, b, static_cast<PairState>(s)).size());
    }
  const std::uint64_t work =
      saturating_mul(saturating_mul(saturating_mul(ps.count(), pairs.size()), n),
                     saturating_mul(saturating_pow(widest, n - 1), widest_up));
  require_budget(work, std::string(to_string(axiom)) + " search");

  const auto hit = detail::first_hit(ps.count(), exec, [&](std::uint64_t p) -> std::optional<Hit> {
    if (!table.ok[p]) return std::nullopt;
    const auto d1 = ps.decode(p);
    std::uint64_t best_q = UINT64_MAX;
    std::optional<Hit> best;
    for (const auto& [a, b] : pairs) {
      if (!table.at_least(p, a, b)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const auto sj = ps.state(d1, j, a, b);
        if (sj == PairState::a_preferred) continue;
        std::vector<std::vector<std::size_t>> choices(n);
        for (std::size_t i = 0; i < n; ++i)
          choices[i] = i == j ? uplift_items(buckets, m, a, b, sj)
                              : buckets[(a * m + b) * 3 + static_cast<std::size_t>(ps.state(d1, i, a, b))];
        if (choices[j].empty()) continue;
        // Odometer over the choice lists yields profiles in ascending index.
        std::vector<std::size_t> pos(n, 0);
        Digits d2(n);
        for (;;) {
          for (std::size_t i = 0; i < n; ++i) d2[i] = choices[i][pos[i]];
          const auto q = ps.encode(d2);
          if (q >= best_q) break;
          if (table.ok[q] && responsiveness_violated(axiom, table.state(q, a, b))) {
            best_q = q;
            best = Hit{{d1, d2}, {a, b}, j, {}, {}, {}, responsiveness_text(axiom, ps, a, b, j)};
            break;
          }
          std::size_t i = n;
          while (i-- > 0) {
            if (++pos[i] < choices[i].size()) break;
            pos[i] = 0;
          }
          if (i == static_cast<std::size_t>(-1)) break;
        }
      }
    }
    return best;
  });
  return {hit ? std::optional<Hit>(hit->second) : std::nullopt, work};
}

Found exhaustive_proximity(const ProfileSpace& ps, const OutcomeTable& table, Exec exec) {
  const std::uint64_t count = ps.count();
  const std::uint64_t work = saturating_mul(count, count);
  require_budget(work, "proximity search");

  const std::size_t m = ps.m();
  const std::size_t n = ps.n();
  const auto pairs = unordered_pairs(m);
  const auto& items = ps.items();

  // Half-unit Kendall distance between domain items.
  std::vector<std::int64_t> item_distance(items.size() * items.size(), 0);
  for (std::size_t x = 0; x < items.size(); ++x)
    for (std::size_t y = 0; y < items.size(); ++y)
      for (const auto& [a, b] : pairs) {
        const int diff = static_cast<int>(items.state(x, a, b)) - static_cast<int>(items.state(y, a, b));
        item_distance[x * items.size() + y] += diff < 0 ? -diff : diff;
      }
  std::vector<std::size_t> digits(count * n);
  std::vector<std::uint8_t> outcome_states(count * pairs.size());
  for (std::uint64_t p = 0; p < count; ++p) {
    const auto d = ps.decode(p);
    std::copy(d.begin(), d.end(), digits.begin() + static_cast<std::ptrdiff_t>(p * n));
    for (std::size_t k = 0; k < pairs.size(); ++k)
      outcome_states[p * pairs.size() + k] =
          static_cast<std::uint8_t>(table.state(p, pairs[k].first, pairs[k].second));
  }
  const std::int64_t max_profile = static_cast<std::int64_t>(n * pairs.size() * 2);

  const auto hit = detail::first_hit(count, exec, [&](std::uint64_t base) -> std::optional<Hit> {
    if (!table.ok[base]) return std::nullopt;
    std::vector<std::int64_t> dp(count);
    std::vector<std::int64_t> dout(count);
    for (std::uint64_t q = 0; q < count; ++q) {
      std::int64_t d = 0;
      for (std::size_t i = 0; i < n; ++i)
        d += item_distance[digits[base * n + i] * items.size() + digits[q * n + i]];
      dp[q] = d;
      std::int64_t o = 0;
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        const int diff = static_cast<int>(outcome_states[base * pairs.size() + k]) -
                         static_cast<int>(outcome_states[q * pairs.size() + k]);
        o += diff < 0 ? -diff : diff;
      }
      dout[q] = o;
    }
    // suffix_min[v]: smallest outcome distance among profiles at profile distance >= v.
    std::vector<std::int64_t> suffix_min(static_cast<std::size_t>(max_profile) + 2, INT64_MAX);
    for (std::uint64_t q = 0; q < count; ++q)
      if (table.ok[q]) suffix_min[dp[q]] = std::min(suffix_min[dp[q]], dout[q]);
    for (std::int64_t v = max_profile; v >= 0; --v)
      suffix_min[v] = std::min(suffix_min[v], suffix_min[v + 1]);

    for (std::uint64_t q1 = 0; q1 < count; ++q1) {
      if (!table.ok[q1] || dout[q1] <= suffix_min[dp[q1]]) continue;
      for (std::uint64_t q2 = 0; q2 < count; ++q2)
        if (table.ok[q2] && dp[q2] >= dp[q1] && dout[q2] < dout[q1])
          return Hit{{ps.decode(base), ps.decode(q1), ps.decode(q2)},
                     {},
                     {},
                     {},
                     {dp[q1], dp[q2]},
                     {dout[q1], dout[q2]},
                     "D(I,I') <= D(I,I'') but d(O,O') > d(O,O'')"};
    }
    return std::nullopt;
  });
  return {hit ? std::optional<Hit>(hit->second) : std::nullopt, work};
}

/// First profile where some individual strictly opposes `k` on some pair.
Digits illustrative_dictator_profile(const ProfileSpace& ps, std::size_t k) {
  for (std::uint64_t p = 0; p < ps.count(); ++p) {
    const auto d = ps.decode(p);
    for (const auto& [a, b] : unordered_pairs(ps.m())) {
      const auto sk = ps.state(d, k, a, b);
      if (sk == PairState::tie) continue;
      for (std::size_t i = 0; i < ps.n(); ++i)
        if (i != k && ps.state(d, i, a, b) == flip(sk)) return d;
    }
  }
  return ps.decode(0);
}

Hit dictator_hit(const ProfileSpace& ps, std::size_t k) {
  return Hit{{illustrative_dictator_profile(ps, k)}, {}, k, {}, {}, {},
             "individual " + std::to_string(k + 1) +
                 " is never overruled in the searched space; the profile shows them prevailing"};
}

Found exhaustive_non_dictatorship(const ProfileSpace& ps, const OutcomeTable& table, Exec exec) {
  const auto pairs = ordered_pairs(ps.m());
  for (std::size_t k = 0; k < ps.n(); ++k) {
    const auto overruled = detail::first_hit(ps.count(), exec, [&](std::uint64_t p) -> std::optional<Hit> {
      if (!table.ok[p]) return std::nullopt;
      const auto d = ps.decode(p);
      for (const auto& [a, b] : pairs)
        if (ps.state(d, k, a, b) == PairState::a_preferred && !table.relation(p).strictly(a, b))
          return Hit{};
      return std::nullopt;
    });
    if (!overruled) return {dictator_hit(ps, k), saturating_mul(ps.count(), ps.n())};
  }
  return {std::nullopt, saturating_mul(ps.count(), ps.n())};
}

// --- sampled kernels ---

Digits random_digits(const ProfileSpace& ps, Rng& rng) {
  Digits d(ps.n());
  for (auto& x : d) x = static_cast<std::size_t>(rng.below(ps.items().size()));
  return d;
}

std::optional<PairwiseRelation> try_rule(const Rule& rule, const ProfileSpace& ps,
                                         const Digits& digits, std::string* error = nullptr) {
  try {
    return rule(ps.make(digits)).relation;
  } catch (const std::exception& e) {
    if (error) *error = e.what();
    return std::nullopt;
  }
}

template <typename T>
const T& pick(const std::vector<T>& v, Rng& rng) {
  return v[static_cast<std::size_t>(rng.below(v.size()))];
}

Found sampled_search(const Rule& rule, AxiomId axiom, const ProfileSpace& ps, std::size_t trials,
                     std::uint64_t seed, Exec exec) {
  require_budget(trials, "sampled search");
  const std::size_t m = ps.m();
  const std::size_t n = ps.n();
  const auto buckets = bucket_by_state(ps.items());
  const auto pairs = unordered_pairs(m);
  const auto opairs = ordered_pairs(m);
  std::vector<PairKeys> diff_keys;
  if (axiom == AxiomId::utility_iia)
    for (const auto& [a, b] : pairs) diff_keys.push_back(pair_keys(ps.items(), a, b, true));

  if (axiom == AxiomId::non_dictatorship) {
    std::vector<std::uint8_t> overruled(n, 0);
    Digits first;
    for (std::size_t t = 0; t < trials; ++t) {
      Rng rng = Rng::for_stream(seed, t);
      const auto d = random_digits(ps, rng);
      if (t == 0) first = d;
      const auto rel = try_rule(rule, ps, d);
      if (!rel) continue;
      for (std::size_t k = 0; k < n; ++k)
        for (const auto& [a, b] : opairs)
          if (ps.state(d, k, a, b) == PairState::a_preferred && !rel->strictly(a, b)) overruled[k] = 1;
    }
    for (std::size_t k = 0; k < n; ++k)
      if (!overruled[k])
        return {Hit{{first}, {}, k, {}, {}, {},
                    "individual " + std::to_string(k + 1) +
                        " was never overruled on the sampled profiles"},
                trials};
    return {std::nullopt, trials};
  }

  const auto hit = detail::first_hit(trials, exec, [&](std::uint64_t t) -> std::optional<Hit> {
    Rng rng = Rng::for_stream(seed, t);
    const auto d1 = random_digits(ps, rng);
    std::string error;
    const auto r1 = try_rule(rule, ps, d1, &error);
    if (is_single_profile(axiom))
      return single_profile_violation(axiom, ps, d1, r1 ? &*r1 : nullptr, error);
    if (!r1) return std::nullopt;

    switch (axiom) {
      case AxiomId::anonymity: {
        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < n; ++i) perm[i] = i;
        rng.shuffle(std::span<std::size_t>(perm));
        Digits d2(n);
        for (std::size_t i = 0; i < n; ++i) d2[i] = d1[perm[i]];
        const auto r2 = try_rule(rule, ps, d2);
        if (r2 && !(*r2 == *r1))
          return Hit{{d1, d2}, {}, {}, perm, {}, {}, "reordering the individuals changes the outcome"};
        return std::nullopt;
      }
      case AxiomId::neutrality: {
        std::vector<std::size_t> pi(m);
        for (std::size_t a = 0; a < m; ++a) pi[a] = a;
        rng.shuffle(std::span<std::size_t>(pi));
        Digits d2(n);
        for (std::size_t i = 0; i < n; ++i) d2[i] = ps.items().relabeled(d1[i], pi);
        const auto r2 = try_rule(rule, ps, d2);
        if (r2 && !relabel_consistent(*r1, *r2, pi))
          return Hit{{d1, d2}, {}, {}, pi, {}, {},
                     "renaming the alternatives does not rename the outcome"};
        return std::nullopt;
      }
      case AxiomId::iia:
      case AxiomId::utility_iia: {
        const auto k = static_cast<std::size_t>(rng.below(pairs.size()));
        const auto [a, b] = pairs[k];
        Digits d2(n);
        for (std::size_t i = 0; i < n; ++i)
          d2[i] = axiom == AxiomId::iia
                      ? pick(buckets[(a * m + b) * 3 + static_cast<std::size_t>(ps.state(d1, i, a, b))], rng)
                      : pick(diff_keys[k].members[diff_keys[k].key[d1[i]]], rng);
        const auto r2 = try_rule(rule, ps, d2);
        if (r2 && r2->state(a, b) != r1->state(a, b))
          return Hit{{d1, d2}, {a, b}, {}, {}, {}, {},
                     "individual preferences on " + label_of(ps, a) + " vs " + label_of(ps, b) +
                         " are unchanged, but the outcome on that pair changes"};
        return std::nullopt;
      }
      case AxiomId::positive_responsiveness:
      case AxiomId::monotonic_responsiveness: {
        const auto [a, b] = pick(opairs, rng);
        if (!r1->at_least(a, b)) return std::nullopt;
        std::vector<std::size_t> movable;
        for (std::size_t i = 0; i < n; ++i)
          if (ps.state(d1, i, a, b) != PairState::a_preferred) movable.push_back(i);
        if (movable.empty()) return std::nullopt;
        const auto j = pick(movable, rng);
        Digits d2(n);
        for (std::size_t i = 0; i < n; ++i)
          d2[i] = i == j ? pick(uplift_items(buckets, m, a, b, ps.state(d1, j, a, b)), rng)
                         : pick(buckets[(a * m + b) * 3 + static_cast<std::size_t>(ps.state(d1, i, a, b))], rng);
        const auto r2 = try_rule(rule, ps, d2);
        if (r2 && responsiveness_violated(axiom, r2->state(a, b)))
          return Hit{{d1, d2}, {a, b}, j, {}, {}, {}, responsiveness_text(axiom, ps, a, b, j)};
        return std::nullopt;
      }
      case AxiomId::proximity_preservation: {
        const auto d2 = random_digits(ps, rng);
        const auto d3 = random_digits(ps, rng);
        const auto r2 = try_rule(rule, ps, d2);
        const auto r3 = try_rule(rule, ps, d3);
        if (!r2 || !r3) return std::nullopt;
        const auto p1 = ps.make(d1);
        const auto D2 = profile_half_units(p1, ps.make(d2));
        const auto D3 = profile_half_units(p1, ps.make(d3));
        const auto o2 = relation_half_units(*r1, *r2);
        const auto o3 = relation_half_units(*r1, *r3);
        const std::string text = "D(I,I') <= D(I,I'') but d(O,O') > d(O,O'')";
        if (D2 <= D3 && o2 > o3) return Hit{{d1, d2, d3}, {}, {}, {}, {D2, D3}, {o2, o3}, text};
        if (D3 <= D2 && o3 > o2) return Hit{{d1, d3, d2}, {}, {}, {}, {D3, D2}, {o3, o2}, text};
        return std::nullopt;
      }
      default:
        return std::nullopt;
    }
  });
  return {hit ? std::optional<Hit>(hit->second) : std::nullopt, trials};
}

std::string describe_space(const SearchSpace& space, Domain domain, const ProfileSpace& ps,
                           std::uint64_t work) {
  std::ostringstream out;
  out << (space.kind == SearchSpace::Kind::exhaustive ? "exhaustive" : "sampled") << ' '
      << to_string(domain) << " m=" << space.m << " n=" << space.n << ": ";
  if (space.kind == SearchSpace::Kind::exhaustive)
    out << ps.count() << " profiles, ";
  else
    out << space.trials << " trials (" << Rng::kAlgorithm << "), ";
  out << work << " profile pairs examined (bound " << kSearchBudget << ")";
  return out.str();
}

}  // namespace

AuditResult audit(const Rule& rule, AxiomId axiom, const SearchSpace& space, Exec exec) {
  check_applicable(rule, axiom);
  if (space.m < 2) throw Error(ErrorKind::BadSpec, "audits need m >= 2");
  const Domain domain = resolve_domain(rule, space);
  const ProfileSpace ps(domain, space.m, space.n,
                        space.grid.empty() ? default_utility_grid() : space.grid);

  AuditResult result;
  result.rule_name = rule.name;
  result.property = std::string(to_string(axiom));
  result.seed = space.kind == SearchSpace::Kind::sampled ? space.seed : 0;
  if (axiom == AxiomId::proximity_preservation) result.note = std::string(kProximityNote);

  Found found;
  if (space.kind == SearchSpace::Kind::sampled) {
    found = sampled_search(rule, axiom, ps, space.trials, space.seed, exec);
  } else {
    require_budget(ps.count(), "enumerating the profile space");
    switch (axiom) {
      case AxiomId::anonymity:
        require_budget(saturating_mul(ps.count(), detail::factorial(ps.n())), "anonymity search");
        break;
      case AxiomId::neutrality:
        require_budget(saturating_mul(ps.count(), detail::factorial(ps.m())), "neutrality search");
        break;
      case AxiomId::proximity_preservation:
        require_budget(saturating_mul(ps.count(), ps.count()), "proximity search");
        break;
      default:
        break;
    }
    const auto table = detail::build_outcome_table(rule, ps, exec);
    switch (axiom) {
      case AxiomId::anonymity: found = exhaustive_anonymity(ps, table, exec); break;
      case AxiomId::neutrality: found = exhaustive_neutrality(ps, table, exec); break;
      case AxiomId::iia: found = exhaustive_iia(ps, table, false, exec); break;
      case AxiomId::utility_iia: found = exhaustive_iia(ps, table, true, exec); break;
      case AxiomId::positive_responsiveness:
      case AxiomId::monotonic_responsiveness:
        found = exhaustive_responsiveness(axiom, ps, table, exec);
        break;
      case AxiomId::proximity_preservation: found = exhaustive_proximity(ps, table, exec); break;
      case AxiomId::non_dictatorship: found = exhaustive_non_dictatorship(ps, table, exec); break;
      default: found = exhaustive_single_profile(axiom, ps, table, exec); break;
    }
  }

  result.search_budget = describe_space(space, domain, ps, found.work);
  if (found.hit) {
    result.verdict = Verdict::fail;
    result.witness = build_witness(rule, ps, *found.hit);
  }
  return result;
}

std::vector<AuditResult> arrow_audit(const Rule& rule, std::size_t m, std::size_t n, Exec exec) {
  if (m < 3 || n < 2) throw Error(ErrorKind::BadSpec, "arrow_audit needs m >= 3 and n >= 2");
  std::vector<AuditResult> results;
  for (auto axiom : arrow_axioms())
    results.push_back(audit(rule, axiom, SearchSpace::exhaustive(m, n), exec));
  return results;
}

bool arrow_contradiction(const std::vector<AuditResult>& results) {
  return !results.empty() &&
         std::none_of(results.begin(), results.end(), [](const AuditResult& r) { return r.failed(); });
}

AuditResult may_coincidence_check(const Rule& rule, std::size_t m, std::size_t n,
                                  std::size_t trials, std::uint64_t seed, Exec exec) {
  if (rule.mode != ProfileMode::ordinal)
    throw Error(ErrorKind::InapplicableAxiom, "may coincidence applies to ordinal rules");
  if (m < 2) throw Error(ErrorKind::BadSpec, "may coincidence needs m >= 2");
  require_budget(trials, "may coincidence sampling");

  AuditResult result;
  result.rule_name = rule.name;
  result.property = "may_coincidence";
  result.seed = seed;

  for (auto axiom : {AxiomId::unanimity, AxiomId::neutrality, AxiomId::positive_responsiveness}) {
    AuditResult premise;
    try {
      premise = audit(rule, axiom, SearchSpace::exhaustive(m, n, Domain::weak_orders), exec);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded) throw;
      premise = audit(rule, axiom, SearchSpace::sampled(m, n, trials, seed, Domain::weak_orders), exec);
    }
    result.premises.push_back(std::move(premise));
  }

  const ProfileSpace ps(Domain::weak_orders, m, n, {});
  std::ostringstream budget;
  budget << "premises on weak_orders m=" << m << " n=" << n << "; coincidence on " << trials
         << " sampled weak-order profiles (" << Rng::kAlgorithm << ")";
  result.search_budget = budget.str();

  for (const auto& premise : result.premises)
    if (premise.failed()) {
      result.verdict = Verdict::fail;
      result.witness = premise.witness;
      result.note = "premise " + premise.property + " fails, so May's characterization does not apply";
      return result;
    }

  const auto hit = detail::first_hit(trials, exec, [&](std::uint64_t t) -> std::optional<Hit> {
    Rng rng = Rng::for_stream(seed ^ 0x6d61792d636f696eULL, t);
    const auto d = random_digits(ps, rng);
    const auto rel = try_rule(rule, ps, d);
    if (!rel) return Hit{{d}, {}, {}, {}, {}, {}, "rule rejected a sampled profile"};
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) {
        if (a == b) continue;
        int for_a = 0;
        int for_b = 0;
        for (std::size_t i = 0; i < n; ++i) {
          const auto s = ps.state(d, i, a, b);
          for_a += s == PairState::a_preferred;
          for_b += s == PairState::b_preferred;
        }
        if (rel->at_least(a, b) != (for_a >= for_b))
          return Hit{{d}, {a, b}, {}, {}, {}, {},
                     "outcome on " + label_of(ps, a) + " vs " + label_of(ps, b) +
                         " differs from the majority count " + std::to_string(for_a) + ":" +
                         std::to_string(for_b)};
      }
    return std::nullopt;
  });
  if (hit) {
    result.verdict = Verdict::fail;
    result.witness = build_witness(rule, ps, hit->second);
    result.note = "premises hold within the search but the rule is not simple majority";
  }
  return result;
}

// --- re-verification ---

namespace {

bool recheck(const Rule& rule, const std::string& property, const Witness& w) {
  std::vector<AggregationOutcome> outcomes;
  for (const auto& p : w.profiles) {
    try {
      outcomes.push_back(rule(p));
    } catch (const std::exception&) {
      break;
    }
  }
  if (outcomes.size() != w.outcomes.size()) return false;
  for (std::size_t i = 0; i < outcomes.size(); ++i)
    if (!outcomes[i].same_relation(w.outcomes[i])) return false;

  const auto pair_state = [&](std::size_t profile, std::size_t i) {
    return w.profiles[profile].state(i, w.alternatives[0], w.alternatives[1]);
  };

  if (property == "unrestricted_domain") return w.profiles.size() == 1 && outcomes.empty();
  if (outcomes.size() != w.profiles.size() || outcomes.empty()) return false;
  const auto& p0 = w.profiles[0];
  const auto& o0 = outcomes[0].relation;

  if (property == "agreement") return !o0.is_complete();
  if (property == "transitivity") {
    if (w.alternatives.size() != 3) return false;
    const auto [a, b, c] = std::tuple(w.alternatives[0], w.alternatives[1], w.alternatives[2]);
    return o0.at_least(a, b) && o0.at_least(b, c) && !o0.at_least(a, c);
  }
  if (property == "unanimity" || property == "strict_unanimity") {
    if (w.alternatives.size() != 2) return false;
    const auto [a, b] = std::pair(w.alternatives[0], w.alternatives[1]);
    bool unanimous = true;
    bool all_weak = true;
    bool some_strict = false;
    for (std::size_t i = 0; i < p0.n(); ++i) {
      unanimous = unanimous && pair_state(0, i) == pair_state(0, 0);
      all_weak = all_weak && pair_state(0, i) != PairState::b_preferred;
      some_strict = some_strict || pair_state(0, i) == PairState::a_preferred;
    }
    if (unanimous && o0.state(a, b) != pair_state(0, 0)) return true;
    return property == "strict_unanimity" && all_weak && some_strict &&
           o0.state(a, b) != PairState::a_preferred;
  }
  if (property == "anonymity")
    return w.profiles.size() == 2 && p0.permuted(w.permutation).same_preferences(w.profiles[1]) &&
           !(o0 == outcomes[1].relation);
  if (property == "neutrality")
    return w.profiles.size() == 2 && p0.relabeled(w.permutation).same_preferences(w.profiles[1]) &&
           !relabel_consistent(o0, outcomes[1].relation, w.permutation);
  if (property == "iia" || property == "utility_iia") {
    if (w.profiles.size() != 2 || w.alternatives.size() != 2) return false;
    const auto [a, b] = std::pair(w.alternatives[0], w.alternatives[1]);
    for (std::size_t i = 0; i < p0.n(); ++i) {
      if (property == "iia" && pair_state(0, i) != pair_state(1, i)) return false;
      if (property == "utility_iia") {
        const auto& u1 = p0.utilities()[i].values;
        const auto& u2 = w.profiles[1].utilities()[i].values;
        if (u1[a] - u1[b] != u2[a] - u2[b]) return false;
      }
    }
    return o0.state(a, b) != outcomes[1].relation.state(a, b);
  }
  if (property == "positive_responsiveness" || property == "monotonic_responsiveness") {
    if (w.profiles.size() != 2 || w.alternatives.size() != 2 || !w.individual) return false;
    const auto [a, b] = std::pair(w.alternatives[0], w.alternatives[1]);
    const auto j = *w.individual;
    for (std::size_t i = 0; i < p0.n(); ++i)
      if (i != j && pair_state(0, i) != pair_state(1, i)) return false;
    if (static_cast<int>(pair_state(1, j)) <= static_cast<int>(pair_state(0, j))) return false;
    const auto axiom = property == "positive_responsiveness" ? AxiomId::positive_responsiveness
                                                             : AxiomId::monotonic_responsiveness;
    return o0.at_least(a, b) && responsiveness_violated(axiom, outcomes[1].relation.state(a, b));
  }
  if (property == "proximity_preservation") {
    if (w.profiles.size() != 3 || w.profile_distances.size() != 2 || w.outcome_distances.size() != 2)
      return false;
    const double D1 = profile_distance(p0, w.profiles[1]);
    const double D2 = profile_distance(p0, w.profiles[2]);
    const double d1 = static_cast<double>(relation_half_units(o0, outcomes[1].relation)) / 2.0;
    const double d2 = static_cast<double>(relation_half_units(o0, outcomes[2].relation)) / 2.0;
    return D1 == w.profile_distances[0] && D2 == w.profile_distances[1] &&
           d1 == w.outcome_distances[0] && d2 == w.outcome_distances[1] && D1 <= D2 && d1 > d2;
  }
  if (property == "non_dictatorship") {
    if (!w.individual) return false;
    const auto k = *w.individual;
    for (std::size_t a = 0; a < p0.m(); ++a)
      for (std::size_t b = 0; b < p0.m(); ++b)
        if (a != b && p0.state(k, a, b) == PairState::a_preferred && !o0.strictly(a, b)) return false;
    return true;
  }
  if (property == "may_coincidence") {
    if (w.alternatives.size() != 2) return false;
    const auto [a, b] = std::pair(w.alternatives[0], w.alternatives[1]);
    int for_a = 0;
    int for_b = 0;
    for (std::size_t i = 0; i < p0.n(); ++i) {
      for_a += pair_state(0, i) == PairState::a_preferred;
      for_b += pair_state(0, i) == PairState::b_preferred;
    }
    return o0.at_least(a, b) != (for_a >= for_b);
  }
  return false;
}

}  // namespace

bool reverify(const Rule& rule, const AuditResult& result) {
  if (!result.failed() || !result.witness) return false;
  if (result.property == "may_coincidence") {
    for (const auto& premise : result.premises)
      if (premise.failed()) return reverify(rule, premise);
  }
  return recheck(rule, result.property, *result.witness);
}

}  // namespace protpref
