// Naive serial searches with the same enumeration order as audit().

#include <algorithm>
#include <numeric>

#include "audit_space.hpp"

namespace protpref::reference {

namespace {

struct Space {
  detail::ProfileSpace ps;
  std::vector<Profile> profiles;
  std::vector<std::optional<AggregationOutcome>> outcomes;
  std::vector<std::string> errors;
};

Space enumerate(const Rule& rule, const SearchSpace& space) {
  const Domain domain = space.domain.value_or(default_domain(rule.mode));
  Space s{detail::ProfileSpace(domain, space.m, space.n,
                               space.grid.empty() ? default_utility_grid() : space.grid),
          {}, {}, {}};
  if (s.ps.count() > kSearchBudget) throw Error(ErrorKind::BudgetExceeded, "reference space too large");
  for (std::uint64_t p = 0; p < s.ps.count(); ++p) {
    s.profiles.push_back(s.ps.make(s.ps.decode(p)));
    try {
      s.outcomes.push_back(rule(s.profiles.back()));
      s.errors.emplace_back();
    } catch (const std::exception& e) {
      s.outcomes.emplace_back();
      s.errors.emplace_back(e.what());
    }
  }
  return s;
}

Witness make_witness(const Rule& rule, std::vector<Profile> profiles) {
  Witness w;
  w.profiles = std::move(profiles);
  for (const auto& p : w.profiles) {
    try {
      w.outcomes.push_back(rule(p));
    } catch (const std::exception&) {
      break;
    }
  }
  return w;
}

bool unanimous_on(const Profile& p, std::size_t a, std::size_t b) {
  for (std::size_t i = 1; i < p.n(); ++i)
    if (p.state(i, a, b) != p.state(0, a, b)) return false;
  return true;
}

std::optional<Witness> single(const Rule& rule, AxiomId axiom, const Space& s) {
  const std::size_t m = s.ps.m();
  for (std::size_t idx = 0; idx < s.profiles.size(); ++idx) {
    const auto& p = s.profiles[idx];
    const auto& out = s.outcomes[idx];
    if (axiom == AxiomId::unrestricted_domain) {
      if (!out) return make_witness(rule, {p});
      continue;
    }
    if (!out) continue;
    const auto& r = out->relation;
    if (axiom == AxiomId::agreement) {
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
          if (!r.at_least(a, b) && !r.at_least(b, a)) return make_witness(rule, {p});
    }
    if (axiom == AxiomId::transitivity) {
      if (auto v = r.find_transitivity_violation()) {
        auto w = make_witness(rule, {p});
        w.alternatives = {(*v)[0], (*v)[1], (*v)[2]};
        return w;
      }
    }
    if (axiom == AxiomId::unanimity) {
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b)
          if (unanimous_on(p, a, b) && r.state(a, b) != p.state(0, a, b)) {
            auto w = make_witness(rule, {p});
            w.alternatives = {a, b};
            return w;
          }
    }
    if (axiom == AxiomId::strict_unanimity) {
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
          if (a == b) continue;
          bool weak = true;
          bool strict = false;
          for (std::size_t i = 0; i < p.n(); ++i) {
            weak = weak && p.state(i, a, b) != PairState::b_preferred;
            strict = strict || p.state(i, a, b) == PairState::a_preferred;
          }
          const bool broken = (unanimous_on(p, a, b) && r.state(a, b) != p.state(0, a, b)) ||
                              (weak && strict && !r.strictly(a, b));
          if (broken) {
            auto w = make_witness(rule, {p});
            w.alternatives = {a, b};
            return w;
          }
        }
    }
  }
  return std::nullopt;
}

std::optional<Witness> anonymity(const Rule& rule, const Space& s) {
  const auto perms = detail::all_permutations(s.ps.n());
  for (std::size_t idx = 0; idx < s.profiles.size(); ++idx) {
    if (!s.outcomes[idx]) continue;
    for (std::size_t k = 1; k < perms.size(); ++k) {
      const auto q = s.profiles[idx].permuted(perms[k]);
      AggregationOutcome o;
      try {
        o = rule(q);
      } catch (const std::exception&) {
        continue;
      }
      if (!o.same_relation(*s.outcomes[idx])) {
        auto w = make_witness(rule, {s.profiles[idx], q});
        w.permutation = perms[k];
        const auto& r = s.outcomes[idx]->relation;
        for (std::size_t a = 0; a < s.ps.m() && w.alternatives.empty(); ++a)
          for (std::size_t b = 0; b < s.ps.m(); ++b)
            if (r.at_least(a, b) != o.relation.at_least(a, b)) {
              w.alternatives = {a, b};
              break;
            }
        return w;
      }
    }
  }
  return std::nullopt;
}

std::optional<Witness> neutrality(const Rule& rule, const Space& s) {
  const std::size_t m = s.ps.m();
  const auto perms = detail::all_permutations(m);
  for (std::size_t idx = 0; idx < s.profiles.size(); ++idx) {
    if (!s.outcomes[idx]) continue;
    const auto& r = s.outcomes[idx]->relation;
    for (std::size_t k = 1; k < perms.size(); ++k) {
      const auto& pi = perms[k];
      const auto q = s.profiles[idx].relabeled(pi);
      AggregationOutcome o;
      try {
        o = rule(q);
      } catch (const std::exception&) {
        continue;
      }
      bool same = true;
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) same = same && o.relation.at_least(pi[a], pi[b]) == r.at_least(a, b);
      if (!same) {
        auto w = make_witness(rule, {s.profiles[idx], q});
        w.permutation = pi;
        return w;
      }
    }
  }
  return std::nullopt;
}

std::optional<Witness> iia(const Rule& rule, const Space& s, bool by_difference) {
  const std::size_t m = s.ps.m();
  const std::size_t count = s.profiles.size();
  for (std::size_t x = 0; x < count; ++x) {
    if (!s.outcomes[x]) continue;
    for (std::size_t y = 0; y < count; ++y) {
      if (y == x || !s.outcomes[y]) continue;
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) {
          const auto& p = s.profiles[x];
          const auto& q = s.profiles[y];
          bool agree = true;
          for (std::size_t i = 0; i < p.n() && agree; ++i) {
            if (by_difference) {
              const auto& u = p.utilities()[i].values;
              const auto& v = q.utilities()[i].values;
              agree = u[a] - u[b] == v[a] - v[b];
            } else {
              agree = p.state(i, a, b) == q.state(i, a, b);
            }
          }
          if (agree && s.outcomes[x]->relation.state(a, b) != s.outcomes[y]->relation.state(a, b)) {
            auto w = make_witness(rule, {p, q});
            w.alternatives = {a, b};
            return w;
          }
        }
    }
  }
  return std::nullopt;
}

std::optional<Witness> responsiveness(const Rule& rule, AxiomId axiom, const Space& s) {
  const std::size_t m = s.ps.m();
  const std::size_t count = s.profiles.size();
  for (std::size_t x = 0; x < count; ++x) {
    if (!s.outcomes[x]) continue;
    for (std::size_t y = 0; y < count; ++y) {
      if (!s.outcomes[y]) continue;
      const auto& p = s.profiles[x];
      const auto& q = s.profiles[y];
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
          if (a == b || !s.outcomes[x]->relation.at_least(a, b)) continue;
          for (std::size_t j = 0; j < p.n(); ++j) {
            bool uplift = static_cast<int>(q.state(j, a, b)) > static_cast<int>(p.state(j, a, b));
            for (std::size_t i = 0; i < p.n() && uplift; ++i)
              if (i != j) uplift = p.state(i, a, b) == q.state(i, a, b);
            if (!uplift) continue;
            const auto after = s.outcomes[y]->relation.state(a, b);
            const bool broken = axiom == AxiomId::positive_responsiveness
                                    ? after != PairState::a_preferred
                                    : after == PairState::b_preferred;
            if (broken) {
              auto w = make_witness(rule, {p, q});
              w.alternatives = {a, b};
              w.individual = j;
              return w;
            }
          }
        }
    }
  }
  return std::nullopt;
}

std::optional<Witness> proximity(const Rule& rule, const Space& s) {
  const std::size_t count = s.profiles.size();
  for (std::size_t x = 0; x < count; ++x) {
    if (!s.outcomes[x]) continue;
    for (std::size_t y = 0; y < count; ++y) {
      if (!s.outcomes[y]) continue;
      const double D1 = profile_distance(s.profiles[x], s.profiles[y]);
      const auto d1 = relation_half_units(s.outcomes[x]->relation, s.outcomes[y]->relation);
      for (std::size_t z = 0; z < count; ++z) {
        if (!s.outcomes[z]) continue;
        const double D2 = profile_distance(s.profiles[x], s.profiles[z]);
        const auto d2 = relation_half_units(s.outcomes[x]->relation, s.outcomes[z]->relation);
        if (D1 <= D2 && d1 > d2) {
          auto w = make_witness(rule, {s.profiles[x], s.profiles[y], s.profiles[z]});
          w.profile_distances = {D1, D2};
          w.outcome_distances = {static_cast<double>(d1) / 2.0, static_cast<double>(d2) / 2.0};
          return w;
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<Witness> non_dictatorship(const Rule& rule, const Space& s) {
  const std::size_t m = s.ps.m();
  for (std::size_t k = 0; k < s.ps.n(); ++k) {
    bool overruled = false;
    for (std::size_t idx = 0; idx < s.profiles.size() && !overruled; ++idx) {
      if (!s.outcomes[idx]) continue;
      for (std::size_t a = 0; a < m && !overruled; ++a)
        for (std::size_t b = 0; b < m && !overruled; ++b)
          overruled = a != b && s.profiles[idx].state(k, a, b) == PairState::a_preferred &&
                      !s.outcomes[idx]->relation.strictly(a, b);
    }
    if (overruled) continue;
    std::size_t shown = 0;
    bool found = false;
    for (std::size_t idx = 0; idx < s.profiles.size() && !found; ++idx)
      for (std::size_t a = 0; a < m && !found; ++a)
        for (std::size_t b = a + 1; b < m && !found; ++b)
          for (std::size_t i = 0; i < s.ps.n() && !found; ++i) {
            const auto sk = s.profiles[idx].state(k, a, b);
            if (i != k && sk != PairState::tie && s.profiles[idx].state(i, a, b) == flip(sk)) {
              shown = idx;
              found = true;
            }
          }
    auto w = make_witness(rule, {s.profiles[shown]});
    w.individual = k;
    return w;
  }
  return std::nullopt;
}

}  // namespace

AuditResult audit_exhaustive(const Rule& rule, AxiomId axiom, const SearchSpace& space) {
  const auto s = enumerate(rule, space);
  std::optional<Witness> w;
  switch (axiom) {
    case AxiomId::anonymity: w = anonymity(rule, s); break;
    case AxiomId::neutrality: w = neutrality(rule, s); break;
    case AxiomId::iia: w = iia(rule, s, false); break;
    case AxiomId::utility_iia: w = iia(rule, s, true); break;
    case AxiomId::positive_responsiveness:
    case AxiomId::monotonic_responsiveness: w = responsiveness(rule, axiom, s); break;
    case AxiomId::proximity_preservation: w = proximity(rule, s); break;
    case AxiomId::non_dictatorship: w = non_dictatorship(rule, s); break;
    default: w = single(rule, axiom, s); break;
  }
  AuditResult result;
  result.rule_name = rule.name;
  result.property = std::string(to_string(axiom));
  result.search_budget = "reference exhaustive";
  if (w) {
    result.verdict = Verdict::fail;
    result.witness = std::move(w);
  }
  return result;
}

}  // namespace protpref::reference
