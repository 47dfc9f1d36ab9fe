#include "protpref/external_agg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

#include "protpref/error.hpp"

namespace protpref {

namespace {

void require_mode(const Profile& p, ProfileMode mode, std::string_view rule) {
  if (p.mode() != mode)
    throw Error(ErrorKind::WrongMode, std::string(rule) + " needs a " +
                                          std::string(to_string(mode)) + " profile");
}

PairwiseRelation relation_from_levels(const std::vector<int>& levels) {
  PairwiseRelation r(levels.size());
  for (std::size_t a = 0; a < levels.size(); ++a)
    for (std::size_t b = 0; b < levels.size(); ++b) r.set(a, b, levels[a] <= levels[b]);
  return r;
}

/// Larger score is better.
PairwiseRelation relation_from_scores(const std::vector<long>& scores) {
  PairwiseRelation r(scores.size());
  for (std::size_t a = 0; a < scores.size(); ++a)
    for (std::size_t b = 0; b < scores.size(); ++b) r.set(a, b, scores[a] >= scores[b]);
  return r;
}

}  // namespace

Tournament majority_tournament_serial(const Profile& p) {
  require_mode(p, ProfileMode::ordinal, "majority_tournament");
  const std::size_t m = p.m();
  Tournament t{p.universe(), p.n(), std::vector<int>(m * m, 0)};
  for (std::size_t i = 0; i < p.n(); ++i)
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        if (p.state(i, a, b) == PairState::a_preferred) ++t.counts[a * m + b];
  return t;
}

Tournament majority_tournament(const Profile& p) {
  require_mode(p, ProfileMode::ordinal, "majority_tournament");
  const std::size_t m = p.m();
  const std::size_t n = p.n();
  Tournament t{p.universe(), n, std::vector<int>(m * m, 0)};
  const auto rows = static_cast<std::ptrdiff_t>(m);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t a = 0; a < rows; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& r = p.rankings()[i];
      const int level = r.tier_of(ua);
      for (std::size_t b = 0; b < m; ++b)
        if (level < r.tier_of(b)) ++t.counts[ua * m + b];
    }
  }
  return t;
}

AggregationOutcome make_outcome(std::string rule_name, UniversePtr universe,
                                PairwiseRelation relation) {
  AggregationOutcome out;
  out.rule_name = std::move(rule_name);
  out.universe = std::move(universe);
  out.relation = std::move(relation);
  out.cycle_witness = out.relation.find_transitivity_violation();
  out.transitive = !out.cycle_witness.has_value();
  if (out.transitive)
    out.ranking = RankingWithTies::from_levels(out.rule_name, out.universe,
                                               levels_of_transitive(out.relation));
  return out;
}

AggregationOutcome may_rule(const Profile& p) {
  const auto t = majority_tournament(p);
  const std::size_t m = p.m();
  PairwiseRelation r(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) r.set(a, b, t.count(a, b) >= t.count(b, a));
  return make_outcome("may", p.universe(), std::move(r));
}

std::vector<long> borda_half_scores(const Profile& p) {
  require_mode(p, ProfileMode::ordinal, "borda");
  const std::size_t m = p.m();
  std::vector<long> scores(m, 0);
  for (const auto& ranking : p.rankings())
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) {
        if (a == b) continue;
        const auto s = ranking.compare(a, b);
        if (s == PairState::a_preferred) scores[a] += 2;
        else if (s == PairState::tie) scores[a] += 1;
      }
  return scores;
}

AggregationOutcome borda(const Profile& p) {
  return make_outcome("borda", p.universe(), relation_from_scores(borda_half_scores(p)));
}

AggregationOutcome kemeny(const Profile& p) {
  require_mode(p, ProfileMode::ordinal, "kemeny");
  const std::size_t m = p.m();
  if (m > kKemenyMaxAlternatives)
    throw Error(ErrorKind::TooLarge, "kemeny is exhaustive and limited to m <= 8");

  // cost[x][y]: half units paid when x is placed above y.
  std::vector<long> cost(m * m, 0);
  for (std::size_t i = 0; i < p.n(); ++i)
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = 0; y < m; ++y)
        if (x != y) cost[x * m + y] += 2 - static_cast<long>(p.state(i, x, y));

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> best = order;
  long best_cost = std::numeric_limits<long>::max();
  do {
    long total = 0;
    for (std::size_t i = 0; i < m && total < best_cost; ++i)
      for (std::size_t j = i + 1; j < m; ++j) total += cost[order[i] * m + order[j]];
    if (total < best_cost) {
      best_cost = total;
      best = order;
    }
  } while (std::next_permutation(order.begin(), order.end()));

  std::vector<int> levels(m);
  for (std::size_t pos = 0; pos < m; ++pos) levels[best[pos]] = static_cast<int>(pos);
  return make_outcome("kemeny", p.universe(), relation_from_levels(levels));
}

AggregationOutcome dictator(const Profile& p, std::size_t k) {
  if (k < 1 || k > p.n())
    throw Error(ErrorKind::BadIndex, "dictator index " + std::to_string(k) + " outside 1.." +
                                         std::to_string(p.n()));
  const std::size_t m = p.m();
  PairwiseRelation r(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) r.set(a, b, p.state(k - 1, a, b) != PairState::b_preferred);
  return make_outcome("dictator:" + std::to_string(k), p.universe(), std::move(r));
}

AggregationOutcome utilitarian(const Profile& p) {
  require_mode(p, ProfileMode::utility, "utilitarian");
  const std::size_t m = p.m();
  std::vector<double> sums(m, 0.0);
  for (const auto& u : p.utilities())
    for (std::size_t a = 0; a < m; ++a) sums[a] += u.values[a];
  PairwiseRelation r(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) r.set(a, b, sums[a] >= sums[b]);
  return make_outcome("utilitarian", p.universe(), std::move(r));
}

UtilityVector UtilityTransform::apply(const UtilityVector& u) const {
  if (!(scale_alpha > 0.0) || !std::isfinite(scale_alpha))
    throw Error(ErrorKind::BadConfig, "scale_alpha must be positive");
  const auto it = offsets_beta.find(u.owner);
  const double beta = it == offsets_beta.end() ? 0.0 : it->second;
  UtilityVector out = u;
  for (auto& v : out.values) v = scale_alpha * v + beta;
  return out;
}

Profile UtilityTransform::apply(const Profile& p) const {
  if (p.mode() != ProfileMode::utility)
    throw Error(ErrorKind::WrongMode, "utility transforms apply to utility profiles");
  std::vector<UtilityVector> out;
  for (const auto& u : p.utilities()) out.push_back(apply(u));
  return Profile::utility(p.universe(), std::move(out));
}

std::vector<std::string> available_rules() {
  return {"may", "borda", "kemeny", "dictator", "dictator:<k>", "utilitarian"};
}

Rule make_rule(std::string_view name) {
  if (name == "may" || name == "majority")
    return {"may", ProfileMode::ordinal, [](const Profile& p) { return may_rule(p); }};
  if (name == "borda")
    return {"borda", ProfileMode::ordinal, [](const Profile& p) { return borda(p); }};
  if (name == "kemeny")
    return {"kemeny", ProfileMode::ordinal, [](const Profile& p) { return kemeny(p); }};
  if (name == "utilitarian")
    return {"utilitarian", ProfileMode::utility, [](const Profile& p) { return utilitarian(p); }};
  if (name.starts_with("dictator")) {
    std::size_t k = 1;
    if (name.size() > 8) {
      const auto digits = name.substr(name.find_first_of(":=") == 8 ? 9 : name.size());
      const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
      if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size() || k == 0)
        throw Error(ErrorKind::BadSpec, "bad dictator rule '" + std::string(name) + "'");
    }
    return {"dictator:" + std::to_string(k), ProfileMode::ordinal,
            [k](const Profile& p) { return dictator(p, k); }};
  }
  std::string list;
  for (const auto& r : available_rules()) list += (list.empty() ? "" : ", ") + r;
  throw Error(ErrorKind::BadSpec, "unknown rule '" + std::string(name) + "'; available: " + list);
}

}  // namespace protpref
