#include "protpref/internal_agg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "protpref/error.hpp"

namespace protpref {

std::string_view to_string(Combine combine) {
  switch (combine) {
    case Combine::sum: return "sum";
    case Combine::mean: return "mean";
    case Combine::count: return "count";
  }
  return "sum";
}

Combine combine_from_string(std::string_view name) {
  if (name == "sum") return Combine::sum;
  if (name == "mean") return Combine::mean;
  if (name == "count") return Combine::count;
  throw Error(ErrorKind::BadConfig, "unknown combine mode '" + std::string(name) + "'");
}

UtilityVector utility_from_instances(std::span<const InteractionInstance> instances,
                                     const UniversePtr& universe, Combine combine,
                                     std::string owner) {
  if (!universe) throw Error(ErrorKind::UniverseMismatch, "no universe");
  if (!instances.empty()) {
    owner = instances.front().protein_id;
    for (const auto& inst : instances)
      if (inst.protein_id != owner)
        throw Error(ErrorKind::MixedProteins,
                    "instances from '" + owner + "' and '" + inst.protein_id + "'");
  }

  const std::size_t m = universe->size();
  std::vector<double> sums(m, 0.0);
  std::vector<std::size_t> counts(m, 0);
  for (const auto& inst : instances) {
    const auto idx = universe->require_index(inst.cls.label());
    sums[idx] += inst.score;
    ++counts[idx];
  }

  UtilityVector u{std::move(owner), universe, std::vector<double>(m, 0.0)};
  for (std::size_t i = 0; i < m; ++i) {
    switch (combine) {
      case Combine::sum: u.values[i] = sums[i]; break;
      case Combine::count: u.values[i] = static_cast<double>(counts[i]); break;
      case Combine::mean:
        u.values[i] = counts[i] == 0 ? 0.0 : sums[i] / static_cast<double>(counts[i]);
        break;
    }
    if (!std::isfinite(u.values[i]))
      throw Error(ErrorKind::BadConfig, "non-finite utility for " + universe->labels[i]);
  }
  return u;
}

RankingWithTies ordinal_from_utility(const UtilityVector& u, double tie_epsilon) {
  if (!std::isfinite(tie_epsilon) || tie_epsilon < 0.0)
    throw Error(ErrorKind::BadConfig, "tie_epsilon must be finite and non-negative");
  const std::size_t m = u.values.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return u.values[a] > u.values[b]; });

  std::vector<int> levels(m, 0);
  int tier = 0;
  for (std::size_t k = 0; k < m; ++k) {
    if (k > 0 && u.values[order[k - 1]] - u.values[order[k]] > tie_epsilon) ++tier;
    levels[order[k]] = tier;
  }
  return RankingWithTies::from_levels(u.owner, u.universe, levels);
}

}  // namespace protpref
