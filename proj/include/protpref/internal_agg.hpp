#pragma once

#include <span>
#include <string>
#include <string_view>

#include "protpref/contacts.hpp"
#include "protpref/ranking.hpp"

namespace protpref {

enum class Combine { sum, mean, count };

std::string_view to_string(Combine combine);
Combine combine_from_string(std::string_view name);

/// u_P: combines the scores of each class's instances. Classes without
/// instances get 0. All instances must come from one protein
/// (Error{MixedProteins}); their classes must be in the universe
/// (Error{UniverseMismatch}). `owner` names the vector when the list is empty.
UtilityVector utility_from_instances(std::span<const InteractionInstance> instances,
                                     const UniversePtr& universe, Combine combine,
                                     std::string owner = {});

/// Sorts by decreasing utility and groups by single-linkage: neighbours in
/// sorted order whose utilities differ by at most tie_epsilon share a tier.
RankingWithTies ordinal_from_utility(const UtilityVector& u, double tie_epsilon = 0.0);

}  // namespace protpref
