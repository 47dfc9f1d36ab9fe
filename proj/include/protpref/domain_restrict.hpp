#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "protpref/external_agg.hpp"

namespace protpref {

/// Linear arrangement of the universe: axis[k] is the alternative at position k.
using Axis = std::vector<std::size_t>;

struct SinglePeakedViolation {
  std::size_t individual = 0;
  std::size_t valley = 0;  // alternative worse than an axis neighbour on each side
};

struct SinglePeakedReport {
  bool single_peaked = true;
  std::vector<SinglePeakedViolation> violations;
};

/// Strict orders only (Error{TiesUnsupported}); Error{WrongMode} for
/// utility profiles; axis must be a permutation (Error{BadSpec}).
SinglePeakedReport is_single_peaked_on(const Profile& p, const Axis& axis);

/// Single-peakedness of one strict order given best first.
bool is_single_peaked_order(const std::vector<std::size_t>& best_first, const Axis& axis);

inline constexpr std::size_t kFindAxisMaxAlternatives = 8;

/// First axis in lexicographic order (an axis and its reversal counted
/// once) on which p is single-peaked. Error{TooLarge} for m > 8.
std::optional<Axis> find_axis(const Profile& p);

bool is_quasi_transitive(const AggregationOutcome& outcome);

}  // namespace protpref
