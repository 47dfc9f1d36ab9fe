#include "protpref/domain_restrict.hpp"

#include "protpref/error.hpp"

#include <algorithm>
#include <numeric>

namespace protpref {

namespace {

std::vector<std::size_t> axis_positions(const Axis& axis, std::size_t m) {
  std::vector<std::size_t> pos(m, m);
  if (axis.size() != m) throw Error(ErrorKind::BadSpec, "axis must list every alternative once");
  for (std::size_t k = 0; k < m; ++k) {
    if (axis[k] >= m || pos[axis[k]] != m)
      throw Error(ErrorKind::BadSpec, "axis must list every alternative once");
    pos[axis[k]] = k;
  }
  return pos;
}

/// First alternative (by axis position) that has a better alternative on each side.
std::optional<std::size_t> find_valley(const std::vector<int>& rank_of, const Axis& axis) {
  const std::size_t m = axis.size();
  if (m < 3) return std::nullopt;
  // best_left[k]: best rank among axis[0..k-1].
  std::vector<int> best_left(m, INT32_MAX);
  for (std::size_t k = 1; k < m; ++k) best_left[k] = std::min(best_left[k - 1], rank_of[axis[k - 1]]);
  int best_right = INT32_MAX;
  std::optional<std::size_t> valley;
  for (std::size_t k = m - 1; k-- > 1;) {
    best_right = std::min(best_right, rank_of[axis[k + 1]]);
    const int r = rank_of[axis[k]];
    if (best_left[k] < r && best_right < r) valley = axis[k];
  }
  return valley;
}

std::vector<int> strict_ranks(const RankingWithTies& r) {
  if (!r.is_strict())
    throw Error(ErrorKind::TiesUnsupported, "single-peakedness is checked on strict orders only");
  return r.levels();
}

}  // namespace

SinglePeakedReport is_single_peaked_on(const Profile& p, const Axis& axis) {
  if (p.mode() != ProfileMode::ordinal)
    throw Error(ErrorKind::WrongMode, "single-peakedness needs an ordinal profile");
  axis_positions(axis, p.m());
  SinglePeakedReport report;
  for (std::size_t i = 0; i < p.n(); ++i) {
    if (const auto valley = find_valley(strict_ranks(p.rankings()[i]), axis)) {
      report.single_peaked = false;
      report.violations.push_back({i, *valley});
    }
  }
  return report;
}

bool is_single_peaked_order(const std::vector<std::size_t>& best_first, const Axis& axis) {
  const std::size_t m = axis.size();
  axis_positions(axis, m);
  if (best_first.size() != m) throw Error(ErrorKind::BadSpec, "order and axis differ in length");
  std::vector<int> rank_of(m, -1);
  for (std::size_t k = 0; k < m; ++k) {
    if (best_first[k] >= m || rank_of[best_first[k]] != -1)
      throw Error(ErrorKind::BadSpec, "order must list every alternative once");
    rank_of[best_first[k]] = static_cast<int>(k);
  }
  return !find_valley(rank_of, axis);
}

std::optional<Axis> find_axis(const Profile& p) {
  if (p.mode() != ProfileMode::ordinal)
    throw Error(ErrorKind::WrongMode, "single-peakedness needs an ordinal profile");
  const std::size_t m = p.m();
  if (m > kFindAxisMaxAlternatives)
    throw Error(ErrorKind::TooLarge, "axis search is limited to m <= 8");
  std::vector<std::vector<int>> ranks;
  for (const auto& r : p.rankings()) ranks.push_back(strict_ranks(r));

  Axis axis(m);
  std::iota(axis.begin(), axis.end(), 0);
  do {
    if (std::lexicographical_compare(axis.rbegin(), axis.rend(), axis.begin(), axis.end())) continue;
    const bool ok = std::none_of(ranks.begin(), ranks.end(),
                                 [&](const std::vector<int>& r) { return find_valley(r, axis).has_value(); });
    if (ok) return axis;
  } while (std::next_permutation(axis.begin(), axis.end()));
  return std::nullopt;
}

bool is_quasi_transitive(const AggregationOutcome& outcome) {
  return outcome.relation.is_quasi_transitive();
}

}  // namespace protpref
