#pragma once

// Enumeration machinery shared by the audit kernels and the brute-force
// reference searches. Internal to the library.

#include <atomic>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "protpref/axiom_audit.hpp"
#include "protpref/error.hpp"

namespace protpref::detail {

/// Every individual preference of a domain, in enumeration order.
///  - strict/weak orders: normalized level vectors in lexicographic order;
///  - utility grid: value vectors in lexicographic order of grid indices.
class DomainItems {
 public:
  DomainItems(Domain domain, std::size_t m, std::vector<double> grid);

  Domain domain() const { return domain_; }
  std::size_t m() const { return m_; }
  std::size_t size() const { return count_; }
  ProfileMode mode() const {
    return domain_ == Domain::utility_grid ? ProfileMode::utility : ProfileMode::ordinal;
  }

  PairState state(std::size_t item, std::size_t a, std::size_t b) const {
    return static_cast<PairState>(states_[(item * m_ + a) * m_ + b]);
  }
  const std::vector<int>& levels(std::size_t item) const { return levels_[item]; }
  const std::vector<double>& values(std::size_t item) const { return values_[item]; }
  const std::vector<double>& grid() const { return grid_; }

  /// Item obtained by renaming alternative a to relabel[a].
  std::size_t relabeled(std::size_t item, const std::vector<std::size_t>& relabel) const;

 private:
  Domain domain_;
  std::size_t m_;
  std::size_t count_ = 0;
  std::vector<double> grid_;
  std::vector<std::vector<int>> levels_;
  std::vector<std::vector<double>> values_;
  std::vector<std::uint8_t> states_;
  std::map<std::vector<int>, std::size_t> level_index_;
};

using Digits = std::vector<std::size_t>;  // one domain item per individual

/// Profiles as mixed-radix numbers over domain items, individual 0 most
/// significant; profile index order is the documented search order.
class ProfileSpace {
 public:
  ProfileSpace(Domain domain, std::size_t m, std::size_t n, std::vector<double> grid);

  const DomainItems& items() const { return items_; }
  std::size_t m() const { return items_.m(); }
  std::size_t n() const { return n_; }
  /// k^n, saturating at UINT64_MAX.
  std::uint64_t count() const { return count_; }
  const UniversePtr& universe() const { return universe_; }

  Digits decode(std::uint64_t index) const;
  std::uint64_t encode(const Digits& digits) const;
  Profile make(const Digits& digits) const;

  PairState state(const Digits& digits, std::size_t i, std::size_t a, std::size_t b) const {
    return items_.state(digits[i], a, b);
  }

 private:
  DomainItems items_;
  std::size_t n_;
  std::uint64_t count_;
  UniversePtr universe_;
};

/// Rule outputs for every profile of a space (relation bits, m*m each).
struct OutcomeTable {
  std::size_t m = 0;
  std::vector<std::uint8_t> bits;
  std::vector<std::uint8_t> ok;
  std::map<std::uint64_t, std::string> errors;

  bool at_least(std::uint64_t p, std::size_t a, std::size_t b) const {
    return bits[(p * m + a) * m + b] != 0;
  }
  PairState state(std::uint64_t p, std::size_t a, std::size_t b) const {
    const bool ab = at_least(p, a, b);
    const bool ba = at_least(p, b, a);
    if (ab && !ba) return PairState::a_preferred;
    if (ba && !ab) return PairState::b_preferred;
    return PairState::tie;
  }
  PairwiseRelation relation(std::uint64_t p) const;
};

OutcomeTable build_outcome_table(const Rule& rule, const ProfileSpace& space, Exec exec);

/// Everything needed to rebuild a witness from domain digits.
struct Hit {
  std::vector<Digits> profiles;
  std::vector<std::size_t> alternatives;
  std::optional<std::size_t> individual;
  std::vector<std::size_t> permutation;
  std::vector<std::int64_t> profile_half_units;
  std::vector<std::int64_t> outcome_half_units;
  std::string description;
};

/// Smallest index in [0, count) for which fn returns a hit. fn may run
/// concurrently for different indices; the result does not depend on Exec.
template <typename Fn>
std::optional<std::pair<std::uint64_t, Hit>> first_hit(std::uint64_t count, Exec exec, Fn&& fn) {
  std::atomic<std::uint64_t> best{count};
  std::optional<std::pair<std::uint64_t, Hit>> found;
  std::optional<std::pair<std::uint64_t, std::string>> failure;
  std::mutex guard;
  const auto total = static_cast<std::int64_t>(count);
  const bool parallel = exec == Exec::parallel;

#pragma omp parallel for schedule(dynamic, 8) if (parallel)
  for (std::int64_t t = 0; t < total; ++t) {
    const auto index = static_cast<std::uint64_t>(t);
    if (index > best.load(std::memory_order_relaxed)) continue;
    try {
      if (auto hit = fn(index)) {
        std::lock_guard lock(guard);
        if (index < best.load()) {
          best.store(index);
          found.emplace(index, std::move(*hit));
        }
      }
    } catch (const std::exception& e) {
      std::lock_guard lock(guard);
      if (!failure || index < failure->first) failure.emplace(index, e.what());
    }
  }
  if (failure && (!found || failure->first < found->first))
    throw Error(ErrorKind::BadSpec, "rule failed during search: " + failure->second);
  return found;
}

std::vector<std::vector<std::size_t>> all_permutations(std::size_t k);
std::uint64_t factorial(std::size_t k);

}  // namespace protpref::detail
