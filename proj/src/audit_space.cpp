#include "audit_space.hpp"

#include <algorithm>
#include <numeric>

namespace protpref::detail {

namespace {

constexpr std::size_t kMaxEnumeratedAlternatives = 8;
constexpr std::size_t kMaxDomainItems = 10'000'000;

bool normalized_levels(const std::vector<int>& levels, bool strict) {
  std::vector<bool> used(levels.size(), false);
  for (int v : levels) {
    if (strict && used[v]) return false;
    used[v] = true;
  }
  // Used values must be exactly 0..k-1.
  const auto first_unused = std::find(used.begin(), used.end(), false);
  return std::all_of(first_unused, used.end(), [](bool u) { return !u; });
}

}  // namespace

DomainItems::DomainItems(Domain domain, std::size_t m, std::vector<double> grid)
    : domain_(domain), m_(m), grid_(std::move(grid)) {
  if (m == 0) throw Error(ErrorKind::BadSpec, "search space needs m >= 1");

  if (domain == Domain::utility_grid) {
    if (grid_.empty()) throw Error(ErrorKind::BadSpec, "empty utility grid");
    std::sort(grid_.begin(), grid_.end());
    grid_.erase(std::unique(grid_.begin(), grid_.end()), grid_.end());
    double total = 1.0;
    for (std::size_t a = 0; a < m; ++a) total *= static_cast<double>(grid_.size());
    if (total > static_cast<double>(kMaxDomainItems))
      throw Error(ErrorKind::TooLarge, "utility grid domain too large to enumerate");
    count_ = static_cast<std::size_t>(total);
    values_.reserve(count_);
    std::vector<std::size_t> idx(m, 0);
    for (std::size_t item = 0; item < count_; ++item) {
      std::vector<double> v(m);
      for (std::size_t a = 0; a < m; ++a) v[a] = grid_[idx[a]];
      values_.push_back(std::move(v));
      for (std::size_t a = m; a-- > 0;) {
        if (++idx[a] < grid_.size()) break;
        idx[a] = 0;
      }
    }
  } else {
    if (m > kMaxEnumeratedAlternatives)
      throw Error(ErrorKind::TooLarge, "order domains are enumerated only for m <= 8");
    const bool strict = domain == Domain::strict_orders;
    std::vector<int> levels(m, 0);
    for (;;) {
      if (normalized_levels(levels, strict)) {
        level_index_.emplace(levels, levels_.size());
        levels_.push_back(levels);
      }
      std::size_t a = m;
      while (a-- > 0) {
        if (++levels[a] < static_cast<int>(m)) break;
        levels[a] = 0;
      }
      if (a == static_cast<std::size_t>(-1)) break;
    }
    count_ = levels_.size();
  }

  states_.resize(count_ * m * m);
  for (std::size_t item = 0; item < count_; ++item)
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) {
        PairState s = PairState::tie;
        if (domain == Domain::utility_grid) {
          const auto& v = values_[item];
          if (v[a] > v[b]) s = PairState::a_preferred;
          else if (v[a] < v[b]) s = PairState::b_preferred;
        } else {
          const auto& l = levels_[item];
          if (l[a] < l[b]) s = PairState::a_preferred;
          else if (l[a] > l[b]) s = PairState::b_preferred;
        }
        states_[(item * m + a) * m + b] = static_cast<std::uint8_t>(s);
      }
}

std::size_t DomainItems::relabeled(std::size_t item, const std::vector<std::size_t>& relabel) const {
  if (domain_ == Domain::utility_grid) {
    const auto& v = values_[item];
    std::size_t index = 0;
    std::vector<double> moved(m_);
    for (std::size_t a = 0; a < m_; ++a) moved[relabel[a]] = v[a];
    for (std::size_t a = 0; a < m_; ++a) {
      const auto pos = static_cast<std::size_t>(
          std::lower_bound(grid_.begin(), grid_.end(), moved[a]) - grid_.begin());
      index = index * grid_.size() + pos;
    }
    return index;
  }
  std::vector<int> moved(m_);
  for (std::size_t a = 0; a < m_; ++a) moved[relabel[a]] = levels_[item][a];
  return level_index_.at(moved);
}

ProfileSpace::ProfileSpace(Domain domain, std::size_t m, std::size_t n, std::vector<double> grid)
    : items_(domain, m, std::move(grid)), n_(n), universe_(synthetic_universe(m)) {
  if (n < 2) throw Error(ErrorKind::BadSpec, "search space needs n >= 2");
  count_ = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (count_ > UINT64_MAX / items_.size()) {
      count_ = UINT64_MAX;
      break;
    }
    count_ *= items_.size();
  }
}

Digits ProfileSpace::decode(std::uint64_t index) const {
  Digits digits(n_);
  for (std::size_t i = n_; i-- > 0;) {
    digits[i] = static_cast<std::size_t>(index % items_.size());
    index /= items_.size();
  }
  return digits;
}

std::uint64_t ProfileSpace::encode(const Digits& digits) const {
  std::uint64_t index = 0;
  for (auto d : digits) index = index * items_.size() + d;
  return index;
}

Profile ProfileSpace::make(const Digits& digits) const {
  if (items_.mode() == ProfileMode::utility) {
    std::vector<UtilityVector> individuals;
    for (std::size_t i = 0; i < n_; ++i)
      individuals.push_back({"p" + std::to_string(i + 1), universe_, items_.values(digits[i])});
    return Profile::utility(universe_, std::move(individuals));
  }
  std::vector<RankingWithTies> individuals;
  for (std::size_t i = 0; i < n_; ++i)
    individuals.push_back(RankingWithTies::from_levels("p" + std::to_string(i + 1), universe_,
                                                       items_.levels(digits[i])));
  return Profile::ordinal(universe_, std::move(individuals));
}

PairwiseRelation OutcomeTable::relation(std::uint64_t p) const {
  PairwiseRelation r(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) r.set(a, b, at_least(p, a, b));
  return r;
}

OutcomeTable build_outcome_table(const Rule& rule, const ProfileSpace& space, Exec exec) {
  OutcomeTable table;
  table.m = space.m();
  const auto count = space.count();
  table.bits.assign(count * table.m * table.m, 0);
  table.ok.assign(count, 0);
  std::vector<std::string> errors(count);
  const auto total = static_cast<std::int64_t>(count);
  const bool parallel = exec == Exec::parallel;

#pragma omp parallel for schedule(dynamic, 64) if (parallel)
  for (std::int64_t t = 0; t < total; ++t) {
    const auto p = static_cast<std::uint64_t>(t);
    try {
      const auto outcome = rule(space.make(space.decode(p)));
      if (outcome.relation.size() != table.m) {
        errors[p] = "outcome has the wrong number of alternatives";
        continue;
      }
      for (std::size_t a = 0; a < table.m; ++a)
        for (std::size_t b = 0; b < table.m; ++b)
          table.bits[(p * table.m + a) * table.m + b] = outcome.relation.at_least(a, b) ? 1 : 0;
      table.ok[p] = 1;
    } catch (const std::exception& e) {
      errors[p] = e.what();
    }
  }
  for (std::uint64_t p = 0; p < count; ++p)
    if (!table.ok[p]) table.errors.emplace(p, errors[p]);
  return table;
}

std::vector<std::vector<std::size_t>> all_permutations(std::size_t k) {
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<std::size_t>> out;
  do out.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::uint64_t factorial(std::size_t k) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace protpref::detail
