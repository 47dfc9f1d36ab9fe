#include "protpref/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "protpref/error.hpp"
#include "protpref/internal_agg.hpp"

namespace protpref {

namespace {

std::int64_t pair_half_units(PairState x, PairState y) {
  const int diff = static_cast<int>(x) - static_cast<int>(y);
  return diff < 0 ? -diff : diff;
}

bool is_permutation_of(const std::vector<std::size_t>& perm, std::size_t m) {
  if (perm.size() != m) return false;
  std::vector<bool> seen(m, false);
  for (auto v : perm) {
    if (v >= m || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

std::string owner_name(std::size_t i) { return "p" + std::to_string(i + 1); }

}  // namespace

std::string_view to_string(ProfileMode mode) {
  return mode == ProfileMode::ordinal ? "ordinal" : "utility";
}

Profile::Profile(UniversePtr universe, ProfileMode mode, std::vector<RankingWithTies> rankings,
                 std::vector<UtilityVector> utilities)
    : universe_(std::move(universe)),
      mode_(mode),
      rankings_(std::move(rankings)),
      utilities_(std::move(utilities)) {
  if (!universe_) throw Error(ErrorKind::InvalidProfile, "profile without universe");
  if (n() < 2)
    throw Error(ErrorKind::InvalidProfile, "a profile needs at least two individuals");
}

Profile Profile::ordinal(UniversePtr universe, std::vector<RankingWithTies> individuals) {
  for (const auto& r : individuals)
    if (!same_universe(r.universe(), universe))
      throw Error(ErrorKind::UniverseMismatch, "individual '" + r.owner() + "' uses another universe");
  return Profile(std::move(universe), ProfileMode::ordinal, std::move(individuals), {});
}

Profile Profile::utility(UniversePtr universe, std::vector<UtilityVector> individuals) {
  for (const auto& u : individuals) {
    if (!same_universe(u.universe, universe) || u.values.size() != universe->size())
      throw Error(ErrorKind::UniverseMismatch, "individual '" + u.owner + "' uses another universe");
    for (double v : u.values)
      if (!std::isfinite(v)) throw Error(ErrorKind::InvalidProfile, "non-finite utility");
  }
  return Profile(std::move(universe), ProfileMode::utility, {}, std::move(individuals));
}

const std::string& Profile::owner(std::size_t i) const {
  return mode_ == ProfileMode::ordinal ? rankings_.at(i).owner() : utilities_.at(i).owner;
}

std::vector<RankingWithTies> Profile::as_rankings() const {
  if (mode_ == ProfileMode::ordinal) return rankings_;
  std::vector<RankingWithTies> out;
  out.reserve(utilities_.size());
  for (const auto& u : utilities_) out.push_back(ordinal_from_utility(u, 0.0));
  return out;
}

Profile Profile::permuted(const std::vector<std::size_t>& order) const {
  if (!is_permutation_of(order, n())) throw Error(ErrorKind::BadIndex, "not a permutation of individuals");
  if (mode_ == ProfileMode::ordinal) {
    std::vector<RankingWithTies> out;
    for (auto i : order) out.push_back(rankings_[i]);
    return ordinal(universe_, std::move(out));
  }
  std::vector<UtilityVector> out;
  for (auto i : order) out.push_back(utilities_[i]);
  return utility(universe_, std::move(out));
}

Profile Profile::relabeled(const std::vector<std::size_t>& relabel) const {
  if (!is_permutation_of(relabel, m())) throw Error(ErrorKind::BadIndex, "not a permutation of classes");
  if (mode_ == ProfileMode::ordinal) {
    std::vector<RankingWithTies> out;
    for (const auto& r : rankings_) {
      std::vector<int> levels(m());
      for (std::size_t a = 0; a < m(); ++a) levels[relabel[a]] = r.tier_of(a);
      out.push_back(RankingWithTies::from_levels(r.owner(), universe_, levels));
    }
    return ordinal(universe_, std::move(out));
  }
  std::vector<UtilityVector> out;
  for (const auto& u : utilities_) {
    UtilityVector v{u.owner, universe_, std::vector<double>(m())};
    for (std::size_t a = 0; a < m(); ++a) v.values[relabel[a]] = u.values[a];
    out.push_back(std::move(v));
  }
  return utility(universe_, std::move(out));
}

bool Profile::same_preferences(const Profile& other) const {
  if (mode_ != other.mode_ || n() != other.n() || !same_universe(universe_, other.universe_))
    return false;
  for (std::size_t i = 0; i < n(); ++i) {
    if (mode_ == ProfileMode::ordinal) {
      if (!rankings_[i].same_order(other.rankings_[i])) return false;
    } else if (utilities_[i].values != other.utilities_[i].values) {
      return false;
    }
  }
  return true;
}

std::int64_t kendall_half_units(const RankingWithTies& a, const RankingWithTies& b) {
  if (!same_universe(a.universe(), b.universe()))
    throw Error(ErrorKind::UniverseMismatch, "rankings over different universes");
  std::int64_t total = 0;
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = x + 1; y < a.size(); ++y)
      total += pair_half_units(a.compare(x, y), b.compare(x, y));
  return total;
}

double kendall_distance(const RankingWithTies& a, const RankingWithTies& b) {
  return static_cast<double>(kendall_half_units(a, b)) / 2.0;
}

std::int64_t profile_half_units(const Profile& p, const Profile& q) {
  if (p.n() != q.n()) throw Error(ErrorKind::Incompatible, "profiles differ in size");
  if (!same_universe(p.universe(), q.universe()))
    throw Error(ErrorKind::Incompatible, "profiles over different universes");
  std::int64_t total = 0;
  for (std::size_t i = 0; i < p.n(); ++i)
    for (std::size_t x = 0; x < p.m(); ++x)
      for (std::size_t y = x + 1; y < p.m(); ++y)
        total += pair_half_units(p.state(i, x, y), q.state(i, x, y));
  return total;
}

double profile_distance(const Profile& p, const Profile& q) {
  return static_cast<double>(profile_half_units(p, q)) / 2.0;
}

std::string_view to_string(SynthKind kind) {
  switch (kind) {
    case SynthKind::impartial_culture: return "impartial_culture";
    case SynthKind::single_peaked: return "single_peaked";
    case SynthKind::condorcet_cycle: return "condorcet_cycle";
    case SynthKind::custom: return "custom";
  }
  return "custom";
}

SynthKind synth_kind_from_string(std::string_view name) {
  if (name == "impartial_culture" || name == "impartial" || name == "ic")
    return SynthKind::impartial_culture;
  if (name == "single_peaked" || name == "single-peaked") return SynthKind::single_peaked;
  if (name == "condorcet_cycle" || name == "condorcet") return SynthKind::condorcet_cycle;
  if (name == "custom") return SynthKind::custom;
  throw Error(ErrorKind::BadSpec, "unknown synthetic kind '" + std::string(name) + "'");
}

void SynthSpec::validate() const {
  if (m < 1 || m > 210) throw Error(ErrorKind::BadSpec, "m must be in 1..210");
  if (n < 2) throw Error(ErrorKind::BadSpec, "n must be at least 2");
  if (kind == SynthKind::condorcet_cycle && (m < 3 || n % 3 != 0))
    throw Error(ErrorKind::BadSpec, "condorcet_cycle needs m >= 3 and n a multiple of 3");
  if (kind == SynthKind::custom) {
    if (custom_orders.empty()) throw Error(ErrorKind::BadSpec, "custom profile without orders");
    for (const auto& order : custom_orders)
      if (!is_permutation_of(order, m))
        throw Error(ErrorKind::BadSpec, "custom order is not a permutation of 0..m-1");
  }
}

std::vector<std::size_t> random_single_peaked_order(const std::vector<std::size_t>& axis, Rng& rng) {
  const std::size_t m = axis.size();
  std::vector<std::size_t> order;
  order.reserve(m);
  const auto peak = static_cast<std::size_t>(rng.below(m));
  order.push_back(axis[peak]);
  std::size_t left = peak;       // next candidate is left - 1
  std::size_t right = peak + 1;  // next candidate is right
  while (order.size() < m) {
    const bool can_left = left > 0;
    const bool can_right = right < m;
    const bool go_left = can_left && (!can_right || rng.coin());
    if (go_left)
      order.push_back(axis[--left]);
    else
      order.push_back(axis[right++]);
  }
  return order;
}

namespace {

std::vector<std::size_t> identity(std::size_t m) {
  std::vector<std::size_t> v(m);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

}  // namespace

std::vector<std::size_t> single_peaked_axis(const SynthSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  auto axis = identity(spec.m);
  rng.shuffle(std::span<std::size_t>(axis));
  return axis;
}

Profile generate(const SynthSpec& spec) {
  spec.validate();
  auto universe = synthetic_universe(spec.m);
  Rng rng(spec.seed);
  std::vector<RankingWithTies> individuals;
  individuals.reserve(spec.n);

  switch (spec.kind) {
    case SynthKind::impartial_culture:
      for (std::size_t i = 0; i < spec.n; ++i) {
        auto order = identity(spec.m);
        rng.shuffle(std::span<std::size_t>(order));
        individuals.push_back(RankingWithTies::from_order(owner_name(i), universe, order));
      }
      break;
    case SynthKind::single_peaked: {
      auto axis = identity(spec.m);
      rng.shuffle(std::span<std::size_t>(axis));
      for (std::size_t i = 0; i < spec.n; ++i)
        individuals.push_back(RankingWithTies::from_order(
            owner_name(i), universe, random_single_peaked_order(axis, rng)));
      break;
    }
    case SynthKind::condorcet_cycle:
      for (std::size_t i = 0; i < spec.n; ++i) {
        auto order = identity(spec.m);
        std::rotate(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(i % 3),
                    order.begin() + 3);
        individuals.push_back(RankingWithTies::from_order(owner_name(i), universe, order));
      }
      break;
    case SynthKind::custom:
      for (std::size_t i = 0; i < spec.n; ++i)
        individuals.push_back(RankingWithTies::from_order(
            owner_name(i), universe, spec.custom_orders[i % spec.custom_orders.size()]));
      break;
  }
  return Profile::ordinal(std::move(universe), std::move(individuals));
}

}  // namespace protpref
