#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "profile_helpers.hpp"
#include "protpref/error.hpp"
#include "protpref/external_agg.hpp"

using namespace protpref;

namespace {

Profile condorcet() {
  SynthSpec spec;
  spec.kind = SynthKind::condorcet_cycle;
  return generate(spec);
}

Profile unanimous(std::size_t n = 3) {
  std::vector<std::string> specs(n, "XYZ");
  return profile(letters(), specs);
}

std::vector<oracle::Levels> levels(const Profile& p) {
  std::vector<oracle::Levels> out;
  for (const auto& r : p.rankings()) out.push_back(oracle::levels_of(r));
  return out;
}

std::vector<std::vector<std::size_t>> tiers_of(const AggregationOutcome& o) {
  REQUIRE(o.ranking.has_value());
  return o.ranking->tiers();
}

Profile utility_profile(const UniversePtr& u, const std::vector<std::vector<double>>& values) {
  std::vector<UtilityVector> vs;
  for (std::size_t i = 0; i < values.size(); ++i) vs.push_back({"P" + std::to_string(i + 1), u, values[i]});
  return Profile::utility(u, vs);
}

Profile random_utility_profile(std::size_t m, std::size_t n, std::mt19937_64& gen) {
  std::uniform_int_distribution<int> level(-6, 6);
  std::vector<std::vector<double>> values(n, std::vector<double>(m));
  for (auto& row : values)
    for (auto& v : row) v = level(gen) * 0.25;
  return utility_profile(synthetic_universe(m), values);
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::Io;
}

std::vector<std::size_t> random_permutation(std::size_t k, std::mt19937_64& gen) {
  std::vector<std::size_t> p(k);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), gen);
  return p;
}

}  // namespace

TEST_CASE("tournament counts") {
  const auto c = majority_tournament(condorcet());
  CHECK(c.count(0, 1) == 2);
  CHECK(c.count(1, 2) == 2);
  CHECK(c.count(2, 0) == 2);
  CHECK(c.count(1, 0) == 1);
  CHECK(c.count(2, 1) == 1);
  CHECK(c.count(0, 2) == 1);

  const auto u = majority_tournament(unanimous());
  CHECK(u.count(0, 1) == 3);
  CHECK(u.count(0, 2) == 3);
  CHECK(u.count(1, 2) == 3);
  CHECK(u.count(1, 0) + u.count(2, 0) + u.count(2, 1) == 0);

  const auto flat = majority_tournament(profile(letters(), {"XYZ|", "XYZ|"}));
  for (int v : flat.counts) CHECK(v == 0);

  const auto util = utility_profile(letters(), {{1, 0, 0}, {0, 1, 0}});
  CHECK(kind_of([&] { majority_tournament(util); }) == ErrorKind::WrongMode);
}

TEST_CASE("tournament matches the recount oracle, serial and parallel agree") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto p = random_profile(2 + s % 6, 2 + s % 7, s, s % 3 == 0);
    const auto t = majority_tournament(p);
    CHECK(t == majority_tournament_serial(p));
    const auto want = oracle::majority_counts(levels(p));
    for (std::size_t a = 0; a < p.m(); ++a) {
      CHECK(t.count(a, a) == 0);
      for (std::size_t b = 0; b < p.m(); ++b) {
        CHECK(t.count(a, b) == want[a][b]);
        CHECK(t.count(a, b) + t.count(b, a) <= static_cast<int>(p.n()));
      }
    }
  }
}

TEST_CASE("majority rule examples") {
  const auto c = may_rule(condorcet());
  CHECK_FALSE(c.transitive);
  REQUIRE(c.cycle_witness.has_value());
  const auto w = *c.cycle_witness;
  CHECK(w == std::array<std::size_t, 3>{0, 1, 2});
  CHECK(c.relation.strictly(w[0], w[1]));
  CHECK(c.relation.strictly(w[1], w[2]));
  CHECK(c.relation.strictly(w[2], w[0]));
  CHECK_FALSE(c.ranking.has_value());

  const auto u = may_rule(unanimous());
  CHECK(u.transitive);
  CHECK(tiers_of(u) == std::vector<std::vector<std::size_t>>{{0}, {1}, {2}});
  CHECK(u.rule_name == "may");
}

TEST_CASE("majority relation equals the count formula and its flag is honest") {
  std::size_t intransitive = 0;
  for (std::uint64_t s = 0; s < 400; ++s) {
    const auto p = random_profile(3 + s % 4, 2 + s % 6, 1000 + s, s % 2 == 0);
    const auto o = may_rule(p);
    const auto n = oracle::majority_counts(levels(p));
    for (std::size_t a = 0; a < p.m(); ++a)
      for (std::size_t b = 0; b < p.m(); ++b) CHECK(o.relation.at_least(a, b) == (n[a][b] >= n[b][a]));
    const auto matrix = oracle::matrix_of(o.relation);
    CHECK(o.transitive == oracle::transitive(matrix));
    if (!o.transitive) {
      ++intransitive;
      REQUIRE(o.cycle_witness.has_value());
      const auto [x, y, z] = *o.cycle_witness;
      CHECK((matrix[x][y] && matrix[y][z] && !matrix[x][z]));
    }
  }
  CHECK(intransitive > 0);
}

TEST_CASE("borda examples") {
  const auto c = borda(condorcet());
  CHECK(c.transitive);
  CHECK(tiers_of(c).size() == 1);
  CHECK(borda_half_scores(condorcet()) == std::vector<long>{6, 6, 6});

  CHECK(tiers_of(borda(unanimous())) == std::vector<std::vector<std::size_t>>{{0}, {1}, {2}});

  const auto two = profile(letters(), {"XYZ", "YXZ"});
  CHECK(borda_half_scores(two) == std::vector<long>{6, 6, 0});
  CHECK(tiers_of(borda(two)) == std::vector<std::vector<std::size_t>>{{0, 1}, {2}});

  // ties share the midpoint: {X,Y} > Z scores X = Y = 1.5
  CHECK(borda_half_scores(profile(letters(), {"XY|Z", "XY|Z"})) == std::vector<long>{6, 6, 0});
}

TEST_CASE("kemeny examples") {
  CHECK(tiers_of(kemeny(unanimous())) == std::vector<std::vector<std::size_t>>{{0}, {1}, {2}});

  const auto p = condorcet();
  const auto [optimum, order] = oracle::kemeny_optimum(levels(p));
  CHECK(optimum == 8);  // four discordant pairs
  CHECK(oracle::count_optima(levels(p), optimum) == 3);
  const auto k = kemeny(p);
  CHECK(k.ranking->same_order(RankingWithTies::from_order("", p.universe(), order)));
  CHECK(k.ranking->same_order(RankingWithTies::from_order("", p.universe(), {0, 1, 2})));

  const auto big = random_profile(9, 3, 1, false);
  CHECK(kind_of([&] { kemeny(big); }) == ErrorKind::TooLarge);
}

TEST_CASE("kemeny matches the exhaustive oracle") {
  for (std::uint64_t s = 0; s < 150; ++s) {
    const auto p = random_profile(3 + s % 4, 2 + s % 5, 77 + s, s % 2 == 1);
    const auto [optimum, order] = oracle::kemeny_optimum(levels(p));
    const auto k = kemeny(p);
    REQUIRE(k.ranking.has_value());
    CHECK(k.ranking->is_strict());
    CHECK(k.ranking->same_order(RankingWithTies::from_order("", p.universe(), order)));
    std::int64_t total = 0;
    for (const auto& r : p.rankings()) total += kendall_half_units(*k.ranking, r);
    CHECK(total == optimum);
  }
}

TEST_CASE("dictator examples") {
  const auto p = condorcet();
  CHECK(tiers_of(dictator(p, 1)) == std::vector<std::vector<std::size_t>>{{0}, {1}, {2}});
  CHECK(tiers_of(dictator(p, 2)) == std::vector<std::vector<std::size_t>>{{1}, {2}, {0}});
  CHECK(kind_of([&] { dictator(p, 4); }) == ErrorKind::BadIndex);
  CHECK(kind_of([&] { dictator(p, 0); }) == ErrorKind::BadIndex);
}

TEST_CASE("utilitarian examples") {
  const auto xy = letters("XY");
  const auto o = utilitarian(utility_profile(xy, {{1, 0}, {0, 2}}));
  CHECK(tiers_of(o) == std::vector<std::vector<std::size_t>>{{1}, {0}});

  const auto same = utilitarian(utility_profile(letters(), {{0.5, 2, -1}, {0.5, 2, -1}}));
  CHECK(tiers_of(same) == std::vector<std::vector<std::size_t>>{{1}, {0}, {2}});

  CHECK(kind_of([] { utilitarian(unanimous()); }) == ErrorKind::WrongMode);
  CHECK(kind_of([] { may_rule(utility_profile(letters(), {{1, 0, 0}, {0, 1, 0}})); }) == ErrorKind::WrongMode);
}

TEST_CASE("utilitarian ranking is invariant under shared scale and free offsets") {
  std::mt19937_64 gen(99);
  std::uniform_int_distribution<int> offset(-40, 40);
  for (int t = 0; t < 300; ++t) {
    const auto p = random_utility_profile(2 + t % 5, 2 + t % 4, gen);
    const auto base = utilitarian(p);
    for (double alpha : {0.5, 2.0, 10.0}) {
      UtilityTransform tr;
      tr.scale_alpha = alpha;
      for (const auto& u : p.utilities()) tr.offsets_beta[u.owner] = offset(gen) * 0.125;
      const auto moved = utilitarian(tr.apply(p));
      CHECK(moved.ranking->same_order(*base.ranking));
    }
  }
  UtilityTransform bad;
  bad.scale_alpha = 0.0;
  CHECK_THROWS_AS(bad.apply(utility_profile(letters(), {{1, 0, 0}, {0, 1, 0}})), Error);
}

TEST_CASE("rule names") {
  CHECK(make_rule("may")(condorcet()).rule_name == "may");
  CHECK(make_rule("dictator:2")(condorcet()).ranking->same_order(*dictator(condorcet(), 2).ranking));
  CHECK(make_rule("utilitarian").mode == ProfileMode::utility);
  CHECK(kind_of([] { make_rule("plurality"); }) == ErrorKind::BadSpec);
  CHECK(kind_of([] { make_rule("dictator:x"); }) == ErrorKind::BadSpec);
  const auto names = available_rules();
  CHECK(std::find(names.begin(), names.end(), "kemeny") != names.end());
}

TEST_CASE("anonymity, neutrality, unanimity and transitivity on random profiles") {
  std::mt19937_64 gen(5150);
  for (std::uint64_t s = 0; s < 200; ++s) {
    const std::size_t m = 3 + s % 3;
    const std::size_t n = 2 + s % 5;
    const auto p = random_profile(m, n, 5000 + s, s % 2 == 0);
    const auto order = random_permutation(n, gen);
    const auto relabel = random_permutation(m, gen);
    const auto permuted = p.permuted(order);
    const auto relabeled = p.relabeled(relabel);
    const auto opt = oracle::kemeny_optimum(levels(p));
    const bool unique_optimum = oracle::count_optima(levels(p), opt.first) == 1;

    for (const char* name : {"may", "borda", "kemeny"}) {
      CAPTURE(name);
      const auto rule = make_rule(name);
      const auto o = rule(p);
      CHECK(rule(permuted).same_relation(o));

      if (std::string(name) != "kemeny" || unique_optimum) {
        const auto r = rule(relabeled);
        for (std::size_t a = 0; a < m; ++a)
          for (std::size_t b = 0; b < m; ++b)
            CHECK(r.relation.at_least(relabel[a], relabel[b]) == o.relation.at_least(a, b));
      }

      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
          if (a == b) continue;
          bool all = true;
          for (std::size_t i = 0; i < n; ++i) all = all && p.state(i, a, b) == PairState::a_preferred;
          if (all) CHECK(o.relation.strictly(a, b));
        }

      if (std::string(name) != "may") CHECK(o.transitive);
      CHECK(o.transitive == oracle::transitive(oracle::matrix_of(o.relation)));
    }

    const auto d = dictator(p, 1);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        if (p.state(0, a, b) == PairState::a_preferred) CHECK(d.relation.strictly(a, b));
  }
}

TEST_CASE("utilitarian anonymity and unanimity") {
  std::mt19937_64 gen(8);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + t % 4;
    const auto p = random_utility_profile(3 + t % 3, n, gen);
    const auto o = utilitarian(p);
    CHECK(utilitarian(p.permuted(random_permutation(n, gen))).same_relation(o));
    for (std::size_t a = 0; a < p.m(); ++a)
      for (std::size_t b = 0; b < p.m(); ++b) {
        bool all = a != b;
        for (std::size_t i = 0; i < n; ++i) all = all && p.state(i, a, b) == PairState::a_preferred;
        if (all) CHECK(o.relation.strictly(a, b));
      }
  }
}
