// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include <unistd.h>

#include "oracles.hpp"
#include "protpref/axiom_audit.hpp"
#include "protpref/cli.hpp"
#include "protpref/contacts.hpp"
#include "protpref/directions.hpp"
#include "protpref/domain_restrict.hpp"
#include "protpref/internal_agg.hpp"
#include "protpref/json_io.hpp"
#include "protpref/structure.hpp"

using namespace protpref;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Check {
  Outcome* o;
  void operator()(bool ok, const std::string& what) const {
    if (!ok && o->pass) {
      o->pass = false;
      o->detail = what;
    }
  }
};

std::string shell_output(const std::string& command, int& status) {
  FILE* pipe = ::popen(command.c_str(), "r");
  if (!pipe) {
    status = -1;
    return {};
  }
  std::string out;
  char buffer[4096];
  while (const std::size_t got = std::fread(buffer, 1, sizeof buffer, pipe)) out.append(buffer, got);
  status = ::pclose(pipe);
  return out;
}

struct Run {
  int code = 0;
  std::string out;
};

Run run(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "protpref");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str()};
}

std::vector<oracle::Levels> levels(const Profile& p) {
  std::vector<oracle::Levels> out;
  for (const auto& r : p.rankings()) out.push_back(oracle::levels_of(r));
  return out;
}

// Distance between two weak relations: 2 per opposite strict pair, 1 per strict-vs-tie pair.
std::int64_t relation_distance_twice(const oracle::Matrix& x, const oracle::Matrix& y) {
  const auto code = [](const oracle::Matrix& r, std::size_t a, std::size_t b) {
    return static_cast<int>(r[a][b]) - static_cast<int>(r[b][a]);
  };
  std::int64_t total = 0;
  for (std::size_t a = 0; a < x.size(); ++a)
    for (std::size_t b = a + 1; b < x.size(); ++b) total += std::abs(code(x, a, b) - code(y, a, b));
  return total;
}

std::int64_t profile_distance_twice(const Profile& p, const Profile& q) {
  std::int64_t total = 0;
  const auto lp = levels(p);
  const auto lq = levels(q);
  for (std::size_t i = 0; i < lp.size(); ++i) total += oracle::kendall_twice(lp[i], lq[i]);
  return total;
}

// --- criteria ---

Outcome condorcet_pipe() {
  Outcome o;
  Check check{&o};
  const auto start = Clock::now();
  int status = 0;
  const std::string cli = PROTPREF_CLI;
  const auto out = shell_output("'" + cli + "' synth condorcet | '" + cli + "' aggregate --rule may", status);
  check(status == 0, "pipeline exit status " + std::to_string(status));
  Json j;
  try {
    j = Json::parse(out);
  } catch (const std::exception& e) {
    check(false, std::string("unparseable output: ") + e.what());
    return o;
  }
  check(j["transitive"] == false, "majority outcome reported transitive");
  check(j["cycle_witness"].is_array() && j["cycle_witness"].size() == 3, "no 3-cycle witness");
  if (!o.pass) return o;

  SynthSpec spec;
  spec.kind = SynthKind::condorcet_cycle;
  const auto p = generate(spec);
  std::vector<std::size_t> w;
  for (const auto& label : j["cycle_witness"]) w.push_back(p.universe()->require_index(label.get<std::string>()));
  const auto n = oracle::majority_counts(levels(p));
  for (std::size_t k = 0; k < 3; ++k) {
    const auto a = w[k];
    const auto b = w[(k + 1) % 3];
    check(n[a][b] > n[b][a], "witness step is not a strict majority win");
  }
  const double elapsed = seconds_since(start);
  check(elapsed < 1.0, "took " + std::to_string(elapsed) + " s");
  o.detail = o.pass ? "cycle " + j["cycle_witness"].dump() + " verified by recount, " +
                          std::to_string(elapsed) + " s"
                    : o.detail;
  return o;
}

Outcome arrow() {
  Outcome o;
  Check check{&o};
  const auto start = Clock::now();
  std::ostringstream summary;
  for (const char* name : {"may", "borda", "kemeny", "dictator"}) {
    const auto rule = make_rule(name);
    for (std::size_t n : {2, 3}) {
      std::set<std::string> first_failures;
      for (int repeat = 0; repeat < 2; ++repeat) {
        const auto results = arrow_audit(rule, 3, n);
        std::set<std::string> failures;
        for (const auto& r : results)
          if (r.failed()) {
            failures.insert(r.property);
            check(reverify(rule, r), std::string(name) + " " + r.property + " witness does not re-verify");
          }
        check(!failures.empty(), std::string(name) + " passed every Arrow axiom at n=" + std::to_string(n));
        if (repeat == 0) first_failures = failures;
        else check(failures == first_failures, std::string(name) + " failing set changed between runs");
      }
      summary << name << "/n=" << n << ":";
      for (const auto& f : first_failures) summary << f << ' ';
    }
  }
  const double elapsed = seconds_since(start);
  check(elapsed < 60.0, "took " + std::to_string(elapsed) + " s");
  if (o.pass) o.detail = summary.str() + "(" + std::to_string(elapsed) + " s)";
  return o;
}

Outcome may_coincidence() {
  Outcome o;
  Check check{&o};
  const auto rule = make_rule("may");
  for (auto axiom : {AxiomId::unanimity, AxiomId::anonymity, AxiomId::neutrality,
                     AxiomId::positive_responsiveness}) {
    const auto r = audit(rule, axiom, SearchSpace::exhaustive(3, 3));
    check(!r.failed(), std::string("may fails ") + std::string(to_string(axiom)));
  }
  const auto c = may_coincidence_check(rule, 3, 3, 10'000, 2024);
  check(!c.failed(), "coincidence check reported a divergence");

  // Independent recount on 10^4 sampled weak-order profiles.
  std::mt19937_64 gen(77);
  std::size_t agree = 0;
  for (int t = 0; t < 10'000; ++t) {
    const std::size_t m = 3 + t % 4;
    const std::size_t n = 2 + t % 7;
    const auto u = synthetic_universe(m);
    std::vector<RankingWithTies> rs;
    std::vector<oracle::Levels> ls;
    for (std::size_t i = 0; i < n; ++i) {
      ls.push_back(oracle::random_levels(m, gen, t % 2 == 0));
      rs.push_back(RankingWithTies::from_levels("p" + std::to_string(i), u, ls.back()));
    }
    const auto out = may_rule(Profile::ordinal(u, rs));
    const auto counts = oracle::majority_counts(ls);
    bool same = true;
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) same = same && out.relation.at_least(a, b) == (counts[a][b] >= counts[b][a]);
    agree += same;
  }
  check(agree == 10'000, std::to_string(10'000 - agree) + " sampled profiles disagree with the count formula");
  if (o.pass) o.detail = "4 axioms pass on 216 profiles; 10000/10000 sampled profiles equal the count formula";
  return o;
}

Outcome proximity() {
  Outcome o;
  Check check{&o};
  std::ostringstream summary;
  for (const char* name : {"may", "borda", "kemeny"}) {
    const auto rule = make_rule(name);
    const auto r = audit(rule, AxiomId::proximity_preservation, SearchSpace::exhaustive(3, 3));
    check(r.failed() && r.witness.has_value(), std::string(name) + ": no proximity violation found");
    if (!r.failed()) continue;
    const auto& w = *r.witness;
    const auto D1 = profile_distance_twice(w.profiles[0], w.profiles[1]);
    const auto D2 = profile_distance_twice(w.profiles[0], w.profiles[2]);
    const auto o0 = oracle::matrix_of(rule(w.profiles[0]).relation);
    const auto d1 = relation_distance_twice(o0, oracle::matrix_of(rule(w.profiles[1]).relation));
    const auto d2 = relation_distance_twice(o0, oracle::matrix_of(rule(w.profiles[2]).relation));
    check(D1 <= D2 && d1 > d2, std::string(name) + ": recomputed distances do not violate");
    check(w.profile_distances == std::vector<double>{D1 / 2.0, D2 / 2.0},
          std::string(name) + ": stored D differs from recount");
    check(w.outcome_distances == std::vector<double>{d1 / 2.0, d2 / 2.0},
          std::string(name) + ": stored d differs from recount");
    check(reverify(rule, r), std::string(name) + ": witness does not re-verify");
    summary << name << " D=" << D1 / 2.0 << "<=" << D2 / 2.0 << " d=" << d1 / 2.0 << ">" << d2 / 2.0 << "; ";
  }
  if (o.pass) o.detail = summary.str();
  return o;
}

Outcome continuity() {
  Outcome o;
  Check check{&o};
  const auto w = continuity_probe(2, 1e-3, 0);
  check(w.input_distance <= 2e-3, "input distance " + std::to_string(w.input_distance));
  // Output distance recomputed in long double from the stored profiles.
  long double sx1 = 0, sy1 = 0, sx2 = 0, sy2 = 0;
  for (const auto& v : w.first) sx1 += v[0], sy1 += v[1];
  for (const auto& v : w.second) sx2 += v[0], sy2 += v[1];
  const long double n1 = std::sqrt(sx1 * sx1 + sy1 * sy1);
  const long double n2 = std::sqrt(sx2 * sx2 + sy2 * sy2);
  const long double dx = sx1 / n1 - sx2 / n2;
  const long double dy = sy1 / n1 - sy2 / n2;
  const double recomputed = static_cast<double>(std::sqrt(dx * dx + dy * dy));
  check(std::abs(recomputed - w.output_distance) <= 1e-9, "output distance does not recompute");
  check(w.output_distance >= 1.0, "output distance " + std::to_string(w.output_distance));
  check(w.verify(), "witness does not re-verify");

  std::size_t trials = 0;
  for (std::size_t m = 2; m <= 5; ++m) {
    const auto c = check_continuous_axioms(m, 3 + m, 250, 100 + m);
    trials += c.trials;
    check(c.unanimity_passes == c.trials, "continuous unanimity failed at m=" + std::to_string(m));
    check(c.anonymity_passes == c.trials, "continuous anonymity failed at m=" + std::to_string(m));
  }
  check(trials >= 1000, "fewer than 1000 trials");
  if (o.pass) {
    std::ostringstream d;
    d.precision(12);
    d << "input " << w.input_distance << " <= 2e-3, output " << w.output_distance
      << "; unanimity and anonymity hold on " << trials << " random inputs";
    o.detail = d.str();
  }
  return o;
}

Outcome utilitarian_invariance() {
  Outcome o;
  Check check{&o};
  std::mt19937_64 gen(606);
  std::uniform_int_distribution<int> value(-64, 64);  // eighths
  std::uniform_int_distribution<int> offset(-80, 80);
  std::size_t checked = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t m = 2 + t % 5;
    const std::size_t n = 2 + (t / 5) % 4;
    const auto u = synthetic_universe(m);
    std::vector<UtilityVector> vs;
    std::vector<long> sums(m, 0);
    for (std::size_t i = 0; i < n; ++i) {
      UtilityVector v{"P" + std::to_string(i), u, std::vector<double>(m)};
      for (std::size_t a = 0; a < m; ++a) {
        const int eighths = value(gen);
        v.values[a] = eighths / 8.0;
        sums[a] += eighths;
      }
      vs.push_back(v);
    }
    const auto p = Profile::utility(u, vs);
    const auto base = utilitarian(p);
    std::vector<int> want(m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) want[a] += sums[b] > sums[a];
    check(oracle::levels_of(*base.ranking) == oracle::levels_of(RankingWithTies::from_levels("", u, want)),
          "utilitarian ranking differs from exact sums");
    for (double alpha : {0.5, 2.0, 10.0}) {
      UtilityTransform tr;
      tr.scale_alpha = alpha;
      for (const auto& v : vs) tr.offsets_beta[v.owner] = offset(gen) / 4.0;
      check(utilitarian(tr.apply(p)).ranking->same_order(*base.ranking), "ranking moved under a transform");
      ++checked;
    }
  }
  const auto su = audit(make_rule("utilitarian"), AxiomId::strict_unanimity, SearchSpace::exhaustive(3, 2));
  check(!su.failed(), "strict unanimity fails on the grid");
  if (o.pass)
    o.detail = std::to_string(checked) + " transformed profiles keep the ranking; strict unanimity passes (" +
               su.search_budget + ")";
  return o;
}

Outcome single_peaked_escape() {
  Outcome o;
  Check check{&o};
  std::size_t transitive = 0;
  std::size_t total = 0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    SynthSpec spec;
    spec.kind = SynthKind::single_peaked;
    spec.m = 3 + s % 4;
    spec.n = std::vector<std::size_t>{3, 5, 7, 9, 11}[s % 5];
    spec.seed = 10'000 + s;
    const auto p = generate(spec);
    const auto axis = single_peaked_axis(spec);
    bool sp = true;
    for (const auto& r : p.rankings()) sp = sp && oracle::single_peaked(oracle::best_first(oracle::levels_of(r)), axis);
    check(sp, "generated profile is not single-peaked on its axis");
    const auto out = may_rule(p);
    transitive += out.transitive && oracle::transitive(oracle::matrix_of(out.relation));
    ++total;
  }
  check(transitive == total, std::to_string(total - transitive) + " intransitive outcomes");
  SynthSpec c;
  c.kind = SynthKind::condorcet_cycle;
  check(!find_axis(generate(c)).has_value(), "Condorcet template has an axis");
  if (o.pass) o.detail = std::to_string(transitive) + "/" + std::to_string(total) +
                         " transitive; Condorcet template has no axis";
  return o;
}

Outcome pipeline() {
  Outcome o;
  Check check{&o};
  const std::string fixture = PROTPREF_TEST_DATA "/four_residue.pdb";
  const auto s = read_pdb_file(fixture);
  const auto inst = extract_instances(s, ContactConfig{}, Scorer::unit_count());
  check(inst.size() == 2, "expected 2 instances, got " + std::to_string(inst.size()));
  if (inst.size() == 2) {
    check(inst[0].cls.label() == "A-G" && inst[0].distance == 6.0, "first instance differs");
    check(inst[1].cls.label() == "G-V" && inst[1].distance == 2.0, "second instance differs");
  }
  const auto universe = amino_universe(true);
  const auto u1 = utility_from_instances(inst, universe, Combine::sum);
  const auto u2 = utility_from_instances(extract_instances(read_pdb_file(fixture), ContactConfig{}, Scorer::unit_count()),
                                         universe, Combine::sum);
  check(u1.values == u2.values, "utility vector not deterministic");
  check(ordinal_from_utility(u1) == ordinal_from_utility(u2), "ranking not deterministic");

  const auto dir = fs::temp_directory_path() / ("protpref_accept_" + std::to_string(::getpid()));
  std::vector<std::string> reports;
  for (int repeat = 0; repeat < 2; ++repeat) {
    const auto out = dir / "run";
    fs::remove_all(out);
    fs::create_directories(out);
    const auto ex = run({"extract", fixture, "--out-dir", out.string()});
    check(ex.code == 0, "extract failed");
    const auto csv = (out / "four_residue.contacts.csv").string();
    const auto rk = run({"rank", csv});
    check(rk.code == 0, "rank failed");
    const auto au = run({"audit", "--rule", "borda", "--axioms", "all", "--mode", "sampled", "--m", "4", "--n", "4",
                         "--trials", "300", "--seed", "5"});
    check(au.code == 0, "audit failed");
    std::ifstream f(csv);
    std::stringstream text;
    text << f.rdbuf();
    reports.push_back(text.str() + rk.out + au.out);
  }
  fs::remove_all(dir);
  check(reports[0] == reports[1], "repeated runs differ");
  if (o.pass) o.detail = "2 instances (A-G 6.0, G-V 2.0); CSV, rank and audit JSON byte-identical over 2 runs";
  return o;
}

Outcome kendall_metric() {
  Outcome o;
  Check check{&o};
  std::mt19937_64 gen(9);
  for (int t = 0; t < 10'000; ++t) {
    const std::size_t m = 1 + t % 6;
    const auto u = synthetic_universe(m);
    const bool ties = t % 2 == 1;
    const auto lx = oracle::random_levels(m, gen, ties);
    const auto ly = oracle::random_levels(m, gen, ties);
    const auto lz = oracle::random_levels(m, gen, ties);
    const auto x = RankingWithTies::from_levels("x", u, lx);
    const auto y = RankingWithTies::from_levels("y", u, ly);
    const auto z = RankingWithTies::from_levels("z", u, lz);
    const auto xy = kendall_half_units(x, y);
    check(xy == oracle::kendall_twice(lx, ly), "distance differs from pair count");
    check(kendall_half_units(x, x) == 0, "d(x,x) != 0");
    check((xy == 0) == x.same_order(y), "zero distance between different orders");
    check(xy == kendall_half_units(y, x), "asymmetric");
    check(kendall_half_units(x, z) <= xy + kendall_half_units(y, z), "triangle inequality");
  }
  if (o.pass) o.detail = "identity, symmetry, triangle exact on 10000 triples (m <= 6, with and without ties)";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"condorcet cycle through the CLI pipe", condorcet_pipe},
      {"arrow audit fails for every rule", arrow},
      {"majority rule premises and coincidence", may_coincidence},
      {"proximity preservation violations", proximity},
      {"continuity witness and continuous axioms", continuity},
      {"utilitarian invariance and strict unanimity", utilitarian_invariance},
      {"single-peaked profiles give transitive majorities", single_peaked_escape},
      {"fixture pipeline is deterministic", pipeline},
      {"kendall distance is a metric", kendall_metric},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << "criterion " << k + 1 << " " << (o.pass ? "PASS" : "FAIL") << " " << criteria[k].first << ": "
              << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
