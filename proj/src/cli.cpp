#include "protpref/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "protpref/error.hpp"
#include "protpref/internal_agg.hpp"
#include "protpref/json_io.hpp"
#include "protpref/structure.hpp"

namespace fs = std::filesystem;

namespace protpref {

namespace {

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const Json& report, const std::string& out_path, Streams& io) {
  const std::string text = report.dump(2) + "\n";
  if (out_path.empty() || out_path == "-") {
    io.out << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw Error(ErrorKind::Io, "cannot write " + out_path);
  file << text;
}

Json read_json(const std::string& path, Streams& io) {
  try {
    if (path == "-") return Json::parse(io.in);
    std::ifstream file(path);
    if (!file) throw Error(ErrorKind::Io, "cannot read " + path);
    return Json::parse(file);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Schema, std::string("invalid JSON: ") + e.what());
  }
}

Rule rule_or_usage(const std::string& name) {
  try {
    return make_rule(name);
  } catch (const Error&) {
    std::string list;
    for (const auto& r : available_rules()) list += (list.empty() ? "" : ", ") + r;
    throw UsageError("unknown rule '" + name + "'; available rules: " + list);
  }
}

// --- extract ---

struct ExtractArgs {
  std::vector<std::string> inputs;
  std::string out_dir = ".";
  double tau = 8.0;
  std::string mode = "c_alpha";
  int min_sep = 3;
  bool cross_chain = false;
  std::string scorer = "unit";
  std::string table;
  bool no_negate = false;
};

std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs, Streams& io) {
  std::vector<fs::path> files;
  for (const auto& raw : inputs) {
    const fs::path path(raw);
    std::error_code ec;
    if (fs::is_directory(path, ec)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::directory_iterator(path)) {
        const auto ext = entry.path().extension().string();
        if (entry.is_regular_file() && (ext == ".pdb" || ext == ".ent" || ext == ".PDB"))
          found.push_back(entry.path());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (fs::exists(path, ec)) {
      files.push_back(path);
    } else {
      io.err << "error: " << raw << ": no such file or directory\n";
    }
  }
  return files;
}

int cmd_extract(const ExtractArgs& a, Streams& io) {
  ContactConfig config;
  config.threshold_tau = a.tau;
  config.mode = distance_mode_from_string(a.mode);
  config.min_seq_separation = a.min_sep;
  config.cross_chain = a.cross_chain;
  config.validate();

  Scorer scorer = Scorer::unit_count();
  if (a.scorer == "table") {
    if (a.table.empty()) throw UsageError("--scorer table needs --table");
    std::ifstream file(a.table);
    if (!file) throw Error(ErrorKind::Io, "cannot read " + a.table);
    scorer = load_score_table(file, !a.no_negate);
  } else if (a.scorer != "unit") {
    throw UsageError("--scorer must be unit or table");
  }

  const auto files = expand_inputs(a.inputs, io);
  if (files.empty()) {
    io.err << "no inputs\n";
    return kExitInput;
  }
  fs::create_directories(a.out_dir);

  std::size_t ok = 0;
  std::vector<std::string> failed;
  for (const auto& file : files) {
    try {
      ParseWarnings warnings;
      const auto structure = read_pdb_file(file, &warnings);
      const auto instances = extract_instances(structure, config, scorer);
      const fs::path target = fs::path(a.out_dir) / (structure.id + ".contacts.csv");
      std::ofstream csv(target, std::ios::binary);
      if (!csv) throw Error(ErrorKind::Io, "cannot write " + target.string());
      write_instances_csv(csv, instances);
      io.out << structure.id << " residues=" << structure.residue_count()
             << " instances=" << instances.size() << " skipped_records=" << warnings.total()
             << " -> " << target.string() << "\n";
      ++ok;
    } catch (const std::exception& e) {
      failed.push_back(file.string() + ": " + e.what());
    }
  }
  if (!failed.empty()) {
    io.err << failed.size() << " of " << files.size() << " inputs failed:\n";
    for (const auto& f : failed) io.err << "  " << f << "\n";
  }
  return ok == 0 ? kExitInput : kExitOk;
}

// --- rank ---

struct RankArgs {
  std::vector<std::string> inputs;
  std::string combine = "sum";
  double epsilon = 0.0;
  bool no_homopairs = false;
  std::string mode = "ordinal";
  std::string out;
};

int cmd_rank(const RankArgs& a, Streams& io) {
  const Combine combine = combine_from_string(a.combine);
  if (!(a.epsilon >= 0.0) || !std::isfinite(a.epsilon)) throw UsageError("--epsilon must be >= 0");
  if (a.mode != "ordinal" && a.mode != "utility") throw UsageError("--mode must be ordinal or utility");
  if (a.inputs.empty()) {
    io.err << "no inputs\n";
    return kExitInput;
  }
  const auto universe = amino_universe(!a.no_homopairs);

  // Instances grouped by protein in first-appearance order.
  std::vector<std::string> order;
  std::map<std::string, std::vector<InteractionInstance>> by_protein;
  for (const auto& path : a.inputs) {
    std::vector<InteractionInstance> instances;
    if (path == "-") {
      instances = read_instances_csv(io.in);
    } else {
      std::ifstream file(path);
      if (!file) throw Error(ErrorKind::Io, "cannot read " + path);
      instances = read_instances_csv(file);
    }
    if (instances.empty()) {
      // An empty export still names a protein through its file name.
      std::string stem = fs::path(path).filename().string();
      if (const auto dot = stem.find(".contacts.csv"); dot != std::string::npos) stem.resize(dot);
      if (!by_protein.count(stem)) order.push_back(stem);
      by_protein[stem];
      continue;
    }
    for (auto& inst : instances) {
      if (!by_protein.count(inst.protein_id)) order.push_back(inst.protein_id);
      by_protein[inst.protein_id].push_back(std::move(inst));
    }
  }

  Json report;
  report["config"] = {{"command", "rank"},
                      {"inputs", a.inputs},
                      {"combine", std::string(to_string(combine))},
                      {"epsilon", a.epsilon},
                      {"universe", universe->id},
                      {"mode", a.mode}};
  Json utilities = Json::array();
  Json rankings = Json::array();
  std::vector<UtilityVector> vectors;
  std::vector<RankingWithTies> orders;
  for (const auto& id : order) {
    auto u = utility_from_instances(by_protein[id], universe, combine, id);
    auto r = ordinal_from_utility(u, a.epsilon);
    utilities.push_back(to_json(u));
    rankings.push_back(to_json(r));
    vectors.push_back(std::move(u));
    orders.push_back(std::move(r));
  }
  report["utilities"] = std::move(utilities);
  report["rankings"] = std::move(rankings);
  if (order.size() >= 2)
    report["profile"] = a.mode == "ordinal" ? to_json(Profile::ordinal(universe, orders))
                                            : to_json(Profile::utility(universe, vectors));
  else
    report["profile"] = nullptr;
  emit(report, a.out, io);
  return kExitOk;
}

// --- aggregate ---

struct AggregateArgs {
  std::string profile = "-";
  std::string rule = "may";
  std::string out;
};

int cmd_aggregate(const AggregateArgs& a, Streams& io) {
  const Rule rule = rule_or_usage(a.rule);
  const Profile p = profile_from_json(read_json(a.profile, io));
  const auto outcome = rule(p);
  Json report;
  report["config"] = {{"command", "aggregate"}, {"profile", a.profile}, {"rule", rule.name}};
  const Json body = to_json(outcome);
  for (const auto& [key, value] : body.items()) report[key] = value;
  emit(report, a.out, io);
  return kExitOk;
}

// --- audit ---

struct AuditArgs {
  std::string rule = "may";
  std::string axioms = "arrow";
  std::size_t m = 3;
  std::size_t n = 3;
  std::string mode = "exhaustive";
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::string domain;
  std::vector<double> grid;
  double epsilon = 1e-3;
  bool serial = false;
  std::string out;
};

bool applicable(const Rule& rule, AxiomId axiom) {
  if (axiom == AxiomId::utility_iia || axiom == AxiomId::strict_unanimity)
    return rule.mode == ProfileMode::utility;
  if (axiom == AxiomId::proximity_preservation) return rule.mode == ProfileMode::ordinal;
  return true;
}

std::vector<AxiomId> parse_axioms(const std::string& text, const Rule& rule) {
  if (text == "arrow") return arrow_axioms();
  std::vector<AxiomId> out;
  if (text == "all") {
    for (auto axiom : all_axioms())
      if (applicable(rule, axiom)) out.push_back(axiom);
    return out;
  }
  std::stringstream list(text);
  std::string item;
  while (std::getline(list, item, ',')) {
    try {
      out.push_back(axiom_from_string(item));
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }
  if (out.empty()) throw UsageError("--axioms is empty");
  return out;
}

int cmd_audit_continuity(const AuditArgs& a, Json report, Streams& io) {
  if (a.rule != "mean-direction") throw UsageError("--axioms continuity needs --rule mean-direction");
  if (a.m < 2) throw UsageError("continuity needs --m >= 2");
  if (!(a.epsilon > 0.0 && a.epsilon < 0.1)) throw UsageError("--epsilon must be in (0, 0.1)");
  const auto witness = continuity_probe(a.m, a.epsilon, a.seed);
  const auto check = check_continuous_axioms(a.m, std::max<std::size_t>(a.n, 2), a.trials, a.seed);
  Json results = Json::array();
  results.push_back({{"rule", "mean-direction"},
                     {"property", "continuity"},
                     {"verdict", "fail"},
                     {"search_budget", "antipodal construction in dimension " + std::to_string(a.m)},
                     {"seed", a.seed},
                     {"witness", to_json(witness)}});
  const auto verdict = [&](std::size_t passes) {
    return passes == check.trials ? "pass_within_search" : "fail";
  };
  const std::string budget = std::to_string(check.trials) + " sampled direction profiles (" +
                             std::string(Rng::kAlgorithm) + ")";
  results.push_back({{"rule", "mean-direction"},
                     {"property", "continuous_unanimity"},
                     {"verdict", verdict(check.unanimity_passes)},
                     {"search_budget", budget},
                     {"seed", a.seed},
                     {"passes", check.unanimity_passes},
                     {"witness", nullptr}});
  results.push_back({{"rule", "mean-direction"},
                     {"property", "continuous_anonymity"},
                     {"verdict", verdict(check.anonymity_passes)},
                     {"search_budget", budget},
                     {"seed", a.seed},
                     {"passes", check.anonymity_passes},
                     {"witness", nullptr}});
  report["results"] = std::move(results);
  emit(report, a.out, io);
  return kExitOk;
}

int cmd_audit(const AuditArgs& a, Streams& io) {
  if (a.mode != "exhaustive" && a.mode != "sampled")
    throw UsageError("--mode must be exhaustive or sampled");
  Json report;
  report["config"] = {{"command", "audit"},   {"rule", a.rule},   {"axioms", a.axioms},
                      {"m", a.m},             {"n", a.n},         {"mode", a.mode},
                      {"trials", a.trials},   {"seed", a.seed},   {"domain", a.domain},
                      {"grid", a.grid},       {"epsilon", a.epsilon}};
  if (a.axioms == "continuity") return cmd_audit_continuity(a, std::move(report), io);

  const Rule rule = rule_or_usage(a.rule);
  const Exec exec = a.serial ? Exec::serial : Exec::parallel;
  Json results = Json::array();
  try {
    if (a.axioms == "may-coincidence") {
      results.push_back(to_json(may_coincidence_check(rule, a.m, a.n, a.trials, a.seed, exec)));
    } else {
      std::optional<Domain> domain;
      if (!a.domain.empty()) {
        try {
          domain = domain_from_string(a.domain);
        } catch (const Error& e) {
          throw UsageError(e.what());
        }
      }
      SearchSpace space = a.mode == "exhaustive"
                              ? SearchSpace::exhaustive(a.m, a.n, domain)
                              : SearchSpace::sampled(a.m, a.n, a.trials, a.seed, domain);
      space.grid = a.grid;
      std::vector<AuditResult> audited;
      for (auto axiom : parse_axioms(a.axioms, rule)) {
        audited.push_back(audit(rule, axiom, space, exec));
        results.push_back(to_json(audited.back()));
      }
      if (a.axioms == "arrow" && a.mode == "exhaustive")
        report["arrow_contradiction"] = arrow_contradiction(audited);
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BudgetExceeded) throw;
    report["results"] = std::move(results);
    report["error"] = e.what();
    emit(report, a.out, io);
    io.err << "error: " << e.what() << "\n";
    return kExitBudget;
  }
  report["results"] = std::move(results);
  emit(report, a.out, io);
  return kExitOk;
}

// --- restrict ---

struct RestrictArgs {
  std::string profile = "-";
  std::string rule = "may";
  std::string out;
};

int cmd_restrict(const RestrictArgs& a, Streams& io) {
  const Rule rule = rule_or_usage(a.rule);
  const Profile p = profile_from_json(read_json(a.profile, io));
  const auto axis = find_axis(p);
  const auto outcome = rule(p);
  Json report;
  report["config"] = {{"command", "restrict"}, {"profile", a.profile}, {"rule", rule.name}};
  const Json body = restriction_report(p, axis, axis.has_value(), outcome);
  for (const auto& [key, value] : body.items()) report[key] = value;
  report["outcome"] = to_json(outcome);
  emit(report, a.out, io);
  return kExitOk;
}

// --- synth ---

struct SynthArgs {
  std::string kind;
  std::size_t m = 3;
  std::size_t n = 3;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_synth(const SynthArgs& a, Streams& io) {
  SynthSpec spec;
  try {
    spec.kind = synth_kind_from_string(a.kind);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  if (spec.kind == SynthKind::custom) throw UsageError("custom profiles are built through the library");
  spec.m = a.m;
  spec.n = a.n;
  spec.seed = a.seed;
  const Profile p = generate(spec);
  Json report;
  report["config"] = {{"command", "synth"},
                      {"kind", std::string(to_string(spec.kind))},
                      {"m", spec.m},
                      {"n", spec.n},
                      {"seed", spec.seed},
                      {"rng", std::string(Rng::kAlgorithm)}};
  if (spec.kind == SynthKind::single_peaked) {
    Json axis = Json::array();
    for (auto x : single_peaked_axis(spec)) axis.push_back(p.universe()->labels[x]);
    report["axis"] = std::move(axis);
  }
  report["profile"] = to_json(p);
  emit(report, a.out, io);
  return kExitOk;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BudgetExceeded: return kExitBudget;
    case ErrorKind::InapplicableAxiom:
    case ErrorKind::BadConfig:
    case ErrorKind::BadSpec: return kExitUsage;
    default: return kExitInput;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
            std::ostream& err) {
  Streams io{in, out, err};
  CLI::App app{"Preference aggregation over protein interaction classes", "protpref"};
  app.require_subcommand(1);

  ExtractArgs ex;
  auto* extract = app.add_subcommand("extract", "PDB files -> interaction instance CSVs");
  extract->add_option("inputs", ex.inputs, "PDB files or directories");
  extract->add_option("--out-dir", ex.out_dir, "directory for <id>.contacts.csv")->capture_default_str();
  extract->add_option("--tau", ex.tau, "contact threshold in Angstrom")->capture_default_str();
  extract->add_option("--mode", ex.mode, "c_alpha | centroid | heavy_min")->capture_default_str();
  extract->add_option("--min-sep", ex.min_sep, "minimum sequence separation")->capture_default_str();
  extract->add_flag("--cross-chain", ex.cross_chain, "include inter-chain pairs");
  extract->add_option("--scorer", ex.scorer, "unit | table")->capture_default_str();
  extract->add_option("--table", ex.table, "20x20 score table CSV");
  extract->add_flag("--no-negate", ex.no_negate, "keep table signs");

  RankArgs rk;
  auto* rank = app.add_subcommand("rank", "instance CSVs -> utilities, rankings, profile");
  rank->add_option("inputs", rk.inputs, "contacts CSV files ('-' for stdin)");
  rank->add_option("--combine", rk.combine, "sum | mean | count")->capture_default_str();
  rank->add_option("--epsilon", rk.epsilon, "tie tolerance")->capture_default_str();
  rank->add_flag("--no-homopairs", rk.no_homopairs, "use the 190-class universe");
  rank->add_option("--mode", rk.mode, "profile mode: ordinal | utility")->capture_default_str();
  rank->add_option("--out", rk.out, "output file (default stdout)");

  AggregateArgs ag;
  auto* aggregate = app.add_subcommand("aggregate", "profile JSON -> global preference");
  aggregate->add_option("--profile", ag.profile, "profile JSON ('-' for stdin)")->capture_default_str();
  aggregate->add_option("--rule", ag.rule, "aggregation rule")->capture_default_str();
  aggregate->add_option("--out", ag.out, "output file (default stdout)");

  AuditArgs au;
  auto* audit_cmd = app.add_subcommand("audit", "search for axiom violations");
  audit_cmd->add_option("--rule", au.rule, "rule, or mean-direction for continuity")->capture_default_str();
  audit_cmd->add_option("--axioms", au.axioms,
                        "arrow | all | continuity | may-coincidence | comma-separated axioms")
      ->capture_default_str();
  audit_cmd->add_option("--m", au.m, "alternatives")->capture_default_str();
  audit_cmd->add_option("--n", au.n, "individuals")->capture_default_str();
  audit_cmd->add_option("--mode", au.mode, "exhaustive | sampled")->capture_default_str();
  audit_cmd->add_option("--trials", au.trials, "sampled trials")->capture_default_str();
  audit_cmd->add_option("--seed", au.seed, "seed")->capture_default_str();
  audit_cmd->add_option("--domain", au.domain, "strict_orders | weak_orders | utility_grid");
  audit_cmd->add_option("--grid", au.grid, "utility grid values")->delimiter(',');
  audit_cmd->add_option("--epsilon", au.epsilon, "continuity probe epsilon")->capture_default_str();
  audit_cmd->add_flag("--serial", au.serial, "single-threaded search");
  audit_cmd->add_option("--out", au.out, "output file (default stdout)");

  RestrictArgs rs;
  auto* restrict_cmd = app.add_subcommand("restrict", "single-peakedness and quasi-transitivity");
  restrict_cmd->add_option("--profile", rs.profile, "profile JSON ('-' for stdin)")->capture_default_str();
  restrict_cmd->add_option("--rule", rs.rule, "rule for the quasi-transitivity check")->capture_default_str();
  restrict_cmd->add_option("--out", rs.out, "output file (default stdout)");

  SynthArgs sy;
  auto* synth = app.add_subcommand("synth", "generate a synthetic profile");
  synth->add_option("kind", sy.kind, "impartial | single-peaked | condorcet")->required();
  synth->add_option("--m", sy.m, "alternatives")->capture_default_str();
  synth->add_option("--n", sy.n, "individuals")->capture_default_str();
  synth->add_option("--seed", sy.seed, "seed")->capture_default_str();
  synth->add_option("--out", sy.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  }

  try {
    if (*extract) return cmd_extract(ex, io);
    if (*rank) return cmd_rank(rk, io);
    if (*aggregate) return cmd_aggregate(ag, io);
    if (*audit_cmd) return cmd_audit(au, io);
    if (*restrict_cmd) return cmd_restrict(rs, io);
    if (*synth) return cmd_synth(sy, io);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}

}  // namespace protpref
