#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "profile_helpers.hpp"
#include "protpref/cli.hpp"
#include "protpref/error.hpp"
#include "protpref/json_io.hpp"

using namespace protpref;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "protpref");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(input);
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) {
    path = fs::temp_directory_path() / ("protpref_test_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string read_file(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

const std::string kFixture = PROTPREF_TEST_DATA "/four_residue.pdb";

}  // namespace

TEST_CASE("profile JSON round trip") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto p = random_profile(3 + s % 4, 2 + s % 3, s, s % 2 == 0);
    const auto back = profile_from_json(Json::parse(to_json(p).dump()));
    CHECK(back.same_preferences(p));
    for (std::size_t i = 0; i < p.n(); ++i) CHECK(back.owner(i) == p.owner(i));
    CHECK(profile_from_json(Json{{"profile", to_json(p)}}).same_preferences(p));
  }
  const auto u = letters();
  const auto util = Profile::utility(u, {{"a", u, {0.1, 2, -3}}, {"b", u, {1, 1, 1}}});
  const auto back = profile_from_json(to_json(util));
  CHECK(back.same_preferences(util));
  CHECK(back.utilities()[0].values == util.utilities()[0].values);
}

TEST_CASE("malformed profile JSON is a schema error") {
  const auto good = to_json(profile(letters(), {"XYZ", "ZYX"}));
  auto missing = good;
  missing.erase("individuals");
  auto unknown_label = good;
  unknown_label["individuals"][0]["tiers"][0][0] = "Q";
  auto duplicated = good;
  duplicated["individuals"][1]["tiers"] = Json::array({Json::array({"X"}), Json::array({"X", "Y"})});
  for (const auto& bad : {missing, unknown_label, duplicated, Json(42), Json::parse(R"({"universe": 1})")}) {
    try {
      profile_from_json(bad);
      FAIL("accepted " << bad.dump());
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Schema);
    }
  }
}

TEST_CASE("outcome JSON shape") {
  SynthSpec spec;
  spec.kind = SynthKind::condorcet_cycle;
  const auto j = to_json(may_rule(generate(spec)));
  CHECK(j["rule"] == "may");
  CHECK(j["transitive"] == false);
  CHECK(j["tiers"].is_null());
  CHECK(j["cycle_witness"] == Json::array({"A-A", "A-C", "A-D"}));

  const auto t = to_json(borda(profile(letters(), {"XYZ", "YXZ"})));
  CHECK(t["tiers"] == Json::parse(R"([["X","Y"],["Z"]])"));
  CHECK(t["cycle_witness"].is_null());
}

TEST_CASE("extract writes one CSV per structure") {
  TempDir dir("extract");
  const auto r = run({"extract", kFixture, "--out-dir", dir.path.string()});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("four_residue residues=4 instances=2") == 0);
  const auto csv = read_file(dir.path / "four_residue.contacts.csv");
  std::istringstream in(csv);
  const auto inst = read_instances_csv(in);
  REQUIRE(inst.size() == 2);
  CHECK(inst[0].cls.label() == "A-G");
  CHECK(inst[1].cls.label() == "G-V");
}

TEST_CASE("extract with nothing to read") {
  TempDir dir("empty");
  const auto r = run({"extract", dir.path.string(), "--out-dir", (dir.path / "out").string()});
  CHECK(r.code == kExitInput);
  CHECK(r.err.find("no inputs") != std::string::npos);
}

TEST_CASE("extract keeps going past bad files") {
  TempDir dir("mixed");
  fs::copy_file(kFixture, dir.path / "good.pdb");
  std::ofstream(dir.path / "bad.pdb") << "ATOM      1  CA  ALA A   1       0.000\n";
  const auto r = run({"extract", dir.path.string(), "--out-dir", (dir.path / "out").string()});
  CHECK(r.code == kExitOk);
  CHECK(fs::exists(dir.path / "out" / "good.contacts.csv"));
  CHECK(r.err.find("1 of 2 inputs failed") != std::string::npos);
  CHECK(r.err.find("bad.pdb") != std::string::npos);

  const auto all_bad = run({"extract", (dir.path / "bad.pdb").string(), "--out-dir", (dir.path / "o2").string()});
  CHECK(all_bad.code == kExitInput);
}

TEST_CASE("extract then rank") {
  TempDir dir("rank");
  REQUIRE(run({"extract", kFixture, "--out-dir", dir.path.string()}).code == kExitOk);
  const auto csv = (dir.path / "four_residue.contacts.csv").string();
  const auto r = run({"rank", csv, csv});
  REQUIRE(r.code == kExitOk);
  const auto j = r.json();
  CHECK(j["config"]["combine"] == "sum");
  REQUIRE(j["utilities"].size() == 1);
  CHECK(j["utilities"][0]["values"]["A-G"] == 2.0);
  CHECK(j["rankings"][0]["tiers"][0] == Json::array({"A-G", "G-V"}));
  CHECK(j["profile"].is_null());
  CHECK(run({"rank", csv, csv}).out == r.out);
}

TEST_CASE("aggregate the Condorcet template") {
  const auto synth = run({"synth", "condorcet"});
  REQUIRE(synth.code == kExitOk);
  const auto r = run({"aggregate", "--rule", "may"}, synth.out);
  CHECK(r.code == kExitOk);
  const auto j = r.json();
  CHECK(j["transitive"] == false);
  CHECK(j["cycle_witness"].size() == 3);
  CHECK(j["config"]["rule"] == "may");
}

TEST_CASE("aggregate a unanimous profile with borda") {
  const auto p = to_json(profile(letters(), {"ZXY", "ZXY", "ZXY"}));
  const auto r = run({"aggregate", "--rule", "borda"}, p.dump());
  CHECK(r.code == kExitOk);
  CHECK(r.json()["tiers"] == Json::parse(R"([["Z"],["X"],["Y"]])"));
}

TEST_CASE("unknown rules and bad input") {
  const auto r = run({"aggregate", "--rule", "plurality"}, "{}");
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("kemeny") != std::string::npos);
  CHECK(run({"aggregate", "--rule", "may"}, "{not json").code == kExitInput);
  CHECK(run({"aggregate", "--rule", "may"}, R"({"universe": []})").code == kExitInput);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({}).code == kExitUsage);
}

TEST_CASE("audit examples") {
  SUBCASE("arrow for majority") {
    const auto r = run({"audit", "--rule", "may", "--axioms", "arrow", "--m", "3", "--n", "3"});
    REQUIRE(r.code == kExitOk);
    const auto j = r.json();
    CHECK(j["arrow_contradiction"] == false);
    bool found = false;
    for (const auto& res : j["results"])
      if (res["property"] == "transitivity") {
        found = true;
        CHECK(res["verdict"] == "fail");
        CHECK(res["witness"]["outcomes"][0]["transitive"] == false);
        CHECK(res["witness"]["profiles"][0]["individuals"].size() == 3);
      } else {
        CHECK(res["verdict"] == "pass_within_search");
      }
    CHECK(found);
  }
  SUBCASE("borda iia") {
    const auto r = run({"audit", "--rule", "borda", "--axioms", "iia", "--m", "3", "--n", "2", "--mode", "exhaustive"});
    REQUIRE(r.code == kExitOk);
    const auto res = r.json()["results"][0];
    CHECK(res["verdict"] == "fail");
    CHECK(res["witness"]["profiles"].size() == 2);
  }
  SUBCASE("continuity") {
    const auto r = run({"audit", "--rule", "mean-direction", "--axioms", "continuity", "--m", "2"});
    REQUIRE(r.code == kExitOk);
    const auto results = r.json()["results"];
    const auto w = results[0]["witness"];
    CHECK(w["input_distance"].get<double>() <= 2e-3);
    CHECK(w["output_distance"].get<double>() >= 1.0);
    CHECK(w["verified"] == true);
    CHECK(results[1]["verdict"] == "pass_within_search");
    CHECK(results[2]["verdict"] == "pass_within_search");
  }
}

TEST_CASE("audit budget overrun gives a partial report") {
  const auto r = run({"audit", "--rule", "may", "--axioms", "unanimity,proximity", "--n", "5"});
  CHECK(r.code == kExitBudget);
  const auto j = r.json();
  CHECK(j["results"].size() == 1);
  CHECK(j.contains("error"));
}

TEST_CASE("audit usage errors") {
  CHECK(run({"audit", "--rule", "may", "--axioms", "pareto"}).code == kExitUsage);
  CHECK(run({"audit", "--rule", "may", "--axioms", "utility_iia", "--n", "2"}).code == kExitUsage);
  CHECK(run({"audit", "--rule", "may", "--mode", "random"}).code == kExitUsage);
  CHECK(run({"audit", "--rule", "may", "--axioms", "continuity"}).code == kExitUsage);
}

TEST_CASE("reports are byte-identical across runs") {
  const std::vector<std::vector<std::string>> commands = {
      {"synth", "impartial", "--m", "5", "--n", "7", "--seed", "3"},
      {"synth", "single-peaked", "--m", "5", "--n", "7", "--seed", "3"},
      {"audit", "--rule", "kemeny", "--axioms", "all", "--n", "2"},
      {"audit", "--rule", "borda", "--axioms", "iia,positive_responsiveness", "--mode", "sampled", "--m", "4",
       "--n", "4", "--trials", "500", "--seed", "8"},
      {"audit", "--rule", "borda", "--axioms", "may-coincidence", "--trials", "200"},
  };
  for (const auto& c : commands) {
    const auto a = run(c);
    const auto b = run(c);
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
    CHECK(a.json().contains("config"));
  }
  auto serial = commands[2];
  serial.push_back("--serial");
  CHECK(run(serial).json()["results"] == run(commands[2]).json()["results"]);
}

TEST_CASE("restrict reports") {
  const auto sp = run({"synth", "single-peaked", "--m", "4", "--n", "5", "--seed", "2"});
  const auto r = run({"restrict"}, sp.out);
  REQUIRE(r.code == kExitOk);
  const auto j = r.json();
  CHECK(j["single_peaked"] == true);
  CHECK(j["axis"].size() == 4);
  CHECK(j["quasi_transitive"] == true);

  const auto c = run({"restrict"}, run({"synth", "condorcet"}).out).json();
  CHECK(c["single_peaked"] == false);
  CHECK(c["axis"].is_null());
  CHECK(c["quasi_transitive"] == false);
}

TEST_CASE("help exits cleanly") {
  const auto top = run({"--help"});
  CHECK(top.code == kExitOk);
  CHECK(top.out.find("audit") != std::string::npos);
  for (const char* sub : {"extract", "rank", "aggregate", "audit", "restrict", "synth"}) {
    const auto r = run({sub, "--help"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("--") != std::string::npos);
  }
}
