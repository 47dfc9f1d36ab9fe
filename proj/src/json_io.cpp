#include "protpref/json_io.hpp"

#include "protpref/error.hpp"

namespace protpref {

namespace {

Json labels_of(const UniversePtr& u, const std::vector<std::size_t>& alternatives) {
  Json out = Json::array();
  for (auto a : alternatives) out.push_back(u->labels[a]);
  return out;
}

Json tiers_json(const RankingWithTies& r) {
  Json tiers = Json::array();
  for (const auto& tier : r.tiers()) tiers.push_back(labels_of(r.universe(), tier));
  return tiers;
}

Json values_json(const UtilityVector& u) {
  Json values = Json::object();
  for (std::size_t a = 0; a < u.values.size(); ++a) values[u.universe->labels[a]] = u.values[a];
  return values;
}

Json points_json(const std::vector<DirectionPoint>& points) {
  Json out = Json::array();
  for (const auto& p : points) out.push_back(to_json(p));
  return out;
}

UniversePtr universe_from_labels(std::vector<std::string> labels) {
  const auto matches = [&](const UniversePtr& u) { return u->labels == labels; };
  if (labels.size() == 210 && matches(amino_universe(true))) return amino_universe(true);
  if (labels.size() == 190 && matches(amino_universe(false))) return amino_universe(false);
  if (!labels.empty() && labels.size() <= 210) {
    auto synthetic = synthetic_universe(labels.size());
    if (matches(synthetic)) return synthetic;
  }
  return make_universe("custom", std::move(labels));
}

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorKind::Schema, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t label_index(const Universe& u, const Json& label) {
  if (!label.is_string()) schema("class labels must be strings");
  const auto index = u.index_of(label.get<std::string>());
  if (!index) schema("class '" + label.get<std::string>() + "' is not in the universe");
  return *index;
}

Profile parse_profile(const Json& j) {
  const Json& universe_json = field(j, "universe");
  if (!universe_json.is_array() || universe_json.empty()) schema("'universe' must be a non-empty array");
  std::vector<std::string> labels;
  for (const auto& l : universe_json) {
    if (!l.is_string()) schema("universe labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  const auto universe = universe_from_labels(std::move(labels));

  std::string mode = "ordinal";
  if (j.contains("mode")) {
    if (!j.at("mode").is_string()) schema("'mode' must be a string");
    mode = j.at("mode").get<std::string>();
  }
  if (mode != "ordinal" && mode != "utility") schema("unknown mode '" + mode + "'");

  const Json& individuals = field(j, "individuals");
  if (!individuals.is_array()) schema("'individuals' must be an array");

  std::vector<RankingWithTies> rankings;
  std::vector<UtilityVector> utilities;
  for (std::size_t i = 0; i < individuals.size(); ++i) {
    const Json& ind = individuals[i];
    if (!ind.is_object()) schema("each individual must be an object");
    std::string owner = "p" + std::to_string(i + 1);
    if (ind.contains("owner")) {
      if (!ind.at("owner").is_string()) schema("'owner' must be a string");
      owner = ind.at("owner").get<std::string>();
    }
    if (mode == "ordinal") {
      const Json& tiers_json = field(ind, "tiers");
      if (!tiers_json.is_array()) schema("'tiers' must be an array of arrays");
      std::vector<std::vector<std::size_t>> tiers;
      for (const auto& tier : tiers_json) {
        if (!tier.is_array()) schema("'tiers' must be an array of arrays");
        std::vector<std::size_t> members;
        for (const auto& label : tier) members.push_back(label_index(*universe, label));
        tiers.push_back(std::move(members));
      }
      rankings.push_back(RankingWithTies::from_tiers(owner, universe, tiers));
    } else {
      const Json& values_json = field(ind, "values");
      std::vector<double> values(universe->size(), 0.0);
      if (values_json.is_array()) {
        if (values_json.size() != universe->size()) schema("'values' length differs from the universe");
        for (std::size_t a = 0; a < values.size(); ++a) {
          if (!values_json[a].is_number()) schema("utility values must be numbers");
          values[a] = values_json[a].get<double>();
        }
      } else if (values_json.is_object()) {
        for (const auto& [label, value] : values_json.items()) {
          if (!value.is_number()) schema("utility values must be numbers");
          values[label_index(*universe, Json(label))] = value.get<double>();
        }
      } else {
        schema("'values' must be an array or an object");
      }
      utilities.push_back({owner, universe, std::move(values)});
    }
  }
  if (mode == "ordinal") return Profile::ordinal(universe, std::move(rankings));
  return Profile::utility(universe, std::move(utilities));
}

}  // namespace

Json to_json(const RankingWithTies& ranking) {
  Json j;
  j["owner"] = ranking.owner();
  j["universe"] = ranking.universe()->id;
  j["tiers"] = tiers_json(ranking);
  return j;
}

Json to_json(const UtilityVector& u) {
  Json j;
  j["owner"] = u.owner;
  j["universe"] = u.universe->id;
  j["values"] = values_json(u);
  return j;
}

Json to_json(const Profile& p) {
  Json j;
  j["universe"] = p.universe()->labels;
  j["mode"] = std::string(to_string(p.mode()));
  Json individuals = Json::array();
  for (std::size_t i = 0; i < p.n(); ++i) {
    if (p.mode() == ProfileMode::ordinal) {
      const auto& r = p.rankings()[i];
      individuals.push_back({{"owner", r.owner()}, {"tiers", tiers_json(r)}});
    } else {
      const auto& u = p.utilities()[i];
      individuals.push_back({{"owner", u.owner}, {"values", values_json(u)}});
    }
  }
  j["individuals"] = std::move(individuals);
  return j;
}

Json to_json(const AggregationOutcome& outcome) {
  Json j;
  j["rule"] = outcome.rule_name;
  j["transitive"] = outcome.transitive;
  j["tiers"] = outcome.ranking ? tiers_json(*outcome.ranking) : Json(nullptr);
  if (outcome.cycle_witness) {
    const auto& c = *outcome.cycle_witness;
    j["cycle_witness"] = labels_of(outcome.universe, {c[0], c[1], c[2]});
  } else {
    j["cycle_witness"] = nullptr;
  }
  if (!outcome.transitive) {
    // Pairs a >= b of the raw relation, a != b.
    Json pairs = Json::array();
    const auto& r = outcome.relation;
    for (std::size_t a = 0; a < r.size(); ++a)
      for (std::size_t b = 0; b < r.size(); ++b)
        if (a != b && r.at_least(a, b))
          pairs.push_back({outcome.universe->labels[a], outcome.universe->labels[b]});
    j["at_least"] = std::move(pairs);
  }
  return j;
}

Json to_json(const Witness& witness) {
  Json j;
  j["description"] = witness.description;
  Json profiles = Json::array();
  for (const auto& p : witness.profiles) profiles.push_back(to_json(p));
  j["profiles"] = std::move(profiles);
  Json outcomes = Json::array();
  for (const auto& o : witness.outcomes) outcomes.push_back(to_json(o));
  j["outcomes"] = std::move(outcomes);
  if (!witness.profiles.empty())
    j["alternatives"] = labels_of(witness.profiles.front().universe(), witness.alternatives);
  else
    j["alternatives"] = Json::array();
  j["individual"] = witness.individual ? Json(*witness.individual + 1) : Json(nullptr);
  j["permutation"] = witness.permutation;
  j["profile_distances"] = witness.profile_distances;
  j["outcome_distances"] = witness.outcome_distances;
  return j;
}

Json to_json(const AuditResult& result) {
  Json j;
  j["rule"] = result.rule_name;
  j["property"] = result.property;
  j["verdict"] = std::string(to_string(result.verdict));
  j["search_budget"] = result.search_budget;
  j["seed"] = result.seed;
  if (!result.note.empty()) j["note"] = result.note;
  j["witness"] = result.witness ? to_json(*result.witness) : Json(nullptr);
  if (!result.premises.empty()) {
    Json premises = Json::array();
    for (const auto& p : result.premises) premises.push_back(to_json(p));
    j["premises"] = std::move(premises);
  }
  return j;
}

Json to_json(const DirectionPoint& point) { return point.coordinates(); }

Json to_json(const DiscontinuityWitness& witness) {
  Json j;
  j["dimension"] = witness.dimension;
  j["epsilon"] = witness.epsilon;
  j["seed"] = witness.seed;
  j["plane"] = {witness.axis_u, witness.axis_v};
  j["first"] = points_json(witness.first);
  j["second"] = points_json(witness.second);
  j["first_output"] = to_json(witness.first_output);
  j["second_output"] = to_json(witness.second_output);
  j["input_distance"] = witness.input_distance;
  j["output_distance"] = witness.output_distance;
  j["verified"] = witness.verify();
  return j;
}

Json restriction_report(const Profile& p, const std::optional<Axis>& axis, bool single_peaked,
                        const AggregationOutcome& outcome) {
  Json j;
  j["single_peaked"] = single_peaked;
  j["axis"] = axis ? labels_of(p.universe(), *axis) : Json(nullptr);
  j["quasi_transitive"] = is_quasi_transitive(outcome);
  return j;
}

Profile profile_from_json(const Json& j) {
  try {
    if (j.is_object() && j.contains("profile") && !j.contains("universe"))
      return parse_profile(j.at("profile"));
    return parse_profile(j);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Schema) throw;
    throw Error(ErrorKind::Schema, e.what());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Schema, e.what());
  }
}

}  // namespace protpref
