#pragma once

#include "json.hpp"

#include "protpref/axiom_audit.hpp"
#include "protpref/directions.hpp"
#include "protpref/domain_restrict.hpp"

namespace protpref {

using Json = nlohmann::ordered_json;

Json to_json(const RankingWithTies& ranking);
Json to_json(const UtilityVector& u);
Json to_json(const Profile& p);
Json to_json(const AggregationOutcome& outcome);
Json to_json(const Witness& witness);
Json to_json(const AuditResult& result);
Json to_json(const DirectionPoint& point);
Json to_json(const DiscontinuityWitness& witness);

/// {"single_peaked", "axis", "quasi_transitive"}; axis null when none.
Json restriction_report(const Profile& p, const std::optional<Axis>& axis,
                        bool single_peaked, const AggregationOutcome& outcome);

/// Accepts a bare Profile object or one wrapped under a "profile" key.
/// Error{Schema} on anything malformed.
Profile profile_from_json(const Json& j);

}  // namespace protpref
