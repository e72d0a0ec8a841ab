#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "arrowkit/constitution.hpp"
#include "arrowkit/estimate.hpp"
#include "arrowkit/family.hpp"
#include "arrowkit/vote_distribution.hpp"

namespace arrowkit {

// Reports use insertion-ordered JSON so identical configs serialize to
// identical bytes.
using Json = nlohmann::ordered_json;

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);
std::string fnv1a64_hex(std::string_view bytes);

Json parse_json(std::string_view text);

// Truth-table files. Boolean tables pack one bit per index (+1 = 1),
// msb-first over index 0..2^n-1, hex-encoded.
std::string pack_bits_hex(const BooleanFunction& f);
BooleanFunction unpack_bits_hex(int n, std::string_view hex);

Json boolean_to_json(const BooleanFunction& f);
BooleanFunction boolean_from_json(const Json& j);
Json bounded_to_json(const BoundedFunction& f);
BoundedFunction bounded_from_json(const Json& j);

Json constitution_to_json(const Constitution& c);
Constitution constitution_from_json(const Json& j);

Json vote_distribution_to_json(const VoteDistribution& mu);
VoteDistribution vote_distribution_from_json(const Json& j);

Json ranking_to_json(const Ranking& r);
Ranking ranking_from_json(const Json& j);
Json profile_to_json(const Profile& p);
Profile profile_from_json(const Json& j);

Json tournament_to_json(const OutcomeTournament& t);
Json rational_to_json(const Rational& r);
Json prob_to_json(const ProbValue& p);
Json estimate_to_json(const Estimate& e);
Json structure_to_json(const FamilyStructure& s);

Constitution load_constitution(const std::string& path);
VoteDistribution load_vote_distribution(const std::string& path);

}  // namespace arrowkit
