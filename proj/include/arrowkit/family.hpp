#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "arrowkit/constitution.hpp"

namespace arrowkit {

// Block kinds of the transitive-IIA normal form: an ordered partition of
// the alternatives where every block of size >= 3 is dictated by one
// voter, size-2 blocks carry an arbitrary non-constant pair function, and
// singletons have no internal structure.
struct SingletonKind {};
struct FreePairKind {
  BooleanFunction fn;  // decision for (lower alt) > (higher alt)
};
struct TopDictatorKind {
  int voter = 0;
  int sign = 1;  // +1 dictator, -1 anti-dictator
};

struct FamilyBlock {
  std::vector<int> alternatives;  // ascending
  std::variant<SingletonKind, FreePairKind, TopDictatorKind> kind;
};

struct FamilyStructure {
  int k = 0;
  int n = 0;
  std::vector<FamilyBlock> blocks;  // highest-ranked block first
};

Constitution realize_structure(const FamilyStructure& structure);

struct StructureResult {
  std::optional<FamilyStructure> structure;
  std::optional<Profile> witness;  // first paradox profile in lex order

  bool in_family() const { return structure.has_value(); }
};

// Extracts the normal form of a transitive constitution, or returns a
// concrete paradox profile.
StructureResult structure_of(const Constitution& c, const EnumerationOptions& opts = {});

// Proposition-style classification of transitive single-voter
// constitutions on three alternatives.
struct SingleVoterClassification {
  enum class Kind { constant, top_or_bottom_fixed, identity, anti_identity };
  Kind kind = Kind::constant;
  std::optional<Ranking> outcome;          // constant case
  int fixed_alternative = -1;              // top/bottom case
  bool fixed_at_top = false;               // top/bottom case
  std::optional<BooleanFunction> pair_fn;  // top/bottom case, the free pair
};

SingleVoterClassification classify_single_voter(const Constitution& c);

struct McFallback {
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct ProjectionResult {
  Constitution projected;
  ProbValue dist;
  bool distance_exact = true;
  // Unset when the membership check itself exceeded the budget.
  std::optional<StructureResult> membership;
};

// Per pair, swaps in the nearest constant/dictator/anti-dictator when it
// is within distance 10*epsilon, then reports the exact (or, past the
// budget, Monte Carlo) distance to the original and the family membership
// of the result.
ProjectionResult project_to_family(const Constitution& c, double epsilon,
                                   const VoteDistribution& mu, const EnumerationOptions& opts = {},
                                   const std::optional<McFallback>& mc = std::nullopt);

struct FamilyCensus {
  int k = 0;
  int n = 0;
  std::vector<FamilyStructure> members;  // deterministic generation order
  bool exhaustive_verified = false;      // n <= 2: filter matched generation
  std::uint64_t survivor_count = 0;
};

// Generates all of the k = 3 family from normal forms; for n <= 2 also
// filters every IIA constitution by transitivity and verifies the two
// sets coincide.
FamilyCensus enumerate_family(int k, int n, const EnumerationOptions& opts = {});

}  // namespace arrowkit
