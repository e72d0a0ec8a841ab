#include "arrowkit/errors.hpp"

namespace arrowkit {

const char* errc_name(errc code) {
  switch (code) {
    case errc::invalid_argument: return "InvalidArgument";
    case errc::identical_alternatives: return "IdenticalAlternatives";
    case errc::degenerate_pairs: return "DegeneratePairs";
    case errc::shape_mismatch: return "ShapeMismatch";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::unsupported_k: return "UnsupportedK";
    case errc::asymmetric_distribution: return "AsymmetricDistribution";
    case errc::too_few_alternatives: return "TooFewAlternatives";
    case errc::same_voter: return "SameVoter";
    case errc::not_transitive: return "NotTransitive";
    case errc::hypothesis_failed: return "HypothesisFailed";
    case errc::invalid_correlation: return "InvalidCorrelation";
    case errc::construction_failed: return "ConstructionFailed";
  }
  return "Unknown";
}

void fail(errc code, const std::string& message) {
  throw Error(code, std::string(errc_name(code)) + ": " + message);
}

}  // namespace arrowkit
