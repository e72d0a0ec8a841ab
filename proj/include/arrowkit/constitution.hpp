#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "arrowkit/boolfn.hpp"
#include "arrowkit/enumeration.hpp"
#include "arrowkit/pair_encoding.hpp"
#include "arrowkit/ranking.hpp"
#include "arrowkit/vote_distribution.hpp"

namespace arrowkit {

int pair_index(int k, int a, int b);  // canonical pairs (a < b), lex order
int pair_count(int k);

// Full pairwise decision: prefers[p] = +1 iff the smaller alternative of
// canonical pair p is ranked above the larger. Antisymmetry is built in;
// the opposite orientation is never stored.
struct OutcomeTournament {
  int k = 0;
  std::vector<std::int8_t> prefers;

  int sign(int a, int b) const;

  bool operator==(const OutcomeTournament& other) const = default;
};

bool is_transitive(const OutcomeTournament& t);
Ranking tournament_order(const OutcomeTournament& t);  // requires transitive

// IIA constitution: one Boolean pairwise function per canonical pair, all
// on the same n voters. f^{b>a} = -f^{a>b} is derived on demand.
class Constitution {
 public:
  Constitution(int k, int n, std::vector<BooleanFunction> pair_fns);

  static Constitution dictator(int k, int n, int voter);
  static Constitution anti_dictator(int k, int n, int voter);
  static Constitution constant(const Ranking& outcome, int n);
  static Constitution majority(int k, int n);  // odd n
  static Constitution parity(int k, int n);
  static Constitution random(int k, int n, RandomStream& stream);
  // k = 3 builder from the cyclic functions f^{a>b}, f^{b>c}, f^{c>a}.
  static Constitution from_cyclic(const BooleanFunction& f_ab, const BooleanFunction& f_bc,
                                  const BooleanFunction& f_ca);

  int k() const { return k_; }
  int n() const { return n_; }
  const BooleanFunction& pair_fn(int a, int b) const;  // a < b
  const std::vector<BooleanFunction>& pair_fns() const { return pair_fns_; }

  Constitution with_pair_fn(int a, int b, BooleanFunction fn) const;

  bool operator==(const Constitution& other) const = default;

 private:
  int k_, n_;
  std::vector<BooleanFunction> pair_fns_;
};

// g(x) = -f(-x): the same pairwise rule seen from the opposite
// orientation, so f^{b>a} = opposite_orientation(f^{a>b}).
BooleanFunction opposite_orientation(const BooleanFunction& f);

// The cyclic triple for k = 3: index 0 -> f^{a>b}, 1 -> f^{b>c},
// 2 -> f^{c>a} (derived).
BooleanFunction cyclic_fn(const Constitution& c, int index);

// Ranking of three alternatives from a valid cyclic sign triple
// (x^{a>b}, x^{b>c}, x^{c>a}); the triple must not be +-(1,1,1).
Ranking ranking_from_cyclic_signs(int s_ab, int s_bc, int s_ca);

OutcomeTournament evaluate(const Constitution& c, const Profile& profile);

// P(F): probability over mu^n that the outcome tournament has a cycle.
// Exact weighted enumeration over all (k!)^n profiles.
ProbValue paradox_probability_exact(const Constitution& c, const VoteDistribution& mu,
                                    const EnumerationOptions& opts = {});

// Kalai's spectral formula, k = 3 and unbiased pair marginals only:
// P(F) = 1/4 (1 + E[f1 f2] + E[f2 f3] + E[f3 f1]) over the cyclic triple.
ProbValue paradox_probability_kalai(const Constitution& c, const VoteDistribution& mu);

// D(F, G) = P[F(sigma) != G(sigma)], exact enumeration.
ProbValue distance(const Constitution& f, const Constitution& g, const VoteDistribution& mu,
                   const EnumerationOptions& opts = {});

// Keeps the pairwise functions inside `alternatives` (ascending), which
// are re-indexed to 0..|A|-1.
Constitution restrict(const Constitution& c, std::span<const int> alternatives);

// Fixes one voter's ranking and drops that voter: each pairwise function
// gets the induced bit pinned. Remaining voters keep their order.
Constitution conditional_restriction(const Constitution& c, int voter, const Ranking& fixed);

}  // namespace arrowkit
