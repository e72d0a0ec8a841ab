#include "arrowkit/family.hpp"

#include <algorithm>
#include <set>

#include "arrowkit/errors.hpp"
#include "arrowkit/montecarlo.hpp"

namespace arrowkit {

namespace {

void validate_structure(const FamilyStructure& structure) {
  require(structure.k >= 2 && structure.n >= 1, errc::invalid_argument,
          "structure needs k >= 2 and n >= 1");
  std::vector<char> seen(static_cast<std::size_t>(structure.k), 0);
  for (const FamilyBlock& block : structure.blocks) {
    require(!block.alternatives.empty(), errc::invalid_argument, "empty block");
    require(std::is_sorted(block.alternatives.begin(), block.alternatives.end()),
            errc::invalid_argument, "block alternatives must be ascending");
    for (int a : block.alternatives) {
      require(a >= 0 && a < structure.k && !seen[static_cast<std::size_t>(a)],
              errc::invalid_argument, "blocks must partition the alternatives");
      seen[static_cast<std::size_t>(a)] = 1;
    }
    const std::size_t sz = block.alternatives.size();
    if (sz == 1) {
      require(std::holds_alternative<SingletonKind>(block.kind), errc::invalid_argument,
              "size-1 block must be a singleton");
    } else if (sz == 2) {
      const auto* fp = std::get_if<FreePairKind>(&block.kind);
      require(fp != nullptr, errc::invalid_argument, "size-2 block must be a free pair");
      require(fp->fn.n() == structure.n, errc::shape_mismatch, "pair function arity mismatch");
      require(!fp->fn.is_constant(), errc::invalid_argument,
              "free-pair function must be non-constant");
    } else {
      const auto* td = std::get_if<TopDictatorKind>(&block.kind);
      require(td != nullptr, errc::invalid_argument, "size >= 3 block must be dictated");
      require(td->voter >= 0 && td->voter < structure.n, errc::invalid_argument,
              "dictator voter out of range");
      require(td->sign == 1 || td->sign == -1, errc::invalid_argument, "sign must be +-1");
    }
  }
  for (char s : seen)
    require(s == 1, errc::invalid_argument, "blocks must cover every alternative");
}

}  // namespace

Constitution realize_structure(const FamilyStructure& structure) {
  validate_structure(structure);
  const int k = structure.k;
  const int n = structure.n;
  // block_of[a] = position of a's block in the ordered partition
  std::vector<int> block_of(static_cast<std::size_t>(k), -1);
  for (std::size_t bi = 0; bi < structure.blocks.size(); ++bi)
    for (int a : structure.blocks[bi].alternatives)
      block_of[static_cast<std::size_t>(a)] = static_cast<int>(bi);

  std::vector<BooleanFunction> fns;
  fns.reserve(static_cast<std::size_t>(pair_count(k)));
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      const int ba = block_of[static_cast<std::size_t>(a)];
      const int bb = block_of[static_cast<std::size_t>(b)];
      if (ba != bb) {
        fns.push_back(BooleanFunction::constant(n, ba < bb ? 1 : -1));
        continue;
      }
      const FamilyBlock& block = structure.blocks[static_cast<std::size_t>(ba)];
      if (const auto* fp = std::get_if<FreePairKind>(&block.kind)) {
        fns.push_back(fp->fn);
      } else if (const auto* td = std::get_if<TopDictatorKind>(&block.kind)) {
        fns.push_back(td->sign > 0 ? BooleanFunction::dictator(n, td->voter)
                                   : BooleanFunction::anti_dictator(n, td->voter));
      } else {
        fail(errc::invalid_argument, "singleton block cannot contain a pair");
      }
    }
  return Constitution(k, n, std::move(fns));
}

namespace {

enum class PairOrder { above, below, free };

PairOrder pair_order(const BooleanFunction& f) {
  bool all_plus = true, all_minus = true;
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    if (f.sign(x) > 0) all_minus = false;
    else all_plus = false;
  }
  if (all_plus) return PairOrder::above;
  if (all_minus) return PairOrder::below;
  return PairOrder::free;
}

struct ParadoxPredK {
  const Constitution& c;

  bool operator()(std::span<const std::uint64_t> masks) const {
    OutcomeTournament t;
    t.k = c.k();
    t.prefers.resize(masks.size());
    for (std::size_t p = 0; p < masks.size(); ++p)
      t.prefers[p] = static_cast<std::int8_t>(c.pair_fns()[p].sign(masks[p]));
    return !is_transitive(t);
  }
};

}  // namespace

StructureResult structure_of(const Constitution& c, const EnumerationOptions& opts) {
  StructureResult result;
  result.witness = detail::find_profile(c.k(), c.n(), opts, ParadoxPredK{c});
  if (result.witness.has_value()) return result;

  const int k = c.k();
  // a >_F b exactly when f^{a>b} is constant; everything else ties the two
  // alternatives into a common block.
  std::vector<std::vector<PairOrder>> order(
      static_cast<std::size_t>(k), std::vector<PairOrder>(static_cast<std::size_t>(k)));
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      const PairOrder po = pair_order(c.pair_fn(a, b));
      order[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = po;
      order[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] =
          po == PairOrder::above ? PairOrder::below
          : po == PairOrder::below ? PairOrder::above
                                   : PairOrder::free;
    }

  // Connected components of the "not always ordered" graph.
  std::vector<int> comp(static_cast<std::size_t>(k), -1);
  int comp_count = 0;
  for (int start = 0; start < k; ++start) {
    if (comp[static_cast<std::size_t>(start)] != -1) continue;
    std::vector<int> stack{start};
    comp[static_cast<std::size_t>(start)] = comp_count;
    while (!stack.empty()) {
      const int a = stack.back();
      stack.pop_back();
      for (int b = 0; b < k; ++b) {
        if (a == b || comp[static_cast<std::size_t>(b)] != -1) continue;
        if (order[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] == PairOrder::free) {
          comp[static_cast<std::size_t>(b)] = comp_count;
          stack.push_back(b);
        }
      }
    }
    ++comp_count;
  }

  // Every cross-block pair must be decided one way for all alternatives
  // of the two blocks; the beats relation between blocks is then a strict
  // total order under transitivity.
  std::vector<int> representative(static_cast<std::size_t>(comp_count), -1);
  for (int a = k - 1; a >= 0; --a)
    representative[static_cast<std::size_t>(comp[static_cast<std::size_t>(a)])] = a;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      const int ca = comp[static_cast<std::size_t>(a)];
      const int cb = comp[static_cast<std::size_t>(b)];
      if (a == b || ca == cb) continue;
      require(order[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] != PairOrder::free,
              errc::not_transitive, "cross-block pair unexpectedly unordered");
      const int ra = representative[static_cast<std::size_t>(ca)];
      const int rb = representative[static_cast<std::size_t>(cb)];
      require(order[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] ==
                  order[static_cast<std::size_t>(ra)][static_cast<std::size_t>(rb)],
              errc::not_transitive, "inconsistent ordering between two blocks");
    }

  std::vector<int> comp_order(static_cast<std::size_t>(comp_count));
  for (int ci = 0; ci < comp_count; ++ci) comp_order[static_cast<std::size_t>(ci)] = ci;
  std::sort(comp_order.begin(), comp_order.end(), [&](int x, int y) {
    const int rx = representative[static_cast<std::size_t>(x)];
    const int ry = representative[static_cast<std::size_t>(y)];
    return order[static_cast<std::size_t>(rx)][static_cast<std::size_t>(ry)] == PairOrder::above;
  });
  for (std::size_t pos = 0; pos + 1 < comp_order.size(); ++pos) {
    const int rx = representative[static_cast<std::size_t>(comp_order[pos])];
    const int ry = representative[static_cast<std::size_t>(comp_order[pos + 1])];
    require(order[static_cast<std::size_t>(rx)][static_cast<std::size_t>(ry)] == PairOrder::above,
            errc::not_transitive, "blocks are not totally ordered");
  }
  std::vector<int> comp_rank(static_cast<std::size_t>(comp_count));
  for (std::size_t pos = 0; pos < comp_order.size(); ++pos)
    comp_rank[static_cast<std::size_t>(comp_order[pos])] = static_cast<int>(pos);

  FamilyStructure structure;
  structure.k = k;
  structure.n = c.n();
  structure.blocks.resize(static_cast<std::size_t>(comp_count));
  for (int ci = 0; ci < comp_count; ++ci) {
    auto& block = structure.blocks[static_cast<std::size_t>(comp_rank[static_cast<std::size_t>(ci)])];
    for (int a = 0; a < k; ++a)
      if (comp[static_cast<std::size_t>(a)] == ci) block.alternatives.push_back(a);
  }

  for (FamilyBlock& block : structure.blocks) {
    if (block.alternatives.size() == 1) {
      block.kind = SingletonKind{};
      continue;
    }
    if (block.alternatives.size() == 2) {
      block.kind = FreePairKind{c.pair_fn(block.alternatives[0], block.alternatives[1])};
      continue;
    }
    // Dictated block: all internal pair functions are x_j or all are -x_j.
    bool resolved = false;
    for (int voter = 0; voter < c.n() && !resolved; ++voter) {
      for (const int sign : {1, -1}) {
        const BooleanFunction expect = sign > 0 ? BooleanFunction::dictator(c.n(), voter)
                                                : BooleanFunction::anti_dictator(c.n(), voter);
        bool all = true;
        for (std::size_t ia = 0; ia < block.alternatives.size() && all; ++ia)
          for (std::size_t ib = ia + 1; ib < block.alternatives.size() && all; ++ib)
            all = c.pair_fn(block.alternatives[ia], block.alternatives[ib]) == expect;
        if (all) {
          block.kind = TopDictatorKind{voter, sign};
          resolved = true;
          break;
        }
      }
    }
    require(resolved, errc::not_transitive,
            "transitive constitution has an undictated block; this contradicts "
            "the normal form");
  }

  result.structure = std::move(structure);
  return result;
}

SingleVoterClassification classify_single_voter(const Constitution& c) {
  require(c.k() == 3, errc::unsupported_k, "classification is stated for k = 3");
  require(c.n() == 1, errc::shape_mismatch, "classification needs a single voter");

  std::vector<Ranking> outcomes;
  outcomes.reserve(6);
  for (std::uint64_t r = 0; r < 6; ++r) {
    const Ranking sigma = Ranking::from_lex_rank(3, r);
    const OutcomeTournament t = evaluate(c, Profile({sigma}));
    std::vector<int> ord = sigma.order();
    require(is_transitive(t), errc::not_transitive,
            "outcome cycles on input ranking [" + std::to_string(ord[0]) + "," +
                std::to_string(ord[1]) + "," + std::to_string(ord[2]) + "]");
    outcomes.push_back(tournament_order(t));
  }

  SingleVoterClassification out;
  if (std::all_of(outcomes.begin(), outcomes.end(),
                  [&](const Ranking& x) { return x == outcomes.front(); })) {
    out.kind = SingleVoterClassification::Kind::constant;
    out.outcome = outcomes.front();
    return out;
  }

  bool identity = true, anti = true;
  for (std::uint64_t r = 0; r < 6; ++r) {
    const Ranking sigma = Ranking::from_lex_rank(3, r);
    if (!(outcomes[r] == sigma)) identity = false;
    if (!(outcomes[r] == sigma.reversed())) anti = false;
  }
  if (identity) {
    out.kind = SingleVoterClassification::Kind::identity;
    return out;
  }
  if (anti) {
    out.kind = SingleVoterClassification::Kind::anti_identity;
    return out;
  }

  for (int alt = 0; alt < 3; ++alt) {
    for (const bool at_top : {true, false}) {
      const int want = at_top ? 0 : 2;
      if (!std::all_of(outcomes.begin(), outcomes.end(),
                       [&](const Ranking& x) { return x.rank_of(alt) == want; }))
        continue;
      const int a = alt == 0 ? 1 : 0;
      const int b = alt == 2 ? 1 : 2;
      out.kind = SingleVoterClassification::Kind::top_or_bottom_fixed;
      out.fixed_alternative = alt;
      out.fixed_at_top = at_top;
      out.pair_fn = c.pair_fn(a, b);
      return out;
    }
  }
  fail(errc::not_transitive,
       "transitive single-voter constitution escaped the four-case classification");
}

ProjectionResult project_to_family(const Constitution& c, double epsilon,
                                   const VoteDistribution& mu, const EnumerationOptions& opts,
                                   const std::optional<McFallback>& mc) {
  require(c.k() >= 3, errc::too_few_alternatives, "projection is stated for k >= 3");
  require(epsilon >= 0.0, errc::invalid_argument, "epsilon must be nonnegative");
  const Rational radius(Rational(10) * Rational(epsilon));

  std::vector<BooleanFunction> fns;
  fns.reserve(c.pair_fns().size());
  for (const BooleanFunction& f : c.pair_fns()) {
    const NearestSimple nearest = nearest_simple(f);
    fns.push_back(nearest.distance <= radius ? nearest.candidate.realize(c.n()) : f);
  }
  ProjectionResult result{Constitution(c.k(), c.n(), std::move(fns)), ProbValue{}, true,
                          std::nullopt};

  try {
    result.dist = distance(c, result.projected, mu, opts);
    result.distance_exact = true;
  } catch (const BudgetError&) {
    if (!mc.has_value()) throw;
    const Estimate est =
        estimate_distance(c, result.projected, mu, mc->samples, mc->seed, mc->threads);
    result.dist = ProbValue{est.mean, std::nullopt};
    result.distance_exact = false;
  }

  try {
    result.membership = structure_of(result.projected, opts);
  } catch (const BudgetError&) {
    result.membership = std::nullopt;
  }
  return result;
}

namespace {

// Canonical key for set comparison: the pair tables bit-packed in
// canonical order. Only used at n <= 2 where each table fits a byte.
std::vector<std::uint64_t> table_key(const Constitution& c) {
  std::vector<std::uint64_t> key;
  key.reserve(c.pair_fns().size());
  for (const BooleanFunction& f : c.pair_fns()) {
    std::uint64_t bits = 0;
    for (std::uint64_t x = 0; x < f.size(); ++x)
      if (f.sign(x) > 0) bits |= std::uint64_t(1) << x;
    key.push_back(bits);
  }
  return key;
}

bool transitive_everywhere(const Constitution& c, const EnumerationOptions& opts) {
  return !detail::find_profile(c.k(), c.n(), opts, ParadoxPredK{c}).has_value();
}

}  // namespace

FamilyCensus enumerate_family(int k, int n, const EnumerationOptions& opts) {
  require(k == 3, errc::unsupported_k, "family enumeration is implemented for k = 3");
  require(n >= 1, errc::invalid_argument, "need at least one voter");
  const double generated =
      6.0 + 6.0 * (std::pow(2.0, std::pow(2.0, n)) - 2.0) + 2.0 * n;
  if (!(generated <= opts.budget))
    throw BudgetError(generated, "family generation needs " + std::to_string(generated) +
                                     " members, budget is " + std::to_string(opts.budget));

  FamilyCensus census;
  census.k = k;
  census.n = n;

  // Three singleton blocks: one structure per ranking of the blocks.
  for (std::uint64_t r = 0; r < 6; ++r) {
    const std::vector<int> ord = Ranking::from_lex_rank(3, r).order();
    FamilyStructure s;
    s.k = k;
    s.n = n;
    for (int a : ord) s.blocks.push_back(FamilyBlock{{a}, SingletonKind{}});
    census.members.push_back(std::move(s));
  }

  // One free pair plus one singleton, in both orders.
  const std::uint64_t table_count = std::uint64_t(1) << (std::uint64_t(1) << n);
  for (int lone = 0; lone < 3; ++lone) {
    const int a = lone == 0 ? 1 : 0;
    const int b = lone == 2 ? 1 : 2;
    for (const bool pair_first : {false, true}) {
      for (std::uint64_t bits = 0; bits < table_count; ++bits) {
        if (bits == 0 || bits == table_count - 1) continue;  // constants
        std::vector<std::int8_t> signs(std::uint64_t(1) << n);
        for (std::uint64_t x = 0; x < signs.size(); ++x)
          signs[x] = ((bits >> x) & 1) ? 1 : -1;
        FamilyBlock pair_block{{a, b}, FreePairKind{BooleanFunction(n, std::move(signs))}};
        FamilyBlock lone_block{{lone}, SingletonKind{}};
        FamilyStructure s;
        s.k = k;
        s.n = n;
        if (pair_first) {
          s.blocks.push_back(std::move(pair_block));
          s.blocks.push_back(std::move(lone_block));
        } else {
          s.blocks.push_back(std::move(lone_block));
          s.blocks.push_back(std::move(pair_block));
        }
        census.members.push_back(std::move(s));
      }
    }
  }

  // Single dictated block of all three alternatives.
  for (int voter = 0; voter < n; ++voter)
    for (const int sign : {1, -1})
      census.members.push_back(
          FamilyStructure{k, n, {FamilyBlock{{0, 1, 2}, TopDictatorKind{voter, sign}}}});

  if (n <= 2) {
    // Exhaustive cross-check: filter every IIA constitution by
    // transitivity and compare with the generated family.
    std::set<std::vector<std::uint64_t>> survivors;
    std::uint64_t survivor_count = 0;
    const std::uint64_t size = std::uint64_t(1) << n;
    for (std::uint64_t t01 = 0; t01 < table_count; ++t01)
      for (std::uint64_t t02 = 0; t02 < table_count; ++t02)
        for (std::uint64_t t12 = 0; t12 < table_count; ++t12) {
          std::vector<BooleanFunction> fns;
          fns.reserve(3);
          for (std::uint64_t bits : {t01, t02, t12}) {
            std::vector<std::int8_t> signs(size);
            for (std::uint64_t x = 0; x < size; ++x)
              signs[x] = ((bits >> x) & 1) ? 1 : -1;
            fns.emplace_back(n, std::move(signs));
          }
          const Constitution cand(3, n, std::move(fns));
          if (transitive_everywhere(cand, opts)) {
            survivors.insert(table_key(cand));
            ++survivor_count;
          }
        }

    std::set<std::vector<std::uint64_t>> generated_keys;
    for (const FamilyStructure& s : census.members)
      generated_keys.insert(table_key(realize_structure(s)));

    require(generated_keys == survivors, errc::not_transitive,
            "generated family differs from the exhaustive transitivity filter");
    require(survivor_count == census.members.size(), errc::not_transitive,
            "family member count differs from the survivor count");
    census.exhaustive_verified = true;
    census.survivor_count = survivor_count;
  }
  return census;
}

}  // namespace arrowkit
