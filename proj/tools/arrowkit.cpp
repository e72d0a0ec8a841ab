#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "arrowkit/family.hpp"
#include "arrowkit/gaussian.hpp"
#include "arrowkit/io.hpp"
#include "arrowkit/montecarlo.hpp"
#include "arrowkit/pivotal.hpp"
#include "arrowkit/suites.hpp"

namespace {

using namespace arrowkit;

constexpr const char* kVersion = "0.1.0";

// Tracks every input file read so reports can embed its content hash.
struct Inputs {
  Json hashes = Json::object();

  std::string slurp(const std::string& path) {
    const std::string text = read_file(path);
    hashes[path] = fnv1a64_hex(text);
    return text;
  }

  Constitution constitution(const std::string& path) {
    return constitution_from_json(parse_json(slurp(path)));
  }

  VoteDistribution distribution(const std::string& path) {
    return vote_distribution_from_json(parse_json(slurp(path)));
  }
};

Json envelope(const std::string& command, const Inputs& inputs) {
  return Json{{"tool", "arrowkit"}, {"version", kVersion}, {"command", command},
              {"inputs", inputs.hashes}};
}

void print_report(const Json& report) { std::cout << report.dump(2) << "\n"; }

double parse_threshold(const std::string& text) {
  if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  try {
    return std::stod(text);
  } catch (const std::exception&) {
    fail(errc::invalid_argument, "threshold must be a number, 'inf' or '-inf'");
  }
}

struct CommonArgs {
  std::string constitution_path;
  std::string distribution_path;
  bool uniform = false;
  bool float_only = false;
  double budget = 1e8;
  int threads = 1;

  VoteDistribution resolve_distribution(Inputs& inputs, int k) {
    if (!distribution_path.empty()) {
      VoteDistribution mu = inputs.distribution(distribution_path);
      require(mu.k() == k, errc::shape_mismatch, "distribution k differs from constitution");
      return mu;
    }
    return VoteDistribution::uniform(k);
  }

  EnumerationOptions enumeration() const {
    require(budget >= 1.0, errc::invalid_argument, "budget must be at least 1");
    require(threads >= 1, errc::invalid_argument, "threads must be at least 1");
    return EnumerationOptions{budget, threads};
  }

  Json prob(const ProbValue& p) const {
    if (float_only) return Json{{"float", p.value}};
    return prob_to_json(p);
  }
};

void add_common(CLI::App* cmd, CommonArgs& args, bool needs_constitution = true) {
  if (needs_constitution)
    cmd->add_option("-c,--constitution", args.constitution_path, "constitution JSON file")
        ->required();
  cmd->add_option("-d,--distribution", args.distribution_path,
                  "vote distribution JSON file (default: uniform)");
  cmd->add_flag("--uniform", args.uniform, "use the uniform distribution (default)");
  cmd->add_flag("--float-only", args.float_only,
                "serialize probabilities as floats without num/den fields");
  cmd->add_option("--budget", args.budget, "enumeration budget in weighted states");
  cmd->add_option("--threads", args.threads, "worker threads");
}

int run_analyze(CommonArgs& args) {
  Inputs inputs;
  const Constitution c = inputs.constitution(args.constitution_path);
  const VoteDistribution mu = args.resolve_distribution(inputs, c.k());

  Json report = envelope("analyze", inputs);
  report["k"] = c.k();
  report["n"] = c.n();
  const ProbValue paradox = paradox_probability_exact(c, mu, args.enumeration());
  report["paradox_exact"] = args.prob(paradox);
  ProbValue transitive{1.0 - paradox.value, std::nullopt};
  if (paradox.is_exact()) transitive = make_exact_prob(1 - *paradox.exact);
  report["transitive_prob"] = args.prob(transitive);

  Json influences = Json::array();
  for (int a = 0; a < c.k(); ++a)
    for (int b = a + 1; b < c.k(); ++b) {
      Json per_voter = Json::array();
      for (int v = 0; v < c.n(); ++v) per_voter.push_back(influence(c.pair_fn(a, b), v));
      influences.push_back(Json{{"a", a}, {"b", b}, {"influences", std::move(per_voter)}});
    }
  report["influences"] = std::move(influences);

  if (c.k() == 3) {
    try {
      const ProbValue kalai = paradox_probability_kalai(c, mu);
      Json terms;
      const BoundedFunction f1 = cyclic_fn(c, 0).to_bounded();
      const BoundedFunction f2 = cyclic_fn(c, 1).to_bounded();
      const BoundedFunction f3 = cyclic_fn(c, 2).to_bounded();
      const double rho = pair_correlation(mu, {0, 1}, {1, 2});
      terms["rho"] = rho;
      terms["e_12"] = correlated_expectation(f1, f2, rho);
      terms["e_23"] = correlated_expectation(f2, f3, rho);
      terms["e_31"] = correlated_expectation(f3, f1, rho);
      report["paradox_kalai"] = args.prob(kalai);
      report["kalai_terms"] = std::move(terms);
    } catch (const Error& e) {
      if (e.code() != errc::asymmetric_distribution) throw;
      report["paradox_kalai"] = nullptr;
    }
  }
  print_report(report);
  return 0;
}

int run_structure(CommonArgs& args) {
  Inputs inputs;
  const Constitution c = inputs.constitution(args.constitution_path);
  const StructureResult result = structure_of(c, args.enumeration());
  Json report = envelope("structure", inputs);
  report["in_family"] = result.in_family();
  if (result.structure.has_value()) report["structure"] = structure_to_json(*result.structure);
  if (result.witness.has_value()) {
    report["witness"] = profile_to_json(*result.witness);
    report["witness_outcome"] = tournament_to_json(evaluate(c, *result.witness));
  }
  print_report(report);
  return 0;
}

int run_project(CommonArgs& args, double epsilon, std::uint64_t samples, std::uint64_t seed,
                bool mc_requested) {
  Inputs inputs;
  const Constitution c = inputs.constitution(args.constitution_path);
  const VoteDistribution mu = args.resolve_distribution(inputs, c.k());
  std::optional<McFallback> mc;
  if (mc_requested) mc = McFallback{samples, seed, args.threads};
  const ProjectionResult result = project_to_family(c, epsilon, mu, args.enumeration(), mc);

  Json report = envelope("project", inputs);
  report["epsilon"] = epsilon;
  if (mc_requested) report["seed"] = seed;
  report["projected"] = constitution_to_json(result.projected);
  report["distance"] = args.prob(result.dist);
  report["distance_exact"] = result.distance_exact;
  if (result.membership.has_value()) {
    report["in_family"] = result.membership->in_family();
    if (result.membership->structure.has_value())
      report["structure"] = structure_to_json(*result.membership->structure);
  } else {
    report["in_family"] = nullptr;
  }
  print_report(report);
  return 0;
}

int run_barbera(CommonArgs& args, int voter1, int voter2) {
  Inputs inputs;
  const Constitution c = inputs.constitution(args.constitution_path);
  require(c.k() == 3, errc::unsupported_k, "barbera needs k = 3");
  const std::optional<PivotWitness> w1 = find_pivot(c.pair_fn(0, 1), voter1);
  const std::optional<PivotWitness> w2 = find_pivot(c.pair_fn(1, 2), voter2);
  require(w1.has_value(), errc::invalid_argument,
          "voter " + std::to_string(voter1) + " is not pivotal for f^{a>b}");
  require(w2.has_value(), errc::invalid_argument,
          "voter " + std::to_string(voter2) + " is not pivotal for f^{b>c}");
  const Profile profile = barbera_construct(c, *w1, *w2);
  const OutcomeTournament outcome = evaluate(c, profile);

  Json report = envelope("barbera", inputs);
  report["witness_ab"] = Json{{"voter", w1->voter}, {"others", w1->others}};
  report["witness_bc"] = Json{{"voter", w2->voter}, {"others", w2->others}};
  report["profile"] = profile_to_json(profile);
  report["outcome"] = tournament_to_json(outcome);
  report["cyclic"] = !is_transitive(outcome);
  print_report(report);
  return 0;
}

int run_enumerate_family(CommonArgs& args, int k, int n, bool list) {
  Inputs inputs;
  const FamilyCensus census = enumerate_family(k, n, args.enumeration());
  Json report = envelope("enumerate-family", inputs);
  report["k"] = census.k;
  report["n"] = census.n;
  report["members"] = census.members.size();
  report["exhaustive_verified"] = census.exhaustive_verified;
  if (census.exhaustive_verified) report["survivors"] = census.survivor_count;
  std::uint64_t constants = 0, free_pairs = 0, dictated = 0;
  for (const FamilyStructure& s : census.members) {
    if (s.blocks.size() == 3) ++constants;
    else if (s.blocks.size() == 2) ++free_pairs;
    else ++dictated;
  }
  report["by_shape"] = Json{{"three_singleton_blocks", constants},
                            {"pair_plus_singleton", free_pairs},
                            {"single_dictated_block", dictated}};
  if (list) {
    Json members = Json::array();
    for (const FamilyStructure& s : census.members) members.push_back(structure_to_json(s));
    report["structures"] = std::move(members);
  }
  print_report(report);
  return 0;
}

int run_mc(CommonArgs& args, const std::string& distance_to, int majority_n, int majority_k,
           std::uint64_t samples, std::uint64_t seed) {
  Inputs inputs;
  Json report = envelope("mc", inputs);
  Estimate estimate;
  if (majority_n > 0) {
    const VoteDistribution mu = args.resolve_distribution(inputs, majority_k);
    estimate = estimate_majority_paradox(majority_k, majority_n, mu, samples, seed, args.threads);
    report["target"] = Json{{"majority_voters", majority_n}, {"k", majority_k}};
  } else {
    require(!args.constitution_path.empty(), errc::invalid_argument,
            "mc needs --constitution or --majority");
    const Constitution c = inputs.constitution(args.constitution_path);
    const VoteDistribution mu = args.resolve_distribution(inputs, c.k());
    if (!distance_to.empty()) {
      const Constitution g = inputs.constitution(distance_to);
      estimate = estimate_distance(c, g, mu, samples, seed, args.threads);
      report["target"] = "distance";
    } else {
      estimate = estimate_paradox(c, mu, samples, seed, args.threads);
      report["target"] = "paradox";
    }
  }
  report["inputs"] = inputs.hashes;  // refresh: loads happened after envelope
  report["seed"] = seed;
  report["threads"] = args.threads;
  report["estimate"] = estimate_to_json(estimate);
  print_report(report);
  return 0;
}

int run_gauss(const std::string& t1, const std::string& t2, const std::string& t3, double rho,
              double epsilon, std::uint64_t samples, std::uint64_t seed, int threads) {
  Inputs inputs;
  const ThresholdFunction f1{parse_threshold(t1)};
  const ThresholdFunction f2{parse_threshold(t2)};
  const ThresholdFunction f3{parse_threshold(t3)};
  const GaussianArrowReport bound = check_gaussian_arrow_bound(f1, f2, f3, rho, epsilon, false);
  const Estimate mc = gaussian_paradox_mc(f1, f2, f3, rho, samples, seed, threads);

  Json report = envelope("gauss", inputs);
  report["rho"] = rho;
  report["thresholds"] = Json::array({f1.t, f2.t, f3.t});
  report["epsilon"] = epsilon;
  report["seed"] = seed;
  report["closed_form"] = bound.paradox;
  report["mc_estimate"] = mc.mean;
  report["mc_stderr"] = mc.stderr_value;
  report["bound"] = bound.delta_bound;
  report["hypothesis_ok"] = bound.hypothesis_ok;
  report["meets_bound"] = bound.meets_bound;
  report["worst_disagreement"] = bound.worst_disagreement;
  print_report(report);
  return 0;
}

int run_hyper(int n, std::uint64_t pairs, double rho, const std::string& family,
              std::uint64_t seed) {
  SetFamily fam = SetFamily::random;
  if (family == "balls") fam = SetFamily::balls;
  else if (family == "subcubes") fam = SetFamily::subcubes;
  else require(family == "random", errc::invalid_argument,
               "family must be one of random, balls, subcubes");
  const ReverseHcSuiteReport report = reverse_hc_suite(pairs, n, rho, fam, seed, true);
  std::printf("measure1,measure2,intersection,bound,slack\n");
  for (const ReverseHcInstance& row : report.rows)
    std::printf("%.12g,%.12g,%.12g,%.12g,%.12g\n", row.measure1, row.measure2, row.intersection,
                row.bound, row.slack);
  return report.violations == 0 ? 0 : 1;
}

int run_bounds(CommonArgs& args, std::uint64_t instances33, std::uint64_t instances34,
               std::uint64_t instances42, int n_max, std::uint64_t seed) {
  Inputs inputs;
  const VoteDistribution uniform = VoteDistribution::uniform(3);

  SuiteOptions opts33{instances33, 2, n_max, seed, args.enumeration()};
  const BoundSuiteReport r33 = joint_pivotality_suite(opts33, uniform);
  SuiteOptions opts34{instances34, 1, std::min(n_max, 5), seed + 1, args.enumeration()};
  const BoundSuiteReport r34 = two_influential_suite(opts34, uniform);
  const ProjectionSuiteReport r42 =
      dictator_projection_suite(instances42, {0.01, 0.002}, {3, 4, 5}, seed + 2, args.enumeration());

  Json report = envelope("bounds", inputs);
  report["seed"] = seed;
  report["joint_pivotality"] = Json{{"instances", r33.instances},
                             {"violations", r33.violations},
                             {"min_slack", r33.min_slack}};
  report["two_influential"] = Json{{"instances", r34.instances},
                               {"violations", r34.violations},
                               {"min_slack", r34.min_slack}};
  report["dictator_projection"] = Json{{"instances", r42.instances},
                               {"failures", r42.failures},
                               {"max_distance", r42.max_distance}};
  print_report(report);
  return (r33.violations + r34.violations + r42.failures) == 0 ? 0 : 1;
}

void emit_fixtures(const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const auto write_json = [&](const std::string& name, const Json& j) {
    write_file((fs::path(dir) / name).string(), j.dump(2) + "\n");
  };

  write_json("uniform_k3.json", vote_distribution_to_json(VoteDistribution::uniform(3)));
  {
    // Reversal-symmetric weights 2:3:4 over the three ranking pairs.
    std::vector<Rational> probs{Rational(2, 18), Rational(3, 18), Rational(4, 18),
                                Rational(3, 18), Rational(4, 18), Rational(2, 18)};
    write_json("symmetric_234_k3.json",
               vote_distribution_to_json(VoteDistribution::from_rationals(3, probs)));
  }

  write_json("dictator_k3_n3.json", constitution_to_json(Constitution::dictator(3, 3, 0)));
  write_json("antidictator_k3_n3.json",
             constitution_to_json(Constitution::anti_dictator(3, 3, 0)));
  write_json("constant_abc_k3_n3.json",
             constitution_to_json(Constitution::constant(Ranking({0, 1, 2}), 3)));
  write_json("majority_k3_n1.json", constitution_to_json(Constitution::majority(3, 1)));
  write_json("majority_k3_n3.json", constitution_to_json(Constitution::majority(3, 3)));
  write_json("majority_k3_n5.json", constitution_to_json(Constitution::majority(3, 5)));
  write_json("parity_k3_n3.json", constitution_to_json(Constitution::parity(3, 3)));
  {
    Constitution perturbed =
        Constitution::dictator(3, 3, 0)
            .with_pair_fn(0, 1, BooleanFunction::dictator(3, 0).with_flipped_entry(0));
    write_json("perturbed_dictator_k3_n3.json", constitution_to_json(perturbed));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantitative social-choice toolkit: exact and spectral paradox "
               "probabilities, pivotal constructions, transitive-family analysis"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(0, 1);

  std::string fixtures_dir;
  app.add_option("--emit-fixtures", fixtures_dir,
                 "write the canonical test constitutions and distributions to a directory");

  CommonArgs analyze_args;
  CLI::App* analyze = app.add_subcommand("analyze", "exact and spectral paradox report");
  add_common(analyze, analyze_args);

  CommonArgs structure_args;
  CLI::App* structure = app.add_subcommand("structure", "transitive normal form or witness");
  add_common(structure, structure_args);

  CommonArgs project_args;
  double project_epsilon = 0.01;
  std::uint64_t project_samples = 1000000, project_seed = 1;
  bool project_mc = false;
  CLI::App* project = app.add_subcommand("project", "project onto the transitive family");
  add_common(project, project_args);
  project->add_option("--epsilon", project_epsilon, "candidate radius is 10*epsilon")->required();
  project->add_option("--samples", project_samples, "Monte Carlo fallback sample count");
  project->add_option("--seed", project_seed, "Monte Carlo fallback seed");
  project->add_flag("--mc-fallback", project_mc, "estimate the distance when past the budget");

  CommonArgs barbera_args;
  int barbera_v1 = 0, barbera_v2 = 1;
  CLI::App* barbera = app.add_subcommand("barbera", "explicit paradox profile from two pivots");
  add_common(barbera, barbera_args);
  barbera->add_option("--voter1", barbera_v1, "pivotal voter for f^{a>b}");
  barbera->add_option("--voter2", barbera_v2, "pivotal voter for f^{b>c}");

  CommonArgs family_args;
  int family_k = 3, family_n = 1;
  bool family_list = false;
  CLI::App* family = app.add_subcommand("enumerate-family", "generate/verify the transitive family");
  add_common(family, family_args, false);
  family->add_option("--k", family_k, "alternatives (only 3 supported)");
  family->add_option("--n", family_n, "voters")->required();
  family->add_flag("--list", family_list, "include every structure in the report");

  CommonArgs mc_args;
  std::string mc_distance_to;
  int mc_majority_n = 0, mc_majority_k = 3;
  std::uint64_t mc_samples = 1000000, mc_seed = 1;
  CLI::App* mc = app.add_subcommand("mc", "seeded Monte Carlo estimates");
  mc->add_option("-c,--constitution", mc_args.constitution_path, "constitution JSON file");
  mc->add_option("-d,--distribution", mc_args.distribution_path, "vote distribution JSON file");
  mc->add_flag("--uniform", mc_args.uniform, "use the uniform distribution (default)");
  mc->add_option("--distance-to", mc_distance_to, "estimate D(F, G) against this constitution");
  mc->add_option("--majority", mc_majority_n, "estimate majority paradox on this many voters");
  mc->add_option("--k", mc_majority_k, "alternatives for --majority");
  mc->add_option("--samples", mc_samples, "sample count");
  mc->add_option("--seed", mc_seed, "root seed");
  mc->add_option("--threads", mc_args.threads, "worker threads");

  std::string gauss_t1 = "0", gauss_t2 = "0", gauss_t3 = "0";
  double gauss_rho = -1.0 / 3.0, gauss_eps = 0.5;
  std::uint64_t gauss_samples = 1000000, gauss_seed = 1;
  int gauss_threads = 1;
  CLI::App* gauss = app.add_subcommand("gauss", "Gaussian paradox: closed form vs Monte Carlo");
  gauss->add_option("--rho", gauss_rho, "pairwise correlation in [-1/2, 1]");
  gauss->add_option("--t1", gauss_t1, "threshold (number, inf or -inf)");
  gauss->add_option("--t2", gauss_t2, "threshold");
  gauss->add_option("--t3", gauss_t3, "threshold");
  gauss->add_option("--epsilon", gauss_eps, "hypothesis margin");
  gauss->add_option("--samples", gauss_samples, "Monte Carlo samples");
  gauss->add_option("--seed", gauss_seed, "root seed");
  gauss->add_option("--threads", gauss_threads, "worker threads");

  int hyper_n = 10;
  std::uint64_t hyper_pairs = 100, hyper_seed = 1;
  double hyper_rho = 1.0 / 3.0;
  std::string hyper_family = "random";
  CLI::App* hyper = app.add_subcommand("hyper", "reverse-hypercontractivity suite (CSV)");
  hyper->add_option("--n", hyper_n, "cube dimension");
  hyper->add_option("--pairs", hyper_pairs, "number of set pairs");
  hyper->add_option("--rho", hyper_rho, "per-coordinate correlation");
  hyper->add_option("--family", hyper_family, "random | balls | subcubes");
  hyper->add_option("--seed", hyper_seed, "root seed");

  CommonArgs bounds_args;
  std::uint64_t b33 = 500, b34 = 200, b42 = 50, bounds_seed = 1;
  int bounds_nmax = 8;
  CLI::App* bounds = app.add_subcommand("bounds", "randomized lower-bound suites");
  add_common(bounds, bounds_args, false);
  bounds->add_option("--joint-instances", b33, "joint-pivotality instances");
  bounds->add_option("--influential-instances", b34, "two-influential instances");
  bounds->add_option("--projection-instances", b42, "projection instances");
  bounds->add_option("--n-max", bounds_nmax, "largest voter count");
  bounds->add_option("--seed", bounds_seed, "root seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (!fixtures_dir.empty()) {
      emit_fixtures(fixtures_dir);
      return 0;
    }
    if (analyze->parsed()) return run_analyze(analyze_args);
    if (structure->parsed()) return run_structure(structure_args);
    if (project->parsed())
      return run_project(project_args, project_epsilon, project_samples, project_seed, project_mc);
    if (barbera->parsed()) return run_barbera(barbera_args, barbera_v1, barbera_v2);
    if (family->parsed()) return run_enumerate_family(family_args, family_k, family_n, family_list);
    if (mc->parsed())
      return run_mc(mc_args, mc_distance_to, mc_majority_n, mc_majority_k, mc_samples, mc_seed);
    if (gauss->parsed())
      return run_gauss(gauss_t1, gauss_t2, gauss_t3, gauss_rho, gauss_eps, gauss_samples,
                       gauss_seed, gauss_threads);
    if (hyper->parsed()) return run_hyper(hyper_n, hyper_pairs, hyper_rho, hyper_family, hyper_seed);
    if (bounds->parsed()) return run_bounds(bounds_args, b33, b34, b42, bounds_nmax, bounds_seed);
    std::cerr << app.help();
    return 2;
  } catch (const BudgetError& e) {
    Json error{{"error", errc_name(e.code())}, {"message", e.what()},
               {"required_states", e.required_states()}};
    std::cerr << error.dump(2) << "\n";
    return 3;
  } catch (const Error& e) {
    Json error{{"error", errc_name(e.code())}, {"message", e.what()}};
    std::cerr << error.dump(2) << "\n";
    return 2;
  } catch (const std::exception& e) {
    Json error{{"error", "Unhandled"}, {"message", e.what()}};
    std::cerr << error.dump(2) << "\n";
    return 2;
  }
}
