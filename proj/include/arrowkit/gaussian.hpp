#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "arrowkit/boolfn.hpp"
#include "arrowkit/estimate.hpp"
#include "arrowkit/rng.hpp"

namespace arrowkit {

double normal_pdf(double x);
double normal_cdf(double x);
// P[N > t]; exact 1/0 at t = -inf/+inf.
double normal_upper_tail(double t);
// Inverse CDF, Wichura's AS241 (PPND16); quantile(0) = -inf, quantile(1) = +inf.
double normal_quantile(double p);

// P[N1 > t1, N2 > t2] for standard bivariate normals with correlation
// rho, by conditioning and adaptive quadrature; absolute error <= 1e-10.
double pair_agreement(double t1, double t2, double rho);
// Closed form at zero thresholds: 1/4 + arcsin(rho) / (2 pi).
double pair_agreement_zero_closed(double rho);

// sgn(<w, x> - t) for any unit-norm weight vector w: the weighted average
// of standard Gaussian coordinates is itself standard, so only the
// threshold matters. t = -inf / +inf encode the constants +1 / -1.
struct ThresholdFunction {
  double t = 0.0;

  double mean() const;  // E[sgn(N - t)] = 1 - 2 Phi(t)
};

// E[f(N1) g(N2)] for threshold functions at correlation rho.
double threshold_pair_expectation(const ThresholdFunction& f, const ThresholdFunction& g,
                                  double rho);

// n independent copies of the equicorrelated 3-dimensional Gaussian; the
// off-diagonal rho must be in [-1/2, 1] for positive semidefiniteness.
struct GaussianTripleSpec {
  int n = 1;
  double rho = -1.0 / 3.0;
};

struct GaussianTriple {
  Eigen::ArrayXd first, second, third;
};

GaussianTriple sample_triple(const GaussianTripleSpec& spec, RandomStream& stream);

// P[f1(N1) = f2(N2) = f3(N3)] under the equicorrelated triple: the
// spectral identity 1/4 (1 + sum of cyclic pair expectations), arcsin
// terms at zero thresholds and quadrature otherwise.
double gaussian_paradox_probability(const ThresholdFunction& f1, const ThresholdFunction& f2,
                                    const ThresholdFunction& f3, double rho);

Estimate gaussian_paradox_mc(const ThresholdFunction& f1, const ThresholdFunction& f2,
                             const ThresholdFunction& f3, double rho, std::uint64_t samples,
                             std::uint64_t seed, int threads = 1);

struct GaussianArrowReport {
  bool hypothesis_ok = false;
  double worst_disagreement = 0.0;  // max over the six P[f_i = u, f_{i+1} = -u]
  double paradox = 0.0;
  double delta_bound = 0.0;  // (epsilon / 2)^18
  bool meets_bound = false;
};

// Checks P[f_i = u, f_{i+1} = -u] <= 1 - epsilon for the cyclic pairs,
// then the paradox probability against (epsilon/2)^18. With strict set,
// a failed hypothesis throws instead of reporting.
GaussianArrowReport check_gaussian_arrow_bound(const ThresholdFunction& f1,
                                               const ThresholdFunction& f2,
                                               const ThresholdFunction& f3, double rho,
                                               double epsilon, bool strict = true);

struct DriftReport {
  double cube_value = 0.0;
  double gaussian_value = 0.0;
  double gap = 0.0;
  double max_influence = 0.0;
};

// |E[f(X) g(Y)] on the cube - its Gaussian threshold counterpart| with
// mean-matched thresholds.
DriftReport hypercube_vs_gaussian_drift(const BooleanFunction& f, const BooleanFunction& g,
                                        double rho);

// Same drift for simple majority on any odd n, computed exactly with a
// joint-sum dynamic program instead of a dense table.
DriftReport majority_drift(int n_voters, double rho);

}  // namespace arrowkit
