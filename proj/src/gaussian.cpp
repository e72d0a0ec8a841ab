#include "arrowkit/gaussian.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "arrowkit/errors.hpp"
#include "arrowkit/parallel.hpp"

namespace arrowkit {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_upper_tail(double t) {
  if (t == -kInf) return 1.0;
  if (t == kInf) return 0.0;
  return 0.5 * std::erfc(t / std::sqrt(2.0));
}

// Wichura's algorithm AS241, PPND16: rational approximations on three
// regions, |relative error| below 1e-15 over (0, 1).
double normal_quantile(double p) {
  require(p >= 0.0 && p <= 1.0, errc::invalid_argument, "quantile argument must be in [0, 1]");
  if (p == 0.0) return -kInf;
  if (p == 1.0) return kInf;
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                 6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
               1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
             1.3314166789178437745e+2) * r + 3.3871328727963666080e+0) /
           (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                 3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
               5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
             4.2313330701600911252e+1) * r + 1.0);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double value;
  if (r <= 5.0) {
    r -= 1.6;
    value = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
                3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
              4.63033784615654529590e+0) * r + 1.42343711074968357734e+0) /
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
              2.05319162663775882187e+0) * r + 1.0);
  } else {
    r -= 5.0;
    value = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
              5.46378491116411436990e+0) * r + 6.65790464350110377720e+0) /
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
  }
  return q < 0.0 ? -value : value;
}

namespace {

// Adaptive Simpson with an absolute-error budget.
template <class F>
double adaptive_simpson_step(const F& f, double a, double b, double fa, double fm, double fb,
                             double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_step(f, a, b, fa, fm, fb, whole, tol, 48);
}

constexpr double kTailCut = 9.5;  // upper-tail mass beyond is < 1e-21

}  // namespace

double pair_agreement(double t1, double t2, double rho) {
  require(std::abs(rho) <= 1.0, errc::invalid_argument, "|rho| must be at most 1");
  if (t1 == -kInf) return normal_upper_tail(t2);
  if (t2 == -kInf) return normal_upper_tail(t1);
  if (t1 == kInf || t2 == kInf) return 0.0;
  if (rho == 1.0) return normal_upper_tail(std::max(t1, t2));
  if (rho == -1.0) return std::max(0.0, normal_cdf(-t2) - normal_cdf(t1));

  const double s = std::sqrt(1.0 - rho * rho);
  const double lo = std::max(t1, -kTailCut);
  const double hi = kTailCut;
  if (lo >= hi) return 0.0;
  const auto integrand = [&](double x) {
    return normal_pdf(x) * normal_upper_tail((t2 - rho * x) / s);
  };
  return adaptive_simpson(integrand, lo, hi, 1e-13);
}

double pair_agreement_zero_closed(double rho) {
  require(std::abs(rho) <= 1.0, errc::invalid_argument, "|rho| must be at most 1");
  return 0.25 + std::asin(rho) / (2.0 * kPi);
}

double ThresholdFunction::mean() const { return 1.0 - 2.0 * (1.0 - normal_upper_tail(t)); }

double threshold_pair_expectation(const ThresholdFunction& f, const ThresholdFunction& g,
                                  double rho) {
  if (f.t == 0.0 && g.t == 0.0) return 2.0 / kPi * std::asin(rho);
  const double agreement = pair_agreement(f.t, g.t, rho);
  const double p1 = normal_upper_tail(f.t);
  const double p2 = normal_upper_tail(g.t);
  return 4.0 * agreement - 2.0 * p1 - 2.0 * p2 + 1.0;
}

GaussianTriple sample_triple(const GaussianTripleSpec& spec, RandomStream& stream) {
  require(spec.n >= 1, errc::invalid_argument, "dimension must be positive");
  require(spec.rho >= -0.5 && spec.rho <= 1.0, errc::invalid_correlation,
          "equicorrelated 3x3 matrix needs rho in [-1/2, 1]");
  // Explicit Cholesky of the equicorrelated matrix. The last pivot is
  // (1-rho)(1+2rho)/(1+rho), which is exactly zero at the PSD boundary
  // rho = -1/2 instead of a subtraction residue.
  const double rho = spec.rho;
  const double l22 = std::sqrt(std::max(0.0, 1.0 - rho * rho));
  const double l32 = l22 > 0.0 ? (rho - rho * rho) / l22 : 0.0;
  const double l33 = std::sqrt(std::max(0.0, (1.0 - rho) * (1.0 + 2.0 * rho) / (1.0 + rho)));

  GaussianTriple triple;
  triple.first.resize(spec.n);
  triple.second.resize(spec.n);
  triple.third.resize(spec.n);
  for (int i = 0; i < spec.n; ++i) {
    const double z1 = stream.next_normal();
    const double z2 = stream.next_normal();
    const double z3 = stream.next_normal();
    triple.first[i] = z1;
    triple.second[i] = rho * z1 + l22 * z2;
    triple.third[i] = rho * z1 + l32 * z2 + l33 * z3;
  }
  return triple;
}

double gaussian_paradox_probability(const ThresholdFunction& f1, const ThresholdFunction& f2,
                                    const ThresholdFunction& f3, double rho) {
  require(rho >= -0.5 && rho <= 1.0, errc::invalid_correlation,
          "equicorrelated 3x3 matrix needs rho in [-1/2, 1]");
  const double e12 = threshold_pair_expectation(f1, f2, rho);
  const double e23 = threshold_pair_expectation(f2, f3, rho);
  const double e31 = threshold_pair_expectation(f3, f1, rho);
  return 0.25 * (1.0 + e12 + e23 + e31);
}

Estimate gaussian_paradox_mc(const ThresholdFunction& f1, const ThresholdFunction& f2,
                             const ThresholdFunction& f3, double rho, std::uint64_t samples,
                             std::uint64_t seed, int threads) {
  require(samples >= kMinMcSamples, errc::invalid_argument,
          "need at least " + std::to_string(kMinMcSamples) + " samples");
  require(rho >= -0.5 && rho <= 1.0, errc::invalid_correlation,
          "equicorrelated 3x3 matrix needs rho in [-1/2, 1]");
  // same Cholesky factor as sample_triple, applied without the array
  // plumbing in the per-sample loop
  const double l22 = std::sqrt(std::max(0.0, 1.0 - rho * rho));
  const double l32 = l22 > 0.0 ? (rho - rho * rho) / l22 : 0.0;
  const double l33 = std::sqrt(std::max(0.0, (1.0 - rho) * (1.0 + 2.0 * rho) / (1.0 + rho)));

  const std::uint64_t blocks = (samples + kMcBlockSize - 1) / kMcBlockSize;
  std::vector<std::uint64_t> counts(blocks, 0);
  const RandomStream root(seed);
  parallel_for_chunks(blocks, threads, [&](std::size_t b) {
    RandomStream stream = root.substream(b);
    const std::uint64_t begin = b * kMcBlockSize;
    const std::uint64_t end = std::min(samples, begin + kMcBlockSize);
    std::uint64_t hits = 0;
    for (std::uint64_t s = begin; s < end; ++s) {
      const double z1 = stream.next_normal();
      const double z2 = stream.next_normal();
      const double z3 = stream.next_normal();
      const int s1 = z1 > f1.t ? 1 : -1;
      const int s2 = rho * z1 + l22 * z2 > f2.t ? 1 : -1;
      const int s3 = rho * z1 + l32 * z2 + l33 * z3 > f3.t ? 1 : -1;
      if (s1 == s2 && s2 == s3) ++hits;
    }
    counts[b] = hits;
  });
  std::uint64_t total = 0;
  for (std::uint64_t c : counts) total += c;
  return bernoulli_estimate(total, samples);
}

GaussianArrowReport check_gaussian_arrow_bound(const ThresholdFunction& f1,
                                               const ThresholdFunction& f2,
                                               const ThresholdFunction& f3, double rho,
                                               double epsilon, bool strict) {
  require(epsilon > 0.0 && epsilon <= 1.0, errc::invalid_argument, "epsilon must be in (0, 1]");
  GaussianArrowReport report;
  const std::array<ThresholdFunction, 3> fns{f1, f2, f3};
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    const ThresholdFunction& fi = fns[static_cast<std::size_t>(i)];
    const ThresholdFunction& fj = fns[static_cast<std::size_t>((i + 1) % 3)];
    const double agree = pair_agreement(fi.t, fj.t, rho);
    const double pi = normal_upper_tail(fi.t);
    const double pj = normal_upper_tail(fj.t);
    worst = std::max(worst, pi - agree);  // f_i = +1, f_{i+1} = -1
    worst = std::max(worst, pj - agree);  // f_i = -1, f_{i+1} = +1
  }
  report.worst_disagreement = worst;
  report.hypothesis_ok = worst <= 1.0 - epsilon + 1e-12;
  if (!report.hypothesis_ok && strict)
    fail(errc::hypothesis_failed,
         "a cyclic pair disagrees with probability " + std::to_string(worst) +
             " > 1 - epsilon");
  report.paradox = gaussian_paradox_probability(f1, f2, f3, rho);
  report.delta_bound = std::pow(epsilon / 2.0, 18.0);
  report.meets_bound = report.paradox >= report.delta_bound - 1e-15;
  return report;
}

DriftReport hypercube_vs_gaussian_drift(const BooleanFunction& f, const BooleanFunction& g,
                                        double rho) {
  require(f.n() == g.n(), errc::shape_mismatch, "functions must share n");
  DriftReport report;
  report.cube_value = correlated_expectation(f.to_bounded(), g.to_bounded(), rho);
  const ThresholdFunction tf{normal_quantile(0.5 * (1.0 - f.mean()))};
  const ThresholdFunction tg{normal_quantile(0.5 * (1.0 - g.mean()))};
  report.gaussian_value = threshold_pair_expectation(tf, tg, rho);
  report.gap = std::abs(report.cube_value - report.gaussian_value);
  double max_inf = 0.0;
  for (int i = 0; i < f.n(); ++i)
    max_inf = std::max({max_inf, influence(f, i), influence(g, i)});
  report.max_influence = max_inf;
  return report;
}

DriftReport majority_drift(int n_voters, double rho) {
  require(n_voters >= 1 && n_voters % 2 == 1, errc::invalid_argument,
          "majority needs an odd number of voters");
  require(std::abs(rho) <= 1.0, errc::invalid_argument, "|rho| must be at most 1");
  const int n = n_voters;
  // Joint pmf of (#{X_i = +1}, #{Y_i = +1}) built one coordinate at a
  // time; E[maj maj] then reads off the sign quadrant weights.
  const double p_same = (1.0 + rho) / 4.0;
  const double p_diff = (1.0 - rho) / 4.0;
  Eigen::ArrayXXd pmf = Eigen::ArrayXXd::Zero(n + 1, n + 1);
  Eigen::ArrayXXd next(n + 1, n + 1);
  pmf(0, 0) = 1.0;
  for (int step = 0; step < n; ++step) {
    next.setZero();
    for (int i = 0; i <= step; ++i)
      for (int j = 0; j <= step; ++j) {
        const double w = pmf(i, j);
        if (w == 0.0) continue;
        next(i + 1, j + 1) += w * p_same;
        next(i, j) += w * p_same;
        next(i + 1, j) += w * p_diff;
        next(i, j + 1) += w * p_diff;
      }
    pmf.swap(next);
  }
  double expectation = 0.0;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      const int sx = 2 * i > n ? 1 : -1;
      const int sy = 2 * j > n ? 1 : -1;
      expectation += sx * sy * pmf(i, j);
    }

  DriftReport report;
  report.cube_value = expectation;
  report.gaussian_value = 2.0 / kPi * std::asin(rho);
  report.gap = std::abs(report.cube_value - report.gaussian_value);
  report.max_influence =
      std::exp(std::lgamma(n) - 2.0 * std::lgamma(0.5 * (n + 1)) - (n - 1) * std::log(2.0));
  return report;
}

}  // namespace arrowkit
