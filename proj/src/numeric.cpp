#include "brwre/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace brwre {

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

double log_sum_exp(std::span<const double> xs) {
  double m = kNegInf;
  for (double x : xs) m = std::max(m, x);
  if (m == kNegInf) return kNegInf;
  double sum = 0.0;
  for (double x : xs) sum += std::exp(x - m);
  return m + std::log(sum);
}

double log_binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return kNegInf;
  if (k == 0 || k == n) return 0.0;
  return std::lgamma(double(n) + 1.0) - std::lgamma(double(k) + 1.0) -
         std::lgamma(double(n - k) + 1.0);
}

double binary_entropy(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log(x) - (1.0 - x) * std::log(1.0 - x);
}

namespace {

// 15-point Kronrod nodes/weights on [-1, 1] and the embedded 7-point Gauss
// weights (positive half; nodes are symmetric).
constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct GkResult {
  double value;
  double error;
};

// Integrable endpoint singularities are allowed: when rounding lands a node
// exactly on the singular abscissa, the non-finite value is dropped (the
// point has measure zero and the containing interval is already tiny).
double eval_clamped(const std::function<double(double)>& f, double x) {
  const double v = f(x);
  return std::isfinite(v) ? v : 0.0;
}

GkResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = eval_clamped(f, c - h * kKronrodNodes[i]);
    fv[14 - i] = eval_clamped(f, c + h * kKronrodNodes[i]);
  }
  fv[7] = eval_clamped(f, c);
  double kron = 0.0;
  for (int i = 0; i < 7; ++i) kron += kKronrodWeights[i] * (fv[i] + fv[14 - i]);
  kron += kKronrodWeights[7] * fv[7];
  kron *= h;
  // Gauss points are the odd-index Kronrod nodes.
  double gauss = 0.0;
  for (int i = 0; i < 3; ++i) gauss += kGaussWeights[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
  gauss += kGaussWeights[3] * fv[7];
  gauss *= h;
  return {kron, std::abs(kron - gauss)};
}

double gk_adaptive(const std::function<double(double)>& f, double a, double b,
                   double abs_tol, int depth) {
  const GkResult r = gk15(f, a, b);
  if (r.error <= abs_tol || depth <= 0) return r.value;
  const double c = 0.5 * (a + b);
  if (!(a < c && c < b)) return r.value;  // interval at floating-point resolution
  return gk_adaptive(f, a, c, 0.5 * abs_tol, depth - 1) +
         gk_adaptive(f, c, b, 0.5 * abs_tol, depth - 1);
}

}  // namespace

double integrate_gk(const std::function<double(double)>& f, double a, double b,
                    double abs_tol, int max_depth) {
  if (!(abs_tol > 0)) throw std::invalid_argument("integrate_gk: abs_tol must be > 0");
  if (a == b) return 0.0;
  return gk_adaptive(f, a, b, abs_tol, max_depth);
}

LinearFit least_squares_line(std::span<const double> y, std::int64_t x0) {
  const std::size_t n = y.size();
  if (n < 2) throw std::invalid_argument("least_squares_line: need at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = double(x0) + double(i);
    sx += x;
    sy += y[i];
    sxx += x * x;
    sxy += x * y[i];
  }
  const double d = double(n) * sxx - sx * sx;
  LinearFit fit;
  fit.slope = (double(n) * sxy - sx * sy) / d;
  fit.intercept = (sy - fit.slope * sx) / double(n);
  return fit;
}

MeanStdError mean_std_error(std::span<const double> xs) {
  MeanStdError out;
  const std::size_t n = xs.size();
  if (n == 0) return out;
  double sum = 0;
  for (double x : xs) sum += x;
  out.mean = sum / double(n);
  if (n == 1) return out;
  double ss = 0;
  for (double x : xs) ss += (x - out.mean) * (x - out.mean);
  out.std_error = std::sqrt(ss / double(n - 1) / double(n));
  return out;
}

WilsonInterval wilson_interval(std::int64_t successes, std::int64_t trials, double z) {
  if (trials <= 0) throw std::invalid_argument("wilson_interval: trials must be > 0");
  const double n = double(trials);
  const double p = double(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  WilsonInterval ci{std::max(0.0, center - half), std::min(1.0, center + half)};
  if (successes == 0) ci.lo = 0.0;  // exact endpoints, no cancellation residue
  if (successes == trials) ci.hi = 1.0;
  return ci;
}

}  // namespace brwre
