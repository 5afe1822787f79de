#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>

namespace brwre {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPi = 3.14159265358979323846;

// log(exp(a) + exp(b)); -inf acts as the additive zero.
double log_add(double a, double b);

double log_sum_exp(std::span<const double> xs);

// log C(n, k); 0 for k outside [0, n].
double log_binomial(std::int64_t n, std::int64_t k);

// -x log x - (1-x) log(1-x), with H(0) = H(1) = 0.
double binary_entropy(double x);

// Adaptive Gauss-Kronrod (G7, K15) quadrature to an absolute-error target.
// All nodes are interior, so integrable endpoint singularities are fine.
double integrate_gk(const std::function<double(double)>& f, double a, double b,
                    double abs_tol, int max_depth = 60);

struct LinearFit {
  double slope = 0;
  double intercept = 0;
};
// Least-squares fit of y[i] against x = x0 + i. Requires y.size() >= 2.
LinearFit least_squares_line(std::span<const double> y, std::int64_t x0);

struct MeanStdError {
  double mean = 0;
  double std_error = 0;  // sample standard error of the mean
};
MeanStdError mean_std_error(std::span<const double> xs);

struct WilsonInterval {
  double lo = 0;
  double hi = 1;
};
// 95% score interval for a binomial proportion by default.
WilsonInterval wilson_interval(std::int64_t successes, std::int64_t trials,
                               double z = 1.959963984540054);

}  // namespace brwre
