#include "brwre/offspring.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace brwre {

namespace {

constexpr double kPmfSumTol = 1e-12;

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

OffspringDistribution OffspringDistribution::from_pmf(std::vector<double> pmf) {
  if (pmf.empty()) throw std::invalid_argument("offspring pmf: empty");
  double sum = 0.0, mean = 0.0, second = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    const double p = pmf[k];
    if (!(p >= 0.0) || !std::isfinite(p))
      throw std::invalid_argument("offspring pmf: entries must be finite and >= 0");
    sum += p;
    mean += double(k) * p;
    second += double(k) * double(k) * p;
  }
  if (std::abs(sum - 1.0) > kPmfSumTol)
    throw std::invalid_argument("offspring pmf: entries must sum to 1");
  OffspringDistribution d;
  d.kind_ = OffspringKind::Explicit;
  d.pmf_ = std::move(pmf);
  d.mean_ = mean;
  d.var_ = second - mean * mean;
  return d;
}

OffspringDistribution OffspringDistribution::geometric(double mean) {
  if (!(mean > 0.0) || !std::isfinite(mean))
    throw std::invalid_argument("geometric offspring: mean must be finite and > 0");
  OffspringDistribution d;
  d.kind_ = OffspringKind::Geometric;
  d.geo_mean_ = mean;
  d.mean_ = mean;
  d.var_ = mean * (1.0 + mean);
  return d;
}

OffspringDistribution OffspringDistribution::bernoulli_pair(double p0, std::int64_t k) {
  if (!(p0 >= 0.0 && p0 <= 1.0))
    throw std::invalid_argument("bernoulli_pair offspring: p0 must be in [0, 1]");
  if (k < 1) throw std::invalid_argument("bernoulli_pair offspring: k must be >= 1");
  OffspringDistribution d;
  d.kind_ = OffspringKind::BernoulliPair;
  d.p0_ = p0;
  d.k_ = k;
  d.mean_ = (1.0 - p0) * double(k);
  d.var_ = (1.0 - p0) * double(k) * double(k) - d.mean_ * d.mean_;
  return d;
}

double OffspringDistribution::p_zero() const {
  switch (kind_) {
    case OffspringKind::Explicit:
      return pmf_[0];
    case OffspringKind::Geometric:
      return 1.0 / (1.0 + geo_mean_);  // success probability s
    case OffspringKind::BernoulliPair:
      return p0_;
  }
  return 0.0;
}

bool OffspringDistribution::single_child_certain() const {
  switch (kind_) {
    case OffspringKind::Explicit:
      return pmf_.size() >= 2 && pmf_[1] == 1.0;
    case OffspringKind::Geometric:
      return false;
    case OffspringKind::BernoulliPair:
      return k_ == 1 && p0_ == 0.0;
  }
  return false;
}

std::int64_t OffspringDistribution::sample(RngStream& rng) const {
  switch (kind_) {
    case OffspringKind::Explicit: {
      const double u = rng.next_unit();
      double cum = 0.0;
      for (std::size_t k = 0; k < pmf_.size(); ++k) {
        cum += pmf_[k];
        if (u < cum) return std::int64_t(k);
      }
      return std::int64_t(pmf_.size()) - 1;
    }
    case OffspringKind::Geometric: {
      // Inversion: k = floor(log(u) / log(1 - s)), u in (0, 1].
      const double s = 1.0 / (1.0 + geo_mean_);
      const double u = 1.0 - rng.next_unit();
      if (u == 1.0) return 0;
      return std::int64_t(std::floor(std::log(u) / std::log1p(-s)));
    }
    case OffspringKind::BernoulliPair:
      return rng.next_unit() < p0_ ? 0 : k_;
  }
  return 0;
}

std::int64_t OffspringDistribution::sample_sum(std::int64_t count,
                                               std::int64_t exact_threshold,
                                               RngStream& rng) const {
  if (count < 0) throw std::invalid_argument("sample_sum: negative count");
  if (count == 0) return 0;
  if (count <= exact_threshold) {
    std::int64_t total = 0;
    for (std::int64_t i = 0; i < count; ++i) total += sample(rng);
    return total;
  }
  const double m = double(count) * mean_;
  const double sd = std::sqrt(double(count) * var_);
  const double draw = m + sd * rng.next_normal();
  return std::max<std::int64_t>(0, std::llround(draw));
}

std::string OffspringDistribution::describe() const {
  switch (kind_) {
    case OffspringKind::Explicit: {
      std::string s = "pmf(";
      for (std::size_t k = 0; k < pmf_.size(); ++k) {
        if (k) s += ",";
        s += format_g17(pmf_[k]);
      }
      return s + ")";
    }
    case OffspringKind::Geometric:
      return "geometric(" + format_g17(geo_mean_) + ")";
    case OffspringKind::BernoulliPair:
      return "bernoulli_pair(" + format_g17(p0_) + "," + std::to_string(k_) + ")";
  }
  return "?";
}

bool OffspringDistribution::operator==(const OffspringDistribution& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case OffspringKind::Explicit:
      return pmf_ == other.pmf_;
    case OffspringKind::Geometric:
      return geo_mean_ == other.geo_mean_;
    case OffspringKind::BernoulliPair:
      return p0_ == other.p0_ && k_ == other.k_;
  }
  return false;
}

}  // namespace brwre
