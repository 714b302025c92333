#pragma once

#include <cstddef>
#include <vector>

#include "rmp/rng.hpp"

namespace rmp {

/// Two-sided 99% standard normal quantile.
inline constexpr double kZ99 = 2.5758293035489004;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool excludes_zero() const { return lo > 0.0 || hi < 0.0; }
};

double mean(const std::vector<double>& v);
double sample_stddev(const std::vector<double>& v);
double median(std::vector<double> v);

/// Bootstrap standard error of the mean.
double bootstrap_se(const std::vector<double>& v, std::size_t resamples, RngStream rng);

/// mean ± z·se.
Interval normal_interval(double center, double se, double z = kZ99);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // root mean square
};

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace rmp
