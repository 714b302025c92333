#pragma once

#include <optional>
#include <vector>

#include "rmp/linalg.hpp"
#include "rmp/measure.hpp"
#include "rmp/rng.hpp"
#include "rmp/stationary.hpp"
#include "rmp/stats.hpp"

namespace rmp {

/// A statistic sampled along an n grid with a least-squares fit of log(statistic) against n.
struct DecayCurve {
  std::vector<std::size_t> n;
  std::vector<double> statistic;
  std::vector<double> stderr_;
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
  Interval slope_ci;           // 99% bootstrap over trials
  std::size_t fitted_points = 0;  // grid points with a positive statistic, used in the fit
};

struct DecayOptions {
  std::size_t bootstrap = 200;
  std::optional<Subspace<RealField>> L;        // L_mu: x must avoid it
  std::optional<Subspace<RealField>> L_check;  // L of the transposed measure: f must avoid it
  double subspace_tol = 1e-9;
};

/// Mean over trials of δ(R_n[x], Z) with R_n = g_1 ... g_n and Z the top direction of R_{n_max}
/// on the same trajectory.
DecayCurve direction_convergence_rate(const MeasureSpec<RealField>& spec, const Vector<double>& x,
                                      const std::vector<std::size_t>& n_grid, std::size_t trials,
                                      const RngStream& rng, const DecayOptions& opt = {});

/// Monte-Carlo estimate of P[δ(L_n[x], [Ker f]) <= exp(-eps n)] with L_n = g_n ... g_1.
DecayCurve hitting_probability_curve(const MeasureSpec<RealField>& spec, const Vector<double>& x,
                                     const Vector<double>& f, double eps, const std::vector<std::size_t>& n_grid,
                                     std::size_t trials, const RngStream& rng, const DecayOptions& opt = {});

/// δ([x], [Ker f]) = |f(x)| / (|x| |f|).
double hyperplane_distance(const Vector<double>& x, const Vector<double>& f);

struct Hyperplane {
  Vector<double> f;     // Ker f is the hyperplane
  double weight = 1.0;  // δ([f], [L_check]), or 1 without L_check
  std::optional<std::size_t> anchor;  // nu_hat point the hyperplane was built through; left out of its integral
};

/// Hyperplanes through `from_support` sample points of nu_hat plus `random` uniform ones.
std::vector<Hyperplane> hyperplane_grid(const EmpiricalMeasure& nu_hat, std::size_t from_support, std::size_t random,
                                        const std::optional<Subspace<RealField>>& l_check, const RngStream& rng);

struct HolderOptions {
  std::size_t bootstrap = 50;        // resamples for the stability check of one α
  std::size_t outer_bootstrap = 20;  // resamples of nu_hat for the interval on alpha_hat
  std::size_t top_hyperplanes = 3;   // hyperplanes whose integral is resampled
  double max_cv = 0.1;               // bootstrap sd / value above which the integral counts as unstable
};

struct HolderEstimate {
  double alpha_hat = 0.0;
  Interval ci;  // percentile interval of alpha_hat over outer resamples
  std::size_t sup_hyperplane = 0;
  std::vector<double> alpha_grid;
  std::vector<double> sup_integral;  // sup_f weight(f) mean δ^-α, per α
  std::vector<double> cv;            // bootstrap relative spread of that sup, per α
};

/// Largest α on the grid such that the weighted integral sup is stable for it and every smaller
/// grid value; 0 when the first grid value already fails.
HolderEstimate holder_alpha_estimate(const EmpiricalMeasure& nu_hat, const std::vector<Hyperplane>& hyperplanes,
                                     const std::vector<double>& alpha_grid, const RngStream& rng,
                                     const HolderOptions& opt = {});

/// CSV (n, statistic, stderr).
void write_curve_csv(std::ostream& os, const DecayCurve& c);

}  // namespace rmp
