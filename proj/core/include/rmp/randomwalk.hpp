#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "rmp/linalg.hpp"
#include "rmp/measure.hpp"
#include "rmp/rng.hpp"
#include "rmp/stats.hpp"

namespace rmp {

/// Renormalized running product. Real: true = product * exp(log_scale).
/// Q_p: true = product * p^scale_exponent and log_scale = -scale_exponent * log p.
template <class F>
struct WalkState {
  Matrix<typename F::scalar> product;
  double log_scale = 0.0;
  long scale_exponent = 0;
  std::size_t step = 0;
};

template <class F>
WalkState<F> start_walk(const F&, std::size_t d) {
  return {Matrix<typename F::scalar>::identity(d), 0.0, 0, 0};
}

/// Real: rescale by the Frobenius norm once it leaves [e^-16, e^16]. Q_p: strip the content p^v.
void renormalize(const RealField& f, WalkState<RealField>& s);
void renormalize(const PadicField& f, WalkState<PadicField>& s);

/// L_{n+1} = g L_n.
template <class F>
WalkState<F> step_left(const F& f, WalkState<F> s, const Matrix<typename F::scalar>& g) {
  s.product = g * s.product;
  ++s.step;
  renormalize(f, s);
  return s;
}

/// R_{n+1} = R_n g.
template <class F>
WalkState<F> step_right(const F& f, WalkState<F> s, const Matrix<typename F::scalar>& g) {
  s.product = s.product * g;
  ++s.step;
  renormalize(f, s);
  return s;
}

/// log of the operator norm of the true product.
template <class F>
double log_norm(const F& f, const WalkState<F>& s) {
  return log_op_norm(f, s.product) + s.log_scale;
}

Matrix<double> true_product(const RealField& f, const WalkState<RealField>& s);
Matrix<Rational> true_product(const PadicField& f, const WalkState<PadicField>& s);

struct SpectrumOptions {
  std::size_t qr_interval = 8;      // steps between re-orthogonalizations (Real)
  double burn_in_fraction = 0.1;    // leading steps excluded from the average (Real)
  std::size_t bootstrap = 200;
};

struct SpectrumEstimate {
  std::vector<double> lambda;
  std::vector<double> stderr_;
  std::size_t n_steps = 0;
  std::size_t n_trials = 0;
  std::vector<std::vector<double>> per_trial;  // per_trial[t][i]

  Interval ci(std::size_t i, double z = kZ99) const { return normal_interval(lambda[i], stderr_[i], z); }
};

/// Lyapunov spectrum of the left walk. Real: Householder-QR deflation of the streamed product.
/// Q_p: exact product and elementary divisors of L_n.
SpectrumEstimate lyapunov_spectrum(const MeasureSpec<RealField>& spec, std::size_t n, std::size_t trials,
                                   const RngStream& rng, const SpectrumOptions& opt = {});
SpectrumEstimate lyapunov_spectrum(const MeasureSpec<PadicField>& spec, std::size_t n, std::size_t trials,
                                   const RngStream& rng, const SpectrumOptions& opt = {});

/// Per-trajectory log-singular-value estimates for a single path (used by tests and benchmarks).
std::vector<double> trajectory_spectrum(const MeasureSpec<RealField>& spec, std::size_t n, RngStream rng,
                                        const SpectrumOptions& opt = {});

struct GapEstimate {
  double gap = 0.0;
  double stderr_ = 0.0;
  Interval ci;
  bool simple_top = false;
};

/// λ1 - λ2 from paired per-trajectory differences; simple_top iff the 99% CI lies above 0.
template <class F>
GapEstimate top_gap(const MeasureSpec<F>& spec, std::size_t n, std::size_t trials, const RngStream& rng,
                    const SpectrumOptions& opt = {}) {
  if (spec.dimension() < 2) throw std::invalid_argument("top_gap needs dimension >= 2");
  const auto est = lyapunov_spectrum(spec, n, trials, rng, opt);
  std::vector<double> diffs;
  diffs.reserve(est.per_trial.size());
  for (const auto& row : est.per_trial) diffs.push_back(row[0] - row[1]);
  GapEstimate g;
  g.gap = mean(diffs);
  g.stderr_ = bootstrap_se(diffs, opt.bootstrap, rng.substream(0x6a9));
  g.ci = normal_interval(g.gap, g.stderr_);
  g.simple_top = g.ci.lo > 0.0;
  return g;
}

/// Growth rates (1/n) log ||L_n x|| per trajectory.
std::vector<double> growth_rates(const MeasureSpec<RealField>& spec, const Vector<double>& x, std::size_t n,
                                 std::size_t trials, const RngStream& rng);
std::vector<double> growth_rates(const MeasureSpec<PadicField>& spec, const Vector<Rational>& x, std::size_t n,
                                 std::size_t trials, const RngStream& rng);

/// The measure pushed to the exterior square.
template <class F>
MeasureSpec<F> wedge_measure(const MeasureSpec<F>& spec) {
  return map_atoms(spec, spec.field, [](const auto& g) { return wedge_square(g); });
}

struct ExteriorCheck {
  double sum_top_two = 0.0;  // λ1 + λ2 from the base walk
  double sum_stderr = 0.0;
  double wedge_top = 0.0;    // top exponent of the exterior-square walk
  double wedge_stderr = 0.0;
  Interval difference_ci;    // joint 99% interval for the difference
  bool consistent = false;
};

/// Compares λ1 + λ2 of the base walk with the top exponent of the exterior-square walk.
template <class F>
ExteriorCheck exterior_power_check(const MeasureSpec<F>& spec, std::size_t n, std::size_t trials,
                                   const RngStream& rng, const SpectrumOptions& opt = {}) {
  const auto base = lyapunov_spectrum(spec, n, trials, rng.substream(1), opt);
  const auto wedge = lyapunov_spectrum(wedge_measure(spec), n, trials, rng.substream(2), opt);
  std::vector<double> sums;
  for (const auto& row : base.per_trial) sums.push_back(row[0] + row[1]);
  ExteriorCheck c;
  c.sum_top_two = mean(sums);
  c.sum_stderr = bootstrap_se(sums, opt.bootstrap, rng.substream(3));
  c.wedge_top = wedge.lambda[0];
  c.wedge_stderr = wedge.stderr_[0];
  const double se = std::sqrt(c.sum_stderr * c.sum_stderr + c.wedge_stderr * c.wedge_stderr);
  c.difference_ci = normal_interval(c.sum_top_two - c.wedge_top, se);
  // Absolute slack for rounding when both walks are deterministic.
  c.consistent = c.difference_ci.lo - 1e-12 <= 0.0 && 0.0 <= c.difference_ci.hi + 1e-12;
  return c;
}

}  // namespace rmp
