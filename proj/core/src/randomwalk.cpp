#include "rmp/randomwalk.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "rmp/parallel.hpp"

namespace rmp {

namespace {

constexpr double kRenormBound = 16.0;  // log of the renormalization threshold C

double frobenius(const Matrix<double>& m) { return vector_norm(RealField{}, m.data()); }

long content_valuation(const PadicField& f, const std::vector<Rational>& v) {
  bool found = false;
  long best = 0;
  for (const auto& x : v) {
    if (x == 0) continue;
    const long val = f.valuation(x);
    if (!found || val < best) best = val;
    found = true;
  }
  if (!found) throw std::domain_error("walk collapsed to zero");
  return best;
}

SpectrumEstimate summarize(std::vector<std::vector<double>> rows, std::size_t n, const RngStream& rng,
                           std::size_t bootstrap) {
  SpectrumEstimate est;
  est.n_steps = n;
  est.n_trials = rows.size();
  const std::size_t d = rows.empty() ? 0 : rows.front().size();
  est.lambda.assign(d, 0.0);
  est.stderr_.assign(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<double> col;
    col.reserve(rows.size());
    for (const auto& r : rows) col.push_back(r[i]);
    est.lambda[i] = mean(col);
    est.stderr_[i] = bootstrap_se(col, bootstrap, rng.substream(0xb007 + i));
  }
  est.per_trial = std::move(rows);
  return est;
}

}  // namespace

void renormalize(const RealField&, WalkState<RealField>& s) {
  const double fro = frobenius(s.product);
  if (fro == 0.0 || !std::isfinite(fro)) throw std::domain_error("walk product degenerated");
  const double lf = std::log(fro);
  if (lf > kRenormBound || lf < -kRenormBound) {
    for (auto& x : s.product.data()) x /= fro;
    s.log_scale += lf;
  }
}

void renormalize(const PadicField& f, WalkState<PadicField>& s) {
  const long v = content_valuation(f, s.product.data());
  if (v == 0) return;
  const Rational inv = f.power(-v);
  for (auto& x : s.product.data()) x *= inv;
  s.scale_exponent += v;
  s.log_scale = -static_cast<double>(s.scale_exponent) * std::log(static_cast<double>(f.p));
}

Matrix<double> true_product(const RealField&, const WalkState<RealField>& s) {
  return std::exp(s.log_scale) * s.product;
}

Matrix<Rational> true_product(const PadicField& f, const WalkState<PadicField>& s) {
  return f.power(s.scale_exponent) * s.product;
}

std::vector<double> trajectory_spectrum(const MeasureSpec<RealField>& spec, std::size_t n, RngStream rng,
                                        const SpectrumOptions& opt) {
  const std::size_t d = spec.dimension();
  const AtomSampler sampler(spec.weights);
  const std::size_t interval = std::max<std::size_t>(1, opt.qr_interval);
  const std::size_t burn = static_cast<std::size_t>(opt.burn_in_fraction * static_cast<double>(n));

  Matrix<double> q = Matrix<double>::identity(d);
  Matrix<double> block = Matrix<double>::identity(d);
  std::vector<double> sums(d, 0.0);
  std::vector<double> all_sums(d, 0.0);
  std::size_t counted = 0;
  std::size_t block_start = 0;
  std::size_t in_block = 0;
  for (std::size_t step = 1; step <= n; ++step) {
    block = spec.atoms[sampler.draw(rng)] * block;
    ++in_block;
    bool flush = in_block == interval || step == n;
    if (!flush) {
      double big = 0.0;
      for (double x : block.data()) big = std::max(big, std::fabs(x));
      flush = big > 1e100 || big < 1e-100;
    }
    if (!flush) continue;
    const auto qr = qr_householder(block * q);
    q = qr.q;
    const bool keep = block_start >= burn;
    for (std::size_t i = 0; i < d; ++i) {
      const double l = std::log(std::fabs(qr.r(i, i)));
      all_sums[i] += l;
      if (keep) sums[i] += l;
    }
    if (keep) counted += in_block;
    block_start = step;
    in_block = 0;
    block = Matrix<double>::identity(d);
  }
  std::vector<double> out(d);
  for (std::size_t i = 0; i < d; ++i)
    out[i] = counted > 0 ? sums[i] / static_cast<double>(counted) : all_sums[i] / static_cast<double>(n);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

SpectrumEstimate lyapunov_spectrum(const MeasureSpec<RealField>& spec, std::size_t n, std::size_t trials,
                                   const RngStream& rng, const SpectrumOptions& opt) {
  if (n == 0) throw std::invalid_argument("lyapunov_spectrum needs n >= 1");
  auto rows = parallel_map<std::vector<double>>(
      trials, [&](std::size_t t) { return trajectory_spectrum(spec, n, rng.substream(t), opt); });
  return summarize(std::move(rows), n, rng, opt.bootstrap);
}

SpectrumEstimate lyapunov_spectrum(const MeasureSpec<PadicField>& spec, std::size_t n, std::size_t trials,
                                   const RngStream& rng, const SpectrumOptions& opt) {
  if (n == 0) throw std::invalid_argument("lyapunov_spectrum needs n >= 1");
  const auto& f = spec.field;
  const std::size_t d = spec.dimension();
  const double logp = std::log(static_cast<double>(f.p));
  auto rows = parallel_map<std::vector<double>>(trials, [&](std::size_t t) {
    RngStream stream = rng.substream(t);
    const AtomSampler sampler(spec.weights);
    auto state = start_walk(f, d);
    for (std::size_t k = 0; k < n; ++k) state = step_left(f, std::move(state), spec.atoms[sampler.draw(stream)]);
    const auto kak = kak_decompose(f, state.product);
    std::vector<double> out(d);
    for (std::size_t i = 0; i < d; ++i)
      out[i] = (-static_cast<double>(f.valuation(kak.a[i])) * logp + state.log_scale) / static_cast<double>(n);
    return out;
  });
  return summarize(std::move(rows), n, rng, opt.bootstrap);
}

std::vector<double> growth_rates(const MeasureSpec<RealField>& spec, const Vector<double>& x, std::size_t n,
                                 std::size_t trials, const RngStream& rng) {
  if (n == 0) throw std::invalid_argument("growth_rates needs n >= 1");
  const RealField f;
  const auto start = polar_part(f, x).direction;
  return parallel_map<double>(trials, [&](std::size_t t) {
    RngStream stream = rng.substream(t);
    const AtomSampler sampler(spec.weights);
    auto y = start;
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      y = spec.atoms[sampler.draw(stream)] * y;
      const double nr = vector_norm(f, y);
      acc += std::log(nr);
      for (auto& c : y) c /= nr;
    }
    return acc / static_cast<double>(n);
  });
}

std::vector<double> growth_rates(const MeasureSpec<PadicField>& spec, const Vector<Rational>& x, std::size_t n,
                                 std::size_t trials, const RngStream& rng) {
  if (n == 0) throw std::invalid_argument("growth_rates needs n >= 1");
  const auto& f = spec.field;
  const auto start = polar_part(f, x).direction;
  const double logp = std::log(static_cast<double>(f.p));
  return parallel_map<double>(trials, [&](std::size_t t) {
    RngStream stream = rng.substream(t);
    const AtomSampler sampler(spec.weights);
    auto y = start;
    long e = 0;
    for (std::size_t k = 0; k < n; ++k) {
      y = spec.atoms[sampler.draw(stream)] * y;
      const long v = content_valuation(f, y);
      if (v != 0) {
        const Rational inv = f.power(-v);
        for (auto& c : y) c *= inv;
        e += v;
      }
    }
    return -static_cast<double>(e) * logp / static_cast<double>(n);
  });
}

}  // namespace rmp
