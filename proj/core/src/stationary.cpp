#include "rmp/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "rmp/parallel.hpp"
#include "rmp/randomwalk.hpp"
#include "rmp/stats.hpp"

namespace rmp {

namespace {

const RealField kReal;

double log_norm2(const Vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return 0.5 * std::log(s);
}

// Right product R_n = g_1 ... g_n, renormalized.
WalkState<RealField> right_walk(const MeasureSpec<RealField>& spec, const AtomSampler& sampler, std::size_t n,
                                RngStream& rng) {
  auto s = start_walk(kReal, spec.dimension());
  for (std::size_t k = 0; k < n; ++k) s = step_right(kReal, s, spec.atoms[sampler.draw(rng)]);
  return s;
}

struct BlockDistances {
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::vector<double> d;  // (nx + ny)^2, pooled x-then-y order
};

// Unbiased energy distance for a labelling: the first nx entries of `order` form the x-sample.
double block_energy(const BlockDistances& b, const std::vector<std::size_t>& order) {
  const std::size_t m = b.nx + b.ny;
  double total = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double* row = &b.d[order[i] * m];
    for (std::size_t j = i + 1; j < m; ++j) {
      const double v = row[order[j]];
      total += v;
      if (j < b.nx)
        sxx += v;
      else if (i >= b.nx)
        syy += v;
    }
  }
  const double sxy = total - sxx - syy;
  const double nx = static_cast<double>(b.nx), ny = static_cast<double>(b.ny);
  return 2.0 * sxy / (nx * ny) - sxx / (nx * (nx - 1) / 2) - syy / (ny * (ny - 1) / 2);
}

}  // namespace

double fs_distance_unit(const Vector<double>& x, const Vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double w = x[i] * y[j] - x[j] * y[i];
      s += w * w;
    }
  return std::min(1.0, std::sqrt(s));
}

EmpiricalMeasure sample_stationary(const MeasureSpec<RealField>& spec, std::size_t n, std::size_t trials,
                                   const RngStream& rng, const StationarySampler& sampler) {
  const std::size_t d = spec.dimension();
  const AtomSampler atoms(spec.weights);
  EmpiricalMeasure out;
  out.n = n;
  out.trials = trials;
  out.seed = rng.seed();
  out.stream = rng.stream();
  if (std::holds_alternative<TopDirection>(sampler)) {
    out.sampler = "top_direction";
    out.points = parallel_map<Vector<double>>(trials, [&](std::size_t t) {
      auto r = rng.substream(t);
      const auto walk = right_walk(spec, atoms, n, r);
      return projective_normalize(kReal, svd(walk.product).u.column(0));
    });
  } else {
    const auto& push = std::get<PushForward>(sampler);
    if (push.x.size() != d) throw std::invalid_argument("push-forward point has the wrong dimension");
    if (vector_norm(kReal, push.x) == 0.0) throw std::invalid_argument("push-forward point is zero");
    if (push.exclude && !push.exclude->is_zero() &&
        (push.exclude->is_full() || distance_to_subspace(push.x, *push.exclude) <= 1e-12))
      throw std::invalid_argument("push-forward point lies in L_mu");
    out.sampler = "push_forward";
    out.points = parallel_map<Vector<double>>(trials, [&](std::size_t t) {
      auto r = rng.substream(t);
      const auto walk = right_walk(spec, atoms, n, r);
      return projective_normalize(kReal, walk.product * push.x);
    });
  }
  return out;
}

EnergyTest energy_test(const std::vector<Vector<double>>& x, const std::vector<Vector<double>>& y,
                       const RngStream& rng, const EnergyOptions& opt) {
  if (x.size() < 2 || y.size() < 2) throw std::invalid_argument("energy test needs at least two points per sample");
  const std::size_t blocks =
      std::max<std::size_t>(1, std::min(x.size(), y.size()) / std::max<std::size_t>(2, opt.block));
  std::vector<BlockDistances> data(blocks);
  parallel_for(blocks, [&](std::size_t b) {
    const std::size_t x0 = b * x.size() / blocks, x1 = (b + 1) * x.size() / blocks;
    const std::size_t y0 = b * y.size() / blocks, y1 = (b + 1) * y.size() / blocks;
    std::vector<const Vector<double>*> pooled;
    for (std::size_t i = x0; i < x1; ++i) pooled.push_back(&x[i]);
    for (std::size_t i = y0; i < y1; ++i) pooled.push_back(&y[i]);
    auto& blk = data[b];
    blk.nx = x1 - x0;
    blk.ny = y1 - y0;
    const std::size_t m = pooled.size();
    blk.d.assign(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) blk.d[i * m + j] = blk.d[j * m + i] = fs_distance_unit(*pooled[i], *pooled[j]);
  });

  auto statistic = [&](RngStream* shuffle) {
    double s = 0.0;
    for (const auto& blk : data) {
      std::vector<std::size_t> order(blk.nx + blk.ny);
      std::iota(order.begin(), order.end(), std::size_t{0});
      if (shuffle) std::shuffle(order.begin(), order.end(), shuffle->engine());
      s += block_energy(blk, order);
    }
    return s / static_cast<double>(data.size());
  };

  EnergyTest out;
  out.blocks = blocks;
  out.statistic = statistic(nullptr);
  const auto null = parallel_map<double>(opt.permutations, [&](std::size_t k) {
    auto r = rng.substream(k);
    return statistic(&r);
  });
  out.null_mean = mean(null);
  out.null_sd = null.size() > 1 ? sample_stddev(null) : 0.0;
  out.threshold = out.null_mean + opt.sigmas * out.null_sd;
  out.reject = out.statistic > out.threshold;
  return out;
}

EnergyTest stationarity_residual(const EmpiricalMeasure& nu_hat, const MeasureSpec<RealField>& spec,
                                 const RngStream& rng, const EnergyOptions& opt) {
  if (nu_hat.size() < 4) throw std::invalid_argument("stationarity residual needs at least four points");
  const std::size_t half = nu_hat.size() / 2;
  std::vector<Vector<double>> kept(nu_hat.points.begin(), nu_hat.points.begin() + static_cast<std::ptrdiff_t>(half));
  const auto draws = sample(spec, rng.substream(0), nu_hat.size() - half);
  std::vector<Vector<double>> pushed;
  pushed.reserve(draws.size());
  for (std::size_t i = 0; i < draws.size(); ++i)
    pushed.push_back(projective_normalize(kReal, spec.atoms[draws[i]] * nu_hat.points[half + i]));
  return energy_test(kept, pushed, rng.substream(1), opt);
}

double subspace_mass(const EmpiricalMeasure& nu_hat, const Subspace<RealField>& w, double eps) {
  if (nu_hat.size() == 0) return 0.0;
  if (w.is_full()) return 1.0;
  if (w.is_zero()) return 0.0;
  std::size_t hits = 0;
  for (const auto& p : nu_hat.points)
    if (distance_to_subspace(p, w) <= eps) ++hits;
  return static_cast<double>(hits) / static_cast<double>(nu_hat.size());
}

BoundaryCurve boundary_convergence(const MeasureSpec<RealField>& spec, const EmpiricalMeasure& nu_hat,
                                   const std::vector<std::size_t>& ns, std::size_t walks, const RngStream& rng,
                                   std::size_t points) {
  if (ns.empty() || !std::is_sorted(ns.begin(), ns.end())) throw std::invalid_argument("ns must be sorted and nonempty");
  if (nu_hat.size() == 0) throw std::invalid_argument("empty empirical measure");
  const std::size_t d = spec.dimension();
  const std::size_t m = std::min(points, nu_hat.size());
  std::vector<Vector<double>> pts;
  for (std::size_t i = 0; i < m; ++i) pts.push_back(nu_hat.points[i * nu_hat.size() / m]);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<Vector<double>> wedges;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      pairs.emplace_back(i, j);
      wedges.push_back(wedge(pts[i], pts[j]));
    }
  std::vector<Matrix<double>> wedge_atoms;
  for (const auto& g : spec.atoms) wedge_atoms.push_back(wedge_square(g));
  const AtomSampler sampler(spec.weights);

  const auto per_walk = parallel_map<std::vector<double>>(walks, [&](std::size_t w) {
    auto r = rng.substream(w);
    Matrix<double> p = Matrix<double>::identity(d);
    Matrix<double> q = Matrix<double>::identity(wedge_atoms[0].rows());
    double p_log = 0.0, q_log = 0.0;
    std::vector<double> diam;
    std::size_t step = 0;
    for (std::size_t target : ns) {
      for (; step < target; ++step) {
        const std::size_t k = sampler.draw(r);
        p = p * spec.atoms[k];
        q = q * wedge_atoms[k];
        const double pn = op_norm(kReal, p), qn = op_norm(kReal, q);
        if (pn > 1e50 || pn < 1e-50) {
          p_log += std::log(pn);
          p = (1.0 / pn) * p;
        }
        if (qn > 1e50 || qn < 1e-50) {
          q_log += std::log(qn);
          q = (1.0 / qn) * q;
        }
      }
      std::vector<double> logs(m);
      for (std::size_t i = 0; i < m; ++i) logs[i] = log_norm2(p * pts[i]);
      std::vector<double> deltas;
      deltas.reserve(pairs.size());
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto qw = q * wedges[k];
        double s = 0.0;
        for (double v : qw) s += v * v;
        if (s == 0.0) {
          deltas.push_back(0.0);
          continue;
        }
        const double ld = q_log + 0.5 * std::log(s) - 2.0 * p_log - logs[pairs[k].first] - logs[pairs[k].second];
        deltas.push_back(std::min(1.0, std::exp(ld)));
      }
      diam.push_back(deltas.empty() ? 0.0 : median(deltas));
    }
    return diam;
  });

  BoundaryCurve out;
  out.n = ns;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    std::vector<double> col;
    for (const auto& row : per_walk) col.push_back(row[i]);
    out.diameter.push_back(median(col));
  }
  return out;
}

std::vector<Vector<double>> quotient_marginal(const EmpiricalMeasure& nu_hat, const Subspace<RealField>& l) {
  const auto comp = orthogonal_complement(l).basis();
  const auto ct = comp.transpose();
  std::vector<Vector<double>> out;
  out.reserve(nu_hat.size());
  for (const auto& x : nu_hat.points) {
    const auto c = ct * x;
    if (vector_norm(kReal, c) == 0.0) throw std::invalid_argument("sample lies in L");
    out.push_back(projective_normalize(kReal, c));
  }
  return out;
}

}  // namespace rmp
