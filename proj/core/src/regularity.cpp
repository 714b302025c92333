#include "rmp/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "rmp/parallel.hpp"
#include "rmp/randomwalk.hpp"

namespace rmp {

namespace {

const RealField kReal;

void check_grid(const std::vector<std::size_t>& n_grid, std::size_t trials) {
  if (n_grid.empty()) throw std::invalid_argument("n grid is empty");
  for (std::size_t i = 1; i < n_grid.size(); ++i)
    if (n_grid[i] <= n_grid[i - 1]) throw std::invalid_argument("n grid must be strictly increasing");
  if (trials < 2) throw std::invalid_argument("need at least two trials");
}

bool in_subspace(const Vector<double>& x, const std::optional<Subspace<RealField>>& w, double tol) {
  if (!w || w->is_zero()) return false;
  if (w->is_full()) return true;
  return distance_to_subspace(x, *w) <= tol;
}

// values[t][i]: statistic of trial t at grid point i. Zero bootstrap means are floored at `floor`.
DecayCurve assemble(const std::vector<std::size_t>& n_grid, const std::vector<std::vector<double>>& values,
                    double floor, const RngStream& rng, std::size_t bootstrap) {
  const std::size_t trials = values.size(), g = n_grid.size();
  DecayCurve c;
  c.n = n_grid;
  c.statistic.assign(g, 0.0);
  c.stderr_.assign(g, 0.0);
  for (std::size_t i = 0; i < g; ++i) {
    std::vector<double> col(trials);
    for (std::size_t t = 0; t < trials; ++t) col[t] = values[t][i];
    c.statistic[i] = mean(col);
    c.stderr_[i] = sample_stddev(col) / std::sqrt(static_cast<double>(trials));
  }
  std::vector<std::size_t> used;
  for (std::size_t i = 0; i < g; ++i)
    if (c.statistic[i] > 0.0) used.push_back(i);
  c.fitted_points = used.size();
  if (used.size() < 2) {
    c.slope = c.intercept = c.residual = std::numeric_limits<double>::quiet_NaN();
    c.slope_ci = {c.slope, c.slope};
    return c;
  }
  auto fit = [&](const std::vector<double>& means) {
    std::vector<double> xs, ys;
    for (auto i : used) {
      xs.push_back(static_cast<double>(n_grid[i]));
      ys.push_back(std::log(std::max(means[i], floor)));
    }
    return least_squares(xs, ys);
  };
  const auto f = fit(c.statistic);
  c.slope = f.slope;
  c.intercept = f.intercept;
  c.residual = f.residual;
  const auto slopes = parallel_map<double>(bootstrap, [&](std::size_t b) {
    auto r = rng.substream(b);
    std::vector<double> sums(g, 0.0);
    for (std::size_t k = 0; k < trials; ++k) {
      const auto& row = values[r.below(trials)];
      for (std::size_t i = 0; i < g; ++i) sums[i] += row[i];
    }
    for (auto& s : sums) s /= static_cast<double>(trials);
    return fit(sums).slope;
  });
  c.slope_ci = normal_interval(c.slope, bootstrap > 1 ? sample_stddev(slopes) : 0.0);
  return c;
}

}  // namespace

double hyperplane_distance(const Vector<double>& x, const Vector<double>& f) {
  const double nx = vector_norm(kReal, x), nf = vector_norm(kReal, f);
  if (nx == 0.0 || nf == 0.0) throw std::invalid_argument("zero vector has no projective class");
  return std::min(1.0, std::fabs(dot(x, f)) / (nx * nf));
}

DecayCurve direction_convergence_rate(const MeasureSpec<RealField>& spec, const Vector<double>& x,
                                      const std::vector<std::size_t>& n_grid, std::size_t trials,
                                      const RngStream& rng, const DecayOptions& opt) {
  check_grid(n_grid, trials);
  if (x.size() != spec.dimension()) throw std::invalid_argument("point has the wrong dimension");
  if (vector_norm(kReal, x) == 0.0) throw std::invalid_argument("zero vector has no projective class");
  if (in_subspace(x, opt.L, opt.subspace_tol)) throw std::invalid_argument("x lies in L_mu");
  const AtomSampler atoms(spec.weights);
  const std::size_t n_max = n_grid.back();
  const auto values = parallel_map<std::vector<double>>(trials, [&](std::size_t t) {
    auto r = rng.substream(t);
    auto s = start_walk(kReal, spec.dimension());
    std::vector<Vector<double>> images;
    std::size_t next = 0;
    for (std::size_t k = 1; k <= n_max; ++k) {
      s = step_right(kReal, s, spec.atoms[atoms.draw(r)]);
      if (k == n_grid[next]) {
        images.push_back(projective_normalize(kReal, s.product * x));
        ++next;
      }
    }
    const auto z = svd(s.product).u.column(0);
    std::vector<double> row;
    for (const auto& im : images) row.push_back(fs_distance_unit(im, z));
    return row;
  });
  return assemble(n_grid, values, std::numeric_limits<double>::min(), rng.substream(trials), opt.bootstrap);
}

DecayCurve hitting_probability_curve(const MeasureSpec<RealField>& spec, const Vector<double>& x,
                                     const Vector<double>& f, double eps, const std::vector<std::size_t>& n_grid,
                                     std::size_t trials, const RngStream& rng, const DecayOptions& opt) {
  check_grid(n_grid, trials);
  const std::size_t d = spec.dimension();
  if (x.size() != d || f.size() != d) throw std::invalid_argument("point has the wrong dimension");
  if (vector_norm(kReal, x) == 0.0 || vector_norm(kReal, f) == 0.0)
    throw std::invalid_argument("zero vector has no projective class");
  if (in_subspace(x, opt.L, opt.subspace_tol)) throw std::invalid_argument("x lies in L_mu");
  if (in_subspace(f, opt.L_check, opt.subspace_tol)) throw std::invalid_argument("f lies in L of the transposed measure");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  const AtomSampler atoms(spec.weights);
  const auto values = parallel_map<std::vector<double>>(trials, [&](std::size_t t) {
    auto r = rng.substream(t);
    auto v = projective_normalize(kReal, x);
    std::vector<double> row;
    std::size_t next = 0;
    for (std::size_t k = 1; next < n_grid.size(); ++k) {
      v = spec.atoms[atoms.draw(r)] * v;
      v = scaled(1.0 / vector_norm(kReal, v), v);
      if (k == n_grid[next]) {
        const double bound = std::exp(-eps * static_cast<double>(k));
        row.push_back(hyperplane_distance(v, f) <= bound ? 1.0 : 0.0);
        ++next;
      }
    }
    return row;
  });
  return assemble(n_grid, values, 0.5 / static_cast<double>(trials), rng.substream(trials), opt.bootstrap);
}

std::vector<Hyperplane> hyperplane_grid(const EmpiricalMeasure& nu_hat, std::size_t from_support, std::size_t random,
                                        const std::optional<Subspace<RealField>>& l_check, const RngStream& rng) {
  const std::size_t d = nu_hat.dimension();
  if (d == 0) throw std::invalid_argument("empirical measure is empty");
  auto weight = [&](const Vector<double>& f) {
    if (!l_check || l_check->is_zero()) return 1.0;
    if (l_check->is_full()) return 0.0;
    return distance_to_subspace(f, *l_check);
  };
  std::vector<Hyperplane> out;
  auto r = rng;
  for (std::size_t i = 0; i < from_support; ++i) {
    // a hyperplane through a support point: f orthogonal to it
    const auto anchor = static_cast<std::size_t>(r.below(nu_hat.size()));
    const auto& x = nu_hat.points[anchor];
    Vector<double> f(d);
    for (auto& v : f) v = r.normal();
    const double c = dot(f, x) / dot(x, x);
    for (std::size_t k = 0; k < d; ++k) f[k] -= c * x[k];
    if (vector_norm(kReal, f) < 1e-12) continue;
    f = projective_normalize(kReal, f);
    out.push_back({f, weight(f), anchor});
  }
  for (std::size_t i = 0; i < random; ++i) {
    Vector<double> f(d);
    for (auto& v : f) v = r.normal();
    f = projective_normalize(kReal, f);
    out.push_back({f, weight(f), std::nullopt});
  }
  return out;
}

HolderEstimate holder_alpha_estimate(const EmpiricalMeasure& nu_hat, const std::vector<Hyperplane>& hyperplanes,
                                     const std::vector<double>& alpha_grid, const RngStream& rng,
                                     const HolderOptions& opt) {
  if (nu_hat.size() == 0) throw std::invalid_argument("empirical measure is empty");
  if (hyperplanes.empty()) throw std::invalid_argument("no hyperplanes given");
  if (alpha_grid.empty()) throw std::invalid_argument("alpha grid is empty");
  for (std::size_t i = 0; i < alpha_grid.size(); ++i)
    if (!(alpha_grid[i] > 0.0) || (i > 0 && alpha_grid[i] <= alpha_grid[i - 1]))
      throw std::invalid_argument("alpha grid must be positive and strictly increasing");
  const std::size_t n = nu_hat.size(), hn = hyperplanes.size();
  std::vector<double> logd(hn * n);
  parallel_for(hn, [&](std::size_t h) {
    for (std::size_t i = 0; i < n; ++i)
      logd[h * n + i] = hyperplanes[h].anchor == i ? std::numeric_limits<double>::quiet_NaN()
                                                   : std::log(hyperplane_distance(nu_hat.points[i], hyperplanes[h].f));
  });

  // Replicate 0 is nu_hat itself; the others are outer resamples used for the interval on alpha_hat.
  const std::size_t reps = 1 + opt.outer_bootstrap;
  std::vector<std::vector<std::size_t>> index(reps, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i) index[0][i] = i;
  for (std::size_t b = 1; b < reps; ++b) {
    auto r = rng.substream(b);
    for (auto& i : index[b]) i = static_cast<std::size_t>(r.below(n));
  }
  std::vector<double> alpha_hat(reps, 0.0);
  std::vector<char> prefix(reps, 1);

  HolderEstimate out;
  out.alpha_grid = alpha_grid;
  std::vector<double> v(hn * n);
  for (std::size_t a = 0; a < alpha_grid.size(); ++a) {
    const double alpha = alpha_grid[a];
    parallel_for(hn, [&](std::size_t h) {
      for (std::size_t i = 0; i < n; ++i) {
        const double l = logd[h * n + i];
        v[h * n + i] = std::isnan(l) ? 0.0 : std::exp(-alpha * l);
      }
    });
    struct Result {
      double sup = 0.0, cv = 0.0;
      std::size_t arg = 0;
    };
    const auto res = parallel_map<Result>(reps, [&](std::size_t b) {
      const auto& idx = index[b];
      const auto mean_of = [&](std::size_t h, const std::vector<std::size_t>& pts) {
        double s = 0.0;
        std::size_t count = 0;
        for (auto i : pts) {
          if (hyperplanes[h].anchor == i) continue;
          s += v[h * n + i];
          ++count;
        }
        return count ? hyperplanes[h].weight * s / static_cast<double>(count) : 0.0;
      };
      std::vector<double> integral(hn);
      for (std::size_t h = 0; h < hn; ++h) integral[h] = mean_of(h, idx);
      std::vector<std::size_t> order(hn);
      for (std::size_t h = 0; h < hn; ++h) order[h] = h;
      const std::size_t top = std::min(std::max<std::size_t>(1, opt.top_hyperplanes), hn);
      std::partial_sort(order.begin(), order.begin() + static_cast<long>(top), order.end(),
                        [&](std::size_t p, std::size_t q) { return integral[p] > integral[q]; });
      Result out_r;
      out_r.arg = order[0];
      out_r.sup = integral[order[0]];
      out_r.cv = std::numeric_limits<double>::infinity();
      if (std::isfinite(out_r.sup)) {
        auto r = rng.substream(reps + b).substream(a);
        std::vector<double> boot(opt.bootstrap);
        std::vector<std::size_t> pts(idx.size());
        for (auto& x : boot) {
          for (auto& i : pts) i = idx[r.below(idx.size())];
          x = 0.0;
          for (std::size_t j = 0; j < top; ++j) x = std::max(x, mean_of(order[j], pts));
        }
        out_r.cv = out_r.sup > 0.0 && boot.size() > 1 ? sample_stddev(boot) / out_r.sup : 0.0;
      }
      return out_r;
    });
    if (a == 0 || res[0].sup > out.sup_integral.back()) out.sup_hyperplane = res[0].arg;
    out.sup_integral.push_back(res[0].sup);
    out.cv.push_back(res[0].cv);
    for (std::size_t b = 0; b < reps; ++b) {
      if (prefix[b] && res[b].cv <= opt.max_cv)
        alpha_hat[b] = alpha;
      else
        prefix[b] = 0;
    }
  }
  out.alpha_hat = alpha_hat[0];
  std::vector<double> outer(alpha_hat.begin() + 1, alpha_hat.end());
  if (outer.empty()) {
    out.ci = {out.alpha_hat, out.alpha_hat};
  } else {
    std::sort(outer.begin(), outer.end());
    const auto at = [&](double q) {
      return outer[std::min(outer.size() - 1, static_cast<std::size_t>(q * static_cast<double>(outer.size())))];
    };
    out.ci = {at(0.005), at(0.995)};
  }
  return out;
}

void write_curve_csv(std::ostream& os, const DecayCurve& c) {
  const auto old = os.precision(17);
  os << "n,statistic,stderr\n";
  for (std::size_t i = 0; i < c.n.size(); ++i) os << c.n[i] << ',' << c.statistic[i] << ',' << c.stderr_[i] << '\n';
  os.precision(old);
}

}  // namespace rmp
