#include "rmp/limitset.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "rmp/parallel.hpp"

namespace rmp {

namespace {

const RealField kReal;

Eigen::MatrixXd to_eigen(const Matrix<double>& m) {
  Eigen::MatrixXd e(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
  return e;
}

double fs_unit(const Vector<double>& x, const Vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double w = x[i] * y[j] - x[j] * y[i];
      s += w * w;
    }
  return std::min(1.0, std::sqrt(s));
}

Matrix<double> word_product(const MeasureSpec<RealField>& spec, const std::vector<std::size_t>& word) {
  Matrix<double> p = Matrix<double>::identity(spec.dimension());
  for (auto k : word) {
    p = p * spec.atoms[k];
    const double n = op_norm(kReal, p);
    p = (1.0 / n) * p;
  }
  return p;
}

}  // namespace

double EigenPair::modulus() const { return std::hypot(re, im); }

std::vector<EigenPair> eigenvalues(const Matrix<double>& g) {
  if (!g.is_square()) throw std::invalid_argument("eigenvalues need a square matrix");
  Eigen::EigenSolver<Eigen::MatrixXd> es(to_eigen(g), false);
  std::vector<EigenPair> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    out.push_back({es.eigenvalues()[i].real(), es.eigenvalues()[i].imag()});
  std::stable_sort(out.begin(), out.end(), [](const EigenPair& a, const EigenPair& b) {
    return a.modulus() > b.modulus();
  });
  return out;
}

double spectral_radius(const Matrix<double>& g) { return eigenvalues(g).front().modulus(); }

Vector<double> eigenvector_for(const Matrix<double>& g, double lambda) {
  auto shifted = g;
  for (std::size_t i = 0; i < g.rows(); ++i) shifted(i, i) -= lambda;
  const auto dec = svd(shifted);
  return projective_normalize(kReal, dec.v.column(dec.v.cols() - 1));
}

std::optional<ProximalData> proximal_check(const Matrix<double>& g, double tol) {
  const auto ev = eigenvalues(g);
  if (ev.size() < 2) return ProximalData{ev[0].re, std::numeric_limits<double>::infinity(), {1.0}, {}, true, true};
  const double m1 = ev[0].modulus(), m2 = ev[1].modulus();
  if (m1 == 0.0 || !(m1 > (1.0 + tol) * m2)) return std::nullopt;
  ProximalData out;
  out.lambda_top = ev[0].re;  // a strictly dominant eigenvalue is real
  out.gap_ratio = m2 > 0.0 ? m1 / m2 : std::numeric_limits<double>::infinity();
  out.attractor = eigenvector_for(g, out.lambda_top);
  return out;
}

SkewPoint<RealField> attractor_point_block(const Matrix<double>& g, const SkewChart<RealField>& chart) {
  const auto b = chart.blocks(g);
  const auto top = proximal_check(b.c);
  if (!top) throw std::invalid_argument("quotient block is not proximal");
  const double lambda = top->lambda_top;
  if (!(std::fabs(lambda) > spectral_radius(b.a))) throw std::invalid_argument("top eigenvalue of C does not dominate A");
  auto shifted = b.a;
  for (std::size_t i = 0; i < shifted.rows(); ++i) shifted(i, i) -= lambda;
  const auto sv = svd(shifted).s;
  if (sv.back() <= 1e-12 * std::max(1.0, sv.front())) throw std::invalid_argument("resonant block");
  const auto xi = top->attractor;
  const auto rhs = b.b * xi;
  const auto sol = solve(kReal, shifted, Matrix<double>::from_columns({rhs}, rhs.size())).column(0);
  return {scaled(-1.0, sol), xi};
}

std::vector<ProximalData> limit_set_sample(const MeasureSpec<RealField>& spec, std::size_t max_word_len,
                                           std::size_t budget, const RngStream& rng, const LimitSetOptions& opt) {
  const std::size_t k = spec.atoms.size();
  std::vector<std::vector<std::size_t>> words;
  const std::size_t exhaustive = std::min(max_word_len, opt.exhaustive_cutoff);
  for (std::size_t len = 1; len <= exhaustive && words.size() < budget; ++len) {
    std::vector<std::size_t> w(len, 0);
    while (words.size() < budget) {
      words.push_back(w);
      std::size_t pos = len;
      while (pos > 0 && ++w[pos - 1] == k) w[--pos] = 0;
      if (pos == 0) break;
    }
  }
  if (max_word_len > exhaustive) {
    const AtomSampler sampler(spec.weights);
    for (std::size_t i = 0; words.size() < budget; ++i) {
      auto r = rng.substream(i);
      const std::size_t len = exhaustive + 1 + static_cast<std::size_t>(r.below(max_word_len - exhaustive));
      std::vector<std::size_t> w(len);
      for (auto& x : w) x = sampler.draw(r);
      words.push_back(std::move(w));
    }
  }

  auto results = parallel_map<std::optional<ProximalData>>(words.size(), [&](std::size_t i) {
    auto data = proximal_check(word_product(spec, words[i]), opt.tol);
    if (!data) return data;
    data->word = words[i];
    if (opt.L && opt.L->is_proper_nonzero())
      data->off_L = distance_to_subspace(data->attractor, *opt.L) > opt.subspace_tol;
    else if (opt.L && opt.L->is_full())
      data->off_L = false;
    if (opt.U && opt.U->is_proper_nonzero())
      data->in_U = distance_to_subspace(data->attractor, *opt.U) <= opt.subspace_tol;
    else if (opt.U && opt.U->is_zero())
      data->in_U = false;
    return data;
  });

  std::map<std::vector<long long>, std::size_t> seen;
  std::vector<ProximalData> out;
  for (auto& r : results) {
    if (!r) continue;
    std::vector<long long> key;
    for (double x : r->attractor) key.push_back(std::llround(x / opt.dedup_grid));
    if (seen.emplace(std::move(key), out.size()).second) out.push_back(std::move(*r));
  }
  return out;
}

double directed_distance(const std::vector<Vector<double>>& a, const std::vector<Vector<double>>& b) {
  if (a.empty()) return 0.0;
  if (b.empty()) return 1.0;
  const auto best = parallel_map<double>(a.size(), [&](std::size_t i) {
    double m = 1.0;
    for (const auto& y : b) m = std::min(m, fs_unit(a[i], y));
    return m;
  });
  return *std::max_element(best.begin(), best.end());
}

double hausdorff_distance(const std::vector<Vector<double>>& a, const std::vector<Vector<double>>& b) {
  return std::max(directed_distance(a, b), directed_distance(b, a));
}

EscapeResult orbit_escape_test(const Matrix<double>& g, const SkewPoint<RealField>& s,
                               const SkewChart<RealField>& chart, std::size_t n, double threshold,
                               double base_tol) {
  const auto blocks = chart.blocks(g);
  EscapeResult out;
  const auto first = fiber_step(blocks, kReal, s.xi);
  out.pinned_base = fs_unit(first.next_xi, s.xi) <= base_tol;
  const AffineMap<RealField> pinned = first.sigma;
  SkewPoint<RealField> cur = s;
  std::size_t crossed = n + 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (out.pinned_base)
      cur.t = pinned.apply(cur.t);
    else
      cur = act_skew(blocks, kReal, cur);
    const double norm = vector_norm(kReal, cur.t);
    out.fiber_norms.push_back(norm);
    if (!std::isfinite(norm)) break;
    if (crossed > n && norm > threshold) crossed = out.fiber_norms.size() - 1;
    if (norm > 1e150) break;
  }
  if (crossed <= n) {
    out.escaped = true;
    for (std::size_t i = crossed + 1; i < out.fiber_norms.size(); ++i)
      if (!(out.fiber_norms[i] > out.fiber_norms[i - 1])) out.escaped = false;
  }
  return out;
}

}  // namespace rmp
