#pragma once

#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "rmp/linalg.hpp"
#include "rmp/measure.hpp"
#include "rmp/rng.hpp"

namespace rmp {

/// Coordinates X = L x S(V/L) adapted to an invariant subspace L and the complement L~ = L^perp.
template <class F>
class SkewChart {
 public:
  using S = typename F::scalar;

  SkewChart(const Subspace<F>& l) : field_(l.field()), l_(l), l_tilde_(orthogonal_complement(l)) {
    if (!l.is_proper_nonzero()) throw std::invalid_argument("skew chart needs a proper nonzero subspace");
    p_ = l_.basis().hcat(l_tilde_.basis());
    p_inv_ = inverse(field_, p_);
  }

  const F& field() const { return field_; }
  const Subspace<F>& L() const { return l_; }
  const Subspace<F>& L_tilde() const { return l_tilde_; }
  std::size_t fiber_dim() const { return l_.dim(); }
  std::size_t base_dim() const { return l_tilde_.dim(); }
  std::size_t ambient_dim() const { return l_.ambient_dim(); }
  const Matrix<S>& basis() const { return p_; }
  const Matrix<S>& basis_inverse() const { return p_inv_; }

  /// g = [[A, B], [0, C]] in the adapted basis; throws if g does not preserve L.
  BlockForm<F> blocks(const Matrix<S>& g) const { return block_form(field_, g, p_, p_inv_, l_.dim()); }

 private:
  F field_;
  Subspace<F> l_;
  Subspace<F> l_tilde_;
  Matrix<S> p_;
  Matrix<S> p_inv_;
};

/// Chart for L after checking that every atom preserves it.
template <class F>
SkewChart<F> make_chart(const MeasureSpec<F>& spec, const Subspace<F>& l) {
  if (!is_invariant(spec, l)) throw std::invalid_argument("subspace not T_mu-stable");
  return SkewChart<F>(l);
}

template <class F>
struct SkewPoint {
  Vector<typename F::scalar> t;
  Vector<typename F::scalar> xi;
};

template <class F>
SkewPoint<F> to_chart(const Vector<typename F::scalar>& x, const SkewChart<F>& chart) {
  using S = typename F::scalar;
  if (x.size() != chart.ambient_dim()) throw std::invalid_argument("to_chart dimension mismatch");
  const auto c = chart.basis_inverse() * x;
  const std::size_t r = chart.fiber_dim();
  Vector<S> ell(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(r));
  Vector<S> w(c.begin() + static_cast<std::ptrdiff_t>(r), c.end());
  if (negligible(chart.field(), Matrix<S>::from_columns({w}, w.size()), vector_norm(chart.field(), x)))
    throw std::invalid_argument("point at infinity for this chart");
  const auto polar = polar_part(chart.field(), w);
  const S inv = S(1) / polar.scale;
  return {scaled(inv, ell), polar.direction};
}

template <class F>
SkewPoint<F> to_chart(const ProjPoint<F>& x, const SkewChart<F>& chart) {
  return to_chart(x.vector(), chart);
}

template <class F>
ProjPoint<F> from_chart(const SkewPoint<F>& s, const SkewChart<F>& chart) {
  Vector<typename F::scalar> c = s.t;
  c.insert(c.end(), s.xi.begin(), s.xi.end());
  return ProjPoint<F>(chart.field(), chart.basis() * c);
}

/// An affine map t -> linear t + translation of L (in L-coordinates).
template <class F>
struct AffineMap {
  Matrix<typename F::scalar> linear;
  Vector<typename F::scalar> translation;

  Vector<typename F::scalar> apply(const Vector<typename F::scalar>& t) const {
    auto out = linear * t;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += translation[i];
    return out;
  }
  /// (*this) o other.
  AffineMap compose(const AffineMap& other) const {
    auto tr = linear * other.translation;
    for (std::size_t i = 0; i < tr.size(); ++i) tr[i] += translation[i];
    return {linear * other.linear, tr};
  }
};

/// Fiber map of (g, xi): t -> (A t + B xi) / N(C xi), together with g.xi = C xi / N(C xi).
template <class F>
struct FiberStep {
  AffineMap<F> sigma;
  Vector<typename F::scalar> next_xi;
};

template <class F>
FiberStep<F> fiber_step(const BlockForm<F>& b, const F& f, const Vector<typename F::scalar>& xi) {
  using S = typename F::scalar;
  const auto polar = polar_part(f, b.c * xi);
  const S inv = S(1) / polar.scale;
  return {AffineMap<F>{inv * b.a, scaled(inv, b.b * xi)}, polar.direction};
}

template <class F>
AffineMap<F> sigma_cocycle(const Matrix<typename F::scalar>& g, const Vector<typename F::scalar>& xi,
                           const SkewChart<F>& chart) {
  return fiber_step(chart.blocks(g), chart.field(), xi).sigma;
}

/// Base action of g on S(V/L).
template <class F>
Vector<typename F::scalar> act_base(const Matrix<typename F::scalar>& g, const Vector<typename F::scalar>& xi,
                                    const SkewChart<F>& chart) {
  return fiber_step(chart.blocks(g), chart.field(), xi).next_xi;
}

template <class F>
SkewPoint<F> act_skew(const BlockForm<F>& b, const F& f, const SkewPoint<F>& s) {
  const auto step = fiber_step(b, f, s.xi);
  return {step.sigma.apply(s.t), step.next_xi};
}

template <class F>
SkewPoint<F> act_skew(const Matrix<typename F::scalar>& g, const SkewPoint<F>& s, const SkewChart<F>& chart) {
  return act_skew(chart.blocks(g), chart.field(), s);
}

/// s_{k+1} = g_{k+1} . s_k with g_k i.i.d. from spec; returns s_0..s_n.
template <class F>
std::vector<SkewPoint<F>> run_recursion(const MeasureSpec<F>& spec, const SkewPoint<F>& s0,
                                        const SkewChart<F>& chart, std::size_t n, RngStream rng) {
  std::vector<BlockForm<F>> blocks;
  blocks.reserve(spec.atoms.size());
  for (const auto& g : spec.atoms) blocks.push_back(chart.blocks(g));
  const AtomSampler sampler(spec.weights);
  std::vector<SkewPoint<F>> out;
  out.reserve(n + 1);
  out.push_back(s0);
  for (std::size_t k = 0; k < n; ++k) out.push_back(act_skew(blocks[sampler.draw(rng)], spec.field, out.back()));
  return out;
}

/// CSV rows: step, t_1..t_r, xi_1..xi_{d-r}.
template <class F>
void write_trajectory_csv(std::ostream& os, const std::vector<SkewPoint<F>>& traj) {
  if (traj.empty()) return;
  os << "step";
  for (std::size_t i = 0; i < traj[0].t.size(); ++i) os << ",t" << i + 1;
  for (std::size_t i = 0; i < traj[0].xi.size(); ++i) os << ",xi" << i + 1;
  os << '\n';
  auto put = [&](const auto& x) {
    if constexpr (std::is_same_v<std::decay_t<decltype(x)>, double>)
      os << std::setprecision(17) << x;
    else
      os << to_string(x);
  };
  for (std::size_t k = 0; k < traj.size(); ++k) {
    os << k;
    for (const auto& x : traj[k].t) os << ',', put(x);
    for (const auto& x : traj[k].xi) os << ',', put(x);
    os << '\n';
  }
}

}  // namespace rmp
