#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rmp/linalg.hpp"
#include "rmp/rng.hpp"

namespace rmp {

/// Finitely supported probability measure on GL_d: atoms with exact rational weights.
template <class F>
struct MeasureSpec {
  using S = typename F::scalar;

  F field;
  std::vector<Matrix<S>> atoms;
  std::vector<Rational> weights;

  std::size_t dimension() const { return atoms.empty() ? 0 : atoms.front().rows(); }
  std::size_t size() const { return atoms.size(); }
};

struct ValidationReport {
  std::vector<std::string> errors;
  bool ok() const { return errors.empty(); }
  std::string summary() const;
};

/// Uniform weights 1/m on the given atoms.
template <class F>
MeasureSpec<F> uniform_measure(const F& f, std::vector<Matrix<typename F::scalar>> atoms) {
  const auto m = atoms.size();
  std::vector<Rational> w(m, m ? Rational(1, static_cast<unsigned long>(m)) : Rational(0));
  for (auto& x : w) x.canonicalize();
  return {f, std::move(atoms), std::move(w)};
}

namespace detail {
bool atom_invertible(const RealField& f, const Matrix<double>& g);
bool atom_invertible(const PadicField& f, const Matrix<Rational>& g);
bool entries_finite(const Matrix<double>& g);
inline bool entries_finite(const Matrix<Rational>&) { return true; }
}  // namespace detail

template <class F>
ValidationReport validate(const MeasureSpec<F>& spec) {
  ValidationReport r;
  if (spec.atoms.empty()) r.errors.push_back("measure has no atoms");
  if (spec.weights.size() != spec.atoms.size()) r.errors.push_back("weights and atoms differ in length");
  const auto d = spec.dimension();
  for (std::size_t i = 0; i < spec.atoms.size(); ++i) {
    const auto& g = spec.atoms[i];
    const std::string tag = "atom " + std::to_string(i);
    if (!g.is_square() || g.rows() != d || d == 0) {
      r.errors.push_back(tag + " has wrong shape");
      continue;
    }
    if (!detail::entries_finite(g)) {
      r.errors.push_back(tag + " has non-finite entries");
      continue;
    }
    if (!detail::atom_invertible(spec.field, g)) r.errors.push_back(tag + " not invertible");
  }
  Rational total = 0;
  bool positive = true;
  for (const auto& w : spec.weights) {
    if (w <= 0) positive = false;
    total += w;
  }
  if (!positive) r.errors.push_back("weights must be positive");
  if (!spec.weights.empty() && total != 1) r.errors.push_back("weights sum != 1 (sum = " + to_string(total) + ")");
  return r;
}

/// Atoms transposed, weights unchanged.
template <class F>
MeasureSpec<F> transpose_measure(const MeasureSpec<F>& spec) {
  MeasureSpec<F> t = spec;
  for (auto& g : t.atoms) g = g.transpose();
  return t;
}

/// Draws atom indices with the measure's weights.
class AtomSampler {
 public:
  explicit AtomSampler(const std::vector<Rational>& weights);

  std::size_t draw(RngStream& rng) const;
  std::size_t size() const { return cumulative_.size(); }

 private:
  std::vector<double> cumulative_;
};

/// n i.i.d. atom indices; a pure function of (weights, stream key, n).
template <class F>
std::vector<std::size_t> sample(const MeasureSpec<F>& spec, RngStream rng, std::size_t n) {
  const AtomSampler sampler(spec.weights);
  std::vector<std::size_t> out(n);
  for (auto& k : out) k = sampler.draw(rng);
  return out;
}

/// The measure pushed through a fixed map on atoms (same weights).
template <class G, class F, class Fn>
MeasureSpec<G> map_atoms(const MeasureSpec<F>& spec, const G& field, Fn&& fn) {
  MeasureSpec<G> out{field, {}, spec.weights};
  out.atoms.reserve(spec.atoms.size());
  for (const auto& g : spec.atoms) out.atoms.push_back(fn(g));
  return out;
}

/// Whether g maps W into itself.
template <class F>
bool is_invariant(const Matrix<typename F::scalar>& g, const Subspace<F>& w) {
  for (std::size_t i = 0; i < w.dim(); ++i)
    if (!w.contains(g * w.basis_vector(i))) return false;
  return true;
}

template <class F>
bool is_invariant(const MeasureSpec<F>& spec, const Subspace<F>& w) {
  for (const auto& g : spec.atoms)
    if (!is_invariant(g, w)) return false;
  return true;
}

/// g = P [[A, B], [0, C]] P^{-1} for P = [basis(W) | complement]; A is r x r.
template <class F>
struct BlockForm {
  Matrix<typename F::scalar> a, b, c;
};

/// Adapted basis for W: orthonormal basis of W followed by an orthonormal complement.
template <class F>
Matrix<typename F::scalar> adapted_basis(const Subspace<F>& w) {
  return w.basis().hcat(orthogonal_complement(w).basis());
}

/// Block decomposition in the basis P (inverse supplied); throws if the lower-left block is not zero.
template <class F>
BlockForm<F> block_form(const F& f, const Matrix<typename F::scalar>& g, const Matrix<typename F::scalar>& p,
                        const Matrix<typename F::scalar>& p_inv, std::size_t r) {
  const auto m = p_inv * g * p;
  const std::size_t d = m.rows();
  if (!negligible(f, m.block(r, 0, d - r, r), 1e3 * std::max(1.0, op_norm(f, g))))
    throw std::invalid_argument("subspace not T_mu-stable");
  return {m.block(0, 0, r, r), m.block(0, r, r, d - r), m.block(r, r, d - r, d - r)};
}

/// The measure restricted to an invariant subspace, in coordinates of W's orthonormal basis.
template <class F>
MeasureSpec<F> restrict_measure(const MeasureSpec<F>& spec, const Subspace<F>& w) {
  if (w.is_zero()) throw std::invalid_argument("cannot restrict to the zero subspace");
  if (!is_invariant(spec, w)) throw std::invalid_argument("subspace not T_mu-stable");
  const auto p = adapted_basis(w);
  const auto p_inv = inverse(spec.field, p);
  return map_atoms(spec, spec.field, [&](const auto& g) { return block_form(spec.field, g, p, p_inv, w.dim()).a; });
}

/// The induced measure on V/W, in coordinates of the orthogonal complement of W.
template <class F>
MeasureSpec<F> quotient_measure(const MeasureSpec<F>& spec, const Subspace<F>& w) {
  if (w.is_full()) throw std::invalid_argument("cannot form the quotient by the whole space");
  if (!is_invariant(spec, w)) throw std::invalid_argument("subspace not T_mu-stable");
  const auto p = adapted_basis(w);
  const auto p_inv = inverse(spec.field, p);
  return map_atoms(spec, spec.field, [&](const auto& g) { return block_form(spec.field, g, p, p_inv, w.dim()).c; });
}

}  // namespace rmp
