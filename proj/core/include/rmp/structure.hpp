#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rmp/linalg.hpp"
#include "rmp/measure.hpp"
#include "rmp/parallel.hpp"
#include "rmp/randomwalk.hpp"
#include "rmp/stats.hpp"

namespace rmp {

/// Raised when an operation needs λ1 > λ2 and the estimate cannot certify it.
class GapUncertified : public std::runtime_error {
 public:
  explicit GapUncertified(const std::string& what) : std::runtime_error(what) {}
};

/// Basis of the unital algebra spanned by all words in the generators.
template <class F>
struct AlgebraBasis {
  std::vector<Matrix<typename F::scalar>> basis;
  std::size_t dim() const { return basis.size(); }
};

namespace detail {

template <class T>
Vector<T> vec(const Matrix<T>& m) {
  return m.data();
}

inline Vector<double> random_vector(const RealField&, std::size_t d, RngStream& rng) {
  Vector<double> v(d);
  for (auto& x : v) x = rng.normal();
  return v;
}

inline Vector<Rational> random_vector(const PadicField&, std::size_t d, RngStream& rng) {
  Vector<Rational> v(d);
  for (auto& x : v) x = Rational(static_cast<long>(rng.below(201)) - 100);
  return v;
}

}  // namespace detail

template <class F>
AlgebraBasis<F> algebra_closure(const F& f, const std::vector<Matrix<typename F::scalar>>& generators) {
  using S = typename F::scalar;
  if (generators.empty()) throw std::invalid_argument("algebra_closure needs generators");
  const std::size_t d = generators.front().rows();
  AlgebraBasis<F> out;
  out.basis.push_back(Matrix<S>::identity(d));
  auto span = Subspace<F>::span(f, {detail::vec(out.basis.front())}, d * d);
  for (std::size_t k = 0; k < out.basis.size(); ++k) {
    for (const auto& g : generators) {
      auto cand = g * out.basis[k];
      auto v = detail::vec(cand);
      if (vector_norm(f, v) == 0) continue;
      if constexpr (!F::exact) {
        const double nv = vector_norm(f, v);
        for (auto& x : v) x /= nv;
        for (auto& x : cand.data()) x /= nv;
      }
      if (span.contains(v)) continue;
      out.basis.push_back(std::move(cand));
      std::vector<Vector<S>> vs;
      for (const auto& b : out.basis) vs.push_back(detail::vec(b));
      span = Subspace<F>::span(f, vs, d * d);
    }
  }
  return out;
}

/// The cyclic module spanned by {B v : B in the algebra}.
template <class F>
Subspace<F> minimal_invariant_subspace(const F& f, const AlgebraBasis<F>& alg, const Vector<typename F::scalar>& v) {
  if (vector_norm(f, v) == 0) throw std::invalid_argument("minimal_invariant_subspace needs v != 0");
  std::vector<Vector<typename F::scalar>> images;
  for (const auto& b : alg.basis) images.push_back(b * v);
  return Subspace<F>::span(f, images, v.size());
}

struct ExponentEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
  Interval ci() const { return normal_interval(value, stderr_); }
};

/// Top exponent of the walk restricted to an invariant subspace.
template <class F>
ExponentEstimate exponent_of_subspace(const MeasureSpec<F>& spec, const Subspace<F>& w, std::size_t n,
                                      std::size_t trials, const RngStream& rng) {
  const auto restricted = restrict_measure(spec, w);  // throws if W is not stable
  const auto est = lyapunov_spectrum(restricted, n, trials, rng);
  return {est.lambda[0], est.stderr_[0]};
}

enum class Verdict { Less, Equal, Undecided };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Less: return "less";
    case Verdict::Equal: return "equal";
    default: return "undecided";
  }
}

/// Outcome of comparing λ(W) with λ1 on one candidate subspace.
template <class F>
struct ExponentComparison {
  Subspace<F> subspace;
  double gap = 0.0;  // estimate of λ1 - λ(W)
  double stderr_ = 0.0;
  Interval ci;
  Verdict verdict = Verdict::Undecided;
};

struct StructureOptions {
  double margin = 0.01;               // exponent differences below this count as ties
  std::size_t random_vectors_per_dim = 4;
  std::size_t bootstrap = 200;
};

/// Paired estimate of λ1 - λ(W): per trajectory, the growth of log||L_n|| - log||L_n|_W|| between
/// n/2 and n, divided by n/2. Both walks use the same atoms so the common fluctuation cancels.
template <class F>
ExponentComparison<F> compare_with_top(const MeasureSpec<F>& spec, const Subspace<F>& w, std::size_t n,
                                       std::size_t trials, const RngStream& rng, const StructureOptions& opt) {
  ExponentComparison<F> out{w, 0.0, 0.0, {}, Verdict::Undecided};
  if (w.is_full()) {
    out.verdict = Verdict::Equal;
    return out;
  }
  const auto restricted = restrict_measure(spec, w);
  const F& f = spec.field;
  const std::size_t half = std::max<std::size_t>(1, n / 2);
  const std::size_t total = std::max<std::size_t>(half + 1, n);
  const auto diffs = parallel_map<double>(trials, [&](std::size_t t) {
    RngStream stream = rng.substream(t);
    const AtomSampler sampler(spec.weights);
    auto full = start_walk(f, spec.dimension());
    auto part = start_walk(f, w.dim());
    double mid = 0.0;
    for (std::size_t k = 1; k <= total; ++k) {
      const auto i = sampler.draw(stream);
      full = step_left(f, std::move(full), spec.atoms[i]);
      part = step_left(f, std::move(part), restricted.atoms[i]);
      if (k == half) mid = log_norm(f, full) - log_norm(f, part);
    }
    const double end = log_norm(f, full) - log_norm(f, part);
    return (end - mid) / static_cast<double>(total - half);
  });
  out.gap = mean(diffs);
  out.stderr_ = bootstrap_se(diffs, opt.bootstrap, rng.substream(0xc0de));
  out.ci = normal_interval(out.gap, out.stderr_);
  if (out.ci.lo > opt.margin)
    out.verdict = Verdict::Less;
  else if (out.ci.hi < opt.margin)
    out.verdict = Verdict::Equal;
  return out;
}

template <class F>
struct FkLevel {
  double beta = 0.0;
  double stderr_ = 0.0;
  Subspace<F> subspace;
};

template <class F>
struct StructureReport {
  Subspace<F> L_mu;
  std::optional<Subspace<F>> U_mu;
  std::vector<FkLevel<F>> fk_levels;
  SpectrumEstimate spectrum;
  GapEstimate gap;
  bool gap_certified = false;
  std::vector<ExponentComparison<F>> comparisons;
  std::size_t undecided = 0;
  std::optional<bool> duality_ok;
};

namespace detail {

template <class F>
struct LowerUpper {
  Subspace<F> lower;
  Subspace<F> upper;
  std::vector<ExponentComparison<F>> comparisons;
  std::size_t undecided = 0;
};

// Candidate pool: cyclic modules of basis vectors and of random vectors, deduplicated.
template <class F>
std::vector<Subspace<F>> candidate_pool(const MeasureSpec<F>& spec, const RngStream& rng,
                                        const StructureOptions& opt) {
  using S = typename F::scalar;
  const F& f = spec.field;
  const std::size_t d = spec.dimension();
  const auto alg = algebra_closure(f, spec.atoms);
  std::vector<Vector<S>> seeds;
  for (std::size_t i = 0; i < d; ++i) {
    Vector<S> e(d, S(0));
    e[i] = S(1);
    seeds.push_back(std::move(e));
  }
  RngStream stream = rng.substream(0x9001);
  for (std::size_t k = 0; k < opt.random_vectors_per_dim * d; ++k) seeds.push_back(random_vector(f, d, stream));
  std::vector<Subspace<F>> pool;
  for (const auto& v : seeds) {
    if (vector_norm(f, v) == 0) continue;
    auto w = minimal_invariant_subspace(f, alg, v);
    bool seen = false;
    for (const auto& p : pool) seen = seen || p.equals(w);
    if (!seen) pool.push_back(std::move(w));
  }
  return pool;
}

template <class F>
LowerUpper<F> lower_and_upper(const MeasureSpec<F>& spec, std::size_t n, std::size_t trials, const RngStream& rng,
                              const StructureOptions& opt) {
  const F& f = spec.field;
  const std::size_t d = spec.dimension();
  LowerUpper<F> out{Subspace<F>(f, d), Subspace<F>::full(f, d), {}, 0};
  if (d == 1) return out;
  const auto pool = candidate_pool(spec, rng, opt);
  for (std::size_t k = 0; k < pool.size(); ++k) {
    if (pool[k].is_full()) continue;
    auto cmp = compare_with_top(spec, pool[k], n, trials, rng.substream(0xa000 + k), opt);
    if (cmp.verdict == Verdict::Less) out.lower = subspace_sum(out.lower, cmp.subspace);
    if (cmp.verdict == Verdict::Equal) out.upper = subspace_intersection(out.upper, cmp.subspace);
    if (cmp.verdict == Verdict::Undecided) ++out.undecided;
    out.comparisons.push_back(std::move(cmp));
  }
  return out;
}

}  // namespace detail

/// 𝓛_μ, 𝓤_μ and the Furstenberg–Kifer levels. 𝓤_μ is left empty when λ1 > λ2 is not certified.
template <class F>
StructureReport<F> compute_structure(const MeasureSpec<F>& spec, std::size_t n, std::size_t trials,
                                     const RngStream& rng, const StructureOptions& opt = {}) {
  using S = typename F::scalar;
  const F& f = spec.field;
  const std::size_t d = spec.dimension();
  StructureReport<F> rep{Subspace<F>(f, d), std::nullopt, {}, {}, {}, false, {}, 0, std::nullopt};
  SpectrumOptions sopt;
  sopt.bootstrap = opt.bootstrap;
  rep.spectrum = lyapunov_spectrum(spec, n, trials, rng.substream(1), sopt);
  if (d >= 2) {
    rep.gap = top_gap(spec, n, trials, rng.substream(1), sopt);
    rep.gap_certified = rep.gap.simple_top;
  } else {
    rep.gap_certified = true;
  }
  auto lu = detail::lower_and_upper(spec, n, trials, rng.substream(2), opt);
  rep.L_mu = lu.lower;
  if (rep.gap_certified) rep.U_mu = lu.upper;
  rep.comparisons = std::move(lu.comparisons);
  rep.undecided = lu.undecided;

  rep.fk_levels.push_back({rep.spectrum.lambda[0], rep.spectrum.stderr_[0], Subspace<F>::full(f, d)});
  Subspace<F> current = rep.L_mu;
  std::size_t depth = 0;
  while (!current.is_zero()) {
    const auto restricted = restrict_measure(spec, current);
    const auto est = lyapunov_spectrum(restricted, n, trials, rng.substream(100 + depth), sopt);
    rep.fk_levels.push_back({est.lambda[0], est.stderr_[0], current});
    const auto inner = detail::lower_and_upper(restricted, n, trials, rng.substream(200 + depth), opt);
    rep.undecided += inner.undecided;
    if (inner.lower.is_zero()) break;
    // Back to ambient coordinates.
    const Matrix<S> coords = current.basis() * inner.lower.basis();
    current = Subspace<F>::from_columns(f, coords);
    ++depth;
  }
  return rep;
}

/// annihilator(𝓛_μ) = 𝓤 of the transposed measure and annihilator(𝓤_μ) = 𝓛 of the transposed measure.
template <class F>
bool duality_check(const MeasureSpec<F>& spec, const StructureReport<F>& report, std::size_t n, std::size_t trials,
                   const RngStream& rng, const StructureOptions& opt = {}) {
  if (!report.gap_certified || !report.U_mu) throw GapUncertified("gap uncertified: duality needs lambda_1 > lambda_2");
  const auto dual = compute_structure(transpose_measure(spec), n, trials, rng, opt);
  if (!dual.gap_certified || !dual.U_mu) throw GapUncertified("gap uncertified for the transposed measure");
  return annihilator(report.L_mu).equals(*dual.U_mu) && annihilator(*report.U_mu).equals(dual.L_mu);
}

}  // namespace rmp
