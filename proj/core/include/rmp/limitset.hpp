#pragma once

#include <optional>
#include <vector>

#include "rmp/linalg.hpp"
#include "rmp/measure.hpp"
#include "rmp/rng.hpp"
#include "rmp/skewprod.hpp"

namespace rmp {

/// A proximal element: simple dominant eigenvalue, strictly largest in modulus.
struct ProximalData {
  double lambda_top = 0.0;
  double gap_ratio = 0.0;         // |λ1| / |λ2|
  Vector<double> attractor;       // unit eigenvector for λ1, canonical sign
  std::vector<std::size_t> word;  // atom indices, product g_{w0} g_{w1} ...
  bool in_U = true;
  bool off_L = true;
};

inline constexpr double kProximalTol = 1e-6;

/// Eigenvalues of a real square matrix, sorted by decreasing modulus (complex part kept).
struct EigenPair {
  double re = 0.0;
  double im = 0.0;
  double modulus() const;
};
std::vector<EigenPair> eigenvalues(const Matrix<double>& g);
double spectral_radius(const Matrix<double>& g);

/// Unit vector spanning ker(g - λ I) (least singular direction).
Vector<double> eigenvector_for(const Matrix<double>& g, double lambda);

std::optional<ProximalData> proximal_check(const Matrix<double>& g, double tol = kProximalTol);

/// Attractor p+(g) in skew coordinates: ξ the top eigenvector of C, t0 = -(A - λ I)^{-1} B ξ.
SkewPoint<RealField> attractor_point_block(const Matrix<double>& g, const SkewChart<RealField>& chart);

struct LimitSetOptions {
  std::size_t exhaustive_cutoff = 8;
  double tol = kProximalTol;
  double subspace_tol = 1e-9;
  double dedup_grid = 1e-9;
  std::optional<Subspace<RealField>> L;  // for the off_L tag
  std::optional<Subspace<RealField>> U;  // for the in_U tag
};

/// Attractors of words: every word up to min(max_word_len, cutoff) in order, then random longer words,
/// evaluating at most `budget` words in total. Duplicates (on the dedup grid) are merged.
std::vector<ProximalData> limit_set_sample(const MeasureSpec<RealField>& spec, std::size_t max_word_len,
                                           std::size_t budget, const RngStream& rng,
                                           const LimitSetOptions& opt = {});

/// Hausdorff distance for the Fubini–Study metric between two finite point clouds of unit vectors.
double hausdorff_distance(const std::vector<Vector<double>>& a, const std::vector<Vector<double>>& b);

/// sup over a of inf over b: how far `a` reaches outside `b`.
double directed_distance(const std::vector<Vector<double>>& a, const std::vector<Vector<double>>& b);

struct EscapeResult {
  bool escaped = false;
  bool pinned_base = false;  // ξ was fixed by the base action, so the invariant fiber was iterated
  std::vector<double> fiber_norms;
};

/// Iterates g on s. Escape means |t| passes `threshold` and keeps growing monotonically afterwards.
/// When ξ is fixed by the base action (δ(Cξ, ξ) <= base_tol) the base point is held at ξ, since a
/// repelling base fixed point is not numerically stable under iteration.
EscapeResult orbit_escape_test(const Matrix<double>& g, const SkewPoint<RealField>& s,
                               const SkewChart<RealField>& chart, std::size_t n, double threshold = 1e8,
                               double base_tol = 1e-12);

}  // namespace rmp
