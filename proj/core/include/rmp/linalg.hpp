#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rmp/scalar.hpp"

namespace rmp {

template <class T>
using Vector = std::vector<T>;

/// Dense row-major matrix. Rectangular shapes are allowed; most APIs ask for square input.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw std::invalid_argument("matrix data size mismatch");
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix from_columns(const std::vector<Vector<T>>& columns, std::size_t rows) {
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) throw std::invalid_argument("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  static Matrix diagonal(const Vector<T>& entries) {
    Matrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<T>& data() const { return data_; }
  std::vector<T>& data() { return data_; }

  Vector<T> column(std::size_t j) const {
    Vector<T> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  Vector<T> row(std::size_t i) const {
    return Vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  void set_column(std::size_t j, const Vector<T>& v) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }
  std::vector<Vector<T>> columns() const {
    std::vector<Vector<T>> out;
    out.reserve(cols_);
    for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("matrix block out of range");
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  /// Horizontal concatenation [this | other].
  Matrix hcat(const Matrix& other) const {
    if (other.rows_ != rows_) throw std::invalid_argument("hcat row mismatch");
    Matrix m(rows_, cols_ + other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
      for (std::size_t j = 0; j < other.cols_; ++j) m(i, cols_ + j) = other(i, j);
    }
    return m;
  }

  bool operator==(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

template <class T>
Vector<T> operator*(const Matrix<T>& a, const Vector<T>& x) {
  if (a.cols() != x.size()) throw std::invalid_argument("matrix-vector shape mismatch");
  Vector<T> y(a.rows(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

template <class T>
Matrix<T> operator+(Matrix<T> a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("sum shape mismatch");
  for (std::size_t k = 0; k < a.data().size(); ++k) a.data()[k] += b.data()[k];
  return a;
}

template <class T>
Matrix<T> operator-(Matrix<T> a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("difference shape mismatch");
  for (std::size_t k = 0; k < a.data().size(); ++k) a.data()[k] -= b.data()[k];
  return a;
}

template <class T>
Matrix<T> operator*(const T& s, Matrix<T> a) {
  for (auto& x : a.data()) x *= s;
  return a;
}

template <class T>
Vector<T> scaled(const T& s, Vector<T> v) {
  for (auto& x : v) x *= s;
  return v;
}

template <class T>
T dot(const Vector<T>& a, const Vector<T>& b) {
  T s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Coordinates of x ∧ y in the basis e_i ∧ e_j, i < j, ordered lexicographically.
template <class T>
Vector<T> wedge(const Vector<T>& x, const Vector<T>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("wedge dimension mismatch");
  const std::size_t d = x.size();
  Vector<T> w;
  w.reserve(d * (d - 1) / 2);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) w.push_back(x[i] * y[j] - x[j] * y[i]);
  return w;
}

/// Matrix of the induced map on the exterior square, entries are the 2x2 minors.
template <class T>
Matrix<T> wedge_square(const Matrix<T>& g) {
  if (!g.is_square() || g.rows() < 2) throw std::invalid_argument("wedge_square needs a square matrix with d >= 2");
  const std::size_t d = g.rows();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) pairs.emplace_back(i, j);
  Matrix<T> w(pairs.size(), pairs.size());
  for (std::size_t r = 0; r < pairs.size(); ++r) {
    const auto [i, j] = pairs[r];
    for (std::size_t c = 0; c < pairs.size(); ++c) {
      const auto [k, l] = pairs[c];
      w(r, c) = g(i, k) * g(j, l) - g(i, l) * g(j, k);
    }
  }
  return w;
}

// ---------------------------------------------------------------------------
// Field-dependent kernels. Each has a RealField and a PadicField overload.

/// Euclidean norm over R, max-norm over Q_p.
double vector_norm(const RealField& f, const Vector<double>& v);
double vector_norm(const PadicField& f, const Vector<Rational>& v);

double log_vector_norm(const RealField& f, const Vector<double>& v);
double log_vector_norm(const PadicField& f, const Vector<Rational>& v);

/// Operator norm induced by the canonical norm (spectral norm / max |entry|).
double op_norm(const RealField& f, const Matrix<double>& m);
double op_norm(const PadicField& f, const Matrix<Rational>& m);

double log_op_norm(const RealField& f, const Matrix<double>& m);
double log_op_norm(const PadicField& f, const Matrix<Rational>& m);

template <class F>
struct Polar {
  typename F::scalar scale;
  Vector<typename F::scalar> direction;
};

/// x = N * xi with |N| = ||x||, N in R_{>0} or p^Z, and ||xi|| = 1.
Polar<RealField> polar_part(const RealField& f, const Vector<double>& x);
Polar<PadicField> polar_part(const PadicField& f, const Vector<Rational>& x);

/// Canonical representative of [x]: unit polar part plus a fixed choice of unit scalar.
Vector<double> projective_normalize(const RealField& f, const Vector<double>& x);
Vector<Rational> projective_normalize(const PadicField& f, const Vector<Rational>& x);

double fubini_distance(const RealField& f, const Vector<double>& x, const Vector<double>& y);
double fubini_distance(const PadicField& f, const Vector<Rational>& x, const Vector<Rational>& y);

/// Orthonormal basis (as columns) of the span of the given columns.
Matrix<double> orthonormal_basis(const RealField& f, const Matrix<double>& columns);
Matrix<Rational> orthonormal_basis(const PadicField& f, const Matrix<Rational>& columns);

/// Columns of an orthonormal basis of an orthogonal complement of span(basis); basis must be orthonormal.
Matrix<double> complement_basis(const RealField& f, const Matrix<double>& basis);
Matrix<Rational> complement_basis(const PadicField& f, const Matrix<Rational>& basis);

/// Basis of {v : m v = 0} as columns (not necessarily orthonormal).
Matrix<double> null_space(const RealField& f, const Matrix<double>& m);
Matrix<Rational> null_space(const PadicField& f, const Matrix<Rational>& m);

std::size_t rank(const RealField& f, const Matrix<double>& m);
std::size_t rank(const PadicField& f, const Matrix<Rational>& m);

/// Solve a x = b column-by-column; a must be square and invertible.
Matrix<double> solve(const RealField& f, const Matrix<double>& a, const Matrix<double>& b);
Matrix<Rational> solve(const PadicField& f, const Matrix<Rational>& a, const Matrix<Rational>& b);

Rational determinant(const Matrix<Rational>& a);
double determinant(const Matrix<double>& a);

/// Whether every entry of m vanishes relative to `scale` (exactly for Q_p).
bool negligible(const RealField& f, const Matrix<double>& m, double scale);
bool negligible(const PadicField& f, const Matrix<Rational>& m, double scale);

template <class F>
Matrix<typename F::scalar> inverse(const F& f, const Matrix<typename F::scalar>& a) {
  return solve(f, a, Matrix<typename F::scalar>::identity(a.rows()));
}

/// Entries in Z_p and unit determinant.
bool in_gl_integral(const PadicField& f, const Matrix<Rational>& m);

// ---------------------------------------------------------------------------
// Real dense kernels.

/// Thin singular value decomposition a = u diag(s) v^T with s sorted descending.
struct Svd {
  Matrix<double> u;
  Vector<double> s;
  Matrix<double> v;
};
Svd svd(const Matrix<double>& a);

/// Householder QR with column pivoting: a * P = q r, |r_00| >= |r_11| >= ...
struct PivotedQr {
  Matrix<double> q;
  Matrix<double> r;
  std::vector<std::size_t> permutation;
};
PivotedQr qr_pivoted(const Matrix<double>& a);

/// Householder QR without pivoting: a = q r with r upper triangular.
PivotedQr qr_householder(const Matrix<double>& a);

// ---------------------------------------------------------------------------

/// A point of P(V) stored by a canonical representative.
template <class F>
class ProjPoint {
 public:
  using S = typename F::scalar;

  ProjPoint(const F& f, const Vector<S>& x) : rep_(projective_normalize(f, x)) {}

  const Vector<S>& vector() const { return rep_; }
  std::size_t dimension() const { return rep_.size(); }

 private:
  Vector<S> rep_;
};

/// A linear subspace stored by an orthonormal basis (columns of a d x r matrix).
template <class F>
class Subspace {
 public:
  using S = typename F::scalar;

  Subspace(const F& f, std::size_t ambient) : field_(f), ambient_(ambient), basis_(ambient, 0) {}

  static Subspace span(const F& f, const std::vector<Vector<S>>& vectors, std::size_t ambient) {
    return from_columns(f, Matrix<S>::from_columns(vectors, ambient));
  }
  static Subspace from_columns(const F& f, const Matrix<S>& columns) {
    Subspace s(f, columns.rows());
    s.basis_ = orthonormal_basis(f, columns);
    return s;
  }
  static Subspace full(const F& f, std::size_t d) {
    Subspace s(f, d);
    s.basis_ = Matrix<S>::identity(d);
    return s;
  }
  /// Wraps columns already known to be orthonormal.
  static Subspace from_orthonormal(const F& f, Matrix<S> basis) {
    Subspace s(f, basis.rows());
    s.basis_ = std::move(basis);
    return s;
  }

  const F& field() const { return field_; }
  std::size_t dim() const { return basis_.cols(); }
  std::size_t ambient_dim() const { return ambient_; }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_; }
  bool is_proper_nonzero() const { return !is_zero() && !is_full(); }
  const Matrix<S>& basis() const { return basis_; }
  Vector<S> basis_vector(std::size_t i) const { return basis_.column(i); }

  bool contains(const Vector<S>& v) const {
    if (v.size() != ambient_) throw std::invalid_argument("subspace membership dimension mismatch");
    if (is_full()) return true;
    if (is_zero()) return vector_norm(field_, v) == 0;
    return rank(field_, basis_.hcat(Matrix<S>::from_columns({v}, ambient_))) == dim();
  }
  bool contains(const Subspace& other) const {
    for (std::size_t i = 0; i < other.dim(); ++i)
      if (!contains(other.basis_vector(i))) return false;
    return true;
  }
  bool equals(const Subspace& other) const {
    return ambient_ == other.ambient_ && dim() == other.dim() && contains(other);
  }

 private:
  F field_;
  std::size_t ambient_;
  Matrix<S> basis_;
};

template <class F>
Subspace<F> subspace_sum(const Subspace<F>& a, const Subspace<F>& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return Subspace<F>::from_columns(a.field(), a.basis().hcat(b.basis()));
}

/// Orthogonal complement; over Q_p one valid complement among several.
template <class F>
Subspace<F> orthogonal_complement(const Subspace<F>& e) {
  if (e.is_zero()) return Subspace<F>::full(e.field(), e.ambient_dim());
  if (e.is_full()) return Subspace<F>(e.field(), e.ambient_dim());
  return Subspace<F>::from_orthonormal(e.field(), complement_basis(e.field(), e.basis()));
}

/// Annihilator in V* (dual basis coordinates).
template <class F>
Subspace<F> annihilator(const Subspace<F>& e) {
  const auto d = e.ambient_dim();
  if (e.is_zero()) return Subspace<F>::full(e.field(), d);
  if (e.is_full()) return Subspace<F>(e.field(), d);
  return Subspace<F>::from_columns(e.field(), null_space(e.field(), e.basis().transpose()));
}

template <class F>
Subspace<F> subspace_intersection(const Subspace<F>& a, const Subspace<F>& b) {
  const auto d = a.ambient_dim();
  if (a.is_zero() || b.is_zero()) return Subspace<F>(a.field(), d);
  if (a.is_full()) return b;
  if (b.is_full()) return a;
  // Kernel of [A | -B] gives pairs (x, y) with A x = B y.
  Matrix<typename F::scalar> stacked = a.basis().hcat(typename F::scalar(-1) * b.basis());
  const auto kernel = null_space(a.field(), stacked);
  if (kernel.cols() == 0) return Subspace<F>(a.field(), d);
  const auto coeffs = kernel.block(0, 0, a.dim(), kernel.cols());
  return Subspace<F>::from_columns(a.field(), a.basis() * coeffs);
}

/// Whether w is an orthogonal complement of e: V = e ⊕ w and the adapted basis is an isometry.
template <class F>
bool is_orthogonal_complement(const Subspace<F>& e, const Subspace<F>& w) {
  if (e.dim() + w.dim() != e.ambient_dim()) return false;
  const auto p = e.basis().hcat(w.basis());
  if (rank(e.field(), p) != e.ambient_dim()) return false;
  if constexpr (F::exact) {
    return in_gl_integral(e.field(), p);
  } else {
    const auto gram = p.transpose() * p;
    const auto id = Matrix<double>::identity(gram.rows());
    return negligible(e.field(), gram - id, 1.0e3);
  }
}

/// δ([x],[E]) = ||π_{E^⊥}(x)|| / ||x||.
template <class F>
double distance_to_subspace(const Vector<typename F::scalar>& x, const Subspace<F>& e) {
  using S = typename F::scalar;
  if (!e.is_proper_nonzero()) throw std::invalid_argument("distance_to_subspace needs a proper nonzero subspace");
  const F& f = e.field();
  if constexpr (F::exact) {
    const auto comp = complement_basis(f, e.basis());
    const auto adapted = e.basis().hcat(comp);
    const auto coords = solve(f, adapted, Matrix<S>::from_columns({x}, x.size())).column(0);
    const Vector<S> tail(coords.begin() + static_cast<std::ptrdiff_t>(e.dim()), coords.end());
    const auto projected = comp * tail;
    long vp = 0;
    bool zero = true;
    for (const auto& c : projected) {
      if (c != 0) {
        const long v = f.valuation(c);
        vp = zero ? v : std::min(vp, v);
        zero = false;
      }
    }
    if (zero) return 0.0;
    long vx = 0;
    bool first = true;
    for (const auto& c : x) {
      if (c != 0) {
        const long v = f.valuation(c);
        vx = first ? v : std::min(vx, v);
        first = false;
      }
    }
    return f.norm_from_valuation(vp - vx);
  } else {
    const auto& q = e.basis();
    const auto coeffs = q.transpose() * x;
    auto residual = x;
    const auto inside = q * coeffs;
    for (std::size_t i = 0; i < x.size(); ++i) residual[i] -= inside[i];
    return std::min(1.0, vector_norm(f, residual) / vector_norm(f, x));
  }
}

/// g = k a u with k, u isometries and a diagonal.
template <class F>
struct KakFactors {
  Matrix<typename F::scalar> k_left;
  Vector<typename F::scalar> a;
  Matrix<typename F::scalar> u_right;
};

/// Real: singular value decomposition. Q_p: Smith reduction with GL_d(Z_p) row/column operations.
KakFactors<RealField> kak_decompose(const RealField& f, const Matrix<double>& g);
KakFactors<PadicField> kak_decompose(const PadicField& f, const Matrix<Rational>& g);

/// Reassemble k * diag(a) * u.
template <class F>
Matrix<typename F::scalar> kak_product(const KakFactors<F>& kak) {
  return kak.k_left * Matrix<typename F::scalar>::diagonal(kak.a) * kak.u_right;
}

}  // namespace rmp
