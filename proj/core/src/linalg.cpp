#include "rmp/linalg.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace rmp {

namespace {

constexpr double kRankTol = 1e-9;

double max_abs(const Vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

double euclid(const Vector<double>& v) {
  const double m = max_abs(v);
  if (m == 0.0 || !std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : v) s += (x / m) * (x / m);
  return m * std::sqrt(s);
}

// Minimum valuation over nonzero entries; `found` is false for the zero vector.
long min_valuation(const PadicField& f, const std::vector<Rational>& v, bool& found) {
  long best = 0;
  found = false;
  for (const auto& x : v) {
    if (x == 0) continue;
    const long val = f.valuation(x);
    if (!found || val < best) best = val;
    found = true;
  }
  return best;
}

struct Echelon {
  Matrix<Rational> reduced;
  std::vector<std::size_t> pivots;
};

// Exact reduced row echelon form.
Echelon rref(Matrix<Rational> m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(row, j));
    const Rational inv = 1 / m(row, col);
    for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      const Rational c = m(i, col);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= c * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

struct PadicReduction {
  Matrix<Rational> basis;  // columns
  std::vector<std::size_t> pivots;
};

// Rows are reduced with a minimal-valuation pivot each step. The result has integral entries
// and an identity submatrix at the pivot coordinates, so it extends by unit vectors to GL_d(Z_p).
PadicReduction padic_reduce(const PadicField& f, const Matrix<Rational>& columns) {
  const std::size_t d = columns.rows();
  std::vector<Vector<Rational>> rows;
  for (std::size_t j = 0; j < columns.cols(); ++j) rows.push_back(columns.column(j));
  std::vector<bool> done(rows.size(), false);
  std::vector<std::size_t> order;
  std::vector<std::size_t> pivots;
  while (true) {
    bool found = false;
    long best = 0;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (done[i]) continue;
      for (std::size_t j = 0; j < d; ++j) {
        if (rows[i][j] == 0) continue;
        const long v = f.valuation(rows[i][j]);
        if (!found || v < best) {
          found = true;
          best = v;
          bi = i;
          bj = j;
        }
      }
    }
    if (!found) break;
    const Rational inv = 1 / rows[bi][bj];
    for (auto& x : rows[bi]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == bi || rows[i][bj] == 0) continue;
      const Rational c = rows[i][bj];
      for (std::size_t j = 0; j < d; ++j) rows[i][j] -= c * rows[bi][j];
    }
    done[bi] = true;
    order.push_back(bi);
    pivots.push_back(bj);
  }
  Matrix<Rational> basis(d, order.size());
  for (std::size_t k = 0; k < order.size(); ++k) basis.set_column(k, rows[order[k]]);
  return {std::move(basis), std::move(pivots)};
}

Svd jacobi_tall(const Matrix<double>& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  Matrix<double> w = a;
  Matrix<double> v = Matrix<double>::identity(n);
  const double eps = std::numeric_limits<double>::epsilon();
  for (int sweep = 0; sweep < 80; ++sweep) {
    bool rotated = false;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double alpha = 0, beta = 0, gamma = 0;
        for (std::size_t k = 0; k < m; ++k) {
          alpha += w(k, i) * w(k, i);
          beta += w(k, j) * w(k, j);
          gamma += w(k, i) * w(k, j);
        }
        if (gamma == 0.0 || std::fabs(gamma) <= eps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t k = 0; k < m; ++k) {
          const double wi = w(k, i), wj = w(k, j);
          w(k, i) = c * wi - s * wj;
          w(k, j) = s * wi + c * wj;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vi = v(k, i), vj = v(k, j);
          v(k, i) = c * vi - s * vj;
          v(k, j) = s * vi + c * vj;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) sigma[j] = euclid(w.column(j));
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

  Svd out{Matrix<double>(m, n), Vector<double>(n), Matrix<double>(n, n)};
  const double top = n ? sigma[idx[0]] : 0.0;
  std::size_t nonzero = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = idx[k];
    out.s[k] = sigma[j];
    for (std::size_t r = 0; r < n; ++r) out.v(r, k) = v(r, j);
    if (sigma[j] > 0 && sigma[j] > top * 1e-300) {
      for (std::size_t r = 0; r < m; ++r) out.u(r, k) = w(r, j) / sigma[j];
      ++nonzero;
    }
  }
  // Left vectors for zero singular values: complete to an orthonormal family.
  if (nonzero < n) {
    const auto fill = complement_basis(RealField{}, out.u.block(0, 0, m, nonzero));
    for (std::size_t k = nonzero; k < n; ++k) out.u.set_column(k, fill.column(k - nonzero));
  }
  return out;
}

}  // namespace

double vector_norm(const RealField&, const Vector<double>& v) { return euclid(v); }

double vector_norm(const PadicField& f, const Vector<Rational>& v) {
  bool found = false;
  const long val = min_valuation(f, v, found);
  return found ? f.norm_from_valuation(val) : 0.0;
}

double log_vector_norm(const RealField&, const Vector<double>& v) {
  const double m = max_abs(v);
  if (m == 0.0) return -std::numeric_limits<double>::infinity();
  double s = 0.0;
  for (double x : v) s += (x / m) * (x / m);
  return std::log(m) + 0.5 * std::log(s);
}

double log_vector_norm(const PadicField& f, const Vector<Rational>& v) {
  bool found = false;
  const long val = min_valuation(f, v, found);
  if (!found) return -std::numeric_limits<double>::infinity();
  return -static_cast<double>(val) * std::log(static_cast<double>(f.p));
}

double op_norm(const RealField&, const Matrix<double>& m) {
  if (m.empty()) return 0.0;
  return svd(m).s[0];
}

double op_norm(const PadicField& f, const Matrix<Rational>& m) { return vector_norm(f, m.data()); }

double log_op_norm(const RealField& f, const Matrix<double>& m) {
  const double scale = max_abs(m.data());
  if (scale == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(scale) + std::log(op_norm(f, (1.0 / scale) * m));
}

double log_op_norm(const PadicField& f, const Matrix<Rational>& m) { return log_vector_norm(f, m.data()); }

Polar<RealField> polar_part(const RealField&, const Vector<double>& x) {
  const double n = euclid(x);
  if (n == 0.0) throw std::invalid_argument("polar part of the zero vector");
  return {n, scaled(1.0 / n, x)};
}

Polar<PadicField> polar_part(const PadicField& f, const Vector<Rational>& x) {
  bool found = false;
  const long val = min_valuation(f, x, found);
  if (!found) throw std::invalid_argument("polar part of the zero vector");
  Rational n = f.power(val);
  return {n, scaled(Rational(1 / n), x)};
}

Vector<double> projective_normalize(const RealField& f, const Vector<double>& x) {
  auto xi = polar_part(f, x).direction;
  std::size_t lead = 0;
  for (std::size_t i = 1; i < xi.size(); ++i)
    if (std::fabs(xi[i]) > std::fabs(xi[lead])) lead = i;
  if (xi[lead] < 0)
    for (auto& c : xi) c = -c;
  return xi;
}

Vector<Rational> projective_normalize(const PadicField& f, const Vector<Rational>& x) {
  auto xi = polar_part(f, x).direction;
  for (const auto& c : xi) {
    if (c != 0 && f.valuation(c) == 0) {
      const Rational inv = 1 / c;
      for (auto& e : xi) e *= inv;
      break;
    }
  }
  return xi;
}

double fubini_distance(const RealField& f, const Vector<double>& x, const Vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("fubini_distance dimension mismatch");
  const auto a = polar_part(f, x).direction;
  const auto b = polar_part(f, y).direction;
  return std::min(1.0, euclid(wedge(a, b)));
}

double fubini_distance(const PadicField& f, const Vector<Rational>& x, const Vector<Rational>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("fubini_distance dimension mismatch");
  bool fx = false, fy = false, fw = false;
  const long vx = min_valuation(f, x, fx);
  const long vy = min_valuation(f, y, fy);
  if (!fx || !fy) throw std::invalid_argument("fubini_distance of the zero vector");
  const long vw = min_valuation(f, wedge(x, y), fw);
  if (!fw) return 0.0;
  return f.norm_from_valuation(vw - vx - vy);
}

Matrix<double> orthonormal_basis(const RealField&, const Matrix<double>& columns) {
  const std::size_t d = columns.rows();
  auto work = columns.columns();
  double scale = 0.0;
  for (const auto& c : work) scale = std::max(scale, euclid(c));
  std::vector<Vector<double>> q;
  if (scale == 0.0) return Matrix<double>(d, 0);
  std::vector<bool> used(work.size(), false);
  while (q.size() < d) {
    std::size_t best = work.size();
    double best_norm = 0.0;
    for (std::size_t j = 0; j < work.size(); ++j) {
      if (used[j]) continue;
      const double n = euclid(work[j]);
      if (n > best_norm) {
        best_norm = n;
        best = j;
      }
    }
    if (best == work.size() || best_norm <= kRankTol * scale) break;
    used[best] = true;
    auto v = work[best];
    for (const auto& e : q) {
      const double c = dot(e, v);
      for (std::size_t i = 0; i < d; ++i) v[i] -= c * e[i];
    }
    v = scaled(1.0 / euclid(v), v);
    for (std::size_t j = 0; j < work.size(); ++j) {
      if (used[j]) continue;
      const double c = dot(v, work[j]);
      for (std::size_t i = 0; i < d; ++i) work[j][i] -= c * v[i];
    }
    q.push_back(std::move(v));
  }
  return Matrix<double>::from_columns(q, d);
}

Matrix<Rational> orthonormal_basis(const PadicField& f, const Matrix<Rational>& columns) {
  return padic_reduce(f, columns).basis;
}

Matrix<double> complement_basis(const RealField&, const Matrix<double>& basis) {
  const std::size_t d = basis.rows();
  std::vector<Vector<double>> frame = basis.columns();
  std::vector<Vector<double>> added;
  while (frame.size() < d) {
    std::size_t best = d;
    double best_norm = -1.0;
    Vector<double> best_res;
    for (std::size_t i = 0; i < d; ++i) {
      Vector<double> r(d, 0.0);
      r[i] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& e : frame) {
          const double c = dot(e, r);
          for (std::size_t k = 0; k < d; ++k) r[k] -= c * e[k];
        }
      }
      const double n = euclid(r);
      if (n > best_norm + 1e-12) {
        best_norm = n;
        best = i;
        best_res = std::move(r);
      }
    }
    (void)best;
    best_res = scaled(1.0 / best_norm, best_res);
    frame.push_back(best_res);
    added.push_back(std::move(best_res));
  }
  return Matrix<double>::from_columns(added, d);
}

Matrix<Rational> complement_basis(const PadicField& f, const Matrix<Rational>& basis) {
  const std::size_t d = basis.rows();
  const auto red = padic_reduce(f, basis);
  std::vector<bool> is_pivot(d, false);
  for (auto p : red.pivots) is_pivot[p] = true;
  std::vector<Vector<Rational>> cols;
  for (std::size_t j = 0; j < d; ++j) {
    if (is_pivot[j]) continue;
    Vector<Rational> e(d, Rational(0));
    e[j] = 1;
    cols.push_back(std::move(e));
  }
  return Matrix<Rational>::from_columns(cols, d);
}

Matrix<double> null_space(const RealField&, const Matrix<double>& m) {
  const std::size_t n = m.cols();
  Matrix<double> padded = m;
  if (m.rows() < n) {
    padded = Matrix<double>(n, n);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < n; ++j) padded(i, j) = m(i, j);
  }
  const auto dec = jacobi_tall(padded);
  const double top = dec.s.empty() ? 0.0 : dec.s[0];
  std::vector<Vector<double>> cols;
  for (std::size_t k = 0; k < n; ++k)
    if (top == 0.0 || dec.s[k] <= kRankTol * top) cols.push_back(dec.v.column(k));
  return Matrix<double>::from_columns(cols, n);
}

Matrix<Rational> null_space(const PadicField&, const Matrix<Rational>& m) {
  const std::size_t n = m.cols();
  const auto e = rref(m);
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector<Rational>> cols;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vector<Rational> v(n, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, free);
    cols.push_back(std::move(v));
  }
  return Matrix<Rational>::from_columns(cols, n);
}

std::size_t rank(const RealField&, const Matrix<double>& m) {
  if (m.empty()) return 0;
  const auto s = m.rows() >= m.cols() ? jacobi_tall(m).s : jacobi_tall(m.transpose()).s;
  if (s[0] == 0.0) return 0;
  std::size_t r = 0;
  for (double x : s)
    if (x > kRankTol * s[0]) ++r;
  return r;
}

std::size_t rank(const PadicField&, const Matrix<Rational>& m) { return rref(m).pivots.size(); }

Matrix<double> solve(const RealField&, const Matrix<double>& a, const Matrix<double>& b) {
  if (!a.is_square() || a.rows() != b.rows()) throw std::invalid_argument("solve shape mismatch");
  const std::size_t n = a.rows();
  Matrix<double> m = a;
  Matrix<double> x = b;
  const double scale = max_abs(a.data());
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::fabs(m(i, k)) > std::fabs(m(p, k))) p = i;
    if (std::fabs(m(p, k)) <= 1e-14 * scale || m(p, k) == 0.0) throw std::domain_error("singular matrix");
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(k, j));
      for (std::size_t j = 0; j < x.cols(); ++j) std::swap(x(p, j), x(k, j));
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double c = m(i, k) / m(k, k);
      if (c == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) m(i, j) -= c * m(k, j);
      for (std::size_t j = 0; j < x.cols(); ++j) x(i, j) -= c * x(k, j);
    }
  }
  for (std::size_t kk = n; kk-- > 0;) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      double s = x(kk, j);
      for (std::size_t c = kk + 1; c < n; ++c) s -= m(kk, c) * x(c, j);
      x(kk, j) = s / m(kk, kk);
    }
  }
  return x;
}

Matrix<Rational> solve(const PadicField&, const Matrix<Rational>& a, const Matrix<Rational>& b) {
  if (!a.is_square() || a.rows() != b.rows()) throw std::invalid_argument("solve shape mismatch");
  const std::size_t n = a.rows();
  const auto e = rref(a.hcat(b));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) throw std::domain_error("singular matrix");
  return e.reduced.block(0, n, n, b.cols());
}

Rational determinant(const Matrix<Rational>& a) {
  if (!a.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
  Matrix<Rational> m = a;
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(k, j));
      det = -det;
    }
    det *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m(i, k) == 0) continue;
      const Rational c = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) -= c * m(k, j);
    }
  }
  return det;
}

double determinant(const Matrix<double>& a) {
  if (!a.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
  Matrix<double> m = a;
  const std::size_t n = m.rows();
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::fabs(m(i, k)) > std::fabs(m(p, k))) p = i;
    if (m(p, k) == 0.0) return 0.0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(k, j));
      det = -det;
    }
    det *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double c = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) -= c * m(k, j);
    }
  }
  return det;
}

bool negligible(const RealField& f, const Matrix<double>& m, double scale) {
  return max_abs(m.data()) <= f.rel_tol * scale;
}

bool negligible(const PadicField&, const Matrix<Rational>& m, double) {
  for (const auto& x : m.data())
    if (x != 0) return false;
  return true;
}

bool in_gl_integral(const PadicField& f, const Matrix<Rational>& m) {
  if (!m.is_square()) return false;
  for (const auto& x : m.data())
    if (!f.is_integral(x)) return false;
  return f.is_unit(determinant(m));
}

Svd svd(const Matrix<double>& a) {
  if (a.rows() >= a.cols()) return jacobi_tall(a);
  auto t = jacobi_tall(a.transpose());
  return {std::move(t.v), std::move(t.s), std::move(t.u)};
}

namespace {

PivotedQr householder_qr(const Matrix<double>& a, bool pivot) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  Matrix<double> r = a;
  Matrix<double> q = Matrix<double>::identity(m);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  const std::size_t steps = std::min(m, n);
  for (std::size_t k = 0; k < steps; ++k) {
    std::size_t best = k;
    double best_norm = -1.0;
    for (std::size_t j = k; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < m; ++i) s += r(i, j) * r(i, j);
      if (s > best_norm) {
        best_norm = s;
        best = j;
      }
    }
    if (pivot && best != k) {
      for (std::size_t i = 0; i < m; ++i) std::swap(r(i, k), r(i, best));
      std::swap(perm[k], perm[best]);
    }
    Vector<double> x(m - k);
    for (std::size_t i = k; i < m; ++i) x[i - k] = r(i, k);
    const double alpha = euclid(x);
    if (alpha == 0.0) continue;
    Vector<double> v = x;
    v[0] += x[0] >= 0 ? alpha : -alpha;
    const double vn = euclid(v);
    if (vn == 0.0) continue;
    for (auto& c : v) c /= vn;
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < m; ++i) s += v[i - k] * r(i, j);
      for (std::size_t i = k; i < m; ++i) r(i, j) -= 2.0 * s * v[i - k];
    }
    for (std::size_t i = 0; i < m; ++i) {
      double s = 0.0;
      for (std::size_t l = k; l < m; ++l) s += q(i, l) * v[l - k];
      for (std::size_t l = k; l < m; ++l) q(i, l) -= 2.0 * s * v[l - k];
    }
    for (std::size_t i = k + 1; i < m; ++i) r(i, k) = 0.0;
  }
  return {std::move(q), std::move(r), std::move(perm)};
}

}  // namespace

PivotedQr qr_pivoted(const Matrix<double>& a) { return householder_qr(a, true); }

PivotedQr qr_householder(const Matrix<double>& a) { return householder_qr(a, false); }

KakFactors<RealField> kak_decompose(const RealField&, const Matrix<double>& g) {
  if (!g.is_square()) throw std::invalid_argument("kak_decompose needs a square matrix");
  auto dec = svd(g);
  return {std::move(dec.u), std::move(dec.s), dec.v.transpose()};
}

KakFactors<PadicField> kak_decompose(const PadicField& f, const Matrix<Rational>& g) {
  if (!g.is_square()) throw std::invalid_argument("kak_decompose needs a square matrix");
  const std::size_t d = g.rows();
  Matrix<Rational> m = g;
  Matrix<Rational> k = Matrix<Rational>::identity(d);
  Matrix<Rational> u = Matrix<Rational>::identity(d);
  // Invariant: g = k * m * u.
  for (std::size_t t = 0; t < d; ++t) {
    bool found = false;
    long best = 0;
    std::size_t bi = t, bj = t;
    for (std::size_t i = t; i < d; ++i) {
      for (std::size_t j = t; j < d; ++j) {
        if (m(i, j) == 0) continue;
        const long v = f.valuation(m(i, j));
        if (!found || v < best) {
          found = true;
          best = v;
          bi = i;
          bj = j;
        }
      }
    }
    if (!found) throw std::domain_error("kak_decompose needs an invertible matrix");
    if (bi != t) {
      for (std::size_t j = 0; j < d; ++j) std::swap(m(bi, j), m(t, j));
      for (std::size_t i = 0; i < d; ++i) std::swap(k(i, bi), k(i, t));
    }
    if (bj != t) {
      for (std::size_t i = 0; i < d; ++i) std::swap(m(i, bj), m(i, t));
      for (std::size_t j = 0; j < d; ++j) std::swap(u(bj, j), u(t, j));
    }
    const Rational unit = m(t, t) / f.power(best);
    const Rational unit_inv = 1 / unit;
    for (std::size_t j = 0; j < d; ++j) m(t, j) *= unit_inv;
    for (std::size_t i = 0; i < d; ++i) k(i, t) *= unit;
    for (std::size_t i = t + 1; i < d; ++i) {
      if (m(i, t) == 0) continue;
      const Rational c = m(i, t) / m(t, t);
      for (std::size_t j = 0; j < d; ++j) m(i, j) -= c * m(t, j);
      for (std::size_t r = 0; r < d; ++r) k(r, t) += c * k(r, i);
    }
    for (std::size_t j = t + 1; j < d; ++j) {
      if (m(t, j) == 0) continue;
      const Rational c = m(t, j) / m(t, t);
      for (std::size_t i = 0; i < d; ++i) m(i, j) -= c * m(i, t);
      for (std::size_t c2 = 0; c2 < d; ++c2) u(t, c2) += c * u(j, c2);
    }
  }
  Vector<Rational> a(d);
  for (std::size_t i = 0; i < d; ++i) a[i] = m(i, i);
  return {std::move(k), std::move(a), std::move(u)};
}

}  // namespace rmp
