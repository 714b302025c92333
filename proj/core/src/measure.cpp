#include "rmp/measure.hpp"

#include <cmath>
#include <stdexcept>

namespace rmp {

std::string ValidationReport::summary() const {
  std::string s;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (i) s += "; ";
    s += errors[i];
  }
  return s;
}

namespace detail {

bool atom_invertible(const RealField& f, const Matrix<double>& g) { return rank(f, g) == g.rows(); }

bool atom_invertible(const PadicField&, const Matrix<Rational>& g) { return determinant(g) != 0; }

bool entries_finite(const Matrix<double>& g) {
  for (double x : g.data())
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace detail

AtomSampler::AtomSampler(const std::vector<Rational>& weights) {
  if (weights.empty()) throw std::invalid_argument("sampler needs at least one weight");
  Rational acc = 0;
  cumulative_.reserve(weights.size());
  for (const auto& w : weights) {
    acc += w;
    cumulative_.push_back(acc.get_d());
  }
  cumulative_.back() = 1.0;
}

std::size_t AtomSampler::draw(RngStream& rng) const {
  if (cumulative_.size() == 1) return 0;
  const double u = rng.uniform();
  for (std::size_t i = 0; i + 1 < cumulative_.size(); ++i)
    if (u < cumulative_[i]) return i;
  return cumulative_.size() - 1;
}

}  // namespace rmp
