#include "rmp/jsr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rmp/limitset.hpp"
#include "rmp/parallel.hpp"

namespace rmp {

namespace {

const RealField kReal;

double l1_norm(const Matrix<double>& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += std::fabs(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

double linf_norm(const Matrix<double>& a) { return l1_norm(a.transpose()); }

struct NormFn {
  NormKind kind;
  Matrix<double> s, s_inv;

  double operator()(const Matrix<double>& a) const {
    switch (kind) {
      case NormKind::L1: return l1_norm(a);
      case NormKind::L2: return op_norm(kReal, a);
      case NormKind::Linf: return linf_norm(a);
      case NormKind::Ellipsoid: return op_norm(kReal, s * a * s_inv);
    }
    return 0.0;
  }
};

double max_conjugated_norm(const std::vector<Matrix<double>>& sigma, const Matrix<double>& s) {
  const auto s_inv = inverse(kReal, s);
  double best = 0.0;
  for (const auto& a : sigma) best = std::max(best, op_norm(kReal, s * a * s_inv));
  return best;
}

struct Node {
  Matrix<double> product;
  std::vector<std::size_t> word;
};

std::vector<std::vector<std::size_t>> all_words(std::size_t k, std::size_t depth, std::size_t budget) {
  std::vector<std::vector<std::size_t>> words;
  for (std::size_t len = 1; len <= depth; ++len) {
    std::vector<std::size_t> w(len, 0);
    while (true) {
      if (words.size() >= budget) return words;
      words.push_back(w);
      std::size_t pos = len;
      while (pos > 0 && ++w[pos - 1] == k) w[--pos] = 0;
      if (pos == 0) break;
    }
  }
  return words;
}

Matrix<double> product_of(const std::vector<Matrix<double>>& sigma, const std::vector<std::size_t>& w) {
  Matrix<double> p = Matrix<double>::identity(sigma[0].rows());
  for (auto i : w) p = p * sigma[i];
  return p;
}

}  // namespace

std::string to_string(NormKind k) {
  switch (k) {
    case NormKind::L1: return "l1";
    case NormKind::L2: return "l2";
    case NormKind::Linf: return "linf";
    case NormKind::Ellipsoid: return "ellipsoid";
  }
  return "unknown";
}

Matrix<double> ellipsoid_norm_search(const std::vector<Matrix<double>>& sigma) {
  const std::size_t d = sigma.at(0).rows();
  Matrix<double> s = Matrix<double>::identity(d);
  double best = max_conjugated_norm(sigma, s);
  double step = 0.5;
  for (int sweep = 0; sweep < 400 && step > 1e-7; ++sweep) {
    bool improved = false;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        if (i == 0 && j == 0) continue;  // the overall scale is irrelevant
        for (double sign : {1.0, -1.0}) {
          auto trial = s;
          if (i == j)
            trial(i, i) *= std::exp(sign * step);
          else
            trial(i, j) += sign * step;
          const double v = max_conjugated_norm(sigma, trial);
          if (v < best - 1e-15) {
            best = v;
            s = trial;
            improved = true;
            break;
          }
        }
      }
    if (!improved) step *= 0.5;
  }
  return s;
}

JsrBounds jsr_bounds(const std::vector<Matrix<double>>& sigma, std::size_t depth, const JsrOptions& opt) {
  if (sigma.empty()) throw std::invalid_argument("jsr needs a nonempty set");
  if (depth == 0) throw std::invalid_argument("jsr depth must be >= 1");
  const std::size_t k = sigma.size();
  JsrBounds out;
  out.depth = depth;

  // Lower bound: max ρ(w)^{1/|w|} over all words up to the budget.
  const auto words = all_words(k, depth, std::max<std::size_t>(opt.lower_word_budget, k));
  const auto rates = parallel_map<double>(words.size(), [&](std::size_t i) {
    const double rho = spectral_radius(product_of(sigma, words[i]));
    return std::pow(rho, 1.0 / static_cast<double>(words[i].size()));
  });
  std::size_t arg = 0;
  for (std::size_t i = 1; i < rates.size(); ++i)
    if (rates[i] > rates[arg] * (1 + 1e-12)) arg = i;
  out.lower = rates[arg];
  out.witness_word_lower = words[arg];
  out.words_explored = words.size();
  const double alpha = out.lower;

  out.upper = std::numeric_limits<double>::infinity();
  for (NormKind kind : opt.norms) {
    NormFn norm{kind, {}, {}};
    if (kind == NormKind::Ellipsoid) {
      norm.s = ellipsoid_norm_search(sigma);
      norm.s_inv = inverse(kReal, norm.s);
    }
    // Prefixes with ||P||^{1/|P|} <= alpha are cut; every long product then factors into blocks
    // each bounded by beta_level = max(alpha, surviving level norms^{1/level}).
    std::vector<Node> level{Node{Matrix<double>::identity(sigma[0].rows()), {}}};
    for (std::size_t len = 1; len <= depth && !level.empty(); ++len) {
      auto next = parallel_map<std::vector<Node>>(level.size(), [&](std::size_t i) {
        std::vector<Node> kids;
        for (std::size_t a = 0; a < k; ++a) {
          Node n{level[i].product * sigma[a], level[i].word};
          n.word.push_back(a);
          kids.push_back(std::move(n));
        }
        return kids;
      });
      std::vector<Node> survivors;
      double worst = 0.0;
      for (auto& kids : next)
        for (auto& n : kids) {
          const double r = std::pow(norm(n.product), 1.0 / static_cast<double>(len));
          out.words_explored += 1;
          if (r <= alpha) continue;
          worst = std::max(worst, r);
          survivors.push_back(std::move(n));
        }
      const double beta = std::max(alpha, worst);
      if (beta < out.upper) {
        out.upper = beta;
        out.norm_used = kind;
        out.upper_level = len;
      }
      level = std::move(survivors);
    }
  }
  return out;
}

CompactnessCertificate compactness_certificate(const MeasureSpec<RealField>& spec, const SkewChart<RealField>& chart,
                                               std::size_t depth, bool experimental) {
  CompactnessCertificate out;
  if (chart.fiber_dim() != 1) {
    if (!experimental) throw std::invalid_argument("criterion stated for one-dimensional L");
    out.experimental = true;
    double r = 0.0;
    for (const auto& g : spec.atoms) {
      const auto b = chart.blocks(g);
      r = std::max(r, l1_norm(b.a) * op_norm(kReal, inverse(kReal, b.c)));
    }
    out.bounds.upper = r;
    out.bounds.lower = 0.0;
    out.bounds.depth = 1;
    out.bounds.norm_used = NormKind::L2;
    out.pass = r < 1.0;
    out.reason = out.pass ? "max ||A||_1 ||C^-1||_2 < 1 (experimental)" : "max ||A||_1 ||C^-1||_2 >= 1 (experimental)";
    return out;
  }
  std::vector<Matrix<double>> sigma;
  for (const auto& g : spec.atoms) {
    const auto b = chart.blocks(g);
    sigma.push_back(std::fabs(b.a(0, 0)) * inverse(kReal, b.c));
  }
  out.bounds = jsr_bounds(sigma, depth);
  out.pass = out.bounds.upper < 1.0;
  if (out.pass)
    out.reason = "certified r < 1";
  else if (out.bounds.lower >= 1.0)
    out.reason = "r >= 1: a product has spectral radius >= 1";
  else
    out.reason = "upper bound on r not below 1 at this depth";
  return out;
}

std::optional<std::vector<std::size_t>> noncompactness_witness(const MeasureSpec<RealField>& spec,
                                                               const SkewChart<RealField>& chart,
                                                               std::size_t depth) {
  std::vector<BlockForm<RealField>> blocks;
  for (const auto& g : spec.atoms) blocks.push_back(chart.blocks(g));
  const auto words = all_words(spec.atoms.size(), depth, std::numeric_limits<std::size_t>::max());
  const auto hits = parallel_map<char>(words.size(), [&](std::size_t i) {
    Matrix<double> a = Matrix<double>::identity(chart.fiber_dim());
    Matrix<double> c = Matrix<double>::identity(chart.base_dim());
    for (auto k : words[i]) {
      a = a * blocks[k].a;
      c = c * blocks[k].c;
    }
    return static_cast<char>(spectral_radius(a) > spectral_radius(c) * (1.0 + 1e-9));
  });
  for (std::size_t i = 0; i < words.size(); ++i)
    if (hits[i]) return words[i];
  return std::nullopt;
}

}  // namespace rmp
