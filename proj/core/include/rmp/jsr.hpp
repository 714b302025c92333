#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rmp/linalg.hpp"
#include "rmp/measure.hpp"
#include "rmp/skewprod.hpp"

namespace rmp {

enum class NormKind { L1, L2, Linf, Ellipsoid };
std::string to_string(NormKind k);

struct JsrBounds {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t depth = 0;
  std::vector<std::size_t> witness_word_lower;
  NormKind norm_used = NormKind::L2;
  std::size_t upper_level = 0;    // word length at which the upper bound was attained
  std::size_t words_explored = 0;
};

struct JsrOptions {
  std::vector<NormKind> norms{NormKind::L1, NormKind::L2, NormKind::Linf, NormKind::Ellipsoid};
  std::size_t lower_word_budget = 200000;  // exhaustive spectral-radius search stops past this many words
};

/// Bracket lower <= JSR(sigma) <= upper from products of length <= depth.
JsrBounds jsr_bounds(const std::vector<Matrix<double>>& sigma, std::size_t depth, const JsrOptions& opt = {});

/// A positive lower-triangular S with small max_i ||S A_i S^-1||_2, by coordinate descent from I.
Matrix<double> ellipsoid_norm_search(const std::vector<Matrix<double>>& sigma);

struct CompactnessCertificate {
  bool pass = false;
  bool experimental = false;
  std::string reason;
  JsrBounds bounds;  // bounds on r = JSR{ |a_g| C_g^{-1} }
};

/// Whether r = JSR{|a_g| C_g^{-1}} < 1 for dim L = 1. With `experimental` and dim L > 1, checks
/// max_g ||A_g||_1 ||C_g^{-1}||_2 < 1 instead; that form has no acceptance backing.
CompactnessCertificate compactness_certificate(const MeasureSpec<RealField>& spec, const SkewChart<RealField>& chart,
                                               std::size_t depth = 8, bool experimental = false);

/// A word whose A-block spectral radius strictly exceeds that of its C-block, searched exhaustively
/// up to `depth`. Absence says nothing about compactness.
std::optional<std::vector<std::size_t>> noncompactness_witness(const MeasureSpec<RealField>& spec,
                                                               const SkewChart<RealField>& chart,
                                                               std::size_t depth = 8);

}  // namespace rmp
