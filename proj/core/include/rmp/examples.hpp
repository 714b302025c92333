#pragma once

#include "rmp/measure.hpp"

namespace rmp::examples {

/// Uniform measures on the three guiding upper-block-triangular families in dimension 3.
/// Each preserves L = span(e1); the quotient action on R^3/L is through 2x2 blocks C_g.
MeasureSpec<RealField> example(int id);

/// Same atoms with exact rational entries.
MeasureSpec<PadicField> example_padic(int id, std::uint64_t p);

/// Point mass at diag(2, 1).
MeasureSpec<RealField> diag21();

/// Point mass at the identity of size d.
MeasureSpec<RealField> identity_measure(std::size_t d);

}  // namespace rmp::examples
