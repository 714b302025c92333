#include "rmp/examples.hpp"

#include <stdexcept>
#include <string>

namespace rmp::examples {

namespace {

std::vector<Matrix<Rational>> exact_atoms(int id) {
  const Rational h(1, 2), q(1, 4);
  switch (id) {
    case 1:
      return {Matrix<Rational>{{1, 2, 3}, {0, 1, 1}, {0, 0, 1}},
              Matrix<Rational>{{-1, 1, 2}, {0, 0, -1}, {0, 1, 0}}};
    case 2:
      return {Matrix<Rational>{{h, 2, 3}, {0, 1, 1}, {0, 0, 1}},
              Matrix<Rational>{{h, 1, 2}, {0, 0, -1}, {0, 1, 0}}};
    case 3:
      return {Matrix<Rational>{{h, 2, 3}, {0, 4, 1}, {0, 0, q}},
              Matrix<Rational>{{h, 1, 2}, {0, 0, -1}, {0, 1, 0}},
              Matrix<Rational>{{h, 1, 1}, {0, q, -1}, {0, 0, 4}}};
    default:
      throw std::invalid_argument("unknown example " + std::to_string(id));
  }
}

}  // namespace

MeasureSpec<RealField> example(int id) {
  std::vector<Matrix<double>> atoms;
  for (const auto& g : exact_atoms(id)) {
    Matrix<double> m(g.rows(), g.cols());
    for (std::size_t k = 0; k < g.data().size(); ++k) m.data()[k] = g.data()[k].get_d();
    atoms.push_back(std::move(m));
  }
  return uniform_measure(RealField{}, std::move(atoms));
}

MeasureSpec<PadicField> example_padic(int id, std::uint64_t p) {
  return uniform_measure(PadicField(p), exact_atoms(id));
}

MeasureSpec<RealField> diag21() { return uniform_measure(RealField{}, {Matrix<double>{{2.0, 0.0}, {0.0, 1.0}}}); }

MeasureSpec<RealField> identity_measure(std::size_t d) {
  return uniform_measure(RealField{}, {Matrix<double>::identity(d)});
}

}  // namespace rmp::examples
