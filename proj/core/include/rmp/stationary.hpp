#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rmp/linalg.hpp"
#include "rmp/measure.hpp"
#include "rmp/rng.hpp"

namespace rmp {

/// Uniformly weighted sample of points of P(V), stored as unit vectors.
struct EmpiricalMeasure {
  std::vector<Vector<double>> points;
  std::string sampler;
  std::size_t n = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  std::size_t size() const { return points.size(); }
  std::size_t dimension() const { return points.empty() ? 0 : points[0].size(); }
};

/// [R_n e_1]-type draw: the top left singular direction of R_n = g_1 ... g_n.
struct TopDirection {};

/// [R_n x]; `exclude` is the subspace x must avoid (normally L_mu).
struct PushForward {
  Vector<double> x;
  std::optional<Subspace<RealField>> exclude;
};

using StationarySampler = std::variant<TopDirection, PushForward>;

EmpiricalMeasure sample_stationary(const MeasureSpec<RealField>& spec, std::size_t n, std::size_t trials,
                                   const RngStream& rng, const StationarySampler& sampler);

/// Fubini–Study distance of unit vectors via the wedge norm.
double fs_distance_unit(const Vector<double>& x, const Vector<double>& y);

struct EnergyOptions {
  std::size_t block = 100;
  std::size_t permutations = 100;
  double sigmas = 3.0;
};

/// Two-sample energy test on (P(V), δ). The statistic is the average over aligned blocks of the
/// unbiased within-block energy distance; the null comes from within-block label permutations.
struct EnergyTest {
  double statistic = 0.0;
  double null_mean = 0.0;
  double null_sd = 0.0;
  double threshold = 0.0;
  bool reject = false;
  std::size_t blocks = 0;
};

EnergyTest energy_test(const std::vector<Vector<double>>& x, const std::vector<Vector<double>>& y,
                       const RngStream& rng, const EnergyOptions& opt = {});

/// Energy test between one half of nu_hat and a one-step pushforward mu * (other half).
EnergyTest stationarity_residual(const EmpiricalMeasure& nu_hat, const MeasureSpec<RealField>& spec,
                                 const RngStream& rng, const EnergyOptions& opt = {});

/// Fraction of points within δ <= eps of [W]. The full space has mass 1 and {0} mass 0.
double subspace_mass(const EmpiricalMeasure& nu_hat, const Subspace<RealField>& w, double eps);

struct BoundaryCurve {
  std::vector<std::size_t> n;
  std::vector<double> diameter;  // median over walks of the median pairwise δ
};

/// Diameter of R_n . nu_hat along sampled walks, using at most `points` atoms of nu_hat.
BoundaryCurve boundary_convergence(const MeasureSpec<RealField>& spec, const EmpiricalMeasure& nu_hat,
                                   const std::vector<std::size_t>& ns, std::size_t walks, const RngStream& rng,
                                   std::size_t points = 40);

/// Image of each point in V/L coordinates of the orthogonal complement of L, normalized.
std::vector<Vector<double>> quotient_marginal(const EmpiricalMeasure& nu_hat, const Subspace<RealField>& l);

}  // namespace rmp
