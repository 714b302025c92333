#include <cmath>
#include <sstream>

#include "cli.hpp"
#include "report.hpp"
#include "rmp/examples.hpp"
#include "rmp/limitset.hpp"
#include "rmp/stationary.hpp"

namespace rmp::cli {

json reproduce_example(int id, std::uint64_t seed, const std::filesystem::path& out_dir) {
  if (id < 1 || id > 3) throw ConfigError("example must be 1, 2 or 3");
  const auto spec = examples::example(id);
  const RngStream rng(seed);
  const auto rep = compute_structure(spec, 1000, 100, rng.substream(1));
  if (!rep.gap_certified) throw GapUncertified("gap uncertified for example " + std::to_string(id));
  if (rep.L_mu.dim() != 1) throw std::runtime_error("expected a one-dimensional L_mu");
  const auto chart = make_chart(spec, rep.L_mu);
  const auto nu = sample_stationary(spec, 200, 10000, rng.substream(2), TopDirection{});

  // ±Z in skew coordinates: c = P^-1 v = (l, w), t = l / |w|, ξ = w / |w|.
  const auto& pinv = chart.basis_inverse();
  std::ostringstream cyl, s1;
  cyl.precision(17);
  s1.precision(17);
  cyl << "sign,t,xi1,xi2,theta\n";
  s1 << "xi1,xi2,theta\n";
  std::vector<std::array<double, 2>> cyl_pts, s1_pts;
  std::size_t at_infinity = 0;
  for (const auto& z : nu.points) {
    const auto c = pinv * z;
    const double wn = std::hypot(c[1], c[2]);
    if (wn == 0.0) {
      ++at_infinity;
      continue;
    }
    for (int sign : {1, -1}) {
      const double t = sign * c[0] / wn, x1 = sign * c[1] / wn, x2 = sign * c[2] / wn;
      const double theta = std::atan2(x2, x1);
      cyl << sign << ',' << t << ',' << x1 << ',' << x2 << ',' << theta << '\n';
      cyl_pts.push_back({theta, t});
    }
    const double x1 = c[1] / wn, x2 = c[2] / wn;
    s1 << x1 << ',' << x2 << ',' << std::atan2(x2, x1) << '\n';
    s1_pts.push_back({x1, x2});
    s1_pts.push_back({-x1, -x2});
  }
  write_text(out_dir / "cylinder.csv", cyl.str());
  write_text(out_dir / "s1_projection.csv", s1.str());
  const std::string name = "Example " + std::to_string(id);
  write_text(out_dir / "cylinder.svg", emit_svg_scatter(cyl_pts, {name + ": stationary samples on L x S^1", "theta", "t"}));
  write_text(out_dir / "s1_projection.svg", emit_svg_scatter(s1_pts, {name + ": projection on S^1", "xi1", "xi2", 480, 480}));

  json attractors = json::array();
  for (std::size_t i = 0; i < spec.atoms.size(); ++i) {
    try {
      const auto a = attractor_point_block(spec.atoms[i], chart);
      attractors.push_back({{"atom", atom_label(i)}, {"t", a.t}, {"xi", a.xi}});
    } catch (const std::invalid_argument& e) {
      attractors.push_back({{"atom", atom_label(i)}, {"none", e.what()}});
    }
  }

  json findings = structure_json(rep);
  findings["example"] = id;
  findings["seed"] = seed;
  findings["samples"] = {{"sampler", nu.sampler}, {"n", nu.n}, {"trials", nu.trials}, {"at_infinity", at_infinity}};
  findings["attractors"] = attractors;
  findings["compactness"] = compactness_report(spec, chart, 8);
  findings["files"] = {"cylinder.csv", "s1_projection.csv", "cylinder.svg", "s1_projection.svg", "findings.json"};
  write_json(out_dir / "findings.json", findings);
  return findings;
}

}  // namespace rmp::cli
