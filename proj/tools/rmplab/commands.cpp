#include <cmath>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "report.hpp"
#include "rmp/limitset.hpp"
#include "rmp/regularity.hpp"
#include "rmp/stationary.hpp"

namespace rmp::cli {

namespace {

const RealField kReal;

// Typed access to params with defaults; every key read must be listed for the command.
class Params {
 public:
  Params(const json& p, const std::string& command, std::set<std::string> allowed) : p_(p) {
    for (const auto& [key, value] : p.items())
      if (!allowed.count(key)) throw ConfigError("unknown key 'params." + key + "' for command " + command);
  }

  std::size_t count(const std::string& key, std::size_t def, std::size_t min = 1) const {
    if (!p_.contains(key)) return def;
    if (!p_[key].is_number_unsigned()) throw ConfigError("params." + key + " must be a non-negative integer");
    const auto v = p_[key].get<std::size_t>();
    if (v < min) throw ConfigError("params." + key + " must be >= " + std::to_string(min));
    return v;
  }

  double real(const std::string& key, double def) const {
    if (!p_.contains(key)) return def;
    if (!p_[key].is_number()) throw ConfigError("params." + key + " must be a number");
    return p_[key].get<double>();
  }

  bool flag(const std::string& key, bool def) const {
    if (!p_.contains(key)) return def;
    if (!p_[key].is_boolean()) throw ConfigError("params." + key + " must be true or false");
    return p_[key].get<bool>();
  }

  std::string text(const std::string& key, const std::string& def) const {
    if (!p_.contains(key)) return def;
    if (!p_[key].is_string()) throw ConfigError("params." + key + " must be a string");
    return p_[key].get<std::string>();
  }

  std::optional<Vector<double>> vec(const std::string& key, std::size_t d) const {
    if (!p_.contains(key)) return std::nullopt;
    const auto& a = p_[key];
    if (!a.is_array() || a.size() != d) throw ConfigError("params." + key + " must be an array of " + std::to_string(d) + " numbers");
    Vector<double> v;
    for (const auto& x : a) {
      if (!x.is_number()) throw ConfigError("params." + key + " must contain numbers");
      v.push_back(x.get<double>());
    }
    double s = 0.0;
    for (double x : v) s += x * x;
    if (s == 0.0) throw ConfigError("params." + key + " is the zero vector");
    return v;
  }

  std::vector<double> reals(const std::string& key, std::vector<double> def) const {
    if (!p_.contains(key)) return def;
    if (!p_[key].is_array() || p_[key].empty()) throw ConfigError("params." + key + " must be a nonempty array");
    std::vector<double> v;
    for (const auto& x : p_[key]) {
      if (!x.is_number()) throw ConfigError("params." + key + " must contain numbers");
      v.push_back(x.get<double>());
    }
    return v;
  }

  std::vector<std::size_t> counts(const std::string& key, std::vector<std::size_t> def) const {
    if (!p_.contains(key)) return def;
    if (!p_[key].is_array() || p_[key].empty()) throw ConfigError("params." + key + " must be a nonempty array");
    std::vector<std::size_t> v;
    for (const auto& x : p_[key]) {
      if (!x.is_number_unsigned()) throw ConfigError("params." + key + " must contain non-negative integers");
      v.push_back(x.get<std::size_t>());
    }
    return v;
  }

  const json& raw() const { return p_; }

 private:
  json p_;
};

const std::set<std::string> kGapKeys{"gap_n", "gap_trials"};

std::set<std::string> with_gap(std::set<std::string> s) {
  s.insert(kGapKeys.begin(), kGapKeys.end());
  return s;
}

// Structure of a real measure; aborts with GapUncertified when λ1 > λ2 is not certified.
StructureReport<RealField> certified_structure(const MeasureSpec<RealField>& spec, const Params& p, const RngStream& rng) {
  const auto rep = compute_structure(spec, p.count("gap_n", 1000, 2), p.count("gap_trials", 100, 2), rng);
  if (!rep.gap_certified) {
    std::ostringstream os;
    os << "gap uncertified: 99% CI of lambda_1 - lambda_2 is [" << rep.gap.ci.lo << ", " << rep.gap.ci.hi << "]";
    throw GapUncertified(os.str());
  }
  return rep;
}

std::string points_csv(const std::vector<Vector<double>>& pts) {
  std::ostringstream os;
  os.precision(17);
  const std::size_t d = pts.empty() ? 0 : pts[0].size();
  for (std::size_t i = 0; i < d; ++i) os << (i ? "," : "") << 'x' << i + 1;
  os << '\n';
  for (const auto& p : pts) {
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
    os << '\n';
  }
  return os.str();
}

template <class F>
json spectrum_command(const MeasureSpec<F>& spec, const RunConfig& cfg) {
  const Params p(cfg.params, cfg.command, {"n", "trials"});
  const std::size_t n = p.count("n", 2000), trials = p.count("trials", 400, 2);
  const RngStream rng(cfg.seed);
  const auto est = lyapunov_spectrum(spec, n, trials, rng.substream(1));
  json j{{"command", "spectrum"}, {"n", n}, {"trials", trials}, {"lambda", est.lambda}, {"stderr", est.stderr_}};
  json ci = json::array();
  for (std::size_t i = 0; i < est.lambda.size(); ++i) ci.push_back(to_json(est.ci(i)));
  j["ci99"] = ci;
  if (spec.dimension() >= 2) j["gap"] = to_json(top_gap(spec, n, trials, rng.substream(1)));
  return j;
}

template <class F>
json structure_command(const MeasureSpec<F>& spec, const RunConfig& cfg) {
  const Params p(cfg.params, cfg.command, {"n", "trials", "duality"});
  const std::size_t n = p.count("n", 1000), trials = p.count("trials", 100, 2);
  const RngStream rng(cfg.seed);
  const auto rep = compute_structure(spec, n, trials, rng.substream(1));
  json j = structure_json(rep);
  j["command"] = "structure";
  if (p.flag("duality", false)) {
    if (!rep.gap_certified) throw GapUncertified("gap uncertified: duality needs lambda_1 > lambda_2");
    j["duality_ok"] = duality_check(spec, rep, n, trials, rng.substream(2));
  }
  return j;
}

json stationary_command(const MeasureSpec<RealField>& spec, const RunConfig& cfg) {
  const Params p(cfg.params, cfg.command, with_gap({"n", "trials", "sampler", "x", "residual"}));
  const RngStream rng(cfg.seed);
  const auto rep = certified_structure(spec, p, rng.substream(1));
  const std::size_t n = p.count("n", 200), trials = p.count("trials", 10000, 4);
  const auto kind = p.text("sampler", "top_direction");
  StationarySampler sampler;
  if (kind == "top_direction") {
    sampler = TopDirection{};
  } else if (kind == "push_forward") {
    const auto x = p.vec("x", spec.dimension());
    if (!x) throw ConfigError("params.x is required for the push_forward sampler");
    sampler = PushForward{*x, rep.L_mu};
  } else {
    throw ConfigError("params.sampler must be \"top_direction\" or \"push_forward\"");
  }
  EmpiricalMeasure nu;
  try {
    nu = sample_stationary(spec, n, trials, rng.substream(2), sampler);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  write_text(cfg.out_dir / "nu_samples.csv", points_csv(nu.points));
  std::vector<std::array<double, 2>> xy;
  for (const auto& v : nu.points) xy.push_back({v[0], v.size() > 1 ? v[1] : 0.0});
  write_text(cfg.out_dir / "nu_samples.svg", emit_svg_scatter(xy, {"Stationary samples", "x1", "x2"}));
  json j{{"command", "stationary"}, {"sampler", nu.sampler}, {"n", n}, {"trials", trials},
         {"L_mu", to_json(rep.L_mu)}, {"gap", to_json(rep.gap)}};
  if (p.flag("residual", true)) {
    const auto t = stationarity_residual(nu, spec, rng.substream(3));
    j["residual"] = {{"statistic", t.statistic}, {"threshold", t.threshold}, {"null_mean", t.null_mean},
                     {"null_sd", t.null_sd}, {"reject", t.reject}};
  }
  return j;
}

json limitset_command(const MeasureSpec<RealField>& spec, const RunConfig& cfg) {
  const Params p(cfg.params, cfg.command, with_gap({"depth", "budget", "compare_nu", "nu_n", "nu_trials"}));
  const RngStream rng(cfg.seed);
  const auto rep = certified_structure(spec, p, rng.substream(1));
  const std::size_t depth = p.count("depth", 8), budget = p.count("budget", 1u << 20);
  LimitSetOptions opt;
  opt.L = rep.L_mu;
  opt.U = rep.U_mu;
  const auto cloud = limit_set_sample(spec, depth, budget, rng.substream(2), opt);
  std::ostringstream os;
  os.precision(17);
  os << "word,lambda_normalized,gap_ratio,off_L,in_U";
  for (std::size_t i = 0; i < spec.dimension(); ++i) os << ",x" << i + 1;
  os << '\n';
  std::vector<Vector<double>> pts;
  for (const auto& c : cloud) {
    os << word_label(c.word) << ',' << c.lambda_top << ',' << c.gap_ratio << ',' << c.off_L << ',' << c.in_U;
    for (double x : c.attractor) os << ',' << x;
    os << '\n';
    pts.push_back(c.attractor);
  }
  write_text(cfg.out_dir / "attractors.csv", os.str());
  json j{{"command", "limitset"}, {"depth", depth}, {"budget", budget}, {"attractors", cloud.size()}};
  if (p.flag("compare_nu", false)) {
    const auto nu = sample_stationary(spec, p.count("nu_n", 200), p.count("nu_trials", 10000, 2), rng.substream(3),
                                      TopDirection{});
    j["hausdorff_to_nu"] = hausdorff_distance(pts, nu.points);
    j["cloud_to_nu"] = directed_distance(pts, nu.points);
    j["nu_to_cloud"] = directed_distance(nu.points, pts);
  }
  return j;
}

Subspace<RealField> subspace_param(const Params& p, const std::string& key, std::size_t d) {
  const auto& a = p.raw()[key];
  if (!a.is_array() || a.empty()) throw ConfigError("params." + key + " must be a nonempty array of vectors");
  std::vector<Vector<double>> vs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Params inner(json{{"v", a[i]}}, "", {"v"});
    vs.push_back(*inner.vec("v", d));
  }
  return Subspace<RealField>::span(kReal, vs, d);
}

json jsr_command(const MeasureSpec<RealField>& spec, const RunConfig& cfg) {
  const Params p(cfg.params, cfg.command, with_gap({"depth", "L", "experimental"}));
  const RngStream rng(cfg.seed);
  const std::size_t depth = p.count("depth", 8);
  Subspace<RealField> l = p.raw().contains("L") ? subspace_param(p, "L", spec.dimension())
                                                : certified_structure(spec, p, rng.substream(1)).L_mu;
  if (!l.is_proper_nonzero()) throw ConfigError("L must be a proper nonzero subspace for the skew-product chart");
  if (!is_invariant(spec, l)) throw ConfigError("subspace not T_mu-stable");
  const auto chart = make_chart(spec, l);
  json j{{"command", "jsr"}, {"L", to_json(l)}};
  if (chart.fiber_dim() != 1) {
    if (!p.flag("experimental", false)) throw ConfigError("criterion stated for one-dimensional L");
    const auto c = compactness_certificate(spec, chart, depth, true);
    j["certificate"] = {{"r_upper", c.bounds.upper}, {"pass", c.pass}, {"experimental", true}, {"reason", c.reason}};
    return j;
  }
  j["compactness"] = compactness_report(spec, chart, depth);
  return j;
}

std::string curve_svg(const DecayCurve& c, const std::string& title) {
  std::vector<std::array<double, 2>> xy;
  for (std::size_t i = 0; i < c.n.size(); ++i)
    if (c.statistic[i] > 0.0) xy.push_back({static_cast<double>(c.n[i]), std::log(c.statistic[i])});
  return emit_svg_scatter(xy, {title, "n", "log statistic", 640, 480, 3.0});
}

json curve_json(const DecayCurve& c) {
  return {{"n", c.n}, {"statistic", c.statistic}, {"stderr", c.stderr_}, {"slope", c.slope},
          {"intercept", c.intercept}, {"residual", c.residual}, {"slope_ci99", to_json(c.slope_ci)},
          {"fitted_points", c.fitted_points}};
}

json regularity_command(const MeasureSpec<RealField>& spec, const RunConfig& cfg) {
  const Params p(cfg.params, cfg.command,
                 with_gap({"n_grid", "trials", "x", "f", "eps", "alpha_grid", "nu_n", "nu_trials", "hyperplanes"}));
  const RngStream rng(cfg.seed);
  const std::size_t d = spec.dimension();
  const auto rep = certified_structure(spec, p, rng.substream(1));
  const auto dual = compute_structure(transpose_measure(spec), p.count("gap_n", 1000, 2), p.count("gap_trials", 100, 2),
                                      rng.substream(2));
  const auto grid = p.counts("n_grid", {10, 20, 40, 60, 80, 100, 120, 140, 160, 180, 200});
  const std::size_t trials = p.count("trials", 10000, 2);
  Vector<double> x = p.vec("x", d).value_or(Vector<double>(d, 1.0));
  Vector<double> f = p.vec("f", d).value_or(Vector<double>(d, 1.0));
  DecayOptions opt;
  opt.L = rep.L_mu;
  opt.L_check = dual.L_mu;
  DecayCurve dir, hit;
  try {
    dir = direction_convergence_rate(spec, x, grid, trials, rng.substream(3), opt);
    hit = hitting_probability_curve(spec, x, f, p.real("eps", 0.1), grid, trials, rng.substream(4), opt);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  std::ostringstream a, b;
  write_curve_csv(a, dir);
  write_curve_csv(b, hit);
  write_text(cfg.out_dir / "direction.csv", a.str());
  write_text(cfg.out_dir / "hitting.csv", b.str());
  write_text(cfg.out_dir / "direction.svg", curve_svg(dir, "Convergence in direction"));
  write_text(cfg.out_dir / "hitting.svg", curve_svg(hit, "Hyperplane hitting probability"));

  const auto nu = sample_stationary(spec, p.count("nu_n", 200), p.count("nu_trials", 5000, 2), rng.substream(5),
                                    TopDirection{});
  const std::size_t hyps = p.count("hyperplanes", 100);
  const auto planes = hyperplane_grid(nu, hyps, hyps, dual.L_mu, rng.substream(6));
  std::vector<double> alphas;
  for (int i = 1; i <= 20; ++i) alphas.push_back(0.1 * i);
  alphas = p.reals("alpha_grid", alphas);
  HolderEstimate h;
  try {
    h = holder_alpha_estimate(nu, planes, alphas, rng.substream(7));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return {{"command", "regularity"},
          {"L_mu", to_json(rep.L_mu)},
          {"L_dual", to_json(dual.L_mu)},
          {"direction", curve_json(dir)},
          {"hitting", curve_json(hit)},
          {"holder", {{"alpha_hat", h.alpha_hat}, {"ci", to_json(h.ci)}, {"alpha_grid", h.alpha_grid},
                      {"sup_integral", h.sup_integral}, {"cv", h.cv}, {"sup_hyperplane", planes[h.sup_hyperplane].f}}}};
}

}  // namespace

json run(const RunConfig& cfg) {
  json findings;
  if (cfg.command == "reproduce") {
    const Params p(cfg.params, cfg.command, {"example"});
    const auto id = p.count("example", 0);
    if (id < 1 || id > 3) throw ConfigError("params.example must be 1, 2 or 3");
    return reproduce_example(static_cast<int>(id), cfg.seed, cfg.out_dir);
  }
  if (const auto* padic = std::get_if<MeasureSpec<PadicField>>(&cfg.measure)) {
    if (cfg.command == "spectrum")
      findings = spectrum_command(*padic, cfg);
    else if (cfg.command == "structure")
      findings = structure_command(*padic, cfg);
    else
      throw ConfigError("command " + cfg.command + " is implemented over the reals only");
  } else {
    const auto& spec = std::get<MeasureSpec<RealField>>(cfg.measure);
    if (cfg.command == "spectrum")
      findings = spectrum_command(spec, cfg);
    else if (cfg.command == "structure")
      findings = structure_command(spec, cfg);
    else if (cfg.command == "stationary")
      findings = stationary_command(spec, cfg);
    else if (cfg.command == "limitset")
      findings = limitset_command(spec, cfg);
    else if (cfg.command == "jsr")
      findings = jsr_command(spec, cfg);
    else
      findings = regularity_command(spec, cfg);
  }
  findings["measure"] = cfg.measure_label;
  findings["seed"] = cfg.seed;
  write_json(cfg.out_dir / (cfg.command + ".json"), findings);
  return findings;
}

}  // namespace rmp::cli
