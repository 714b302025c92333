#include "report.hpp"

#include <fstream>

#include "rmp/limitset.hpp"

namespace rmp::cli {

namespace {

const RealField kReal;

struct Start {
  SkewPoint<RealField> point;
  std::string source;
};

// Attractors of proximal words of length <= 3 that lie off L, then points (0, ξ) with ξ a real
// eigenvector of some quotient block.
std::vector<Start> escape_starts(const MeasureSpec<RealField>& spec, const SkewChart<RealField>& chart) {
  std::vector<Start> out;
  const std::size_t k = spec.atoms.size();
  for (std::size_t len = 1; len <= 3; ++len) {
    std::vector<std::size_t> w(len, 0);
    while (true) {
      Matrix<double> p = Matrix<double>::identity(spec.dimension());
      for (auto i : w) p = p * spec.atoms[i];
      if (const auto prox = proximal_check(p)) {
        try {
          out.push_back({to_chart(prox->attractor, chart), "attractor of " + word_label(w)});
        } catch (const std::invalid_argument&) {
          // attractor in L: no chart coordinates
        }
      }
      std::size_t pos = len;
      while (pos > 0 && ++w[pos - 1] == k) w[--pos] = 0;
      if (pos == 0) break;
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    const auto c = chart.blocks(spec.atoms[i]).c;
    for (const auto& ev : eigenvalues(c)) {
      if (ev.im != 0.0) continue;
      const auto xi = eigenvector_for(c, ev.re);
      out.push_back({{Vector<double>(chart.fiber_dim(), 0.0), xi},
                     "base fixed point of " + atom_label(i) + " for eigenvalue " + std::to_string(ev.re)});
    }
  }
  return out;
}

}  // namespace

json to_json(const Interval& i) { return json::array({i.lo, i.hi}); }

json to_json(const Subspace<RealField>& w) {
  json basis = json::array();
  for (std::size_t i = 0; i < w.dim(); ++i) basis.push_back(w.basis_vector(i));
  return {{"dim", w.dim()}, {"ambient", w.ambient_dim()}, {"basis", basis}};
}

json to_json(const Subspace<PadicField>& w) {
  json basis = json::array();
  for (std::size_t i = 0; i < w.dim(); ++i) {
    json v = json::array();
    for (const auto& x : w.basis_vector(i)) v.push_back(to_string(x));
    basis.push_back(v);
  }
  return {{"dim", w.dim()}, {"ambient", w.ambient_dim()}, {"basis", basis}};
}

json to_json(const GapEstimate& g) {
  return {{"gap", g.gap}, {"stderr", g.stderr_}, {"ci99", to_json(g.ci)}, {"simple_top", g.simple_top}};
}

json to_json(const JsrBounds& b) {
  return {{"lower", b.lower},
          {"upper", b.upper},
          {"depth", b.depth},
          {"norm_used", to_string(b.norm_used)},
          {"upper_level", b.upper_level},
          {"lower_witness_word", b.witness_word_lower},
          {"words_explored", b.words_explored}};
}

json compactness_report(const MeasureSpec<RealField>& spec, const SkewChart<RealField>& chart, std::size_t depth) {
  json out;
  const auto cert = compactness_certificate(spec, chart, depth);
  const auto witness = noncompactness_witness(spec, chart, depth);
  out["certificate"] = {{"r_upper", cert.bounds.upper},
                        {"r_lower", cert.bounds.lower},
                        {"depth", cert.bounds.depth},
                        {"pass", cert.pass},
                        {"norm_used", to_string(cert.bounds.norm_used)},
                        {"witness", cert.bounds.witness_word_lower},
                        {"reason", cert.reason}};
  out["jsr_witness"] = witness ? json(*witness) : json(nullptr);
  out["escape"] = nullptr;
  if (cert.pass) {
    out["verdict"] = "compact";
    return out;
  }
  constexpr std::size_t kSteps = 5000;
  constexpr double kThreshold = 1e3;
  const auto starts = escape_starts(spec, chart);
  for (std::size_t g = 0; g < spec.atoms.size() && out["escape"].is_null(); ++g)
    for (const auto& s : starts) {
      const auto r = orbit_escape_test(spec.atoms[g], s.point, chart, kSteps, kThreshold);
      if (!r.escaped) continue;
      out["escape"] = {{"atom", atom_label(g)},
                       {"start", s.source},
                       {"t", s.point.t},
                       {"xi", s.point.xi},
                       {"pinned_base", r.pinned_base},
                       {"steps", r.fiber_norms.size()},
                       {"threshold", kThreshold},
                       {"final_fiber_norm", r.fiber_norms.back()}};
      break;
    }
  out["verdict"] = (witness || !out["escape"].is_null()) ? "non-compact" : "undecided";
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
}

void write_json(const std::filesystem::path& path, const json& doc) { write_text(path, doc.dump(2) + "\n"); }

std::string atom_label(std::size_t i) { return "g" + std::to_string(i + 1); }

std::string word_label(const std::vector<std::size_t>& w) {
  std::string s;
  for (auto i : w) s += atom_label(i);
  return s;
}

}  // namespace rmp::cli
