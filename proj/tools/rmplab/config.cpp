#include <cmath>
#include <set>

#include "cli.hpp"
#include "rmp/examples.hpp"

namespace rmp::cli {

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) throw ConfigError("unknown key '" + where + "." + key + "'");
}

Rational exact_entry(const json& v, const std::string& where) {
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::exception&) {
      throw ConfigError(where + ": cannot parse '" + v.get<std::string>() + "' as a rational");
    }
  }
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(where + ": non-finite entry");
    return Rational(d);  // binary value of the literal
  }
  throw ConfigError(where + ": entries must be numbers or rational strings");
}

double real_entry(const json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  return exact_entry(v, where).get_d();
}

template <class F, class Conv>
MeasureSpec<F> custom_measure(const F& field, const json& m, Conv&& conv) {
  using S = typename F::scalar;
  if (!m.contains("atoms") || !m["atoms"].is_array() || m["atoms"].empty())
    throw ConfigError("measure.atoms must be a nonempty array of square matrices");
  MeasureSpec<F> spec{field, {}, {}};
  const auto& atoms = m["atoms"];
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const std::string where = "measure.atoms[" + std::to_string(k) + "]";
    const auto& rows = atoms[k];
    if (!rows.is_array() || rows.empty()) throw ConfigError(where + " must be a nonempty array of rows");
    const std::size_t d = rows.size();
    Matrix<S> g(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      if (!rows[i].is_array() || rows[i].size() != d) throw ConfigError(where + " is not square");
      for (std::size_t j = 0; j < d; ++j) g(i, j) = conv(rows[i][j], where);
    }
    spec.atoms.push_back(std::move(g));
  }
  if (m.contains("weights")) {
    const auto& w = m["weights"];
    if (!w.is_array()) throw ConfigError("measure.weights must be an array");
    for (std::size_t k = 0; k < w.size(); ++k) {
      auto q = exact_entry(w[k], "measure.weights[" + std::to_string(k) + "]");
      q.canonicalize();
      spec.weights.push_back(q);
    }
  } else {
    spec = uniform_measure(field, std::move(spec.atoms));
  }
  return spec;
}

}  // namespace

RunConfig parse_config(const json& doc) {
  reject_unknown(doc, {"seed", "measure", "command", "params", "output"}, "config");
  RunConfig cfg;
  if (!doc.contains("command") || !doc["command"].is_string()) throw ConfigError("config.command must be a string");
  cfg.command = doc["command"].get<std::string>();
  static const std::set<std::string> commands{"spectrum", "structure", "stationary", "limitset",
                                              "jsr",      "regularity", "reproduce"};
  if (!commands.count(cfg.command)) throw ConfigError("unknown command '" + cfg.command + "'");
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) throw ConfigError("config.seed must be a non-negative integer");
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("params")) {
    if (!doc["params"].is_object()) throw ConfigError("config.params must be an object");
    cfg.params = doc["params"];
  }
  if (doc.contains("output")) {
    reject_unknown(doc["output"], {"dir"}, "output");
    if (doc["output"].contains("dir")) {
      if (!doc["output"]["dir"].is_string()) throw ConfigError("output.dir must be a string");
      cfg.out_dir = doc["output"]["dir"].get<std::string>();
    }
  }

  if (!doc.contains("measure")) {
    if (cfg.command != "reproduce") throw ConfigError("config.measure is required");
    cfg.measure = examples::example(2);
    cfg.measure_label = "none";
    return cfg;
  }
  const auto& m = doc["measure"];
  reject_unknown(m, {"example", "field", "p", "atoms", "weights"}, "measure");
  std::string field = "real";
  if (m.contains("field")) {
    if (!m["field"].is_string()) throw ConfigError("measure.field must be \"real\" or \"padic\"");
    field = m["field"].get<std::string>();
  }
  if (field != "real" && field != "padic") throw ConfigError("measure.field must be \"real\" or \"padic\"");
  std::uint64_t p = 0;
  if (field == "padic") {
    if (!m.contains("p") || !m["p"].is_number_unsigned()) throw ConfigError("measure.p is required for a p-adic field");
    p = m["p"].get<std::uint64_t>();
  } else if (m.contains("p")) {
    throw ConfigError("measure.p only applies to a p-adic field");
  }

  if (m.contains("example")) {
    if (m.contains("atoms") || m.contains("weights")) throw ConfigError("measure.example excludes atoms and weights");
    const auto& e = m["example"];
    try {
      if (e.is_number_integer()) {
        const int id = e.get<int>();
        if (field == "padic")
          cfg.measure = examples::example_padic(id, p);
        else
          cfg.measure = examples::example(id);
        cfg.measure_label = "example" + std::to_string(id);
      } else if (e.is_string() && e.get<std::string>() == "diag21" && field == "real") {
        cfg.measure = examples::diag21();
        cfg.measure_label = "diag21";
      } else {
        throw ConfigError("measure.example must be 1, 2, 3 or \"diag21\"");
      }
    } catch (const std::invalid_argument& err) {
      throw ConfigError(std::string("measure.example: ") + err.what());
    }
  } else {
    cfg.measure_label = "custom";
    try {
      if (field == "padic")
        cfg.measure = custom_measure(PadicField(p), m, exact_entry);
      else
        cfg.measure = custom_measure(RealField{}, m, real_entry);
    } catch (const std::invalid_argument& err) {
      throw ConfigError(std::string("measure: ") + err.what());
    }
  }
  std::visit(
      [](const auto& spec) {
        const auto report = validate(spec);
        if (!report.ok()) throw ConfigError("invalid measure: " + report.summary());
      },
      cfg.measure);
  return cfg;
}

}  // namespace rmp::cli
