#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cli.hpp"
#include "rmp/jsr.hpp"
#include "rmp/randomwalk.hpp"
#include "rmp/skewprod.hpp"
#include "rmp/structure.hpp"

namespace rmp::cli {

json to_json(const Interval& i);
json to_json(const Subspace<RealField>& w);
json to_json(const Subspace<PadicField>& w);
json to_json(const GapEstimate& g);
json to_json(const JsrBounds& b);

template <class F>
json structure_json(const StructureReport<F>& rep) {
  json j;
  j["L_mu"] = to_json(rep.L_mu);
  j["U_mu"] = rep.U_mu ? to_json(*rep.U_mu) : json(nullptr);
  j["gap"] = to_json(rep.gap);
  j["gap_certified"] = rep.gap_certified;
  j["lambda"] = rep.spectrum.lambda;
  json levels = json::array();
  for (const auto& l : rep.fk_levels) levels.push_back({{"beta", l.beta}, {"stderr", l.stderr_}, {"subspace", to_json(l.subspace)}});
  j["fk_levels"] = levels;
  j["undecided"] = rep.undecided;
  return j;
}

/// Certificate, witness and orbit-escape evidence for a one-dimensional L, with a verdict.
json compactness_report(const MeasureSpec<RealField>& spec, const SkewChart<RealField>& chart, std::size_t depth);

void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const json& doc);

std::string atom_label(std::size_t i);
std::string word_label(const std::vector<std::size_t>& w);

}  // namespace rmp::cli
