#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "rmp/measure.hpp"

namespace rmp::cli {

using json = nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitGapUncertified = 3;

/// Rejected configuration or parameters; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using AnyMeasure = std::variant<MeasureSpec<RealField>, MeasureSpec<PadicField>>;

struct RunConfig {
  AnyMeasure measure;
  std::string measure_label;  // "example2", "custom", ...
  std::string command;
  json params = json::object();
  std::filesystem::path out_dir = ".";
  std::uint64_t seed = 1;
};

/// Schema check and conversion. Unknown keys anywhere are rejected.
RunConfig parse_config(const json& doc);

/// Executes one command and writes its artifacts under cfg.out_dir. Throws ConfigError or
/// GapUncertified; returns the findings document that was written.
json run(const RunConfig& cfg);

/// Figure bundle for Example 1, 2 or 3: cylinder and S^1 CSVs, SVG renders and findings JSON.
json reproduce_example(int id, std::uint64_t seed, const std::filesystem::path& out_dir);

struct SvgStyle {
  std::string title;
  std::string x_label = "x";
  std::string y_label = "y";
  int width = 640;
  int height = 480;
  double radius = 1.5;
  std::string color = "#1f4e8c";
};

/// Scatter plot with an axis box and end-point tick labels. Output bytes depend only on the input.
std::string emit_svg_scatter(const std::vector<std::array<double, 2>>& points, const SvgStyle& style = {});

/// Entry point shared by the executable and tests: returns the process exit code.
int main_entry(int argc, char** argv);

}  // namespace rmp::cli
