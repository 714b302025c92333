#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "cli.hpp"
#include "rmp/structure.hpp"

namespace rmp::cli {

namespace {

int fail(int code, const std::string& message) {
  std::cerr << json{{"error", message}, {"exit_code", code}}.dump() << std::endl;
  return code;
}

}  // namespace

int main_entry(int argc, char** argv) {
  CLI::App app{"Random matrix product laboratory"};
  app.require_subcommand(1);
  std::string config_path, out_dir;
  std::uint64_t seed = 0;
  int example = 0;

  auto* run_cmd = app.add_subcommand("run", "execute a JSON run configuration");
  run_cmd->add_option("--config", config_path, "configuration file")->required();
  auto* run_seed = run_cmd->add_option("--seed", seed, "override the configured seed");
  auto* run_out = run_cmd->add_option("--out", out_dir, "override the output directory");

  auto* rep_cmd = app.add_subcommand("reproduce", "figure bundle for one of the guiding examples");
  rep_cmd->add_option("--example", example, "example id")->required()->check(CLI::Range(1, 3));
  auto* rep_seed = rep_cmd->add_option("--seed", seed, "random seed (default 1)");
  rep_cmd->add_option("--out", out_dir, "output directory (default reproduce-example<id>)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(kExitInvalid, e.what());
  }

  try {
    if (*run_cmd) {
      std::ifstream in(config_path);
      if (!in) return fail(kExitInvalid, "cannot read config " + config_path);
      json doc;
      try {
        doc = json::parse(in);
      } catch (const json::parse_error& e) {
        return fail(kExitInvalid, std::string("config is not valid JSON: ") + e.what());
      }
      auto cfg = parse_config(doc);
      if (*run_seed) cfg.seed = seed;
      if (*run_out) cfg.out_dir = out_dir;
      run(cfg);
    } else {
      const std::uint64_t s = *rep_seed ? seed : 1;
      reproduce_example(example, s, out_dir.empty() ? "reproduce-example" + std::to_string(example) : out_dir);
    }
  } catch (const ConfigError& e) {
    return fail(kExitInvalid, e.what());
  } catch (const json::exception& e) {
    return fail(kExitInvalid, e.what());
  } catch (const GapUncertified& e) {
    return fail(kExitGapUncertified, e.what());
  } catch (const std::exception& e) {
    return fail(1, e.what());
  }
  return kExitOk;
}

}  // namespace rmp::cli
