#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "levymult/levymult.h"

namespace {

int report_error(lm_status s) {
  std::cerr << "levymult: " << lm_last_error() << "\n";
  std::cout << "RESULT FAIL reason=" << lm_status_name(s) << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-symmetric Levy Fourier multipliers: symbols, spectral operators and Monte-Carlo checks"};
  std::string command, config_path, out_dir;
  std::optional<std::uint64_t> seed, paths;
  app.add_option("command", command, "symbol | apply | pair | probe | mc | gaussian-mc | selftest")
      ->required()
      ->check(CLI::IsMember({"symbol", "apply", "pair", "probe", "mc", "gaussian-mc", "selftest"}));
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--seed", seed, "override the master seed");
  app.add_option("--paths", paths, "override the Monte-Carlo path count")->check(CLI::PositiveNumber);
  app.add_option("--out", out_dir, "override the output directory");
  CLI11_PARSE(app, argc, argv);

  if (config_path.empty() && command != "selftest") {
    std::cerr << "levymult: --config is required for " << command << "\n";
    std::cout << "RESULT FAIL reason=MissingConfig\n";
    return 2;
  }

  lm_config* cfg = nullptr;
  lm_status s = config_path.empty() ? lm_config_parse(R"({"symbol":"stable"})", &cfg)
                                    : lm_config_load(config_path.c_str(), &cfg);
  if (s != LM_OK) return report_error(s);
  if (seed) lm_config_set_seed(cfg, *seed);
  if (paths) lm_config_set_paths(cfg, *paths);
  if (!out_dir.empty()) lm_config_set_out(cfg, out_dir.c_str());

  int passed = 0;
  char* report = nullptr;
  s = lm_run_command(command.c_str(), cfg, &passed, &report);
  lm_config_free(cfg);
  if (s != LM_OK) return report_error(s);
  std::fputs(report, stdout);
  lm_string_free(report);
  return passed ? 0 : 1;
}
