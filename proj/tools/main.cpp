// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using thinv::cli::RunOptions;
  CLI::App app{"Fredholm and one-sided invertibility analysis of Toeplitz-plus-Hankel operators"};
  RunOptions opts;
  std::string config, out;
  int n = 0;
  app.add_option("command", opts.command, "analyze | curve | verify | selftest")
      ->required()
      ->check(CLI::IsMember({"analyze", "curve", "verify", "selftest"}));
  auto* config_opt = app.add_option("--config", config, "JSON configuration file");
  app.add_option("--p", opts.p_values, "comma-separated exponents in (1, inf)")->delimiter(',');
  auto* out_opt = app.add_option("--out", out, "output path (stdout when absent)");
  auto* n_opt = app.add_option("--n", n, "finite section size");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return thinv::cli::kUsageError;
  }
  if (*config_opt) opts.config_path = config;
  if (*out_opt) opts.out = out;
  if (*n_opt) opts.n = n;
  return thinv::cli::run(opts);
}
