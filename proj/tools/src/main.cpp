#include <CLI11.hpp>
#include <iostream>

#include "mlpf/cli/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Predictor-feedback boundary control laboratory"};
  app.require_subcommand(1);

  std::vector<std::filesystem::path> run_configs;
  std::filesystem::path out_dir = "out";
  unsigned jobs = 1;
  auto* run = app.add_subcommand("run", "simulate one or more configs and write CSV logs");
  run->add_option("config", run_configs, "config file(s)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "output directory")->required();
  run->add_option("--jobs", jobs, "independent configs run in parallel")
      ->check(CLI::PositiveNumber);

  std::filesystem::path verify_config;
  mlpf::cli::VerifyOptions verify_opts;
  auto* verify = app.add_subcommand("verify", "run the structural and oracle checks");
  verify->add_option("config", verify_config, "config file")->required()->check(CLI::ExistingFile);
  verify->add_flag("--corrupt-kernel-sign", verify_opts.corrupt_kernel_sign,
                   "evaluate L with the wrong exponent sign (mutation check)");
  bool skip_classical = false;
  verify->add_flag("--skip-classical", skip_classical, "omit the constant-delay reduction run");

  double q_star = 0.3;
  double alpha = 0.5;
  double b_max = 1.2;
  double q_max = 1.0;
  double s_offset = 20.0;
  auto* gains = app.add_subcommand("gains", "print S_min and the bang-bang branch gains");
  gains->add_option("--q-star", q_star, "setpoint Q*")->required();
  gains->add_option("--alpha", alpha, "connectivity coefficient")->required();
  gains->add_option("--b-max", b_max, "maximum input flux")->required();
  gains->add_option("--q-max", q_max, "queue capacity")->required();
  gains->add_option("--s-offset", s_offset, "S - S_min")->capture_default_str();

  std::filesystem::path cert_config;
  auto* cert = app.add_subcommand("cert", "evaluate the positivity certificate at t = 0");
  cert->add_option("config", cert_config, "config file")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return mlpf::cli::cmd_run(run_configs, out_dir, jobs, std::cout, std::cerr);
  if (verify->parsed()) {
    verify_opts.classical = !skip_classical;
    return mlpf::cli::cmd_verify(verify_config, verify_opts, std::cout, std::cerr);
  }
  if (gains->parsed()) {
    return mlpf::cli::cmd_gains(q_star, alpha, b_max, q_max, s_offset, std::cout, std::cerr);
  }
  return mlpf::cli::cmd_cert(cert_config, std::cout, std::cerr);
}
