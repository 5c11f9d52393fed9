#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "mlpf/sim/run.hpp"

namespace mlpf::cli {

enum class CheckStatus { Pass, Fail, Skipped };

struct CheckResult {
  std::string name;
  double measured = 0.0;
  std::string tolerance;
  CheckStatus status = CheckStatus::Skipped;
  std::string note;
};

struct VerifyOptions {
  /// Mutation switch: evaluates L with the sign of K's exponent.
  bool corrupt_kernel_sign = false;
  /// Run the constant-delay reduction as part of the suite.
  bool classical = true;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  [[nodiscard]] bool passed() const;
};

[[nodiscard]] VerifyReport verify_suite(const sim::SimConfig& cfg,
                                        const VerifyOptions& opts = {});
void print_report(std::ostream& out, const VerifyReport& report);

/// One-paragraph summary echoed after a run.
[[nodiscard]] std::string summarize(const sim::SimConfig& cfg, const sim::RunLog& log);

/// Runs each config; a single config writes into out_dir, several write into
/// out_dir/<config stem>. Returns the process exit status.
int cmd_run(const std::vector<std::filesystem::path>& configs,
            const std::filesystem::path& out_dir, unsigned jobs, std::ostream& out,
            std::ostream& err);
int cmd_verify(const std::filesystem::path& config, const VerifyOptions& opts, std::ostream& out,
               std::ostream& err);
int cmd_gains(double q_star, double alpha, double b_max, double q_max, double s_offset,
              std::ostream& out, std::ostream& err);
int cmd_cert(const std::filesystem::path& config, std::ostream& out, std::ostream& err);

/// "error[Kind]: message" on one line.
void report_error(std::ostream& err, const std::exception& e);

}  // namespace mlpf::cli
