#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "mlpf/sim/run.hpp"

namespace mlpf::cli {

/// Shortest decimal text that parses back to the same double.
[[nodiscard]] std::string format_double(double v);

void write_ode_csv(std::ostream& out, const sim::RunLog& log);
void write_pde_csv(std::ostream& out, const sim::RunLog& log);
void write_target_csv(std::ostream& out, const sim::RunLog& log);
void write_gains_csv(std::ostream& out, const sim::RunLog& log);
void write_certificate(std::ostream& out, const sim::RunLog& log);

/// Writes ode.csv, pde.csv, target.csv, gains.csv and cert.txt into dir.
void write_run(const std::filesystem::path& dir, const sim::RunLog& log);

}  // namespace mlpf::cli
