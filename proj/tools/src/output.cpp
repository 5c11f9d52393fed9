#include "mlpf/cli/output.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <ostream>

#include "mlpf/core/errors.hpp"

namespace mlpf::cli {

std::string format_double(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw Error(ErrorKind::Domain, "number formatting failed");
  return {buf.data(), ptr};
}

void write_ode_csv(std::ostream& out, const sim::RunLog& log) {
  out << "t,Q,U,nu_in,nu_out,q_flux,u0\n";
  for (const auto& s : log.steps) {
    out << format_double(s.t) << ',' << format_double(s.state) << ','
        << format_double(s.control) << ',' << format_double(s.nu_in) << ','
        << format_double(s.nu_out) << ',' << format_double(s.q_flux) << ','
        << format_double(s.u0) << '\n';
  }
}

void write_pde_csv(std::ostream& out, const sim::RunLog& log) {
  out << 't';
  for (std::size_t i = 0; i < log.grid.nodes(); ++i) out << ",x_" << i;
  out << '\n';
  for (const auto& snap : log.snapshots) {
    out << format_double(snap.t);
    for (double v : snap.values) out << ',' << format_double(v);
    out << '\n';
  }
}

void write_target_csv(std::ostream& out, const sim::RunLog& log) {
  out << "t,sup_w,w_at_D\n";
  for (const auto& s : log.steps) {
    if (!s.has_diagnostics) continue;
    out << format_double(s.t) << ',' << format_double(s.sup_w) << ','
        << format_double(s.w_at_d) << '\n';
  }
}

void write_gains_csv(std::ostream& out, const sim::RunLog& log) {
  out << "t,K_DD\n";
  for (const auto& s : log.steps) {
    if (!s.has_diagnostics) continue;
    out << format_double(s.t) << ',' << format_double(s.kernel_dd) << '\n';
  }
}

void write_certificate(std::ostream& out, const sim::RunLog& log) {
  if (!log.certificate) {
    out << "certificate: not applicable\n";
    return;
  }
  const auto& c = *log.certificate;
  out << "lhs = " << format_double(c.lhs) << '\n'
      << "rhs = " << format_double(c.rhs) << '\n'
      << "M = " << format_double(c.m) << '\n'
      << "rho_bar = " << format_double(c.rho_bar) << '\n'
      << "u_lower = " << format_double(c.u_lower) << '\n'
      << "satisfied = " << (c.satisfied ? "true" : "false") << '\n';
}

namespace {

template <class Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Config, "cannot write '" + path.string() + "'");
  writer(out);
  if (!out) throw Error(ErrorKind::Config, "write failed for '" + path.string() + "'");
}

}  // namespace

void write_run(const std::filesystem::path& dir, const sim::RunLog& log) {
  std::filesystem::create_directories(dir);
  write_file(dir / "ode.csv", [&](std::ostream& o) { write_ode_csv(o, log); });
  write_file(dir / "pde.csv", [&](std::ostream& o) { write_pde_csv(o, log); });
  write_file(dir / "target.csv", [&](std::ostream& o) { write_target_csv(o, log); });
  write_file(dir / "gains.csv", [&](std::ostream& o) { write_gains_csv(o, log); });
  write_file(dir / "cert.txt", [&](std::ostream& o) { write_certificate(o, log); });
}

}  // namespace mlpf::cli
