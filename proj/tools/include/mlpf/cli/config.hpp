#pragma once

#include <filesystem>
#include <istream>

#include "mlpf/sim/run.hpp"

namespace mlpf::cli {

/// Reads an INI document with sections [grid], [time], [plant], [controller],
/// [scenario], [output]. Unspecified keys keep their SimConfig defaults;
/// unknown sections or keys raise ConfigError naming the key.
[[nodiscard]] sim::SimConfig parse_config(std::istream& in);
[[nodiscard]] sim::SimConfig load_config(const std::filesystem::path& path);

}  // namespace mlpf::cli
