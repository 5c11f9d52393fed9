#include "mlpf/cli/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <string>

#include "mlpf/core/errors.hpp"

namespace mlpf::cli {

namespace {

namespace pt = boost::property_tree;

std::string unquote(std::string s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

double to_number(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorKind::Config, "key '" + key + "': expected a number, got '" + text + "'");
  }
  return v;
}

std::size_t to_count(const std::string& key, const std::string& text) {
  const double v = to_number(key, text);
  if (v < 0.0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
    throw Error(ErrorKind::Config, "key '" + key + "': expected a non-negative integer");
  }
  return static_cast<std::size_t>(v);
}

bool to_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw Error(ErrorKind::Config, "key '" + key + "': expected true or false, got '" + text + "'");
}

using Setter = std::function<void(sim::SimConfig&, const std::string& key, const std::string&)>;

Setter number(double sim::ModelParams::*field) {
  return [field](sim::SimConfig& c, const std::string& k, const std::string& v) {
    c.params.*field = to_number(k, v);
  };
}

const std::map<std::string, Setter>& setters() {
  using sim::ModelParams;
  static const std::map<std::string, Setter> table = {
      {"grid.n_cells",
       [](sim::SimConfig& c, const std::string& k, const std::string& v) {
         c.n_cells = static_cast<int>(to_count(k, v));
       }},
      {"grid.length",
       [](sim::SimConfig& c, const std::string& k, const std::string& v) {
         c.length = to_number(k, v);
       }},
      {"time.dt",
       [](sim::SimConfig& c, const std::string& k, const std::string& v) {
         c.dt = to_number(k, v);
       }},
      {"time.t_final",
       [](sim::SimConfig& c, const std::string& k, const std::string& v) {
         c.t_final = to_number(k, v);
       }},
      {"plant.model",
       [](sim::SimConfig& c, const std::string& k, const std::string& v) {
         if (v == "production_line") c.model = sim::ModelKind::ProductionLine;
         else if (v == "section2") c.model = sim::ModelKind::Section2Linear;
         else if (v == "section3") c.model = sim::ModelKind::Section3General;
         else throw Error(ErrorKind::Config, "key '" + k + "': unknown model '" + v + "'");
       }},
      {"plant.processing_time", number(&ModelParams::processing_time)},
      {"plant.tau", number(&ModelParams::tau)},
      {"plant.rework", number(&ModelParams::rework)},
      {"plant.friction", number(&ModelParams::friction)},
      {"plant.alpha", number(&ModelParams::alpha)},
      {"plant.mu", number(&ModelParams::mu)},
      {"plant.q_max", number(&ModelParams::q_max)},
      {"plant.ode_a", number(&ModelParams::ode_a)},
      {"plant.ode_b", number(&ModelParams::ode_b)},
      {"plant.ode_cubic", number(&ModelParams::ode_cubic)},
      {"plant.gain_k", number(&ModelParams::gain_k)},
      {"plant.speed_min", number(&ModelParams::speed_min)},
      {"plant.speed_max", number(&ModelParams::speed_max)},
      {"plant.recycle", number(&ModelParams::recycle)},
      {"controller.q_star", number(&ModelParams::q_star)},
      {"controller.b_max", number(&ModelParams::b_max)},
      {"controller.s_offset", number(&ModelParams::s_offset)},
      {"controller.uncompensated_input",
       [](sim::SimConfig& c, const std::string& k, const std::string& v) {
         if (v == "density") c.uncompensated_injection = sim::Injection::Density;
         else if (v == "flux") c.uncompensated_injection = sim::Injection::Flux;
         else throw Error(ErrorKind::Config, "key '" + k + "': expected density or flux");
       }},
      {"scenario.scenario",
       [](sim::SimConfig& c, const std::string& k, const std::string& v) {
         if (v == "compensated") c.scenario = sim::Scenario::Compensated;
         else if (v == "uncompensated") c.scenario = sim::Scenario::Uncompensated;
         else if (v == "open_loop") c.scenario = sim::Scenario::OpenLoop;
         else throw Error(ErrorKind::Config, "key '" + k + "': unknown scenario '" + v + "'");
       }},
      {"scenario.initial_state",
       [](sim::SimConfig& c, const std::string& k, const std::string& v) {
         c.initial_state = to_number(k, v);
       }},
      {"scenario.initial_profile",
       [](sim::SimConfig& c, const std::string& k, const std::string& v) {
         const double level = to_number(k, v);
         c.initial_profile = [level](double) { return level; };
       }},
      {"output.snapshot_every",
       [](sim::SimConfig& c, const std::string& k, const std::string& v) {
         c.snapshot_every = to_count(k, v);
       }},
      {"output.target_diagnostics",
       [](sim::SimConfig& c, const std::string& k, const std::string& v) {
         c.target_diagnostics = to_bool(k, v);
       }},
      {"output.diagnostics_every",
       [](sim::SimConfig& c, const std::string& k, const std::string& v) {
         c.diagnostics_every = to_count(k, v);
       }},
  };
  return table;
}

}  // namespace

sim::SimConfig parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorKind::Config, std::string("malformed config: ") + e.what());
  }
  sim::SimConfig cfg;
  for (const auto& [section, body] : tree) {
    if (!body.data().empty()) {
      throw Error(ErrorKind::Config, "key '" + section + "' must belong to a section");
    }
    for (const auto& [key, value] : body) {
      const std::string full = section + "." + key;
      const auto it = setters().find(full);
      if (it == setters().end()) throw Error(ErrorKind::Config, "unknown key '" + full + "'");
      it->second(cfg, full, unquote(value.get_value<std::string>()));
    }
  }
  return cfg;
}

sim::SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot read config file '" + path.string() + "'");
  return parse_config(in);
}

}  // namespace mlpf::cli
