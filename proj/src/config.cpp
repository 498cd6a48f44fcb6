// Copyright 2026 The thermoweak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "thermoweak/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace thermoweak {

std::vector<double> grid_values(const GridSpec& g) {
  std::vector<double> out;
  out.reserve(g.steps);
  if (g.steps == 1) {
    out.push_back(g.min);
    return out;
  }
  if (g.log_spacing) {
    const double lmin = std::log(g.min);
    const double lmax = std::log(g.max);
    for (int k = 0; k < g.steps; ++k) {
      out.push_back(std::exp(lmin + (lmax - lmin) * k / (g.steps - 1)));
    }
  } else {
    for (int k = 0; k < g.steps; ++k) {
      out.push_back(g.min + (g.max - g.min) * k / (g.steps - 1));
    }
  }
  return out;
}

namespace {

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) {
      throw std::invalid_argument("trailing characters");
    }
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: bad numeric value for '" + key + "': " + value);
  }
}

long parse_long(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(value, &pos);
    if (pos != value.size()) {
      throw std::invalid_argument("trailing characters");
    }
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: bad integer value for '" + key + "': " + value);
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") {
    return true;
  }
  if (value == "false" || value == "0" || value == "no" || value == "off") {
    return false;
  }
  throw ConfigError("config: bad boolean value for '" + key + "': " + value);
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) {
    return {};
  }
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::string fmt(double v) {
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  if (std::isnan(v)) {
    return "nan";
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "omega_z") {
    cfg.omega_z = parse_double(key, value);
  } else if (key == "omega_r") {
    cfg.omega_r = parse_double(key, value);
  } else if (key == "g0") {
    cfg.g0 = parse_double(key, value);
  } else if (key == "theta") {
    const double v = parse_double(key, value);
    cfg.theta = {v, v, 1, false};
  } else if (key == "theta_min") {
    cfg.theta.min = parse_double(key, value);
  } else if (key == "theta_max") {
    cfg.theta.max = parse_double(key, value);
  } else if (key == "theta_steps") {
    cfg.theta.steps = static_cast<int>(parse_long(key, value));
  } else if (key == "phi") {
    const double v = parse_double(key, value);
    cfg.phi = {v, v, 1, false};
  } else if (key == "phi_min") {
    cfg.phi.min = parse_double(key, value);
  } else if (key == "phi_max") {
    cfg.phi.max = parse_double(key, value);
  } else if (key == "phi_steps") {
    cfg.phi.steps = static_cast<int>(parse_long(key, value));
  } else if (key == "beta") {
    const double v = parse_double(key, value);
    cfg.beta = {v, v, 1, cfg.beta.log_spacing};
  } else if (key == "beta_min") {
    cfg.beta.min = parse_double(key, value);
  } else if (key == "beta_max") {
    cfg.beta.max = parse_double(key, value);
  } else if (key == "beta_steps") {
    cfg.beta.steps = static_cast<int>(parse_long(key, value));
  } else if (key == "log_beta") {
    cfg.beta.log_spacing = parse_bool(key, value);
  } else if (key == "fock_dim") {
    cfg.fock_dim = static_cast<int>(parse_long(key, value));
  } else if (key == "sigma") {
    cfg.sigma = parse_double(key, value);
  } else if (key == "seed") {
    cfg.seed = static_cast<std::uint64_t>(parse_long(key, value));
  } else if (key == "n_samples") {
    cfg.n_samples = static_cast<int>(parse_long(key, value));
  } else if (key == "replicates") {
    cfg.n_replicates = static_cast<int>(parse_long(key, value));
  } else if (key == "out") {
    cfg.out_path = value;
  } else if (key == "parallel") {
    cfg.parallel = parse_bool(key, value);
  } else if (key == "sw_re") {
    cfg.sw_re = parse_double(key, value);
  } else if (key == "sw_im") {
    cfg.sw_im = parse_double(key, value);
  } else {
    throw ConfigError("config: unknown key '" + key + "'");
  }
}

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("config: cannot open '" + path + "'");
  }
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: line " + std::to_string(lineno) +
                        " of '" + path + "' is not key = value");
    }
    apply_setting(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void validate(const RunConfig& cfg) {
  constexpr double pi = std::numbers::pi;
  const auto check_grid = [](const char* name, const GridSpec& g, double lo, double hi,
                             bool allow_hi_open) {
    if (g.steps < 1) {
      throw ConfigError(std::string("config: ") + name + "_steps must be >= 1");
    }
    if (g.steps > 1 && !(g.min <= g.max)) {
      throw ConfigError(std::string("config: ") + name + " range must be ordered");
    }
    const double top = g.steps > 1 ? g.max : g.min;
    const bool hi_ok = allow_hi_open ? (top < hi) : (top <= hi);
    if (!(g.min >= lo) || !hi_ok) {
      throw ConfigError(std::string("config: ") + name + " out of range");
    }
    if (g.log_spacing && g.steps > 1 && !(g.min > 0.0)) {
      throw ConfigError(std::string("config: log spacing requires ") +
                        name + "_min > 0");
    }
  };
  check_grid("theta", cfg.theta, 0.0, pi, false);
  check_grid("phi", cfg.phi, 0.0, 2.0 * pi, true);
  check_grid("beta", cfg.beta, 0.0, std::numeric_limits<double>::infinity(), true);
  if (cfg.fock_dim < 2) {
    throw ConfigError("config: fock_dim must be >= 2");
  }
  if (!(cfg.sigma > 0.0)) {
    throw ConfigError("config: sigma must be > 0");
  }
  if (!(cfg.g0 >= 0.0)) {
    throw ConfigError("config: g0 must be >= 0");
  }
  if (cfg.n_samples < 1) {
    throw ConfigError("config: n_samples must be >= 1");
  }
  if (cfg.n_replicates < 1) {
    throw ConfigError("config: replicates must be >= 1");
  }
}

std::string config_echo(const RunConfig& cfg) {
  std::ostringstream out;
  out << "beta_max = " << fmt(cfg.beta.max) << '\n'
      << "beta_min = " << fmt(cfg.beta.min) << '\n'
      << "beta_steps = " << cfg.beta.steps << '\n'
      << "fock_dim = " << cfg.fock_dim << '\n'
      << "g0 = " << fmt(cfg.g0) << '\n'
      << "log_beta = " << (cfg.beta.log_spacing ? "true" : "false") << '\n'
      << "n_samples = " << cfg.n_samples << '\n'
      << "omega_r = " << fmt(cfg.omega_r) << '\n'
      << "omega_z = " << fmt(cfg.omega_z) << '\n'
      << "out = " << cfg.out_path << '\n'
      << "parallel = " << (cfg.parallel ? "true" : "false") << '\n'
      << "phi_max = " << fmt(cfg.phi.max) << '\n'
      << "phi_min = " << fmt(cfg.phi.min) << '\n'
      << "phi_steps = " << cfg.phi.steps << '\n'
      << "replicates = " << cfg.n_replicates << '\n'
      << "seed = " << cfg.seed << '\n'
      << "sigma = " << fmt(cfg.sigma) << '\n'
      << "theta_max = " << fmt(cfg.theta.max) << '\n'
      << "theta_min = " << fmt(cfg.theta.min) << '\n'
      << "theta_steps = " << cfg.theta.steps << '\n';
  return out.str();
}

}  // namespace thermoweak
