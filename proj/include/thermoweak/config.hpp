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

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace thermoweak {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One sweep axis. steps == 1 pins the axis to `min`.
struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  int steps = 1;
  bool log_spacing = false;
};

std::vector<double> grid_values(const GridSpec& g);

/// Fully resolved run configuration. Defaults reproduce the reference
/// operating point: omega_z = 4.8e6 rad/s, omega_r = 3e9 rad/s, phi = 0,
/// theta = pi/4, g0 = 1e-8, with beta swept across the high-temperature
/// window beta * omega_r <= 0.1.
struct RunConfig {
  double omega_z = 4.8e6;
  double omega_r = 3e9;
  double g0 = 1e-8;
  GridSpec theta{0.78539816339744831, 0.78539816339744831, 1, false};
  GridSpec phi{0.0, 0.0, 1, false};
  GridSpec beta{1e-12, 3.3e-11, 25, false};
  int fock_dim = 32;
  double sigma = 1.0;
  std::uint64_t seed = 12345;
  int n_samples = 10000;
  int n_replicates = 100;
  std::string out_path;
  bool parallel = true;

  // Optional externally measured weak value (invert-beta input).
  std::optional<double> sw_re;
  std::optional<double> sw_im;
};

/// Apply one key=value setting; throws ConfigError on unknown keys or
/// malformed values. This is the single write path shared by the file
/// loader and the flag layer, so precedence is by call order.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Load a flat key=value file ('#' comments, blank lines ignored).
void load_config_file(RunConfig& cfg, const std::string& path);

/// Range/consistency checks; throws ConfigError.
void validate(const RunConfig& cfg);

/// Resolved-configuration echo (sorted key=value lines) for provenance;
/// written alongside every file-producing run as <out>.config.txt.
std::string config_echo(const RunConfig& cfg);

}  // namespace thermoweak
