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

#include "thermoweak/config.hpp"
#include "thermoweak/metrology.hpp"

namespace thermoweak {

/// One (theta, phi, beta) grid point. Column order is fixed; `status` is
/// "ok", "insensitive" (degenerate inversion denominator), or "error: ...".
struct SweepRecord {
  double theta;
  double phi;
  double beta;
  double temperature;  // 1/beta; "inf" in the beta = 0 row
  double s_w_re;
  double s_w_im;
  double beta_hat;
  double qfi;
  double crb;
  double z_mean;
  double p_mean;
  double postselect_prob;
  std::string status;
};

/// Field-by-field equality with bitwise double comparison, so NaN rows
/// compare equal to their parsed-back selves.
bool records_equal(const SweepRecord& a, const SweepRecord& b);

struct SweepSummary {
  std::size_t n_rows;
  double qfi_min;
  double qfi_max;
  std::size_t degenerate_count;
};

/// serial is the reference implementation; parallel distributes grid points
/// over OpenMP threads. Both fill rows in grid order (beta fastest, then
/// phi, then theta) and produce identical records.
enum class ExecMode { serial, parallel };

SweepRecord evaluate_grid_point(double theta, double phi, double beta,
                                const RunConfig& cfg);

std::vector<SweepRecord> run_qfi_sweep(const RunConfig& cfg, ExecMode mode);

SweepSummary summarize(const std::vector<SweepRecord>& rows);

/// RFC-4180-style CSV: numeric fields at 17 significant digits ("inf"/"nan"
/// for non-finite), LF line endings, quoting only where required.
std::string sweep_csv_string(const std::vector<SweepRecord>& rows);
void write_sweep_csv(const std::string& path, const std::vector<SweepRecord>& rows);
std::vector<SweepRecord> read_sweep_csv(const std::string& path);

std::string experiment_csv_string(const ExperimentRecord& record);
void write_experiment_csv(const std::string& path, const ExperimentRecord& record);

void write_text_file(const std::string& path, const std::string& content);

/// 17-significant-digit round-trippable formatting for one value.
std::string format_csv_value(double v);

}  // namespace thermoweak
