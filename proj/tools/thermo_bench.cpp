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

// Timing comparison between the serial reference kernels and the
// OpenMP-parallel ones, plus a check that both produce identical output.

#include <chrono>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "thermoweak/sweep.hpp"

namespace tw = thermoweak;

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double best_of_ms(int reps, F&& body) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    body();
    const auto t1 = Clock::now();
    best = std::min(best,
                    std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::cout << "OpenMP threads: " << omp_get_max_threads() << "\n";
#else
  std::cout << "built without OpenMP; parallel mode runs serially\n";
#endif

  tw::RunConfig sweep_cfg;
  sweep_cfg.theta = {0.05, 3.09, 48, false};
  sweep_cfg.beta = {1e-12, 3.3e-11, 48, false};

  std::vector<tw::SweepRecord> serial_rows, parallel_rows;
  const double sweep_serial_ms = best_of_ms(3, [&] {
    serial_rows = tw::run_qfi_sweep(sweep_cfg, tw::ExecMode::serial);
  });
  const double sweep_parallel_ms = best_of_ms(3, [&] {
    parallel_rows = tw::run_qfi_sweep(sweep_cfg, tw::ExecMode::parallel);
  });
  const bool sweep_identical =
      tw::sweep_csv_string(serial_rows) == tw::sweep_csv_string(parallel_rows);

  std::cout << "qfi-sweep " << serial_rows.size() << " points:"
            << "  serial " << sweep_serial_ms << " ms"
            << "  parallel " << sweep_parallel_ms << " ms"
            << "  speedup " << sweep_serial_ms / sweep_parallel_ms
            << "  identical=" << (sweep_identical ? "yes" : "NO") << "\n";

  tw::ExperimentConfig exp_cfg;
  exp_cfg.beta_true = 0.01;
  exp_cfg.angles = {0.78539816339744831, 0.0};
  exp_cfg.coupling = {0.05};
  exp_cfg.spin = {4.8e-3, 3.0};
  exp_cfg.n_samples = 4000;
  exp_cfg.n_replicates = 64;
  exp_cfg.seed = 7;

  tw::ExperimentRecord serial_rec, parallel_rec;
  exp_cfg.parallel = false;
  const double exp_serial_ms =
      best_of_ms(3, [&] { serial_rec = tw::simulate_experiment(exp_cfg); });
  exp_cfg.parallel = true;
  const double exp_parallel_ms =
      best_of_ms(3, [&] { parallel_rec = tw::simulate_experiment(exp_cfg); });
  const bool exp_identical = tw::experiment_csv_string(serial_rec) ==
                             tw::experiment_csv_string(parallel_rec);

  std::cout << "experiment " << exp_cfg.n_replicates << "x" << exp_cfg.n_samples
            << " samples:"
            << "  serial " << exp_serial_ms << " ms"
            << "  parallel " << exp_parallel_ms << " ms"
            << "  speedup " << exp_serial_ms / exp_parallel_ms
            << "  identical=" << (exp_identical ? "yes" : "NO") << "\n";

  return (sweep_identical && exp_identical) ? 0 : 1;
}
