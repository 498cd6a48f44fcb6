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
#include <random>

namespace thermoweak {

/// Decorrelated child seed for grid point / replicate `index`, so parallel
/// and serial runs draw identical streams.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// mt19937_64 wrapped with a hand-rolled uniform so the stream does not
/// depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform double strictly inside (0, 1).
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53 + 0x1.0p-54;
  }

 private:
  std::mt19937_64 gen_;
};

/// Draws from the density proportional to exp(-x^2/2) * (1 + c1 x + c2 x^2),
/// the position/momentum law of a vacuum + first-excited superposition.
/// Requires the quadratic to be nonnegative (c1^2 <= 4 c2 or c1 = c2 = 0).
/// Sampling is by inverting the closed-form CDF
///   CDF(x) = [ (1+c2) Phi(x) - phi(x) (c1 + c2 x) ] / (1 + c2)
/// with a safeguarded Newton iteration, so no rejection step is involved and
/// the tails are exact.
double sample_gaussian_quadratic(double c1, double c2, double u);

/// Convenience: one draw using the next uniform from rng.
double sample_gaussian_quadratic(double c1, double c2, Rng& rng);

}  // namespace thermoweak
