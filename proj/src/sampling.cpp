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

#include "thermoweak/sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace thermoweak {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779;  // 1/sqrt(2 pi)

double normal_pdf(double x) {
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  // splitmix64 step on base advanced by the golden-ratio stride.
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double sample_gaussian_quadratic(double c1, double c2, double u) {
  if (!(c2 >= 0.0) || c1 * c1 > 4.0 * c2 + 1e-15 * (1.0 + c2)) {
    throw std::invalid_argument(
        "sample_gaussian_quadratic: quadratic weight must be nonnegative");
  }
  if (!(u > 0.0 && u < 1.0)) {
    throw std::invalid_argument("sample_gaussian_quadratic: u must lie in (0,1)");
  }
  const double norm = 1.0 + c2;  // integral of the unnormalized density

  const auto cdf = [&](double x) {
    return ((1.0 + c2) * normal_cdf(x) - normal_pdf(x) * (c1 + c2 * x)) / norm;
  };
  const auto pdf = [&](double x) {
    return normal_pdf(x) * (1.0 + x * (c1 + c2 * x)) / norm;
  };

  // The density is a polynomial times a standard Gaussian, so all the mass
  // that a 53-bit uniform can address lies well inside +-15.
  double lo = -15.0, hi = 15.0;
  double x = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double f = cdf(x) - u;
    if (f > 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    const double d = pdf(x);
    double next;
    if (d > 0.0) {
      next = x - f / d;
    } else {
      next = 0.5 * (lo + hi);
    }
    if (!(next > lo && next < hi)) {
      next = 0.5 * (lo + hi);
    }
    const double step = std::abs(next - x);
    x = next;
    if (step <= 1e-14 * (1.0 + std::abs(x))) {
      break;
    }
  }
  return x;
}

double sample_gaussian_quadratic(double c1, double c2, Rng& rng) {
  return sample_gaussian_quadratic(c1, c2, rng.uniform());
}

}  // namespace thermoweak
