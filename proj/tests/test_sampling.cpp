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

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "thermoweak/sampling.hpp"

using namespace thermoweak;

namespace {

double cdf_oracle(double c1, double c2, double x) {
  const double phi = std::exp(-0.5 * x * x) * 0.3989422804014326779;
  const double big_phi = 0.5 * std::erfc(-x / std::numbers::sqrt2);
  return ((1.0 + c2) * big_phi - phi * (c1 + c2 * x)) / (1.0 + c2);
}

}  // namespace

TEST_CASE("derived seeds are deterministic and spread out") {
  CHECK(derive_seed(42, 0) == derive_seed(42, 0));
  CHECK(derive_seed(42, 0) != derive_seed(42, 1));
  CHECK(derive_seed(42, 0) != derive_seed(43, 0));
}

TEST_CASE("rng uniforms are strictly inside (0,1) and reproducible") {
  Rng a(7), b(7);
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
    CHECK(u == b.uniform());
  }
}

TEST_CASE("inverse CDF hits the requested quantile") {
  const double c1 = 2.0 * 0.03, c2 = 0.03 * 0.03 + 0.02 * 0.02;
  for (double u : {1e-9, 0.1, 0.5, 0.9, 1.0 - 1e-9}) {
    const double x = sample_gaussian_quadratic(c1, c2, u);
    CHECK(std::abs(cdf_oracle(c1, c2, x) - u) <= std::max(1e-12, 1e-6 * u));
  }
}

TEST_CASE("degenerate quadratic reduces to a standard normal") {
  Rng rng(1234);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = sample_gaussian_quadratic(0.0, 0.0, rng);
    sum += x;
    sum2 += x * x;
  }
  CHECK(std::abs(sum / n) <= 0.01);
  CHECK(std::abs(sum2 / n - 1.0) <= 0.02);
}

TEST_CASE("sample moments match the analytic moments of the density") {
  // E[x] = c1/(1+c2), E[x^2] = (1+3 c2)/(1+c2).
  struct Case {
    double re, im;
  };
  for (const Case w : {Case{0.03, 0.0}, Case{-0.02, 0.025}, Case{0.0, 0.05}}) {
    const double c1 = 2.0 * w.re;
    const double c2 = w.re * w.re + w.im * w.im;
    Rng rng(999);
    const int n = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = sample_gaussian_quadratic(c1, c2, rng);
      sum += x;
      sum2 += x * x;
    }
    CHECK(std::abs(sum / n - c1 / (1.0 + c2)) <= 0.01);
    CHECK(std::abs(sum2 / n - (1.0 + 3.0 * c2) / (1.0 + c2)) <= 0.02);
  }
}

TEST_CASE("sampler input validation") {
  CHECK_THROWS_AS(sample_gaussian_quadratic(1.0, 0.01, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(sample_gaussian_quadratic(0.0, -0.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(sample_gaussian_quadratic(0.0, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(sample_gaussian_quadratic(0.0, 0.0, 1.0), std::invalid_argument);
}
