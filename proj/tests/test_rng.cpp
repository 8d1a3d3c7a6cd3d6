// Copyright 2026 The perispec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "perispec/algebra.hpp"
#include "perispec/rng.hpp"

using namespace perispec;

TEST_CASE("gaussian streams are reproducible and independent per stream",
          "[rng]") {
  SECTION("same (seed, stream) gives the identical sequence") {
    GaussianStream a(42, 0);
    GaussianStream b(42, 0);
    for (int i = 0; i < 100; ++i) CHECK(a.gaussian() == b.gaussian());
  }

  SECTION("golden first draws for seed 42") {
    // Recorded at first implementation; any change to the generator chain
    // breaks report reproducibility and must be deliberate.
    GaussianStream g(42, 0);
    CHECK(g.gaussian() == Catch::Approx(0.36133037265683887).margin(0));
    CHECK(g.gaussian() == Catch::Approx(-1.969890438508769).margin(0));
    CHECK(g.gaussian() == Catch::Approx(-1.9390004698004402).margin(0));
    GaussianStream s7(42, 7);
    CHECK(s7.gaussian() == Catch::Approx(0.3149446896667269).margin(0));
  }

  SECTION("different streams decorrelate") {
    GaussianStream a(42, 0);
    GaussianStream b(42, 1);
    int agree = 0;
    for (int i = 0; i < 100; ++i) {
      if (a.gaussian() == b.gaussian()) ++agree;
    }
    CHECK(agree == 0);
  }

  SECTION("uniform stays inside the open interval") {
    GaussianStream g(1, 0);
    for (int i = 0; i < 1000; ++i) {
      const double u = g.uniform();
      CHECK(u > 0.0);
      CHECK(u < 1.0);
    }
  }

  SECTION("sample moments are in the right ballpark") {
    GaussianStream g(3, 0);
    double sum = 0.0, sq = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
      const double x = g.gaussian();
      sum += x;
      sq += x * x;
    }
    CHECK(std::abs(sum / n) < 0.05);
    CHECK(std::abs(sq / n - 1.0) < 0.05);
  }
}

TEST_CASE("random elements and PSD samples", "[rng]") {
  const BlockAlgebra a({2});

  SECTION("random_element is deterministic in (seed, stream)") {
    CHECK((random_element(a, 9, 3) - random_element(a, 9, 3)).norm() == 0.0);
    CHECK((random_element(a, 9, 3) - random_element(a, 9, 4)).norm() > 0.0);
  }

  SECTION("golden PSD sample, seed 42, blocks [2]") {
    const AlgElement x = random_psd(a, 42);
    CHECK(x.block(0)(0, 0).real() == Catch::Approx(12.057504735421073).margin(0));
    CHECK(x.block(0)(0, 0).imag() == 0.0);
    CHECK(x.block(0)(0, 1).real() == Catch::Approx(-4.1074547452719017).margin(0));
    CHECK(x.block(0)(0, 1).imag() == Catch::Approx(-2.1073689203665951).margin(0));
    CHECK(x.block(0)(1, 1).real() == Catch::Approx(6.3091509446822052).margin(0));
  }

  SECTION("PSD samples are hermitian positive with positive trace") {
    const BlockAlgebra multi({2, 3});
    for (std::uint64_t t = 0; t < 50; ++t) {
      const AlgElement x = random_psd(multi, 42, t);
      const auto f = structure_flags(x);
      CHECK(f.hermitian);
      CHECK(f.psd);
      CHECK(x.trace().real() > 0.0);
    }
  }
}
