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

// Deterministic random sampling of algebra elements. Every distribution is
// implemented by hand on top of the raw mt19937_64 output stream because the
// standard <random> distributions are not required to produce identical
// sequences across library implementations, and the check reports must be
// reproducible bit for bit from (seed, trial index) alone.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "perispec/algebra.hpp"

namespace perispec {

// splitmix64 step; used to decorrelate (seed, stream) pairs before feeding
// them to the mersenne twister.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Stream of standard normal deviates, seeded by (seed, stream). Distinct
// stream indices (one per trial) give independent substreams, so trial k of a
// sampling run can be reproduced without generating trials 0..k-1.
class GaussianStream {
 public:
  GaussianStream(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s ^= stream * 0xda942042e4dd58b5ULL + 0x2545f4914f6cdd1dULL;
    std::uint64_t b = splitmix64(s);
    engine_.seed(a ^ (b << 1));
  }

  // Uniform on the open interval (0,1): 53 random bits, offset by half an ulp
  // so the endpoints are excluded and log() below is always finite.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Box-Muller; deviates are consumed one at a time, the partner is cached.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u = uniform();
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double theta = 2.0 * M_PI * v;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  Complex complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return Complex(re, im);
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Entries are iid standard complex gaussians, filled block by block in
// column-major order (the canonical basis order).
inline AlgElement random_element(const BlockAlgebra& a, std::uint64_t seed,
                                 std::uint64_t stream = 0) {
  GaussianStream g(seed, stream);
  AlgElement x = AlgElement::zero(a);
  for (int i = 0; i < a.num_blocks(); ++i) {
    const int n = a.block_size(i);
    for (int c = 0; c < n; ++c) {
      for (int r = 0; r < n; ++r) {
        x.block(i)(r, c) = g.complex_gaussian();
      }
    }
  }
  return x;
}

// g^* g for a gaussian g — a Wishart-type sample, almost surely positive
// definite, used as the test cone for positivity checks.
inline AlgElement random_psd(const BlockAlgebra& a, std::uint64_t seed,
                             std::uint64_t stream = 0) {
  AlgElement g = random_element(a, seed, stream);
  return multiply(g.adjoint(), g);
}

}  // namespace perispec
