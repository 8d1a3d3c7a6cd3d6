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

// Tour of the library on the M_2 rotation system: build it, look at the
// peripheral spectrum, classify an eigenvector, and watch every rung of the
// positivity hierarchy above plain positivity fail.

#include <cmath>
#include <iostream>

#include "perispec/perispec.hpp"

int main() {
  using namespace perispec;
  const double theta = 2.0 * M_PI / 5.0;
  const BuiltSystem sys = example1(theta);

  std::cout << "system: " << sys.label << "\n\n";

  const MapFlags flags = map_flags(sys.map, &sys.state);
  std::cout << "unital: " << flags.unital
            << ", adjoint-preserving: " << flags.adjoint_preserving
            << ", invariant state: " << flags.state_invariant.value() << "\n\n";

  const SpectralData data = eigendecompose(sys.map);
  std::cout << "peripheral point spectrum:\n";
  for (const auto& [value, mult] : peripheral_point_spectrum(data)) {
    std::cout << "  " << value << "  (multiplicity " << mult << ")\n";
  }
  const ErgodicityVerdict erg = is_ergodic(data);
  std::cout << "ergodic: " << erg.ergodic << "\n";

  std::vector<Complex> values;
  for (const auto& [value, mult] : peripheral_point_spectrum(data)) values.push_back(value);
  const GroupClosureVerdict g = group_closure(values);
  std::cout << "point spectrum forms a group: " << g.is_group;
  if (!g.missing.empty()) {
    std::cout << "  (first missing product: " << g.missing.front().first << " * "
              << g.missing.front().second << ")";
  }
  std::cout << "\n\n";

  // E12 is an eigenvector at lambda0; the trichotomy puts it in case (i).
  AlgElement e12 = AlgElement::zero(sys.map.algebra());
  e12.block(0)(0, 1) = Complex(1.0, 0.0);
  const Classification c =
      classify_eigenvector(sys.map, std::polar(1.0, theta), e12);
  std::cout << "classify(E12): case " << theorem_case_name(c.theorem_case)
            << ", coefficient " << c.coefficients[0]
            << ", max identity residual " << c.max_residual << "\n\n";

  std::cout << "positivity hierarchy:\n";
  const CheckReport pos = positivity_sample_test(sys.map, 1000, 42);
  std::cout << "  positivity: " << pos.violations << "/" << pos.trials
            << " violations (" << pos.certifies << ")\n";
  const CheckReport kpos = k_positivity_test(sys.map, 2, 100, 42);
  std::cout << "  2-positivity: first violation at trial "
            << kpos.first_violation_trial << ", worst value " << kpos.worst_value
            << " (" << kpos.certifies << ")\n";
  const CheckReport cp = cp_test(sys.map);
  std::cout << "  complete positivity: Choi minimum " << cp.worst_value << " ("
            << cp.certifies << ")\n";
  const CheckReport schwarz = schwarz_violation_search(sys.map, 100, 42);
  std::cout << "  Schwarz inequality: worst defect " << schwarz.worst_value << " ("
            << schwarz.certifies << ")\n";
  return 0;
}
