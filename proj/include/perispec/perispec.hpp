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

// Umbrella header: peripheral spectra of positive unital maps on
// finite-dimensional *-algebras, eigenvector trichotomy, and the positivity
// hierarchy checks.

#pragma once

#include "perispec/algebra.hpp"
#include "perispec/builders.hpp"
#include "perispec/checks.hpp"
#include "perispec/classify.hpp"
#include "perispec/errors.hpp"
#include "perispec/io.hpp"
#include "perispec/rng.hpp"
#include "perispec/spectral.hpp"
#include "perispec/supermap.hpp"
#include "perispec/tolerances.hpp"
