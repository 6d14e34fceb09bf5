// Copyright 2026 The cpforge Authors
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

#pragma once

#include <random>

#include "cpforge/channel.hpp"

namespace cpforge {

using Rng = std::mt19937_64;

/**
 * Random single-qubit trace-preserving NCP map. B = I/2 + 0.5 H with H drawn
 * from the Gaussian unitary ensemble, then shifted by I (x) (tr_out B - I)/2 so
 * the map is trace-preserving (trace B = 2). Draws are repeated until B has a
 * negative eigenvalue.
 */
Channel random_tp_ncp_qubit_map(Rng& rng);

/** Qubit state with Bloch vector uniform in the unit ball. */
DensityMatrix random_qubit_state(Rng& rng);

}  // namespace cpforge
