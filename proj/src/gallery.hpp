// Copyright 2026 The qmeas developers
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

/**
 * @file gallery.hpp
 * Named constructors for concrete reference objects: Pauli matrices and the
 * two-spin measurement families that exercise every classification kind.
 * The families measure the first spin of a spin-1/2 pair (observable
 * sigma_z (x) 1) while disturbing the pair in controlled ways, and they are
 * exposed to the CLI as presets.
 */

#pragma once

#include <string>
#include <vector>

#include "types.hpp"

namespace qmeas {

/// The standard 2x2 Pauli matrix for axis 'x', 'y', or 'z'.
CMat pauli(char axis);

/// sigma_z on the first spin of a two-qubit pair: eigenvalues {-1, +1} with
/// the doubly degenerate eigenprojectors diag(0,0,1,1) and diag(1,1,0,0).
Observable spin_pair_observable();

/**
 * The ideal measurement of the first spin: transformers {P_up, P_down},
 * labels "up" and "down". Classifies as IdealOrdinary.
 */
Instrument spin_pair_ideal();

/**
 * First-spin measurement that additionally rotates the second spin by a
 * per-outcome unitary: transformers (1 (x) u_n) P_n. Repeatable for any
 * choice of 2x2 unitaries, ideal only when both are the identity.
 */
Instrument spin_pair_repeatable(const CMat& u_up, const CMat& u_down,
                                double tol = kDefaultTol);

/**
 * First-spin measurement followed by a per-outcome unitary on the whole
 * pair: transformers u_n P_n. Each u_n must genuinely act on the first spin;
 * a unitary of the form 1 (x) v would land back in the repeatable family and
 * throws NotLocallyNontrivial.
 */
Instrument spin_pair_nonrepeatable(const CMat& u_up, const CMat& u_down,
                                   double tol = kDefaultTol);

/// Names accepted by preset_instrument, in listing order.
std::vector<std::string> preset_names();

/**
 * Builds a named reference instrument:
 *  - "appendix-c-ideal": spin_pair_ideal.
 *  - "appendix-c-repeatable": spin_pair_repeatable with u_up = sigma_x,
 *    u_down = 1.
 *  - "appendix-c-nonrepeatable": spin_pair_nonrepeatable with the two-qubit
 *    swap for both outcomes.
 *  - "luders-z": eigenprojector instrument of sigma_z on one qubit.
 *  - "symmetric-coin": the generalized two-outcome instrument with both
 *    transformers 1/sqrt(2), labels "heads"/"tails".
 */
Instrument preset_instrument(const std::string& name,
                             double tol = kDefaultTol);

}  // namespace qmeas
