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
 * @file dilate.hpp
 * Composite-system realization of instruments: build an explicit unitary on
 * system x apparatus whose pointer-basis expansion reproduces the state
 * transformers, and conversely extract the instrument from any
 * (unitary, ready state, pointer basis) triple.
 */

#pragma once

#include <string>
#include <vector>

#include "types.hpp"

namespace qmeas {

/**
 * A measurement model on system (dimension d1) x apparatus (dimension d2):
 * the apparatus starts in `ready_state`, the composite evolves under
 * `unitary`, and outcomes are read off in the orthonormal `pointer_basis`
 * with nondegenerate `pointer_values`. Composite indices put the system on
 * the slow (major) axis: (a, c) -> a*d2 + c.
 */
class DilationModel {
 public:
  DilationModel(Index system_dim, StateVector ready_state,
                std::vector<StateVector> pointer_basis,
                std::vector<double> pointer_values, CMat unitary,
                double tol = kDefaultTol);

  Index system_dim() const { return system_dim_; }
  Index apparatus_dim() const { return ready_state_.dim(); }
  const StateVector& ready_state() const { return ready_state_; }
  const std::vector<StateVector>& pointer_basis() const {
    return pointer_basis_;
  }
  const std::vector<double>& pointer_values() const { return pointer_values_; }
  const CMat& unitary() const { return unitary_; }

 private:
  Index system_dim_;
  StateVector ready_state_;
  std::vector<StateVector> pointer_basis_;
  std::vector<double> pointer_values_;
  CMat unitary_;
};

/// Probability of one pointer reading together with the conditioned system
/// state left behind.
struct PointerReading {
  double probability = 0.0;
  StateVector post_system_state;
};

/**
 * Realizes an instrument with k outcomes on an apparatus of dimension
 * exactly k: the composite unitary maps |e_j> (x) |ready> to
 * sum_l (M_l |e_j>) (x) |l> over the standard bases, extended deterministically
 * off those columns. The pointer basis is the standard basis, the ready state
 * its first vector, and the pointer values 0..k-1.
 *
 * Throws CompletenessViolation when the transformers fail the completeness
 * relation: the prescribed image columns are then not orthonormal and no
 * unitary can interpolate them.
 */
DilationModel dilate(const Instrument& inst, double tol = kDefaultTol);

/**
 * Reads the state transformers back out of a model:
 * (M_i)_{ab} = (<a| (x) <chi_i|) U (|b> (x) |ready>). The completeness
 * relation holds automatically because the model's evolution is unitary.
 * Outcomes are labeled by pointer index "0", "1", ...
 */
Instrument extract_instrument(const DilationModel& model,
                              double tol = kDefaultTol);

/// The composite state U (psi (x) ready), normalized.
StateVector final_state(const DilationModel& model, const StateVector& psi,
                        double tol = kDefaultTol);

/**
 * Projects a composite state onto pointer reading `outcome_index` and
 * returns the outcome probability together with the renormalized system
 * factor. The projected component always factorizes as
 * (system vector) (x) (pointer vector). Throws ZeroProbabilityOutcome when
 * the reading has probability at or below the probability floor.
 */
PointerReading read_pointer(const DilationModel& model,
                            const StateVector& composite,
                            std::size_t outcome_index,
                            double tol = kDefaultTol);

}  // namespace qmeas
