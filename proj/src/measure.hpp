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
 * @file measure.hpp
 * The measurement engine: outcome probabilities, selective and nonselective
 * state updates for vectors and density operators, deterministic outcome
 * sampling, and sharp-value analysis.
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "types.hpp"

namespace qmeas {

/// Outcomes with probability at or below this floor are treated as
/// impossible: the selective update would divide by (nearly) zero.
inline constexpr double kProbabilityFloor = 1e-12;

/// Born probabilities of every outcome, in instrument label order.
struct OutcomeDistribution {
  std::vector<std::string> labels;
  std::vector<double> probabilities;
};

/// One conditioned outcome: its label, probability, and the updated state.
struct SelectiveOutcome {
  std::size_t index;
  std::string label;
  double probability;
  DensityOperator post_state;
};

/// Vector-path variant of SelectiveOutcome for pure input states.
struct SelectiveVectorOutcome {
  std::size_t index;
  std::string label;
  double probability;
  StateVector post_state;
};

/**
 * p_i = Tr(rho M_i^dagger M_i), clamped to [0, 1]. Roundoff in the sum below
 * `tol` is renormalized away; a larger deviation throws Validation.
 */
OutcomeDistribution probabilities(const Instrument& inst,
                                  const DensityOperator& rho,
                                  double tol = kDefaultTol);

/// Pure-state path: p_i = <psi| M_i^dagger M_i |psi>.
OutcomeDistribution probabilities(const Instrument& inst,
                                  const StateVector& psi,
                                  double tol = kDefaultTol);

/**
 * Conditioned update rho -> M_i rho M_i^dagger / p_i for the outcome at
 * `index`. Throws ZeroProbabilityOutcome when p_i is at or below the
 * probability floor: the conditioned state is undefined there.
 */
SelectiveOutcome apply_selective(const Instrument& inst, std::size_t index,
                                 const DensityOperator& rho,
                                 double tol = kDefaultTol);

/// Label-addressed variant; resolves the first outcome carrying `label`.
SelectiveOutcome apply_selective(const Instrument& inst,
                                 const std::string& label,
                                 const DensityOperator& rho,
                                 double tol = kDefaultTol);

/// Pure-state path: psi -> M_i psi / sqrt(p_i).
SelectiveVectorOutcome apply_selective(const Instrument& inst,
                                       std::size_t index,
                                       const StateVector& psi,
                                       double tol = kDefaultTol);

/// Unconditioned update rho -> sum_i M_i rho M_i^dagger; equals the
/// probability-weighted mixture of all selective outcomes.
DensityOperator apply_nonselective(const Instrument& inst,
                                   const DensityOperator& rho,
                                   double tol = kDefaultTol);

/**
 * Draws one outcome from the Born distribution with a deterministic seeded
 * generator and returns its conditioned state. The generator contract is
 * fixed: std::mt19937_64 seeded with `seed`; each draw maps one 64-bit word
 * w to u = (w >> 11) * 2^-53 and inverts the cumulative distribution in
 * instrument label order.
 */
SelectiveOutcome sample_outcome(const Instrument& inst,
                                const DensityOperator& rho, std::uint64_t seed,
                                double tol = kDefaultTol);

/**
 * Outcome tallies over `shots` independent draws from one generator seeded
 * once with `seed`; the first draw coincides with sample_outcome(seed).
 */
std::vector<std::uint64_t> sample_counts(const Instrument& inst,
                                         const DensityOperator& rho,
                                         std::uint64_t seed,
                                         std::uint64_t shots,
                                         double tol = kDefaultTol);

/// True iff rho lies in the eigenspace of the given outcome:
/// Tr(rho P_i) >= 1 - tol.
bool has_sharp_value(const DensityOperator& rho, const Observable& obs,
                     std::size_t label_index, double tol = kDefaultTol);

/**
 * Verifies, on one concrete convex decomposition rho = sum_k w_k |k><k|, that
 * a sharp value of rho is inherited by every component: returns true iff rho
 * is not sharp at `label_index` (vacuous) or every |k> has
 * <k|P_i|k> >= 1 - tol. Throws InvalidDecomposition when the mixture does
 * not reconstruct rho.
 */
bool sharp_value_decomposition_check(const DensityOperator& rho,
                                     const Observable& obs,
                                     std::size_t label_index,
                                     const std::vector<double>& weights,
                                     const std::vector<StateVector>& pure_states,
                                     double tol = kDefaultTol);

}  // namespace qmeas
