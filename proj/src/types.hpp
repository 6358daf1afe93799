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
 * @file types.hpp
 * Domain types for states, observables, POVMs, and instruments. Every type
 * validates its defining invariants on construction and is immutable
 * afterwards, so a held instance is always a valid object.
 */

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "linalg.hpp"

namespace qmeas {

/// Formats an eigenvalue as an outcome label with enough digits to
/// round-trip the double exactly (e.g. +1, -1, +0.5).
std::string format_label(double value);

/// A normalized pure state |psi>.
class StateVector {
 public:
  explicit StateVector(CVec amplitudes, double tol = kDefaultTol);

  Index dim() const { return amplitudes_.size(); }
  const CVec& amplitudes() const { return amplitudes_; }

 private:
  CVec amplitudes_;
};

/// A density operator: Hermitian, positive semidefinite, unit trace.
class DensityOperator {
 public:
  explicit DensityOperator(CMat matrix, double tol = kDefaultTol);

  static DensityOperator from_state(const StateVector& psi);

  Index dim() const { return matrix_.rows(); }
  const CMat& matrix() const { return matrix_; }

 private:
  CMat matrix_;
};

/**
 * An observable in spectral form: distinct real eigenvalues paired with
 * orthogonal eigenprojectors that sum to the identity.
 */
class Observable {
 public:
  Observable(std::vector<double> eigenvalues, std::vector<CMat> projectors,
             double tol = kDefaultTol);

  /// Spectral decomposition of a Hermitian matrix, eigenvalues ascending.
  static Observable from_matrix(const CMat& m,
                                std::optional<double> group_tol = {},
                                double tol = kDefaultTol);

  Index dim() const { return projectors_[0].rows(); }
  std::size_t outcome_count() const { return eigenvalues_.size(); }
  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  const std::vector<CMat>& projectors() const { return projectors_; }

  /// Reassembles the operator sum of eigenvalues times projectors.
  CMat matrix() const;

 private:
  std::vector<double> eigenvalues_;
  std::vector<CMat> projectors_;
};

/// A positive-operator-valued measure: effects summing to the identity.
class Povm {
 public:
  Povm(std::vector<CMat> effects, std::vector<std::string> labels,
       double tol = kDefaultTol);

  /// Labels default to outcome indices "0", "1", ...
  explicit Povm(std::vector<CMat> effects, double tol = kDefaultTol);

  Index dim() const { return effects_[0].rows(); }
  std::size_t outcome_count() const { return effects_.size(); }
  const std::vector<CMat>& effects() const { return effects_; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<CMat> effects_;
  std::vector<std::string> labels_;
};

/**
 * A discrete instrument: an ordered list of state transformers M_i with
 * outcome labels, satisfying the completeness relation sum M_i^dagger M_i = 1.
 * Individual transformers may be zero; the completeness relation is the only
 * algebraic constraint.
 */
class Instrument {
 public:
  Instrument(std::vector<CMat> transformers, std::vector<std::string> labels,
             double tol = kDefaultTol);

  /// Labels default to outcome indices "0", "1", ...
  explicit Instrument(std::vector<CMat> transformers,
                      double tol = kDefaultTol);

  Index dim() const { return transformers_[0].rows(); }
  std::size_t outcome_count() const { return transformers_.size(); }
  const std::vector<CMat>& transformers() const { return transformers_; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Index of the first outcome carrying `label`, if any.
  std::optional<std::size_t> find_label(const std::string& label) const;

 private:
  std::vector<CMat> transformers_;
  std::vector<std::string> labels_;
};

/**
 * The instrument whose transformers are the eigenprojectors of `obs`; the
 * selective and nonselective updates then reduce to state collapse onto
 * eigenspaces. Labels are the formatted eigenvalues.
 */
Instrument luders_instrument(const Observable& obs);

/// The measure Pi_i = M_i^dagger M_i induced by an instrument. Outcome
/// probabilities depend on the instrument only through this.
Povm povm_of(const Instrument& inst, double tol = kDefaultTol);

/**
 * An instrument realizing a given POVM: M_i = U_i * sqrt(Pi_i) with the U_i
 * unitary (identity when omitted). Every instrument with the given POVM
 * arises this way on the support of the effects.
 */
Instrument instrument_from_povm(const Povm& povm,
                                const std::vector<CMat>& unitaries = {},
                                double tol = kDefaultTol);

/**
 * A nondegenerate observable whose rank-1 eigenprojectors partition the
 * eigenspaces of `obs`: summing the new projectors over each original
 * eigenvalue cluster recovers the original projector, and the new eigenvalues
 * m_i + j*delta stay closer to m_i than to any other original eigenvalue.
 */
Observable maximal_refinement(const Observable& obs, double tol = kDefaultTol);

}  // namespace qmeas
