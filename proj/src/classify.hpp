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
 * @file classify.hpp
 * Decides, per outcome of an instrument, whether the measurement is ordinary
 * (the induced effect is a projector), whether it is repeatable, and whether
 * the whole instrument is ideal. Every verdict is computed twice, through the
 * algebraic criterion on the transformer and through its polar factors, and
 * the two answers are cross-checked.
 */

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "types.hpp"

namespace qmeas {

/**
 * Classification of one transformer M.
 *
 * `is_ordinary` holds iff the positive polar factor H of M is a projector
 * within tol; `projector` is then the (exactly idempotent) range projector P
 * of M^dagger M, and `is_repeatable` decides ||M - P M|| <= tol. Both fields
 * are empty for non-ordinary outcomes, where repeatability is not defined.
 * `borderline` flags verdicts whose deciding residual falls within a factor
 * of 10 of the tolerance, in either direction.
 */
struct OutcomeClassification {
  std::string label;
  bool is_ordinary = false;
  bool borderline = false;
  std::optional<CMat> projector;
  std::optional<bool> is_repeatable;
  double projector_residual = 0.0;   // ||H^2 - H||
  double repeatable_residual = 0.0;  // ||M - P M|| (ordinary outcomes only)
  double ideal_distance = 0.0;       // ||M - P|| (ordinary outcomes only)
  PolarFactors polar;
};

enum class InstrumentKind {
  IdealOrdinary,
  RepeatableOrdinary,
  NonrepeatableOrdinary,
  MixedRepeatability,
  Generalized,
};

const char* to_string(InstrumentKind kind);

struct InstrumentClassification {
  std::vector<OutcomeClassification> outcomes;
  InstrumentKind kind = InstrumentKind::Generalized;
  /// Whether the outcome projectors resolve the identity (all outcomes
  /// ordinary and sum P_i = 1); `completeness_residual` is ||sum P_i - 1||.
  bool projectors_complete = false;
  double completeness_residual = 0.0;
  /// The measured observable reconstructed from the projectors, when they
  /// are complete. Eigenvalues are parsed from the outcome labels when those
  /// are distinct reals, else outcome indices are used.
  std::optional<Observable> observable;
};

/**
 * Classifies a single transformer. Throws ConsistencyFailure when the
 * algebraic and polar-factor repeatability verdicts disagree with residuals
 * more than tol apart (a genuine numerical pathology); knife-edge
 * disagreements resolve to the algebraic verdict and set `borderline`.
 */
OutcomeClassification classify_outcome(const CMat& m, double tol = kDefaultTol);
OutcomeClassification classify_outcome(const CMat& m, const std::string& label,
                                       double tol = kDefaultTol);

/// Classifies every outcome and aggregates the instrument kind.
InstrumentClassification classify_instrument(const Instrument& inst,
                                             double tol = kDefaultTol);

/**
 * Exhibits the nonuniqueness of projectors E satisfying M E = M when the
 * positive polar factor of M is singular: returns the range projector Q of
 * M^dagger M followed by strictly larger projectors (ending with the
 * identity), each verified to satisfy M E = M. Throws NotSingular when M has
 * full rank, where Q = 1 is the only such projector.
 */
std::vector<CMat> check_remark2(const CMat& m, double tol = kDefaultTol);

}  // namespace qmeas
