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

#include "classify.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace qmeas {

namespace {

bool near_threshold(double residual, double tol) {
  return residual > 0.1 * tol && residual <= 10.0 * tol;
}

// Labels that parse fully as reals and stay pairwise distinct become the
// reconstructed eigenvalues; otherwise outcome indices stand in.
std::vector<double> eigenvalues_from_labels(
    const std::vector<std::string>& labels) {
  std::vector<double> values;
  values.reserve(labels.size());
  for (const std::string& label : labels) {
    char* end = nullptr;
    const double v = std::strtod(label.c_str(), &end);
    if (end == nullptr || *end != '\0' || end == label.c_str() ||
        !std::isfinite(v)) {
      values.clear();
      break;
    }
    values.push_back(v);
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      if (values[i] == values[j]) {
        values.clear();
      }
    }
  }
  if (values.empty()) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
      values.push_back(static_cast<double>(i));
    }
  }
  return values;
}

}  // namespace

const char* to_string(InstrumentKind kind) {
  switch (kind) {
    case InstrumentKind::IdealOrdinary:
      return "IdealOrdinary";
    case InstrumentKind::RepeatableOrdinary:
      return "RepeatableOrdinary";
    case InstrumentKind::NonrepeatableOrdinary:
      return "NonrepeatableOrdinary";
    case InstrumentKind::MixedRepeatability:
      return "MixedRepeatability";
    case InstrumentKind::Generalized:
      return "Generalized";
  }
  return "Generalized";
}

OutcomeClassification classify_outcome(const CMat& m, const std::string& label,
                                       double tol) {
  OutcomeClassification out;
  out.label = label;
  out.polar = polar_factorize(m, tol);

  const CMat& h = out.polar.positive;
  out.projector_residual = (CMat(h * h) - h).norm();
  out.is_ordinary = out.projector_residual <= tol;
  out.borderline = near_threshold(out.projector_residual, tol);
  if (!out.is_ordinary) {
    return out;
  }

  // For an ordinary outcome the range projector of M^dagger M is the event
  // the transformer measures; it is exactly idempotent by construction,
  // which keeps downstream residuals clean.
  const CMat& p = out.polar.range_projector;
  out.projector = p;
  out.ideal_distance = (m - p).norm();

  const double algebraic = (m - p * m).norm();
  const CMat complement = CMat::Identity(m.rows(), m.cols()) - p;
  const double polar_side = (complement * out.polar.unitary * p).norm();
  const bool repeat_algebraic = algebraic <= tol;
  const bool repeat_polar = polar_side <= tol;
  out.repeatable_residual = algebraic;
  if (repeat_algebraic != repeat_polar) {
    // The polar rank cut drops singular values up to 1e-5 * max(1, ||M||)
    // per direction, which the transformer-side residual still sees; a gap
    // below that scale is a truncation artifact, not an inconsistency.
    const double explainable =
        std::sqrt(static_cast<double>(m.rows())) * 1e-5 *
        std::max(1.0, m.norm());
    if (std::abs(algebraic - polar_side) >
        std::max(1000.0 * tol, 10.0 * explainable)) {
      char buf[192];
      std::snprintf(buf, sizeof(buf),
                    "repeatability verdicts disagree: transformer residual "
                    "%.3g vs polar residual %.3g (tolerance %.3g)",
                    algebraic, polar_side, tol);
      throw ConsistencyFailure(buf);
    }
    // Keep the transformer-side verdict and mark the outcome as borderline.
    out.borderline = true;
  }
  out.is_repeatable = repeat_algebraic;
  return out;
}

OutcomeClassification classify_outcome(const CMat& m, double tol) {
  return classify_outcome(m, "0", tol);
}

InstrumentClassification classify_instrument(const Instrument& inst,
                                             double tol) {
  InstrumentClassification out;
  out.outcomes.reserve(inst.outcome_count());
  bool all_ordinary = true;
  bool all_ideal = true;
  bool all_repeatable = true;
  bool none_repeatable = true;
  for (std::size_t i = 0; i < inst.outcome_count(); ++i) {
    OutcomeClassification oc =
        classify_outcome(inst.transformers()[i], inst.labels()[i], tol);
    all_ordinary = all_ordinary && oc.is_ordinary;
    if (oc.is_ordinary) {
      all_ideal = all_ideal && oc.ideal_distance <= tol;
      all_repeatable = all_repeatable && *oc.is_repeatable;
      none_repeatable = none_repeatable && !*oc.is_repeatable;
    }
    out.outcomes.push_back(std::move(oc));
  }

  if (!all_ordinary) {
    out.kind = InstrumentKind::Generalized;
  } else if (all_ideal) {
    out.kind = InstrumentKind::IdealOrdinary;
  } else if (all_repeatable) {
    out.kind = InstrumentKind::RepeatableOrdinary;
  } else if (none_repeatable) {
    out.kind = InstrumentKind::NonrepeatableOrdinary;
  } else {
    out.kind = InstrumentKind::MixedRepeatability;
  }

  if (all_ordinary) {
    const Index d = inst.dim();
    CMat sum = CMat::Zero(d, d);
    for (const OutcomeClassification& oc : out.outcomes) {
      sum += *oc.projector;
    }
    out.completeness_residual = (sum - CMat::Identity(d, d)).norm();
    // Per-outcome projector detection leaves slack up to ~tol per outcome on
    // top of the instrument's own completeness slack.
    const double sum_tol =
        tol * 10.0 * static_cast<double>(inst.outcome_count() + 1);
    out.projectors_complete = out.completeness_residual <= sum_tol;
    if (out.projectors_complete) {
      std::vector<CMat> projectors;
      projectors.reserve(out.outcomes.size());
      for (const OutcomeClassification& oc : out.outcomes) {
        projectors.push_back(*oc.projector);
      }
      try {
        out.observable = Observable(eigenvalues_from_labels(inst.labels()),
                                    std::move(projectors),
                                    std::max(sum_tol, 1e-7));
      } catch (const Error&) {
        out.observable.reset();  // projectors too skewed to validate
      }
    }
  }
  return out;
}

std::vector<CMat> check_remark2(const CMat& m, double tol) {
  require_square(m, "transformer");
  const Index d = m.rows();
  PolarFactors polar = polar_factorize(m, tol);
  const CMat& q = polar.range_projector;
  const Index rank = static_cast<Index>(std::llround(q.trace().real()));
  if (rank >= d) {
    throw NotSingular(
        "positive polar factor has full rank; the range projector is the "
        "identity and no strictly larger projector exists");
  }

  std::vector<CMat> projectors;
  projectors.push_back(q);
  if (d - rank >= 2) {
    // Grow the range by a single null direction to exhibit an intermediate
    // projector strictly between Q and the identity.
    const EigenClusters null_split = hermitian_clusters(q, {}, tol);
    for (std::size_t c = 0; c < null_split.values.size(); ++c) {
      if (null_split.values[c] < 0.5) {
        const CVec v = null_split.bases[c].col(0);
        CMat mid = q + CMat(v * v.adjoint());
        projectors.push_back(0.5 * (mid + CMat(mid.adjoint())));
        break;
      }
    }
  }
  projectors.push_back(CMat::Identity(d, d));

  const double scale = std::max(1.0, m.norm());
  for (const CMat& e : projectors) {
    const double defect = (m * e - m).norm();
    if (defect > tol * scale) {
      throw Error(ErrorCode::Internal,
                  "projector fails M E = M beyond tolerance");
    }
  }
  return projectors;
}

}  // namespace qmeas
