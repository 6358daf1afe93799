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

#include "types.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

namespace qmeas {

namespace {

std::string describe_residual(const char* text, double value, double tol) {
  char buf[192];
  std::snprintf(buf, sizeof(buf), "%s%.3g (tolerance %.3g)", text, value, tol);
  return buf;
}

std::vector<std::string> index_labels(std::size_t count) {
  std::vector<std::string> labels;
  labels.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    labels.push_back(std::to_string(i));
  }
  return labels;
}

void require_same_square(const std::vector<CMat>& mats, const char* what) {
  if (mats.empty()) {
    throw Validation(std::string(what) + " list must not be empty");
  }
  const Index d = mats[0].rows();
  for (const CMat& m : mats) {
    require_square(m, what);
    if (m.rows() != d) {
      throw DimensionMismatch(std::string(what) +
                              " list mixes different dimensions");
    }
    if (!all_finite(m)) {
      throw Validation(std::string(what) + " has non-finite entries");
    }
  }
}

double min_eigenvalue(const CMat& m, double tol) {
  return hermitian_clusters(m, {}, tol).raw_values(0);
}

}  // namespace

std::string format_label(double value) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%+.17g", value);
  return buf;
}

StateVector::StateVector(CVec amplitudes, double tol)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) {
    throw Validation("state vector must have positive dimension");
  }
  if (!amplitudes_.allFinite()) {
    throw Validation("state vector has non-finite entries");
  }
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > tol) {
    throw Validation(
        describe_residual("state vector is not normalized: | ||psi|| - 1 | = ",
                          std::abs(norm - 1.0), tol));
  }
}

DensityOperator::DensityOperator(CMat matrix, double tol)
    : matrix_(std::move(matrix)) {
  require_square(matrix_, "density operator");
  if (!all_finite(matrix_)) {
    throw Validation("density operator has non-finite entries");
  }
  const double herm = frobenius_distance(matrix_, matrix_.adjoint());
  if (herm > tol) {
    throw NotHermitian(describe_residual(
        "density operator is not Hermitian: ||rho - rho^dagger|| = ", herm,
        tol));
  }
  const double lambda_min = min_eigenvalue(matrix_, tol);
  if (lambda_min < -tol) {
    throw NotPositive(describe_residual(
        "density operator has negative eigenvalue ", lambda_min, tol));
  }
  const double trace_err = std::abs(matrix_.trace().real() - 1.0);
  if (trace_err > tol || std::abs(matrix_.trace().imag()) > tol) {
    throw Validation(describe_residual(
        "density operator trace differs from 1 by ", trace_err, tol));
  }
}

DensityOperator DensityOperator::from_state(const StateVector& psi) {
  CMat rho = psi.amplitudes() * psi.amplitudes().adjoint();
  return DensityOperator(0.5 * (rho + CMat(rho.adjoint())));
}

Observable::Observable(std::vector<double> eigenvalues,
                       std::vector<CMat> projectors, double tol)
    : eigenvalues_(std::move(eigenvalues)), projectors_(std::move(projectors)) {
  if (eigenvalues_.size() != projectors_.size()) {
    throw DimensionMismatch(
        "observable needs one projector per eigenvalue");
  }
  require_same_square(projectors_, "projector");
  for (std::size_t i = 0; i < eigenvalues_.size(); ++i) {
    if (!std::isfinite(eigenvalues_[i])) {
      throw Validation("observable eigenvalues must be finite");
    }
    for (std::size_t j = i + 1; j < eigenvalues_.size(); ++j) {
      if (eigenvalues_[i] == eigenvalues_[j]) {
        throw Validation("observable eigenvalues must be pairwise distinct");
      }
    }
  }
  const Index d = projectors_[0].rows();
  CMat sum = CMat::Zero(d, d);
  for (std::size_t i = 0; i < projectors_.size(); ++i) {
    const CMat& p = projectors_[i];
    if (!is_hermitian(p, tol)) {
      throw Validation("projector " + std::to_string(i) + " is not Hermitian");
    }
    const double idem = (CMat(p * p) - p).norm();
    if (idem > tol) {
      throw Validation(describe_residual(
          ("projector " + std::to_string(i) + " is not idempotent: ||P^2 - P|| = ")
              .c_str(),
          idem, tol));
    }
    for (std::size_t j = i + 1; j < projectors_.size(); ++j) {
      const double cross = (p * projectors_[j]).norm();
      if (cross > tol) {
        throw Validation(describe_residual(
            "eigenprojectors are not orthogonal: ||P_i P_j|| = ", cross, tol));
      }
    }
    sum += p;
  }
  const double complete = (sum - CMat::Identity(d, d)).norm();
  if (complete > tol) {
    throw Validation(describe_residual(
        "eigenprojectors do not sum to the identity: ||sum P_i - 1|| = ",
        complete, tol));
  }
}

Observable Observable::from_matrix(const CMat& m,
                                   std::optional<double> group_tol,
                                   double tol) {
  SpectralDecomposition dec = hermitian_eig(m, group_tol, tol);
  return Observable(std::move(dec.eigenvalues), std::move(dec.projectors), tol);
}

CMat Observable::matrix() const {
  CMat out = CMat::Zero(dim(), dim());
  for (std::size_t i = 0; i < eigenvalues_.size(); ++i) {
    out += eigenvalues_[i] * projectors_[i];
  }
  return out;
}

Povm::Povm(std::vector<CMat> effects, std::vector<std::string> labels,
           double tol)
    : effects_(std::move(effects)), labels_(std::move(labels)) {
  if (effects_.size() != labels_.size()) {
    throw DimensionMismatch("measure needs one label per effect");
  }
  require_same_square(effects_, "effect");
  const Index d = effects_[0].rows();
  CMat sum = CMat::Zero(d, d);
  for (std::size_t i = 0; i < effects_.size(); ++i) {
    const CMat& e = effects_[i];
    if (!is_hermitian(e, tol)) {
      throw NotHermitian("effect " + std::to_string(i) + " is not Hermitian");
    }
    const double lambda_min = min_eigenvalue(e, tol);
    if (lambda_min < -tol) {
      throw NotPositive(describe_residual(
          ("effect " + std::to_string(i) + " has negative eigenvalue ").c_str(),
          lambda_min, tol));
    }
    sum += e;
  }
  const double complete = (sum - CMat::Identity(d, d)).norm();
  if (complete > tol) {
    throw Validation(describe_residual(
        "effects do not sum to the identity: ||sum Pi_i - 1|| = ", complete,
        tol));
  }
}

Povm::Povm(std::vector<CMat> effects, double tol) {
  std::vector<std::string> labels = index_labels(effects.size());
  *this = Povm(std::move(effects), std::move(labels), tol);
}

Instrument::Instrument(std::vector<CMat> transformers,
                       std::vector<std::string> labels, double tol)
    : transformers_(std::move(transformers)), labels_(std::move(labels)) {
  if (transformers_.size() != labels_.size()) {
    throw DimensionMismatch("instrument needs one label per transformer");
  }
  require_same_square(transformers_, "state transformer");
  const Index d = transformers_[0].rows();
  CMat sum = CMat::Zero(d, d);
  for (const CMat& m : transformers_) {
    sum += m.adjoint() * m;
  }
  const double complete = (sum - CMat::Identity(d, d)).norm();
  if (complete > tol) {
    throw CompletenessViolation(describe_residual(
        "state transformers violate the completeness relation: "
        "||sum M_i^dagger M_i - 1|| = ",
        complete, tol));
  }
}

Instrument::Instrument(std::vector<CMat> transformers, double tol) {
  std::vector<std::string> labels = index_labels(transformers.size());
  *this = Instrument(std::move(transformers), std::move(labels), tol);
}

std::optional<std::size_t> Instrument::find_label(
    const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  return std::nullopt;
}

Instrument luders_instrument(const Observable& obs) {
  std::vector<std::string> labels;
  labels.reserve(obs.outcome_count());
  for (double m : obs.eigenvalues()) {
    labels.push_back(format_label(m));
  }
  // A valid observable always yields a valid instrument; the widened
  // tolerance absorbs the summed per-projector validation slack.
  const double tol = kDefaultTol * static_cast<double>(obs.outcome_count() + 1);
  return Instrument(obs.projectors(), std::move(labels), tol);
}

Povm povm_of(const Instrument& inst, double tol) {
  std::vector<CMat> effects;
  effects.reserve(inst.outcome_count());
  for (const CMat& m : inst.transformers()) {
    CMat e = m.adjoint() * m;
    effects.push_back(0.5 * (e + CMat(e.adjoint())));
  }
  const double ctor_tol = tol * static_cast<double>(inst.outcome_count() + 1);
  return Povm(std::move(effects), inst.labels(), ctor_tol);
}

Instrument instrument_from_povm(const Povm& povm,
                                const std::vector<CMat>& unitaries,
                                double tol) {
  const std::size_t k = povm.outcome_count();
  if (!unitaries.empty() && unitaries.size() != k) {
    throw DimensionMismatch("need one unitary per effect");
  }
  std::vector<CMat> transformers;
  transformers.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    CMat root = positive_sqrt(povm.effects()[i], tol);
    if (unitaries.empty()) {
      transformers.push_back(std::move(root));
      continue;
    }
    const CMat& u = unitaries[i];
    if (u.rows() != povm.dim() || u.cols() != povm.dim()) {
      throw DimensionMismatch("unitary dimension does not match the effects");
    }
    if (!is_unitary(u, tol)) {
      throw NotUnitary("matrix for outcome " + std::to_string(i) +
                       " is not unitary");
    }
    transformers.push_back(u * root);
  }
  return Instrument(std::move(transformers), povm.labels(),
                    tol * static_cast<double>(k + 2));
}

Observable maximal_refinement(const Observable& obs, double tol) {
  const std::size_t k = obs.outcome_count();
  std::vector<Index> ranks(k);
  Index max_rank = 1;
  for (std::size_t i = 0; i < k; ++i) {
    ranks[i] = static_cast<Index>(
        std::llround(obs.projectors()[i].trace().real()));
    if (ranks[i] < 1) {
      throw Validation("projector " + std::to_string(i) + " has rank zero");
    }
    max_rank = std::max(max_rank, ranks[i]);
  }
  if (max_rank == 1) {
    return obs;  // already nondegenerate
  }

  double min_gap = 1.0;
  bool have_gap = false;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const double gap = std::abs(obs.eigenvalues()[i] - obs.eigenvalues()[j]);
      min_gap = have_gap ? std::min(min_gap, gap) : gap;
      have_gap = true;
    }
  }
  // Offsets j*delta stay below half the smallest original gap, so refined
  // eigenvalues cluster around their parents without colliding.
  const double delta =
      have_gap ? min_gap / (2.0 * static_cast<double>(max_rank)) : 1.0;

  std::vector<double> values;
  std::vector<CMat> projectors;
  for (std::size_t i = 0; i < k; ++i) {
    const EigenClusters clusters =
        hermitian_clusters(obs.projectors()[i], {}, tol);
    const CMat* basis = nullptr;
    for (std::size_t c = 0; c < clusters.values.size(); ++c) {
      if (clusters.values[c] > 0.5) {
        basis = &clusters.bases[c];
        break;
      }
    }
    if (basis == nullptr || basis->cols() != ranks[i]) {
      throw Error(ErrorCode::Internal,
                  "eigenspace basis extraction disagrees with projector rank");
    }
    for (Index j = 0; j < basis->cols(); ++j) {
      values.push_back(obs.eigenvalues()[i] +
                       static_cast<double>(j) * delta);
      projectors.push_back(basis->col(j) * basis->col(j).adjoint());
    }
  }
  const double ctor_tol = 10.0 * tol * static_cast<double>(k + 1);
  return Observable(std::move(values), std::move(projectors), ctor_tol);
}

}  // namespace qmeas
