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

#include "dilate.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include "measure.hpp"

namespace qmeas {

namespace {

std::string describe_residual(const char* text, double value, double tol) {
  char buf[192];
  std::snprintf(buf, sizeof(buf), "%s%.3g (tolerance %.3g)", text, value, tol);
  return buf;
}

CVec standard_basis_vector(Index dim, Index i) {
  CVec e = CVec::Zero(dim);
  e(i) = Complex(1.0, 0.0);
  return e;
}

}  // namespace

DilationModel::DilationModel(Index system_dim, StateVector ready_state,
                             std::vector<StateVector> pointer_basis,
                             std::vector<double> pointer_values, CMat unitary,
                             double tol)
    : system_dim_(system_dim),
      ready_state_(std::move(ready_state)),
      pointer_basis_(std::move(pointer_basis)),
      pointer_values_(std::move(pointer_values)),
      unitary_(std::move(unitary)) {
  if (system_dim_ <= 0) {
    throw DimensionMismatch("system dimension must be positive");
  }
  const Index d2 = ready_state_.dim();
  if (static_cast<Index>(pointer_basis_.size()) != d2) {
    throw DimensionMismatch(
        "pointer basis must have one vector per apparatus dimension");
  }
  if (pointer_values_.size() != pointer_basis_.size()) {
    throw DimensionMismatch("need one pointer value per pointer vector");
  }
  for (std::size_t i = 0; i < pointer_values_.size(); ++i) {
    if (!std::isfinite(pointer_values_[i])) {
      throw Validation("pointer values must be finite");
    }
    for (std::size_t j = i + 1; j < pointer_values_.size(); ++j) {
      if (pointer_values_[i] == pointer_values_[j]) {
        throw Validation("pointer values must be pairwise distinct");
      }
    }
  }
  double gram_defect_sq = 0.0;
  for (Index i = 0; i < d2; ++i) {
    if (pointer_basis_[i].dim() != d2) {
      throw DimensionMismatch(
          "pointer vector dimension does not match the apparatus");
    }
    for (Index j = 0; j < d2; ++j) {
      const Complex g =
          pointer_basis_[i].amplitudes().dot(pointer_basis_[j].amplitudes());
      const Complex want = (i == j) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
      gram_defect_sq += std::norm(g - want);
    }
  }
  if (std::sqrt(gram_defect_sq) > tol) {
    throw NotOrthonormal(describe_residual(
        "pointer basis is not orthonormal: Gram defect ",
        std::sqrt(gram_defect_sq), tol));
  }
  if (unitary_.rows() != system_dim_ * d2 || unitary_.cols() != unitary_.rows()) {
    throw DimensionMismatch(
        "composite unitary must act on system_dim * apparatus_dim");
  }
  if (!is_unitary(unitary_, tol)) {
    throw NotUnitary("composite evolution is not unitary within tolerance");
  }
}

DilationModel dilate(const Instrument& inst, double tol) {
  const Index d = inst.dim();
  const Index k = static_cast<Index>(inst.outcome_count());
  const Index dim = d * k;

  // Image orthonormality is exactly the completeness relation:
  // <image_j, image_j'> = (sum_l M_l^dagger M_l)_{j j'}.
  CMat gram = CMat::Zero(d, d);
  for (const CMat& m : inst.transformers()) {
    gram += m.adjoint() * m;
  }
  const double defect = (gram - CMat::Identity(d, d)).norm();
  if (defect > std::max(tol, 1e-8)) {
    throw CompletenessViolation(describe_residual(
        "state transformers violate the completeness relation: "
        "||sum M_i^dagger M_i - 1|| = ",
        defect, std::max(tol, 1e-8)));
  }

  std::vector<CVec> columns;
  std::vector<CVec> images;
  columns.reserve(d);
  images.reserve(d);
  for (Index j = 0; j < d; ++j) {
    columns.push_back(standard_basis_vector(dim, j * k));
    CVec image = CVec::Zero(dim);
    for (Index l = 0; l < k; ++l) {
      const CMat& m = inst.transformers()[static_cast<std::size_t>(l)];
      for (Index a = 0; a < d; ++a) {
        image(a * k + l) = m(a, j);
      }
    }
    images.push_back(std::move(image));
  }
  CMat unitary = extend_isometry(columns, images, dim);

  std::vector<StateVector> pointer_basis;
  std::vector<double> pointer_values;
  pointer_basis.reserve(k);
  pointer_values.reserve(k);
  for (Index l = 0; l < k; ++l) {
    pointer_basis.emplace_back(standard_basis_vector(k, l));
    pointer_values.push_back(static_cast<double>(l));
  }
  StateVector ready(standard_basis_vector(k, 0));
  return DilationModel(d, std::move(ready), std::move(pointer_basis),
                       std::move(pointer_values), std::move(unitary), tol);
}

Instrument extract_instrument(const DilationModel& model, double tol) {
  const Index d1 = model.system_dim();
  const Index d2 = model.apparatus_dim();
  const CVec& ready = model.ready_state().amplitudes();

  std::vector<CMat> transformers;
  std::vector<std::string> labels;
  transformers.reserve(d2);
  labels.reserve(d2);
  for (Index i = 0; i < d2; ++i) {
    const CVec& chi = model.pointer_basis()[i].amplitudes();
    CMat m = CMat::Zero(d1, d1);
    for (Index a = 0; a < d1; ++a) {
      for (Index b = 0; b < d1; ++b) {
        Complex sum(0.0, 0.0);
        for (Index c = 0; c < d2; ++c) {
          for (Index e = 0; e < d2; ++e) {
            sum += std::conj(chi(c)) * model.unitary()(a * d2 + c, b * d2 + e) *
                   ready(e);
          }
        }
        m(a, b) = sum;
      }
    }
    transformers.push_back(std::move(m));
    labels.push_back(std::to_string(i));
  }
  // Unitarity and pointer orthonormality hold within the model's tolerance,
  // so completeness carries a small multiple of it.
  return Instrument(std::move(transformers), std::move(labels),
                    std::max(10.0 * tol, 1e-8));
}

StateVector final_state(const DilationModel& model, const StateVector& psi,
                        double tol) {
  if (psi.dim() != model.system_dim()) {
    throw DimensionMismatch("state dimension does not match the system");
  }
  CVec out =
      model.unitary() * tensor(psi.amplitudes(), model.ready_state().amplitudes());
  const double norm = out.norm();
  if (std::abs(norm - 1.0) > std::max(tol, 1e-8)) {
    throw Validation(describe_residual(
        "composite evolution failed to preserve the norm: | ||Psi|| - 1 | = ",
        std::abs(norm - 1.0), std::max(tol, 1e-8)));
  }
  return StateVector(out / norm, tol);
}

PointerReading read_pointer(const DilationModel& model,
                            const StateVector& composite,
                            std::size_t outcome_index, double tol) {
  const Index d1 = model.system_dim();
  const Index d2 = model.apparatus_dim();
  if (composite.dim() != d1 * d2) {
    throw DimensionMismatch(
        "state dimension does not match the composite system");
  }
  if (outcome_index >= model.pointer_basis().size()) {
    throw IndexOutOfRange("pointer index " + std::to_string(outcome_index) +
                          " out of range");
  }
  // Projecting onto |chi_i> factorizes the component exactly:
  // (1 (x) |chi><chi|) Psi = s (x) chi with s_a = sum_c conj(chi_c) Psi_{a,c}.
  const CVec& chi = model.pointer_basis()[outcome_index].amplitudes();
  CVec system = CVec::Zero(d1);
  for (Index a = 0; a < d1; ++a) {
    Complex sum(0.0, 0.0);
    for (Index c = 0; c < d2; ++c) {
      sum += std::conj(chi(c)) * composite.amplitudes()(a * d2 + c);
    }
    system(a) = sum;
  }
  const double p = system.squaredNorm();
  if (p <= kProbabilityFloor) {
    throw ZeroProbabilityOutcome(
        "pointer reading " + std::to_string(outcome_index) +
        " has (near-)zero probability; the conditioned state is undefined");
  }
  return PointerReading{std::min(p, 1.0),
                        StateVector(system / system.norm(), tol)};
}

}  // namespace qmeas
