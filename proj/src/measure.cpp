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

#include "measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace qmeas {

namespace {

void require_dims(Index a, Index b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) +
                            " dimension does not match the instrument");
  }
}

std::string describe_residual(const char* text, double value, double tol) {
  char buf[192];
  std::snprintf(buf, sizeof(buf), "%s%.3g (tolerance %.3g)", text, value, tol);
  return buf;
}

OutcomeDistribution finish_distribution(const Instrument& inst,
                                        std::vector<double> raw, double tol) {
  double sum = 0.0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] < -tol) {
      throw Validation(describe_residual(
          "outcome probability is negative: p = ", raw[i], tol));
    }
    raw[i] = std::clamp(raw[i], 0.0, 1.0);
    sum += raw[i];
  }
  if (std::abs(sum - 1.0) > tol) {
    throw Validation(describe_residual(
        "outcome probabilities do not sum to 1: |sum p_i - 1| = ",
        std::abs(sum - 1.0), tol));
  }
  for (double& p : raw) {
    p /= sum;
  }
  return OutcomeDistribution{inst.labels(), std::move(raw)};
}

// One uniform draw in [0, 1) from the fixed 64-bit generator contract.
double next_uniform(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

std::size_t invert_cdf(const std::vector<double>& probs, double u) {
  double cum = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    cum += probs[i];
    if (u < cum) return i;
  }
  // u landed in the roundoff sliver above the final cumulative value; take
  // the last outcome that can actually occur.
  for (std::size_t i = probs.size(); i-- > 0;) {
    if (probs[i] > kProbabilityFloor) return i;
  }
  throw Error(ErrorCode::Internal, "distribution has no possible outcome");
}

}  // namespace

OutcomeDistribution probabilities(const Instrument& inst,
                                  const DensityOperator& rho, double tol) {
  require_dims(rho.dim(), inst.dim(), "state");
  std::vector<double> raw;
  raw.reserve(inst.outcome_count());
  for (const CMat& m : inst.transformers()) {
    raw.push_back((m * rho.matrix() * m.adjoint()).trace().real());
  }
  return finish_distribution(inst, std::move(raw), tol);
}

OutcomeDistribution probabilities(const Instrument& inst,
                                  const StateVector& psi, double tol) {
  require_dims(psi.dim(), inst.dim(), "state");
  std::vector<double> raw;
  raw.reserve(inst.outcome_count());
  for (const CMat& m : inst.transformers()) {
    raw.push_back((m * psi.amplitudes()).squaredNorm());
  }
  return finish_distribution(inst, std::move(raw), tol);
}

SelectiveOutcome apply_selective(const Instrument& inst, std::size_t index,
                                 const DensityOperator& rho, double tol) {
  if (index >= inst.outcome_count()) {
    throw IndexOutOfRange("outcome index " + std::to_string(index) +
                          " out of range");
  }
  OutcomeDistribution dist = probabilities(inst, rho, tol);
  const double p = dist.probabilities[index];
  if (p <= kProbabilityFloor) {
    throw ZeroProbabilityOutcome(
        "outcome '" + inst.labels()[index] +
        "' has (near-)zero probability; the conditioned state is undefined");
  }
  const CMat& m = inst.transformers()[index];
  CMat post = m * rho.matrix() * m.adjoint();
  post = 0.5 * (post + CMat(post.adjoint()));
  const double trace = post.trace().real();
  if (trace <= kProbabilityFloor) {
    throw ZeroProbabilityOutcome(
        "outcome '" + inst.labels()[index] +
        "' has (near-)zero probability; the conditioned state is undefined");
  }
  post /= trace;
  // Conditioning divides by p, so input positivity slack up to tol is
  // amplified by 1/p; widen the validation accordingly.
  const double post_tol = tol * (1.0 + 1.0 / p);
  return SelectiveOutcome{index, inst.labels()[index], p,
                          DensityOperator(std::move(post), post_tol)};
}

SelectiveOutcome apply_selective(const Instrument& inst,
                                 const std::string& label,
                                 const DensityOperator& rho, double tol) {
  const std::optional<std::size_t> index = inst.find_label(label);
  if (!index) {
    throw IndexOutOfRange("instrument has no outcome labeled '" + label + "'");
  }
  return apply_selective(inst, *index, rho, tol);
}

SelectiveVectorOutcome apply_selective(const Instrument& inst,
                                       std::size_t index,
                                       const StateVector& psi, double tol) {
  if (index >= inst.outcome_count()) {
    throw IndexOutOfRange("outcome index " + std::to_string(index) +
                          " out of range");
  }
  require_dims(psi.dim(), inst.dim(), "state");
  const CVec phi = inst.transformers()[index] * psi.amplitudes();
  const double p = phi.squaredNorm();
  if (p <= kProbabilityFloor) {
    throw ZeroProbabilityOutcome(
        "outcome '" + inst.labels()[index] +
        "' has (near-)zero probability; the conditioned state is undefined");
  }
  return SelectiveVectorOutcome{index, inst.labels()[index], std::min(p, 1.0),
                                StateVector(phi / phi.norm(), tol)};
}

DensityOperator apply_nonselective(const Instrument& inst,
                                   const DensityOperator& rho, double tol) {
  require_dims(rho.dim(), inst.dim(), "state");
  CMat out = CMat::Zero(rho.dim(), rho.dim());
  for (const CMat& m : inst.transformers()) {
    out += m * rho.matrix() * m.adjoint();
  }
  out = 0.5 * (out + CMat(out.adjoint()));
  const double post_tol =
      tol * static_cast<double>(inst.outcome_count() + 3);
  return DensityOperator(std::move(out), post_tol);
}

SelectiveOutcome sample_outcome(const Instrument& inst,
                                const DensityOperator& rho, std::uint64_t seed,
                                double tol) {
  OutcomeDistribution dist = probabilities(inst, rho, tol);
  std::mt19937_64 gen(seed);
  const std::size_t index = invert_cdf(dist.probabilities, next_uniform(gen));
  return apply_selective(inst, index, rho, tol);
}

std::vector<std::uint64_t> sample_counts(const Instrument& inst,
                                         const DensityOperator& rho,
                                         std::uint64_t seed,
                                         std::uint64_t shots, double tol) {
  OutcomeDistribution dist = probabilities(inst, rho, tol);
  std::vector<std::uint64_t> counts(inst.outcome_count(), 0);
  std::mt19937_64 gen(seed);
  for (std::uint64_t s = 0; s < shots; ++s) {
    ++counts[invert_cdf(dist.probabilities, next_uniform(gen))];
  }
  return counts;
}

bool has_sharp_value(const DensityOperator& rho, const Observable& obs,
                     std::size_t label_index, double tol) {
  if (label_index >= obs.outcome_count()) {
    throw IndexOutOfRange("eigenvalue index " + std::to_string(label_index) +
                          " out of range");
  }
  require_dims(rho.dim(), obs.dim(), "state");
  const double overlap =
      (rho.matrix() * obs.projectors()[label_index]).trace().real();
  return overlap >= 1.0 - tol;
}

bool sharp_value_decomposition_check(
    const DensityOperator& rho, const Observable& obs, std::size_t label_index,
    const std::vector<double>& weights,
    const std::vector<StateVector>& pure_states, double tol) {
  if (weights.size() != pure_states.size() || weights.empty()) {
    throw DimensionMismatch("need one weight per pure state");
  }
  if (label_index >= obs.outcome_count()) {
    throw IndexOutOfRange("eigenvalue index " + std::to_string(label_index) +
                          " out of range");
  }
  require_dims(rho.dim(), obs.dim(), "state");
  double weight_sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) {
      throw Validation("mixture weights must be positive");
    }
    weight_sum += w;
  }
  if (std::abs(weight_sum - 1.0) > tol) {
    throw Validation(describe_residual(
        "mixture weights do not sum to 1: |sum w_k - 1| = ",
        std::abs(weight_sum - 1.0), tol));
  }

  CMat mixture = CMat::Zero(rho.dim(), rho.dim());
  for (std::size_t k = 0; k < weights.size(); ++k) {
    require_dims(pure_states[k].dim(), rho.dim(), "pure state");
    mixture += weights[k] * pure_states[k].amplitudes() *
               pure_states[k].amplitudes().adjoint();
  }
  const double recon = (mixture - rho.matrix()).norm();
  if (recon > tol) {
    throw InvalidDecomposition(describe_residual(
        "mixture does not reconstruct the state: ||sum w_k |k><k| - rho|| = ",
        recon, tol));
  }

  if (!has_sharp_value(rho, obs, label_index, tol)) {
    return true;  // implication is vacuous
  }
  const CMat& p = obs.projectors()[label_index];
  for (const StateVector& k : pure_states) {
    const double overlap =
        (k.amplitudes().adjoint() * p * k.amplitudes())(0, 0).real();
    if (overlap < 1.0 - tol) {
      return false;
    }
  }
  return true;
}

}  // namespace qmeas
