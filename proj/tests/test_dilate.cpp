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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "dilate.hpp"
#include "measure.hpp"
#include "test_helpers.hpp"

using namespace qmeas;
using namespace qmeas::testing;

namespace {

CMat sigma_z() {
  CMat m = CMat::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

Instrument luders_z() {
  return luders_instrument(Observable::from_matrix(sigma_z()));
}

CVec basis_vec(Index dim, Index i) {
  CVec e = CVec::Zero(dim);
  e(i) = Complex(1.0, 0.0);
  return e;
}

}  // namespace

TEST_CASE("dilating a spin measurement writes the outcome into the pointer") {
  // For the eigenprojector instrument of sigma_z the composite unitary is a
  // controlled flip: |0>|0> -> |0>|1> (outcome +1 is pointer 1), |1>|0> stays
  // (outcome -1 is pointer 0), and the completion fixes the rest.
  DilationModel model = dilate(luders_z());
  CHECK(model.system_dim() == 2);
  CHECK(model.apparatus_dim() == 2);
  CHECK(is_unitary(model.unitary(), 1e-12));

  CMat expected = CMat::Zero(4, 4);
  expected(1, 0) = 1.0;  // e0 -> e1
  expected(0, 1) = 1.0;  // completion pairs the leftovers in order
  expected(2, 2) = 1.0;  // e2 -> e2
  expected(3, 3) = 1.0;
  CHECK(frobenius_distance(model.unitary(), expected) < 1e-12);
}

TEST_CASE("round trip through a dilation reproduces the transformers") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    std::mt19937_64 gen(seed);
    const Index d = 2 + static_cast<Index>(seed % 5);
    const std::size_t k = 2 + seed % 3;
    Instrument inst = random_instrument(d, k, gen);
    Instrument back = extract_instrument(dilate(inst));
    CAPTURE(seed);
    REQUIRE(back.outcome_count() == k);
    for (std::size_t i = 0; i < k; ++i) {
      CHECK(frobenius_distance(back.transformers()[i],
                               inst.transformers()[i]) < 1e-8);
    }
  }
}

TEST_CASE("dilation refuses transformers violating completeness") {
  // A lenient constructor tolerance lets the defective instrument through;
  // dilation at its own tolerance must still refuse to interpolate it.
  CMat half = 0.5 * CMat::Identity(2, 2);
  Instrument sloppy({half, half}, 1.0);
  CHECK_THROWS_AS(dilate(sloppy), CompletenessViolation);
}

TEST_CASE("the final composite state entangles system and pointer") {
  DilationModel model = dilate(luders_z());
  CVec plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  StateVector composite = final_state(model, StateVector(plus));

  // (|0>|1> + |1>|0>)/sqrt(2) in composite indexing.
  CHECK(std::abs(composite.amplitudes()(1) - Complex(1.0 / std::sqrt(2.0), 0)) <
        1e-12);
  CHECK(std::abs(composite.amplitudes()(2) - Complex(1.0 / std::sqrt(2.0), 0)) <
        1e-12);

  PointerReading down = read_pointer(model, composite, 0);
  CHECK(down.probability == doctest::Approx(0.5));
  CHECK(std::abs(down.post_system_state.amplitudes()(1)) ==
        doctest::Approx(1.0));

  PointerReading up = read_pointer(model, composite, 1);
  CHECK(up.probability == doctest::Approx(0.5));
  CHECK(std::abs(up.post_system_state.amplitudes()(0)) ==
        doctest::Approx(1.0));
}

TEST_CASE("pointer readings reproduce the direct measurement") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    std::mt19937_64 gen(seed + 100);
    const Index d = 2 + static_cast<Index>(seed % 4);
    const std::size_t k = 2 + seed % 3;
    Instrument inst = random_instrument(d, k, gen);
    DilationModel model = dilate(inst);
    StateVector psi(random_state_vector(d, gen));
    StateVector composite = final_state(model, psi);

    OutcomeDistribution direct = probabilities(inst, psi);
    CAPTURE(seed);
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      if (direct.probabilities[i] <= kProbabilityFloor) continue;
      PointerReading reading = read_pointer(model, composite, i);
      CHECK(reading.probability ==
            doctest::Approx(direct.probabilities[i]).epsilon(1e-8));
      SelectiveVectorOutcome out = apply_selective(inst, i, psi);
      // Post states agree up to a global phase; compare projectors.
      const CVec& u = reading.post_system_state.amplitudes();
      const CVec& v = out.post_state.amplitudes();
      CHECK(frobenius_distance(u * u.adjoint(), v * v.adjoint()) < 1e-8);
      total += reading.probability;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("tracing out the apparatus matches the nonselective update") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    std::mt19937_64 gen(seed + 200);
    const Index d = 2 + static_cast<Index>(seed % 4);
    const std::size_t k = 2 + seed % 3;
    Instrument inst = random_instrument(d, k, gen);
    DilationModel model = dilate(inst);
    StateVector psi(random_state_vector(d, gen));
    StateVector composite = final_state(model, psi);

    const CVec& amp = composite.amplitudes();
    CMat reduced = partial_trace_2(amp * amp.adjoint(), d,
                                   static_cast<Index>(k));
    DensityOperator direct =
        apply_nonselective(inst, DensityOperator::from_state(psi));
    CAPTURE(seed);
    CHECK(frobenius_distance(reduced, direct.matrix()) < 1e-8);
  }
}

TEST_CASE("an identity evolution extracts the trivial instrument") {
  std::vector<StateVector> pointer = {StateVector(basis_vec(2, 0)),
                                      StateVector(basis_vec(2, 1))};
  DilationModel model(2, StateVector(basis_vec(2, 0)), pointer, {0.0, 1.0},
                      CMat::Identity(4, 4));
  Instrument inst = extract_instrument(model);
  CHECK(frobenius_distance(inst.transformers()[0], CMat::Identity(2, 2)) <
        1e-12);
  CHECK(frobenius(inst.transformers()[1]) < 1e-12);
  CHECK(inst.labels()[0] == "0");
}

TEST_CASE("model construction validates every part") {
  std::vector<StateVector> pointer = {StateVector(basis_vec(2, 0)),
                                      StateVector(basis_vec(2, 1))};
  StateVector ready(basis_vec(2, 0));

  CHECK_THROWS_AS(
      DilationModel(2, ready, pointer, {0.0, 1.0}, CMat::Identity(3, 3)),
      DimensionMismatch);
  CHECK_THROWS_AS(
      DilationModel(2, ready, pointer, {0.0, 1.0}, 2.0 * CMat::Identity(4, 4)),
      NotUnitary);
  CHECK_THROWS_AS(
      DilationModel(2, ready, pointer, {1.0, 1.0}, CMat::Identity(4, 4)),
      Validation);
  CHECK_THROWS_AS(
      DilationModel(2, ready, pointer, {0.0}, CMat::Identity(4, 4)),
      DimensionMismatch);

  std::vector<StateVector> skewed = {StateVector(basis_vec(2, 0)),
                                     StateVector(CVec(basis_vec(2, 0)))};
  CHECK_THROWS_AS(
      DilationModel(2, ready, skewed, {0.0, 1.0}, CMat::Identity(4, 4)),
      NotOrthonormal);
}

TEST_CASE("impossible pointer readings cannot be conditioned on") {
  DilationModel model = dilate(luders_z());
  StateVector composite = final_state(model, StateVector(basis_vec(2, 0)));
  // The system starts in the +1 eigenspace, so pointer 0 (outcome -1) never
  // fires.
  CHECK_THROWS_AS(read_pointer(model, composite, 0), ZeroProbabilityOutcome);
  CHECK_THROWS_AS(read_pointer(model, composite, 7), IndexOutOfRange);
}
