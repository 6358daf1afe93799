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

#include "classify.hpp"
#include "gallery.hpp"
#include "measure.hpp"
#include "test_helpers.hpp"

using namespace qmeas;
using namespace qmeas::testing;

namespace {

CVec two_spin_state(Index first, Index second) {
  CVec v = CVec::Zero(4);
  v(first * 2 + second) = Complex(1.0, 0.0);
  return v;
}

}  // namespace

TEST_CASE("Pauli matrices") {
  CMat sx = pauli('x');
  CHECK(sx(0, 1).real() == doctest::Approx(1.0));
  CHECK(sx(1, 0).real() == doctest::Approx(1.0));
  CMat sy = pauli('y');
  CHECK(sy(0, 1).imag() == doctest::Approx(-1.0));
  CHECK(sy(1, 0).imag() == doctest::Approx(1.0));
  CMat sz = pauli('z');
  CHECK(sz(0, 0).real() == doctest::Approx(1.0));
  CHECK(sz(1, 1).real() == doctest::Approx(-1.0));
  for (char axis : {'x', 'y', 'z'}) {
    CHECK(is_unitary(pauli(axis)));
    CHECK(is_hermitian(pauli(axis)));
  }
  try {
    pauli('w');
    FAIL("invalid axis should have thrown");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("the pair observable measures the first spin") {
  Observable obs = spin_pair_observable();
  CHECK(obs.dim() == 4);
  CMat expected = CMat::Zero(4, 4);
  expected(0, 0) = 1.0;
  expected(1, 1) = 1.0;
  expected(2, 2) = -1.0;
  expected(3, 3) = -1.0;
  CHECK(frobenius_distance(obs.matrix(), expected) < 1e-12);
  for (const CMat& p : obs.projectors()) {
    CHECK(std::abs(p.trace().real() - 2.0) < 1e-12);
  }
}

TEST_CASE("the undisturbed first-spin measurement is ideal") {
  Instrument inst = spin_pair_ideal();
  CHECK(inst.labels()[0] == "up");
  CHECK(inst.labels()[1] == "down");
  InstrumentClassification cls = classify_instrument(inst);
  CHECK(cls.kind == InstrumentKind::IdealOrdinary);
  CHECK(cls.projectors_complete);
}

TEST_CASE("rotating the second spin preserves repeatability") {
  Instrument inst = spin_pair_repeatable(pauli('x'), CMat::Identity(2, 2));
  InstrumentClassification cls = classify_instrument(inst);
  CHECK(cls.kind == InstrumentKind::RepeatableOrdinary);

  // With both rotations trivial the family degenerates to the ideal one.
  Instrument trivial =
      spin_pair_repeatable(CMat::Identity(2, 2), CMat::Identity(2, 2));
  CHECK(classify_instrument(trivial).kind == InstrumentKind::IdealOrdinary);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::mt19937_64 gen(seed);
    Instrument random_rot =
        spin_pair_repeatable(random_unitary(2, gen), random_unitary(2, gen));
    CAPTURE(seed);
    const InstrumentKind kind = classify_instrument(random_rot).kind;
    CHECK((kind == InstrumentKind::RepeatableOrdinary ||
           kind == InstrumentKind::IdealOrdinary));
  }

  CHECK_THROWS_AS(
      spin_pair_repeatable(CMat::Identity(4, 4), CMat::Identity(2, 2)),
      DimensionMismatch);
  CHECK_THROWS_AS(
      spin_pair_repeatable(2.0 * CMat::Identity(2, 2), CMat::Identity(2, 2)),
      NotUnitary);
}

TEST_CASE("swapping the spins after readout breaks repeatability") {
  Instrument inst = preset_instrument("appendix-c-nonrepeatable");
  InstrumentClassification cls = classify_instrument(inst);
  CHECK(cls.kind == InstrumentKind::NonrepeatableOrdinary);
  CHECK(cls.projectors_complete);
}

TEST_CASE("disturbances acting only on the second spin are rejected") {
  CMat local = tensor(CMat::Identity(2, 2), pauli('x'));
  CHECK_THROWS_AS(spin_pair_nonrepeatable(local, local),
                  NotLocallyNontrivial);
}

TEST_CASE("repeating the measurement distinguishes the families") {
  // Start with spin pair |0>|1>: the first measurement reads "up" with
  // certainty in every family; what the repeat shows depends on the family.
  StateVector psi{two_spin_state(0, 1)};
  DensityOperator rho = DensityOperator::from_state(psi);

  SUBCASE("ideal: the state is untouched and the repeat agrees") {
    Instrument inst = spin_pair_ideal();
    SelectiveOutcome first = apply_selective(inst, std::string("up"), rho);
    CHECK(first.probability == doctest::Approx(1.0));
    CHECK(frobenius_distance(first.post_state.matrix(), rho.matrix()) <
          1e-12);
  }

  SUBCASE("repeatable: the second spin flips but the repeat agrees") {
    Instrument inst = spin_pair_repeatable(pauli('x'), CMat::Identity(2, 2));
    SelectiveOutcome first = apply_selective(inst, std::string("up"), rho);
    CHECK(first.probability == doctest::Approx(1.0));
    // Post state is |0>|0>: same first spin, flipped second spin.
    CHECK(first.post_state.matrix()(0, 0).real() == doctest::Approx(1.0));
    OutcomeDistribution again = probabilities(inst, first.post_state);
    CHECK(again.probabilities[0] == doctest::Approx(1.0));
  }

  SUBCASE("nonrepeatable: the swap inverts the second reading") {
    Instrument inst = preset_instrument("appendix-c-nonrepeatable");
    SelectiveOutcome first = apply_selective(inst, std::string("up"), rho);
    CHECK(first.probability == doctest::Approx(1.0));
    // Post state is |1>|0>: the swap moved the measured spin down.
    OutcomeDistribution again = probabilities(inst, first.post_state);
    CHECK(again.probabilities[0] == doctest::Approx(0.0));
    CHECK(again.probabilities[1] == doctest::Approx(1.0));
  }
}

TEST_CASE("preset names enumerate every built-in instrument") {
  std::vector<std::string> names = preset_names();
  REQUIRE(names.size() == 5);
  CHECK(names[0] == "appendix-c-ideal");
  CHECK(names[1] == "appendix-c-repeatable");
  CHECK(names[2] == "appendix-c-nonrepeatable");
  CHECK(names[3] == "luders-z");
  CHECK(names[4] == "symmetric-coin");
  for (const std::string& name : names) {
    CHECK_NOTHROW(preset_instrument(name));
  }
}

TEST_CASE("preset classifications span the whole hierarchy") {
  CHECK(classify_instrument(preset_instrument("appendix-c-ideal")).kind ==
        InstrumentKind::IdealOrdinary);
  CHECK(classify_instrument(preset_instrument("appendix-c-repeatable")).kind ==
        InstrumentKind::RepeatableOrdinary);
  CHECK(
      classify_instrument(preset_instrument("appendix-c-nonrepeatable")).kind ==
      InstrumentKind::NonrepeatableOrdinary);
  CHECK(classify_instrument(preset_instrument("luders-z")).kind ==
        InstrumentKind::IdealOrdinary);
  CHECK(classify_instrument(preset_instrument("symmetric-coin")).kind ==
        InstrumentKind::Generalized);
}

TEST_CASE("unknown preset names are rejected") {
  try {
    preset_instrument("no-such-preset");
    FAIL("unknown preset should have thrown");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
}
