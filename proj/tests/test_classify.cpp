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
#include <string>

#include "classify.hpp"
#include "measure.hpp"
#include "test_helpers.hpp"

using namespace qmeas;
using namespace qmeas::testing;

namespace {

CMat keep0() {
  CMat p = CMat::Zero(2, 2);
  p(0, 0) = 1.0;
  return p;
}

}  // namespace

TEST_CASE("a projector transformer is ideal") {
  OutcomeClassification oc = classify_outcome(keep0(), "up");
  CHECK(oc.label == "up");
  CHECK(oc.is_ordinary);
  REQUIRE(oc.is_repeatable.has_value());
  CHECK(*oc.is_repeatable);
  CHECK(oc.ideal_distance < 1e-12);
  CHECK(oc.projector_residual < 1e-12);
  REQUIRE(oc.projector.has_value());
  CHECK(frobenius_distance(*oc.projector, keep0()) < 1e-12);
}

TEST_CASE("a phased projector is repeatable but not ideal") {
  const Complex phase = std::polar(1.0, 0.7);
  OutcomeClassification oc = classify_outcome(phase * keep0());
  CHECK(oc.is_ordinary);
  CHECK(*oc.is_repeatable);
  CHECK(oc.ideal_distance > 0.1);
  CHECK(oc.repeatable_residual < 1e-12);
}

TEST_CASE("a transformer that maps its event out of range is not repeatable") {
  // sigma_x * diag(1,0): measures the event diag(1,0) but flips the state
  // out of it afterwards.
  CMat m = CMat::Zero(2, 2);
  m(1, 0) = 1.0;
  OutcomeClassification oc = classify_outcome(m);
  CHECK(oc.is_ordinary);
  REQUIRE(oc.is_repeatable.has_value());
  CHECK_FALSE(*oc.is_repeatable);
  CHECK(oc.repeatable_residual == doctest::Approx(1.0));
  CHECK(frobenius_distance(*oc.projector, keep0()) < 1e-12);
}

TEST_CASE("a non-projector effect is not an ordinary measurement") {
  CMat coin = CMat::Identity(2, 2) / std::sqrt(2.0);
  OutcomeClassification oc = classify_outcome(coin);
  CHECK_FALSE(oc.is_ordinary);
  CHECK_FALSE(oc.is_repeatable.has_value());
  CHECK_FALSE(oc.projector.has_value());
  CHECK(oc.projector_residual > 0.1);
}

TEST_CASE("a sub-tolerance tail resolves to a borderline verdict") {
  // The 3e-9 singular value sits below the polar rank cut, so the polar
  // factors cannot see it while the transformer residual can; this must
  // degrade to a flagged verdict, not a hard failure.
  CMat m = CMat::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = 3e-9;
  OutcomeClassification oc = classify_outcome(m);
  CHECK(oc.is_ordinary);
  REQUIRE(oc.is_repeatable.has_value());
  CHECK_FALSE(*oc.is_repeatable);
  CHECK(oc.borderline);
}

TEST_CASE("instrument kinds cover the measurement hierarchy") {
  CHECK(std::string(to_string(InstrumentKind::IdealOrdinary)) ==
        "IdealOrdinary");
  CHECK(std::string(to_string(InstrumentKind::Generalized)) == "Generalized");

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 gen(seed);
    const Index d = 3 + static_cast<Index>(seed % 4);
    const std::size_t k = 2 + seed % 2;
    CAPTURE(seed);

    OrdinaryFamily ideal =
        random_ordinary_instrument(d, k, OrdinaryKind::Ideal, gen);
    CHECK(classify_instrument(ideal.inst).kind ==
          InstrumentKind::IdealOrdinary);

    OrdinaryFamily rep =
        random_ordinary_instrument(d, k, OrdinaryKind::Repeatable, gen);
    CHECK(classify_instrument(rep.inst).kind ==
          InstrumentKind::RepeatableOrdinary);

    OrdinaryFamily nonrep =
        random_ordinary_instrument(d, k, OrdinaryKind::Nonrepeatable, gen);
    CHECK(classify_instrument(nonrep.inst).kind ==
          InstrumentKind::NonrepeatableOrdinary);

    OrdinaryFamily mixed =
        random_ordinary_instrument(d, k, OrdinaryKind::Mixed, gen);
    CHECK(classify_instrument(mixed.inst).kind ==
          InstrumentKind::MixedRepeatability);

    Instrument generic = random_instrument(d, k, gen);
    CHECK(classify_instrument(generic).kind == InstrumentKind::Generalized);
  }
}

TEST_CASE("classification recovers the measured projector family") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 gen(seed + 200);
    const Index d = 3 + static_cast<Index>(seed % 4);
    const std::size_t k = 2 + seed % 2;
    OrdinaryFamily fam =
        random_ordinary_instrument(d, k, OrdinaryKind::Nonrepeatable, gen);
    InstrumentClassification cls = classify_instrument(fam.inst);
    CAPTURE(seed);
    REQUIRE(cls.outcomes.size() == k);
    for (std::size_t i = 0; i < k; ++i) {
      REQUIRE(cls.outcomes[i].projector.has_value());
      CHECK(frobenius_distance(*cls.outcomes[i].projector,
                               fam.projectors[i]) < 1e-7);
    }
    CHECK(cls.projectors_complete);
    CHECK(cls.completeness_residual < 1e-8);
    REQUIRE(cls.observable.has_value());
    // Default labels "0", "1", ... parse as the reconstructed eigenvalues.
    for (std::size_t i = 0; i < k; ++i) {
      CHECK(cls.observable->eigenvalues()[i] ==
            doctest::Approx(static_cast<double>(i)));
    }
  }
}

TEST_CASE("repeatable verdicts match the operational repeat test") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 gen(seed + 400);
    const Index d = 3 + static_cast<Index>(seed % 4);
    OrdinaryFamily rep =
        random_ordinary_instrument(d, 2, OrdinaryKind::Repeatable, gen);
    DensityOperator rho(random_density_matrix(d, gen));
    OutcomeDistribution dist = probabilities(rep.inst, rho);
    CAPTURE(seed);
    for (std::size_t i = 0; i < 2; ++i) {
      if (dist.probabilities[i] <= 1e-6) continue;
      SelectiveOutcome out = apply_selective(rep.inst, i, rho);
      OutcomeDistribution again = probabilities(rep.inst, out.post_state);
      CHECK(again.probabilities[i] >= 1.0 - 1e-8);
    }
  }
}

TEST_CASE("nonrepeatable outcomes fail the operational repeat test") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 gen(seed + 600);
    const Index d = 3 + static_cast<Index>(seed % 4);
    OrdinaryFamily fam =
        random_ordinary_instrument(d, 2, OrdinaryKind::Nonrepeatable, gen);

    // Drive the repeat test with the state the disturbance moves furthest:
    // the top singular direction of (1 - P) M P, computed independently.
    const CMat& m0 = fam.inst.transformers()[0];
    const CMat& p0 = fam.projectors[0];
    const CMat moved = (CMat::Identity(d, d) - p0) * m0 * p0;
    Eigen::JacobiSVD<CMat> svd(moved, Eigen::ComputeFullV);
    StateVector probe(svd.matrixV().col(0));

    DensityOperator rho = DensityOperator::from_state(probe);
    SelectiveOutcome out = apply_selective(fam.inst, std::size_t{0}, rho);
    OutcomeDistribution again = probabilities(fam.inst, out.post_state);
    CAPTURE(seed);
    CHECK(again.probabilities[0] < 1.0 - 1e-5);
  }
}

TEST_CASE("full-rank transformers admit no larger absorbing projector") {
  std::mt19937_64 gen(3);
  CHECK_THROWS_AS(check_remark2(CMat::Identity(3, 3)), NotSingular);
  CHECK_THROWS_AS(check_remark2(random_unitary(4, gen)), NotSingular);
}

TEST_CASE("singular transformers admit several absorbing projectors") {
  CMat m = CMat::Zero(3, 3);
  m(0, 0) = 1.0;
  std::vector<CMat> projectors = check_remark2(m);
  REQUIRE(projectors.size() == 3);
  CHECK(std::abs(projectors[0].trace().real() - 1.0) < 1e-9);
  CHECK(std::abs(projectors[1].trace().real() - 2.0) < 1e-9);
  CHECK(std::abs(projectors[2].trace().real() - 3.0) < 1e-9);
  for (const CMat& e : projectors) {
    CHECK(is_projector(e, 1e-9));
    CHECK(frobenius(m * e - m) < 1e-9);
  }
}

TEST_CASE("absorbing projectors on random rank-deficient transformers") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 gen(seed + 800);
    const Index d = 3 + static_cast<Index>(seed % 4);
    CMat a = ginibre(d, d, gen);
    Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::VectorXd s = svd.singularValues();
    const Index drop = 1 + static_cast<Index>(seed % 2);
    for (Index i = d - drop; i < d; ++i) s(i) = 0.0;
    a = svd.matrixU() * s.asDiagonal() * svd.matrixV().adjoint();

    std::vector<CMat> projectors = check_remark2(a);
    CAPTURE(seed);
    REQUIRE(projectors.size() >= 2);
    const double scale = std::max(1.0, frobenius(a));
    double prev_rank = -1.0;
    for (const CMat& e : projectors) {
      CHECK(is_projector(e, 1e-8));
      CHECK(frobenius(a * e - a) < 1e-8 * scale);
      const double rank = e.trace().real();
      CHECK(rank > prev_rank + 0.5);
      prev_rank = rank;
    }
    CHECK(frobenius_distance(projectors.back(), CMat::Identity(d, d)) <
          1e-12);
  }
}
