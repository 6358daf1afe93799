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

#include "linalg.hpp"
#include "test_helpers.hpp"

using namespace qmeas;
using namespace qmeas::testing;

namespace {

CMat mat2(Complex a, Complex b, Complex c, Complex d) {
  CMat m(2, 2);
  m << a, b, c, d;
  return m;
}

const Complex I1(0.0, 1.0);

}  // namespace

TEST_CASE("frobenius norm and distance") {
  CMat m = mat2(3.0, 0.0, 0.0, 4.0);
  CHECK(frobenius(m) == doctest::Approx(5.0));
  CHECK(frobenius_distance(m, m) == doctest::Approx(0.0));
  CHECK(frobenius_distance(m, CMat::Zero(2, 2)) == doctest::Approx(5.0));
  CHECK(approx_equal(m, m));
  CHECK_FALSE(approx_equal(m, CMat::Identity(2, 2)));
}

TEST_CASE("hermitian, unitary, projector predicates") {
  CHECK(is_hermitian(mat2(1.0, I1, -I1, 2.0)));
  CHECK_FALSE(is_hermitian(mat2(1.0, I1, I1, 2.0)));

  CMat hadamard = mat2(1.0, 1.0, 1.0, -1.0) / std::sqrt(2.0);
  CHECK(is_unitary(hadamard));
  CHECK_FALSE(is_unitary(mat2(1.0, 0.0, 0.0, 2.0)));

  CHECK(is_projector(mat2(0.5, 0.5, 0.5, 0.5)));
  CHECK_FALSE(is_projector(mat2(0.5, 0.0, 0.0, 0.25)));
}

TEST_CASE("non-finite input is rejected") {
  CMat m = mat2(std::nan(""), 0.0, 0.0, 1.0);
  CHECK_FALSE(all_finite(m));
  CHECK_THROWS_AS(hermitian_clusters(m), Validation);
}

TEST_CASE("eigendecomposition of sigma_x") {
  CMat sx = mat2(0.0, 1.0, 1.0, 0.0);
  SpectralDecomposition dec = hermitian_eig(sx);
  REQUIRE(dec.eigenvalues.size() == 2);
  CHECK(dec.eigenvalues[0] == doctest::Approx(-1.0));
  CHECK(dec.eigenvalues[1] == doctest::Approx(1.0));
  CMat minus = mat2(0.5, -0.5, -0.5, 0.5);
  CMat plus = mat2(0.5, 0.5, 0.5, 0.5);
  CHECK(frobenius_distance(dec.projectors[0], minus) < 1e-12);
  CHECK(frobenius_distance(dec.projectors[1], plus) < 1e-12);
  CHECK(frobenius_distance(dec.reconstruct(), sx) < 1e-12);
}

TEST_CASE("near-degenerate eigenvalues merge into one cluster") {
  CMat m = CMat::Zero(3, 3);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0 + 1e-12;
  m(2, 2) = 2.0;
  EigenClusters eig = hermitian_clusters(m);
  REQUIRE(eig.values.size() == 2);
  CHECK(eig.bases[0].cols() == 2);
  CHECK(eig.bases[1].cols() == 1);
  CHECK(eig.values[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(eig.values[1] == doctest::Approx(2.0));
}

TEST_CASE("explicit grouping tolerance controls the clustering") {
  CMat m = CMat::Zero(3, 3);
  m(0, 0) = 1.0;
  m(1, 1) = 1.05;
  m(2, 2) = 2.0;
  CHECK(hermitian_clusters(m, 0.1).values.size() == 2);
  CHECK(hermitian_clusters(m, 0.01).values.size() == 3);
}

TEST_CASE("eigendecomposition properties on random Hermitian matrices") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 gen(seed);
    const Index d = 2 + static_cast<Index>(seed % 5);
    const CMat m = random_hermitian(d, gen);
    SpectralDecomposition dec = hermitian_eig(m);
    CAPTURE(seed);
    CHECK(frobenius_distance(dec.reconstruct(), m) < 1e-9);
    CMat sum = CMat::Zero(d, d);
    for (std::size_t i = 0; i < dec.projectors.size(); ++i) {
      const CMat& p = dec.projectors[i];
      CHECK(is_projector(p, 1e-9));
      sum += p;
      for (std::size_t j = i + 1; j < dec.projectors.size(); ++j) {
        CHECK(frobenius(p * dec.projectors[j]) < 1e-9);
      }
    }
    CHECK(frobenius_distance(sum, CMat::Identity(d, d)) < 1e-10);
    for (std::size_t i = 0; i + 1 < dec.eigenvalues.size(); ++i) {
      CHECK(dec.eigenvalues[i] < dec.eigenvalues[i + 1]);
    }
  }
}

TEST_CASE("eigendecomposition is deterministic") {
  std::mt19937_64 gen(7);
  const CMat m = random_hermitian(5, gen);
  EigenClusters a = hermitian_clusters(m);
  EigenClusters b = hermitian_clusters(m);
  REQUIRE(a.bases.size() == b.bases.size());
  for (std::size_t c = 0; c < a.bases.size(); ++c) {
    CHECK(CMat(a.bases[c] - b.bases[c]).norm() == 0.0);
  }
}

TEST_CASE("eigendecomposition rejects bad input") {
  CHECK_THROWS_AS(hermitian_clusters(mat2(0.0, 1.0, 0.0, 0.0)), NotHermitian);
  CHECK_THROWS_AS(hermitian_clusters(CMat::Zero(2, 3)), DimensionMismatch);
}

TEST_CASE("positive square root of diagonal and coupled matrices") {
  CMat m = mat2(4.0, 0.0, 0.0, 9.0);
  CHECK(frobenius_distance(positive_sqrt(m), mat2(2.0, 0.0, 0.0, 3.0)) <
        1e-12);

  // [[2,1],[1,2]] has eigenvalues 3 and 1 on the (1,1)/(1,-1) axes.
  const double r3 = std::sqrt(3.0);
  CMat coupled = mat2(2.0, 1.0, 1.0, 2.0);
  CMat expected =
      0.5 * mat2(r3 + 1.0, r3 - 1.0, r3 - 1.0, r3 + 1.0);
  CHECK(frobenius_distance(positive_sqrt(coupled), expected) < 1e-12);
}

TEST_CASE("positive square root properties on random PSD matrices") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 gen(seed + 1000);
    const Index d = 2 + static_cast<Index>(seed % 5);
    const CMat g = ginibre(d, d, gen);
    CMat psd = g * g.adjoint();
    psd = 0.5 * (psd + CMat(psd.adjoint()));
    const CMat root = positive_sqrt(psd);
    CAPTURE(seed);
    CHECK(is_hermitian(root, 1e-10));
    CHECK(frobenius_distance(root * root, psd) < 1e-8 * (1.0 + frobenius(psd)));
    CHECK(hermitian_clusters(root).raw_values(0) > -1e-9);
  }
}

TEST_CASE("positive square root rejects negative spectra") {
  CHECK_THROWS_AS(positive_sqrt(mat2(-1.0, 0.0, 0.0, 1.0)), NotPositive);
}

TEST_CASE("range projector of rank-deficient matrices") {
  CMat ones = mat2(1.0, 1.0, 1.0, 1.0);
  CHECK(frobenius_distance(range_projector(ones),
                           mat2(0.5, 0.5, 0.5, 0.5)) < 1e-12);

  CMat m = CMat::Zero(3, 3);
  m(2, 2) = 3.0;
  CMat q = range_projector(m);
  CHECK(q(2, 2).real() == doctest::Approx(1.0));
  CHECK(std::abs(q.trace()) == doctest::Approx(1.0));
  CHECK(frobenius_distance(m * q, m) < 1e-12);
}

TEST_CASE("polar factorization of the raising matrix") {
  // A = [[0,1],[0,0]]: H = diag(0,1), the isometry part maps e1 -> e0, and
  // the deterministic unitary extension is the flip [[0,1],[1,0]].
  CMat a = mat2(0.0, 1.0, 0.0, 0.0);
  PolarFactors pf = polar_factorize(a);
  CHECK(frobenius_distance(pf.positive, mat2(0.0, 0.0, 0.0, 1.0)) < 1e-12);
  CHECK(frobenius_distance(pf.unitary, mat2(0.0, 1.0, 1.0, 0.0)) < 1e-12);
  CHECK(frobenius_distance(pf.partial_isometry, a) < 1e-12);
  CHECK(frobenius_distance(pf.range_projector, mat2(0.0, 0.0, 0.0, 1.0)) <
        1e-12);
  CHECK(frobenius_distance(pf.unitary * pf.positive, a) < 1e-12);
}

TEST_CASE("polar factorization of a unitary is trivial") {
  std::mt19937_64 gen(42);
  const CMat u = random_unitary(4, gen);
  PolarFactors pf = polar_factorize(u);
  CHECK(frobenius_distance(pf.positive, CMat::Identity(4, 4)) < 1e-9);
  CHECK(frobenius_distance(pf.unitary, u) < 1e-8);
  CHECK(frobenius_distance(pf.partial_isometry, u) < 1e-8);
}

TEST_CASE("polar factorization properties on random matrices") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 gen(seed + 2000);
    const Index d = 2 + static_cast<Index>(seed % 5);
    CMat a = ginibre(d, d, gen);

    // Every third matrix is made rank deficient by zeroing trailing singular
    // values through an independent SVD.
    Index expected_rank = d;
    if (seed % 3 == 0) {
      Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
      Eigen::VectorXd s = svd.singularValues();
      const Index drop = 1 + static_cast<Index>(seed % static_cast<std::uint64_t>(d - 1));
      for (Index i = d - drop; i < d; ++i) {
        s(i) = 0.0;
      }
      a = svd.matrixU() * s.asDiagonal() * svd.matrixV().adjoint();
      expected_rank = d - drop;
    }

    PolarFactors pf = polar_factorize(a);
    CAPTURE(seed);
    CHECK(is_unitary(pf.unitary, 1e-8));
    CHECK(is_hermitian(pf.positive, 1e-9));
    CHECK(hermitian_clusters(pf.positive).raw_values(0) > -1e-9);
    CHECK(frobenius_distance(pf.unitary * pf.positive, a) < 1e-8);
    // H is the positive root of A^dagger A; the square is an independent
    // characterization that avoids recomputing the same eigensystem.
    CHECK(frobenius_distance(pf.positive * pf.positive, a.adjoint() * a) <
          1e-7 * (1.0 + frobenius(a) * frobenius(a)));
    CHECK(frobenius_distance(pf.partial_isometry * pf.positive, a) < 1e-8);
    CHECK(is_projector(pf.range_projector, 1e-9));
    CHECK(frobenius_distance(
              CMat(pf.partial_isometry.adjoint() * pf.partial_isometry),
              pf.range_projector) < 1e-8);
    CHECK(std::abs(pf.range_projector.trace().real() -
                   static_cast<double>(expected_rank)) < 1e-6);
    // The unitary agrees with the isometry on the support of H.
    CHECK(frobenius(CMat((pf.unitary - pf.partial_isometry) *
                         pf.range_projector)) < 1e-8);
  }
}

TEST_CASE("Kronecker product places blocks by the first factor") {
  CMat flip = mat2(0.0, 1.0, 1.0, 0.0);
  CMat keep0 = mat2(1.0, 0.0, 0.0, 0.0);
  CMat t = tensor(flip, keep0);
  REQUIRE(t.rows() == 4);
  CHECK(t(0, 2).real() == doctest::Approx(1.0));
  CHECK(t(2, 0).real() == doctest::Approx(1.0));
  CHECK(frobenius(t) == doctest::Approx(std::sqrt(2.0)));

  CVec e1(2), e0(2);
  e1 << 0.0, 1.0;
  e0 << 1.0, 0.0;
  CVec v = tensor(e1, e0);
  REQUIRE(v.size() == 4);
  CHECK(std::abs(v(2)) == doctest::Approx(1.0));
}

TEST_CASE("partial trace over the second factor") {
  // Maximally entangled two-qubit state reduces to the maximally mixed qubit.
  CVec bell = CVec::Zero(4);
  bell(0) = 1.0 / std::sqrt(2.0);
  bell(3) = 1.0 / std::sqrt(2.0);
  CMat rho = bell * bell.adjoint();
  CHECK(frobenius_distance(partial_trace_2(rho, 2, 2),
                           0.5 * CMat::Identity(2, 2)) < 1e-12);

  std::mt19937_64 gen(11);
  const CMat a = ginibre(3, 3, gen);
  const CMat b = ginibre(4, 4, gen);
  CHECK(frobenius_distance(partial_trace_2(tensor(a, b), 3, 4),
                           b.trace() * a) < 1e-9);
}

TEST_CASE("isometry extension pairs completions deterministically") {
  CVec e0 = CVec::Zero(2), e1 = CVec::Zero(2);
  e0(0) = 1.0;
  e1(1) = 1.0;
  CMat u = extend_isometry({e0}, {e1}, 2);
  CHECK(frobenius_distance(u, mat2(0.0, 1.0, 1.0, 0.0)) < 1e-12);
}

TEST_CASE("isometry extension properties on random column lists") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 gen(seed + 3000);
    const Index d = 2 + static_cast<Index>(seed % 5);
    const Index k = 1 + static_cast<Index>(seed % static_cast<std::uint64_t>(d));
    const CMat a = random_unitary(d, gen);
    const CMat b = random_unitary(d, gen);
    std::vector<CVec> cols, imgs;
    for (Index j = 0; j < k; ++j) {
      cols.push_back(a.col(j));
      imgs.push_back(b.col(j));
    }
    CMat u = extend_isometry(cols, imgs, d);
    CAPTURE(seed);
    CHECK(is_unitary(u, 1e-8));
    for (Index j = 0; j < k; ++j) {
      CHECK(CVec(u * cols[static_cast<std::size_t>(j)] -
                 imgs[static_cast<std::size_t>(j)])
                .norm() < 1e-8);
    }
  }
}

TEST_CASE("isometry extension rejects non-orthonormal input") {
  CVec e0 = CVec::Zero(2), diag = CVec::Zero(2);
  e0(0) = 1.0;
  diag(0) = 1.0 / std::sqrt(2.0);
  diag(1) = 1.0 / std::sqrt(2.0);
  CHECK_THROWS_AS(extend_isometry({e0, diag}, {e0, diag}, 2), NotOrthonormal);
  CHECK_THROWS_AS(extend_isometry({e0}, {e0, diag}, 2), DimensionMismatch);
}
