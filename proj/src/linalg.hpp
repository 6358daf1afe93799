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
 * @file linalg.hpp
 * Dense complex matrix algebra used throughout the library: Hermitian
 * eigendecomposition with degeneracy grouping, positive square roots, polar
 * factorization, Kronecker products, partial traces, and deterministic
 * extension of partial isometries to unitaries.
 *
 * All functions are pure; all types are immutable values. Safe to call
 * concurrently from any number of threads.
 */

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "errors.hpp"

namespace qmeas {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Default comparison tolerance (Frobenius norm), overridable everywhere.
inline constexpr double kDefaultTol = 1e-9;

/// Residual threshold below which a Gram-Schmidt candidate is rejected as
/// already spanned during deterministic unitary completion.
inline constexpr double kCompletionResidualTol = 1e-10;

double frobenius(const CMat& m);
double frobenius_distance(const CMat& a, const CMat& b);
bool approx_equal(const CMat& a, const CMat& b, double tol = kDefaultTol);
bool all_finite(const CMat& m);

bool is_hermitian(const CMat& m, double tol = kDefaultTol);
bool is_unitary(const CMat& m, double tol = kDefaultTol);
bool is_projector(const CMat& m, double tol = kDefaultTol);

/// Throws DimensionMismatch unless m is square.
void require_square(const CMat& m, const char* what);

/**
 * A Hermitian operator resolved into distinct eigenvalues and the orthogonal
 * projectors onto their eigenspaces. Eigenvalues are strictly ascending with
 * gaps above the grouping tolerance used to build the decomposition; the
 * projectors are idempotent, pairwise orthogonal, and sum to the identity.
 */
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  std::vector<CMat> projectors;

  CMat reconstruct() const;
};

/**
 * Cluster form of a Hermitian eigendecomposition that keeps the orthonormal
 * eigenbasis of every eigenspace. `bases[c]` holds the basis of cluster c as
 * d x r_c columns; `values[c]` is the cluster mean of the raw eigenvalues.
 * Column phases are fixed deterministically (the entry of largest modulus is
 * made real positive), so repeated runs produce identical output.
 */
struct EigenClusters {
  std::vector<double> values;
  std::vector<CMat> bases;
  Eigen::VectorXd raw_values;  // ascending
  CMat raw_vectors;            // d x d, orthonormal columns

  Index dim() const { return raw_vectors.rows(); }
  CMat projector(std::size_t c) const { return bases[c] * bases[c].adjoint(); }
};

/**
 * Eigendecomposition of a Hermitian matrix with degeneracy grouping: raw
 * eigenvalues within `group_tol` of each other merge into one cluster whose
 * reported eigenvalue is the cluster mean. When `group_tol` is not given it
 * defaults to 1e-8 * max(1, largest |eigenvalue|).
 *
 * Throws NotHermitian if ||m_adjoint - m|| > tol.
 */
EigenClusters hermitian_clusters(const CMat& m,
                                 std::optional<double> group_tol = {},
                                 double tol = kDefaultTol);

SpectralDecomposition hermitian_eig(const CMat& m,
                                    std::optional<double> group_tol = {},
                                    double tol = kDefaultTol);

/**
 * The unique positive square root of a positive semidefinite matrix.
 * Eigenvalues within tol below zero are clamped to zero; anything lower
 * throws NotPositive.
 */
CMat positive_sqrt(const CMat& m, double tol = kDefaultTol);

/**
 * Projector onto the span of eigenvectors of a PSD matrix with eigenvalue
 * above `rank_tol` (default 1e-10 * max(1, largest eigenvalue)). Satisfies
 * m * Q = m within tolerance.
 */
CMat range_projector(const CMat& m, std::optional<double> rank_tol = {},
                     double tol = kDefaultTol);

/**
 * Polar factorization A = U H with U unitary and H = (A^dagger A)^{1/2}.
 *
 * `partial_isometry` is the uniquely determined factor that maps the range of
 * A^dagger A isometrically onto the range of A and annihilates its
 * orthocomplement; `unitary` extends it deterministically to the whole space
 * (Gram-Schmidt completion over standard basis vectors in index order).
 * `range_projector` is the projector onto the range of A^dagger A.
 */
struct PolarFactors {
  CMat unitary;
  CMat positive;
  CMat partial_isometry;
  CMat range_projector;
};

PolarFactors polar_factorize(const CMat& a, double tol = kDefaultTol);

/// Kronecker product with the first factor as the slow (major) index:
/// out(i1*rb + i2, j1*cb + j2) = a(i1, j1) * b(i2, j2).
CMat tensor(const CMat& a, const CMat& b);
CVec tensor(const CVec& a, const CVec& b);

/// Trace over the second factor of a (d1*d2)-dimensional operator:
/// out(i, i') = sum_j m(i*d2 + j, i'*d2 + j).
CMat partial_trace_2(const CMat& m, Index d1, Index d2);

/**
 * Extends the partial isometry columns[j] -> images[j] to a unitary on a
 * dim-dimensional space. Both lists must be orthonormal within tol. The two
 * lists are completed to full bases independently by Gram-Schmidt over
 * standard basis vectors in index order (candidates with residual below
 * kCompletionResidualTol are skipped) and the completions are paired in
 * order, which makes the result deterministic.
 */
CMat extend_isometry(const std::vector<CVec>& columns,
                     const std::vector<CVec>& images, Index dim,
                     double tol = 1e-8);

}  // namespace qmeas
