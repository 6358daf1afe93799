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

#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace qmeas {

namespace {

std::string fmt_tol(const char* text, double value) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%s%.3g", text, value);
  return buf;
}

// Rotates every column so its entry of largest modulus is real positive.
// Ties go to the lowest row index, which keeps the output deterministic.
void fix_column_phases(CMat& v) {
  for (Index j = 0; j < v.cols(); ++j) {
    Index best = 0;
    double best_mod = std::abs(v(0, j));
    for (Index i = 1; i < v.rows(); ++i) {
      const double mod = std::abs(v(i, j));
      if (mod > best_mod) {
        best_mod = mod;
        best = i;
      }
    }
    if (best_mod > 0.0) {
      v.col(j) *= std::conj(v(best, j)) / best_mod;
    }
  }
}

// Two-pass modified Gram-Schmidt of `vec` against the columns already stored
// in `basis`; returns the residual norm before normalization. On success the
// normalized residual is appended to `basis`.
double orthonormal_append(std::vector<CVec>& basis, CVec vec,
                          double min_residual) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const CVec& b : basis) {
      vec -= b.dot(vec) * b;
    }
  }
  const double norm = vec.norm();
  if (norm > min_residual) {
    basis.push_back(vec / norm);
  }
  return norm;
}

// Completes an orthonormal list to a full basis of C^dim by sweeping the
// standard basis vectors in index order.
void complete_basis(std::vector<CVec>& basis, Index dim) {
  for (Index i = 0; i < dim && static_cast<Index>(basis.size()) < dim; ++i) {
    CVec e = CVec::Zero(dim);
    e(i) = Complex(1.0, 0.0);
    orthonormal_append(basis, std::move(e), kCompletionResidualTol);
  }
  if (static_cast<Index>(basis.size()) != dim) {
    throw Error(ErrorCode::Internal,
                "basis completion exhausted the standard basis before "
                "reaching full dimension");
  }
}

struct RawHermitianEig {
  Eigen::VectorXd values;  // ascending
  CMat vectors;            // phase-fixed orthonormal columns
};

RawHermitianEig raw_hermitian_eig(const CMat& m, double tol,
                                  const char* what) {
  require_square(m, what);
  if (!all_finite(m)) {
    throw Validation(std::string(what) + " has non-finite entries");
  }
  const double herm_defect = frobenius_distance(m, m.adjoint());
  if (herm_defect > tol) {
    throw NotHermitian(fmt_tol(
        (std::string(what) + " is not Hermitian: ||m - m^dagger|| = ").c_str(),
        herm_defect));
  }
  const CMat sym = 0.5 * (m + CMat(m.adjoint()));
  Eigen::SelfAdjointEigenSolver<CMat> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::Internal, "Hermitian eigensolver failed");
  }
  RawHermitianEig out{solver.eigenvalues(), solver.eigenvectors()};
  fix_column_phases(out.vectors);
  return out;
}

}  // namespace

double frobenius(const CMat& m) { return m.norm(); }

double frobenius_distance(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("cannot compare matrices of different shapes");
  }
  return (a - b).norm();
}

bool approx_equal(const CMat& a, const CMat& b, double tol) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a - b).norm() <= tol;
}

bool all_finite(const CMat& m) { return m.allFinite(); }

bool is_hermitian(const CMat& m, double tol) {
  return m.rows() == m.cols() && frobenius_distance(m, m.adjoint()) <= tol;
}

bool is_unitary(const CMat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const CMat id = CMat::Identity(m.rows(), m.cols());
  return (CMat(m.adjoint() * m) - id).norm() <= tol &&
         (CMat(m * m.adjoint()) - id).norm() <= tol;
}

bool is_projector(const CMat& m, double tol) {
  return is_hermitian(m, tol) && (CMat(m * m) - m).norm() <= tol;
}

void require_square(const CMat& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatch(std::string(what) + " must be square");
  }
  if (m.rows() == 0) {
    throw DimensionMismatch(std::string(what) + " must be non-empty");
  }
}

CMat SpectralDecomposition::reconstruct() const {
  if (projectors.empty()) {
    throw InvalidDecomposition("spectral decomposition has no projectors");
  }
  CMat out = CMat::Zero(projectors[0].rows(), projectors[0].cols());
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    out += eigenvalues[i] * projectors[i];
  }
  return out;
}

EigenClusters hermitian_clusters(const CMat& m,
                                 std::optional<double> group_tol, double tol) {
  RawHermitianEig raw = raw_hermitian_eig(m, tol, "input");
  const Index d = m.rows();
  const double scale =
      std::max(std::abs(raw.values(0)), std::abs(raw.values(d - 1)));
  const double gtol = group_tol.value_or(1e-8 * std::max(1.0, scale));

  EigenClusters out;
  out.raw_values = raw.values;
  out.raw_vectors = raw.vectors;

  Index start = 0;
  for (Index i = 1; i <= d; ++i) {
    if (i == d || raw.values(i) - raw.values(i - 1) > gtol) {
      const Index count = i - start;
      out.values.push_back(raw.values.segment(start, count).mean());
      out.bases.push_back(raw.vectors.middleCols(start, count));
      start = i;
    }
  }
  return out;
}

SpectralDecomposition hermitian_eig(const CMat& m,
                                    std::optional<double> group_tol,
                                    double tol) {
  EigenClusters clusters = hermitian_clusters(m, group_tol, tol);
  SpectralDecomposition out;
  out.eigenvalues = clusters.values;
  out.projectors.reserve(clusters.bases.size());
  for (std::size_t c = 0; c < clusters.bases.size(); ++c) {
    out.projectors.push_back(clusters.projector(c));
  }
  return out;
}

CMat positive_sqrt(const CMat& m, double tol) {
  RawHermitianEig raw = raw_hermitian_eig(m, tol, "input");
  Eigen::VectorXd roots(raw.values.size());
  for (Index i = 0; i < raw.values.size(); ++i) {
    if (raw.values(i) < -tol) {
      throw NotPositive(
          fmt_tol("matrix has negative eigenvalue ", raw.values(i)));
    }
    roots(i) = std::sqrt(std::max(raw.values(i), 0.0));
  }
  CMat out = raw.vectors * roots.asDiagonal() * raw.vectors.adjoint();
  return 0.5 * (out + CMat(out.adjoint()));
}

CMat range_projector(const CMat& m, std::optional<double> rank_tol,
                     double tol) {
  RawHermitianEig raw = raw_hermitian_eig(m, tol, "input");
  const Index d = m.rows();
  const double top = raw.values(d - 1);
  if (raw.values(0) < -tol) {
    throw NotPositive(
        fmt_tol("matrix has negative eigenvalue ", raw.values(0)));
  }
  const double rtol = rank_tol.value_or(1e-10 * std::max(1.0, top));
  CMat out = CMat::Zero(d, d);
  for (Index i = 0; i < d; ++i) {
    if (raw.values(i) > rtol) {
      out += raw.vectors.col(i) * raw.vectors.col(i).adjoint();
    }
  }
  return 0.5 * (out + CMat(out.adjoint()));
}

PolarFactors polar_factorize(const CMat& a, double tol) {
  require_square(a, "polar input");
  if (!all_finite(a)) {
    throw Validation("polar input has non-finite entries");
  }
  const Index d = a.rows();
  CMat gram = a.adjoint() * a;
  gram = 0.5 * (gram + CMat(gram.adjoint()));
  RawHermitianEig raw = raw_hermitian_eig(gram, std::max(tol, 1e-12), "gram");

  const double top = std::max(raw.values(d - 1), 0.0);
  const double rank_tol = 1e-10 * std::max(1.0, top);

  // H and the isometric part must agree on which directions carry rank:
  // a direction dropped from the isometry but kept in H would be mapped by
  // the arbitrary unitary completion, so roundoff-level eigenvalues of the
  // Gram matrix (order eps * ||a||^2, i.e. sqrt(eps) * ||a|| after the root)
  // are zeroed in H as well.
  Eigen::VectorXd roots(d);
  for (Index i = 0; i < d; ++i) {
    roots(i) = raw.values(i) > rank_tol ? std::sqrt(raw.values(i)) : 0.0;
  }
  CMat positive = raw.vectors * roots.asDiagonal() * raw.vectors.adjoint();
  positive = 0.5 * (positive + CMat(positive.adjoint()));

  // The isometric part maps each retained eigenvector v of a^dagger a to
  // a v / sqrt(lambda); those images are automatically orthonormal.
  std::vector<CVec> kept;
  std::vector<CVec> images;
  CMat partial = CMat::Zero(d, d);
  CMat projector = CMat::Zero(d, d);
  double min_kept = std::max(top, rank_tol);
  for (Index i = 0; i < d; ++i) {
    if (raw.values(i) > rank_tol) {
      const CVec v = raw.vectors.col(i);
      const CVec w = (a * v) / roots(i);
      partial += w * v.adjoint();
      projector += v * v.adjoint();
      kept.push_back(v);
      images.push_back(w);
      min_kept = std::min(min_kept, raw.values(i));
    }
  }
  projector = 0.5 * (projector + CMat(projector.adjoint()));

  // The images are orthonormal by construction but drift from it by order
  // eps * lambda_max / lambda_min over the kept spectrum, so the gate inside
  // the extension gets that bound instead of a fixed one; the extension
  // re-polishes both lists to machine precision before completing them.
  double ortho_slack = 1e-8;
  if (!kept.empty()) {
    const double drift =
        64.0 * static_cast<double>(d) * 1e-16 * std::max(top, 1.0) / min_kept;
    ortho_slack = std::max(ortho_slack, drift);
  }

  PolarFactors out;
  out.positive = std::move(positive);
  out.partial_isometry = std::move(partial);
  out.range_projector = std::move(projector);
  out.unitary = extend_isometry(kept, images, d, ortho_slack);
  return out;
}

CMat tensor(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i1 = 0; i1 < a.rows(); ++i1) {
    for (Index j1 = 0; j1 < a.cols(); ++j1) {
      out.block(i1 * b.rows(), j1 * b.cols(), b.rows(), b.cols()) =
          a(i1, j1) * b;
    }
  }
  return out;
}

CVec tensor(const CVec& a, const CVec& b) {
  CVec out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

CMat partial_trace_2(const CMat& m, Index d1, Index d2) {
  if (d1 <= 0 || d2 <= 0 || m.rows() != d1 * d2 || m.cols() != d1 * d2) {
    throw DimensionMismatch(
        "partial trace needs a square matrix of dimension d1*d2");
  }
  CMat out = CMat::Zero(d1, d1);
  for (Index i = 0; i < d1; ++i) {
    for (Index k = 0; k < d1; ++k) {
      Complex sum(0.0, 0.0);
      for (Index j = 0; j < d2; ++j) {
        sum += m(i * d2 + j, k * d2 + j);
      }
      out(i, k) = sum;
    }
  }
  return out;
}

CMat extend_isometry(const std::vector<CVec>& columns,
                     const std::vector<CVec>& images, Index dim, double tol) {
  if (columns.size() != images.size()) {
    throw DimensionMismatch("column and image lists differ in length");
  }
  if (static_cast<Index>(columns.size()) > dim) {
    throw DimensionMismatch("more vectors than the space dimension");
  }
  if (dim <= 0) {
    throw DimensionMismatch("dimension must be positive");
  }
  for (const auto* list : {&columns, &images}) {
    for (const CVec& v : *list) {
      if (v.size() != dim) {
        throw DimensionMismatch("vector length does not match dimension");
      }
      if (!v.allFinite()) {
        throw Validation("vector has non-finite entries");
      }
    }
  }

  const std::size_t n = columns.size();
  for (const auto* list : {&columns, &images}) {
    double defect_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const Complex g = (*list)[i].dot((*list)[j]);
        const Complex want = (i == j) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
        defect_sq += std::norm(g - want);
      }
    }
    if (std::sqrt(defect_sq) > tol) {
      throw NotOrthonormal(fmt_tol(
          "vector list is not orthonormal: Gram defect ", std::sqrt(defect_sq)));
    }
  }

  // Polish both lists to machine-precision orthonormality, then complete each
  // to a full basis; pairing the completions in order yields a unitary.
  std::vector<CVec> cols_full;
  std::vector<CVec> imgs_full;
  cols_full.reserve(dim);
  imgs_full.reserve(dim);
  for (std::size_t i = 0; i < n; ++i) {
    if (orthonormal_append(cols_full, columns[i], 0.5) <= 0.5 ||
        orthonormal_append(imgs_full, images[i], 0.5) <= 0.5) {
      throw NotOrthonormal("vector list is numerically degenerate");
    }
  }
  complete_basis(cols_full, dim);
  complete_basis(imgs_full, dim);

  CMat out = CMat::Zero(dim, dim);
  for (Index j = 0; j < dim; ++j) {
    out += imgs_full[j] * cols_full[j].adjoint();
  }
  return out;
}

}  // namespace qmeas
