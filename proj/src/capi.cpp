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

#include "qmeas/qmeas.h"

#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "classify.hpp"
#include "dilate.hpp"
#include "errors.hpp"
#include "gallery.hpp"
#include "linalg.hpp"
#include "measure.hpp"
#include "types.hpp"

struct qmeas_matrix {
  qmeas::CMat value;
};
struct qmeas_observable {
  qmeas::Observable value;
};
struct qmeas_povm {
  qmeas::Povm value;
};
struct qmeas_instrument {
  qmeas::Instrument value;
};
struct qmeas_classification {
  qmeas::InstrumentClassification value;
};
struct qmeas_dilation {
  qmeas::DilationModel value;
};

namespace {

using qmeas::CMat;
using qmeas::Complex;
using qmeas::CVec;
using qmeas::Index;

thread_local int g_error_code = QMEAS_OK;
thread_local std::string g_error_message;

void clear_error() {
  g_error_code = QMEAS_OK;
  g_error_message.clear();
}

int store_current_exception() noexcept {
  try {
    throw;
  } catch (const qmeas::Error& e) {
    g_error_code = static_cast<int>(e.code());
    g_error_message = e.what();
  } catch (const std::bad_alloc&) {
    g_error_code = QMEAS_ERR_ALLOC;
    g_error_message = "out of memory";
  } catch (const std::exception& e) {
    g_error_code = QMEAS_ERR_INTERNAL;
    g_error_message = e.what();
  } catch (...) {
    g_error_code = QMEAS_ERR_INTERNAL;
    g_error_message = "unknown failure";
  }
  return g_error_code;
}

// Handle-returning call: NULL signals the stashed error.
template <typename F>
auto guard_ptr(F&& f) -> decltype(f()) {
  clear_error();
  try {
    return f();
  } catch (...) {
    store_current_exception();
    return nullptr;
  }
}

// Status-returning call.
template <typename F>
int guard_status(F&& f) {
  clear_error();
  try {
    f();
  } catch (...) {
    return store_current_exception();
  }
  return QMEAS_OK;
}

void require_arg(const void* p, const char* name) {
  if (p == nullptr) {
    throw qmeas::Error(qmeas::ErrorCode::InvalidArgument,
                       std::string(name) + " must not be NULL");
  }
}

double eff_tol(double tol) { return tol > 0.0 ? tol : qmeas::kDefaultTol; }

std::optional<double> eff_group_tol(double group_tol) {
  if (group_tol < 0.0) return std::nullopt;
  return group_tol;
}

CMat read_matrix(int64_t rows, int64_t cols, const double* x) {
  if (rows <= 0 || cols <= 0) {
    throw qmeas::Error(qmeas::ErrorCode::InvalidArgument,
                       "matrix dimensions must be positive");
  }
  CMat m(rows, cols);
  for (int64_t i = 0; i < rows; ++i) {
    for (int64_t j = 0; j < cols; ++j) {
      const int64_t at = 2 * (i * cols + j);
      m(i, j) = Complex(x[at], x[at + 1]);
    }
  }
  if (!qmeas::all_finite(m)) {
    throw qmeas::Validation("matrix entries must be finite");
  }
  return m;
}

CVec read_vector(int64_t n, const double* x) {
  if (n <= 0) {
    throw qmeas::Error(qmeas::ErrorCode::InvalidArgument,
                       "vector dimension must be positive");
  }
  CVec v(n);
  for (int64_t i = 0; i < n; ++i) {
    v(i) = Complex(x[2 * i], x[2 * i + 1]);
  }
  return v;
}

void write_matrix(const CMat& m, double* out) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      const Index at = 2 * (i * m.cols() + j);
      out[at] = m(i, j).real();
      out[at + 1] = m(i, j).imag();
    }
  }
}

void write_vector(const CVec& v, double* out) {
  for (Index i = 0; i < v.size(); ++i) {
    out[2 * i] = v(i).real();
    out[2 * i + 1] = v(i).imag();
  }
}

qmeas_matrix* wrap(CMat m) { return new qmeas_matrix{std::move(m)}; }

std::vector<CMat> collect_matrices(size_t count,
                                   const qmeas_matrix* const* handles,
                                   const char* name) {
  require_arg(handles, name);
  std::vector<CMat> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    require_arg(handles[i], name);
    out.push_back(handles[i]->value);
  }
  return out;
}

std::vector<std::string> collect_labels(size_t count,
                                        const char* const* labels) {
  std::vector<std::string> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    require_arg(labels[i], "label");
    out.emplace_back(labels[i]);
  }
  return out;
}

void check_index(size_t index, size_t count) {
  if (index >= count) {
    throw qmeas::IndexOutOfRange("index " + std::to_string(index) +
                                 " out of range (count " +
                                 std::to_string(count) + ")");
  }
}

qmeas_outcome_report to_report(const qmeas::OutcomeClassification& oc) {
  qmeas_outcome_report r{};
  r.is_ordinary = oc.is_ordinary ? 1 : 0;
  r.borderline = oc.borderline ? 1 : 0;
  r.has_repeatable = oc.is_repeatable.has_value() ? 1 : 0;
  r.is_repeatable = (oc.is_repeatable && *oc.is_repeatable) ? 1 : 0;
  r.projector_rank =
      oc.projector
          ? static_cast<int64_t>(oc.projector->trace().real() + 0.5)
          : -1;
  r.projector_residual = oc.projector_residual;
  r.repeatable_residual = oc.repeatable_residual;
  r.ideal_distance = oc.ideal_distance;
  return r;
}

}  // namespace

extern "C" {

const char* qmeas_version(void) { return "0.1.0"; }

int qmeas_last_error_code(void) { return g_error_code; }

const char* qmeas_last_error_message(void) { return g_error_message.c_str(); }

/* ---------------------------- matrices ---------------------------- */

qmeas_matrix* qmeas_matrix_create(int64_t rows, int64_t cols,
                                  const double* interleaved) {
  return guard_ptr([&]() -> qmeas_matrix* {
    require_arg(interleaved, "interleaved");
    return wrap(read_matrix(rows, cols, interleaved));
  });
}

qmeas_matrix* qmeas_matrix_identity(int64_t dim) {
  return guard_ptr([&]() -> qmeas_matrix* {
    if (dim <= 0) {
      throw qmeas::Error(qmeas::ErrorCode::InvalidArgument,
                         "matrix dimensions must be positive");
    }
    return wrap(CMat::Identity(dim, dim));
  });
}

qmeas_matrix* qmeas_matrix_clone(const qmeas_matrix* m) {
  return guard_ptr([&]() -> qmeas_matrix* {
    require_arg(m, "matrix");
    return wrap(m->value);
  });
}

void qmeas_matrix_free(qmeas_matrix* m) { delete m; }

int qmeas_matrix_rows(const qmeas_matrix* m, int64_t* out) {
  return guard_status([&] {
    require_arg(m, "matrix");
    require_arg(out, "out");
    *out = static_cast<int64_t>(m->value.rows());
  });
}

int qmeas_matrix_cols(const qmeas_matrix* m, int64_t* out) {
  return guard_status([&] {
    require_arg(m, "matrix");
    require_arg(out, "out");
    *out = static_cast<int64_t>(m->value.cols());
  });
}

int qmeas_matrix_entries(const qmeas_matrix* m, double* out) {
  return guard_status([&] {
    require_arg(m, "matrix");
    require_arg(out, "out");
    write_matrix(m->value, out);
  });
}

qmeas_matrix* qmeas_matrix_multiply(const qmeas_matrix* a,
                                    const qmeas_matrix* b) {
  return guard_ptr([&]() -> qmeas_matrix* {
    require_arg(a, "a");
    require_arg(b, "b");
    if (a->value.cols() != b->value.rows()) {
      throw qmeas::DimensionMismatch("inner matrix dimensions do not match");
    }
    return wrap(a->value * b->value);
  });
}

qmeas_matrix* qmeas_matrix_adjoint(const qmeas_matrix* m) {
  return guard_ptr([&]() -> qmeas_matrix* {
    require_arg(m, "matrix");
    return wrap(m->value.adjoint());
  });
}

qmeas_matrix* qmeas_matrix_subtract(const qmeas_matrix* a,
                                    const qmeas_matrix* b) {
  return guard_ptr([&]() -> qmeas_matrix* {
    require_arg(a, "a");
    require_arg(b, "b");
    if (a->value.rows() != b->value.rows() ||
        a->value.cols() != b->value.cols()) {
      throw qmeas::DimensionMismatch("matrix shapes do not match");
    }
    return wrap(a->value - b->value);
  });
}

qmeas_matrix* qmeas_matrix_tensor(const qmeas_matrix* a,
                                  const qmeas_matrix* b) {
  return guard_ptr([&]() -> qmeas_matrix* {
    require_arg(a, "a");
    require_arg(b, "b");
    return wrap(qmeas::tensor(a->value, b->value));
  });
}

qmeas_matrix* qmeas_matrix_partial_trace_2(const qmeas_matrix* m, int64_t d1,
                                           int64_t d2) {
  return guard_ptr([&]() -> qmeas_matrix* {
    require_arg(m, "matrix");
    return wrap(qmeas::partial_trace_2(m->value, d1, d2));
  });
}

int qmeas_matrix_distance(const qmeas_matrix* a, const qmeas_matrix* b,
                          double* out) {
  return guard_status([&] {
    require_arg(a, "a");
    require_arg(b, "b");
    require_arg(out, "out");
    *out = qmeas::frobenius_distance(a->value, b->value);
  });
}

int qmeas_matrix_trace(const qmeas_matrix* m, double* out_re, double* out_im) {
  return guard_status([&] {
    require_arg(m, "matrix");
    qmeas::require_square(m->value, "matrix");
    const Complex t = m->value.trace();
    if (out_re != nullptr) *out_re = t.real();
    if (out_im != nullptr) *out_im = t.imag();
  });
}

qmeas_matrix* qmeas_matrix_positive_sqrt(const qmeas_matrix* m, double tol) {
  return guard_ptr([&]() -> qmeas_matrix* {
    require_arg(m, "matrix");
    return wrap(qmeas::positive_sqrt(m->value, eff_tol(tol)));
  });
}

int qmeas_polar(const qmeas_matrix* m, double tol, qmeas_matrix** unitary,
                qmeas_matrix** positive, qmeas_matrix** partial_isometry,
                qmeas_matrix** range_projector) {
  return guard_status([&] {
    require_arg(m, "matrix");
    qmeas::PolarFactors factors =
        qmeas::polar_factorize(m->value, eff_tol(tol));
    if (unitary != nullptr) *unitary = wrap(std::move(factors.unitary));
    if (positive != nullptr) *positive = wrap(std::move(factors.positive));
    if (partial_isometry != nullptr) {
      *partial_isometry = wrap(std::move(factors.partial_isometry));
    }
    if (range_projector != nullptr) {
      *range_projector = wrap(std::move(factors.range_projector));
    }
  });
}

/* --------------------------- observables -------------------------- */

qmeas_observable* qmeas_observable_create(
    size_t outcome_count, const double* eigenvalues,
    const qmeas_matrix* const* projectors, double tol) {
  return guard_ptr([&]() -> qmeas_observable* {
    require_arg(eigenvalues, "eigenvalues");
    std::vector<double> values(eigenvalues, eigenvalues + outcome_count);
    return new qmeas_observable{qmeas::Observable(
        std::move(values), collect_matrices(outcome_count, projectors, "projector"),
        eff_tol(tol))};
  });
}

qmeas_observable* qmeas_observable_from_matrix(const qmeas_matrix* m,
                                               double group_tol, double tol) {
  return guard_ptr([&]() -> qmeas_observable* {
    require_arg(m, "matrix");
    return new qmeas_observable{qmeas::Observable::from_matrix(
        m->value, eff_group_tol(group_tol), eff_tol(tol))};
  });
}

qmeas_observable* qmeas_observable_refine(const qmeas_observable* obs,
                                          double tol) {
  return guard_ptr([&]() -> qmeas_observable* {
    require_arg(obs, "observable");
    return new qmeas_observable{
        qmeas::maximal_refinement(obs->value, eff_tol(tol))};
  });
}

void qmeas_observable_free(qmeas_observable* obs) { delete obs; }

int qmeas_observable_dim(const qmeas_observable* obs, int64_t* out) {
  return guard_status([&] {
    require_arg(obs, "observable");
    require_arg(out, "out");
    *out = static_cast<int64_t>(obs->value.dim());
  });
}

int qmeas_observable_outcome_count(const qmeas_observable* obs, size_t* out) {
  return guard_status([&] {
    require_arg(obs, "observable");
    require_arg(out, "out");
    *out = obs->value.outcome_count();
  });
}

int qmeas_observable_eigenvalue(const qmeas_observable* obs, size_t index,
                                double* out) {
  return guard_status([&] {
    require_arg(obs, "observable");
    require_arg(out, "out");
    check_index(index, obs->value.outcome_count());
    *out = obs->value.eigenvalues()[index];
  });
}

qmeas_matrix* qmeas_observable_projector(const qmeas_observable* obs,
                                         size_t index) {
  return guard_ptr([&]() -> qmeas_matrix* {
    require_arg(obs, "observable");
    check_index(index, obs->value.outcome_count());
    return wrap(obs->value.projectors()[index]);
  });
}

/* ------------------------------ POVMs ----------------------------- */

qmeas_povm* qmeas_povm_create(size_t outcome_count,
                              const qmeas_matrix* const* effects,
                              const char* const* labels, double tol) {
  return guard_ptr([&]() -> qmeas_povm* {
    std::vector<CMat> mats = collect_matrices(outcome_count, effects, "effect");
    if (labels == nullptr) {
      return new qmeas_povm{qmeas::Povm(std::move(mats), eff_tol(tol))};
    }
    return new qmeas_povm{qmeas::Povm(
        std::move(mats), collect_labels(outcome_count, labels), eff_tol(tol))};
  });
}

void qmeas_povm_free(qmeas_povm* povm) { delete povm; }

int qmeas_povm_dim(const qmeas_povm* povm, int64_t* out) {
  return guard_status([&] {
    require_arg(povm, "povm");
    require_arg(out, "out");
    *out = static_cast<int64_t>(povm->value.dim());
  });
}

int qmeas_povm_outcome_count(const qmeas_povm* povm, size_t* out) {
  return guard_status([&] {
    require_arg(povm, "povm");
    require_arg(out, "out");
    *out = povm->value.outcome_count();
  });
}

qmeas_matrix* qmeas_povm_effect(const qmeas_povm* povm, size_t index) {
  return guard_ptr([&]() -> qmeas_matrix* {
    require_arg(povm, "povm");
    check_index(index, povm->value.outcome_count());
    return wrap(povm->value.effects()[index]);
  });
}

const char* qmeas_povm_label(const qmeas_povm* povm, size_t index) {
  return guard_ptr([&]() -> const char* {
    require_arg(povm, "povm");
    check_index(index, povm->value.outcome_count());
    return povm->value.labels()[index].c_str();
  });
}

/* --------------------------- instruments -------------------------- */

qmeas_instrument* qmeas_instrument_create(
    size_t outcome_count, const qmeas_matrix* const* transformers,
    const char* const* labels, double tol) {
  return guard_ptr([&]() -> qmeas_instrument* {
    std::vector<CMat> mats =
        collect_matrices(outcome_count, transformers, "transformer");
    if (labels == nullptr) {
      return new qmeas_instrument{
          qmeas::Instrument(std::move(mats), eff_tol(tol))};
    }
    return new qmeas_instrument{qmeas::Instrument(
        std::move(mats), collect_labels(outcome_count, labels), eff_tol(tol))};
  });
}

qmeas_instrument* qmeas_instrument_luders(const qmeas_observable* obs) {
  return guard_ptr([&]() -> qmeas_instrument* {
    require_arg(obs, "observable");
    return new qmeas_instrument{qmeas::luders_instrument(obs->value)};
  });
}

qmeas_instrument* qmeas_instrument_from_povm(
    const qmeas_povm* povm, const qmeas_matrix* const* unitaries, double tol) {
  return guard_ptr([&]() -> qmeas_instrument* {
    require_arg(povm, "povm");
    std::vector<CMat> us;
    if (unitaries != nullptr) {
      us = collect_matrices(povm->value.outcome_count(), unitaries, "unitary");
    }
    return new qmeas_instrument{
        qmeas::instrument_from_povm(povm->value, us, eff_tol(tol))};
  });
}

qmeas_instrument* qmeas_instrument_preset(const char* name, double tol) {
  return guard_ptr([&]() -> qmeas_instrument* {
    require_arg(name, "name");
    return new qmeas_instrument{
        qmeas::preset_instrument(name, eff_tol(tol))};
  });
}

const char* qmeas_preset_names(void) {
  static const std::string names = [] {
    std::string joined;
    for (const std::string& name : qmeas::preset_names()) {
      if (!joined.empty()) joined += '\n';
      joined += name;
    }
    return joined;
  }();
  return names.c_str();
}

void qmeas_instrument_free(qmeas_instrument* inst) { delete inst; }

int qmeas_instrument_dim(const qmeas_instrument* inst, int64_t* out) {
  return guard_status([&] {
    require_arg(inst, "instrument");
    require_arg(out, "out");
    *out = static_cast<int64_t>(inst->value.dim());
  });
}

int qmeas_instrument_outcome_count(const qmeas_instrument* inst, size_t* out) {
  return guard_status([&] {
    require_arg(inst, "instrument");
    require_arg(out, "out");
    *out = inst->value.outcome_count();
  });
}

qmeas_matrix* qmeas_instrument_transformer(const qmeas_instrument* inst,
                                           size_t index) {
  return guard_ptr([&]() -> qmeas_matrix* {
    require_arg(inst, "instrument");
    check_index(index, inst->value.outcome_count());
    return wrap(inst->value.transformers()[index]);
  });
}

const char* qmeas_instrument_label(const qmeas_instrument* inst,
                                   size_t index) {
  return guard_ptr([&]() -> const char* {
    require_arg(inst, "instrument");
    check_index(index, inst->value.outcome_count());
    return inst->value.labels()[index].c_str();
  });
}

qmeas_povm* qmeas_instrument_povm(const qmeas_instrument* inst, double tol) {
  return guard_ptr([&]() -> qmeas_povm* {
    require_arg(inst, "instrument");
    return new qmeas_povm{qmeas::povm_of(inst->value, eff_tol(tol))};
  });
}

/* --------------------------- measurement -------------------------- */

qmeas_matrix* qmeas_density_from_state(int64_t dim,
                                       const double* interleaved_amplitudes,
                                       double tol) {
  return guard_ptr([&]() -> qmeas_matrix* {
    require_arg(interleaved_amplitudes, "amplitudes");
    qmeas::StateVector psi(read_vector(dim, interleaved_amplitudes),
                           eff_tol(tol));
    return wrap(qmeas::DensityOperator::from_state(psi).matrix());
  });
}

int qmeas_probabilities(const qmeas_instrument* inst, const qmeas_matrix* rho,
                        double tol, double* out) {
  return guard_status([&] {
    require_arg(inst, "instrument");
    require_arg(rho, "rho");
    require_arg(out, "out");
    const double t = eff_tol(tol);
    qmeas::OutcomeDistribution dist = qmeas::probabilities(
        inst->value, qmeas::DensityOperator(rho->value, t), t);
    for (size_t i = 0; i < dist.probabilities.size(); ++i) {
      out[i] = dist.probabilities[i];
    }
  });
}

qmeas_matrix* qmeas_apply_selective(const qmeas_instrument* inst, size_t index,
                                    const qmeas_matrix* rho, double tol,
                                    double* out_probability) {
  return guard_ptr([&]() -> qmeas_matrix* {
    require_arg(inst, "instrument");
    require_arg(rho, "rho");
    const double t = eff_tol(tol);
    qmeas::SelectiveOutcome outcome = qmeas::apply_selective(
        inst->value, index, qmeas::DensityOperator(rho->value, t), t);
    if (out_probability != nullptr) *out_probability = outcome.probability;
    return wrap(outcome.post_state.matrix());
  });
}

qmeas_matrix* qmeas_apply_nonselective(const qmeas_instrument* inst,
                                       const qmeas_matrix* rho, double tol) {
  return guard_ptr([&]() -> qmeas_matrix* {
    require_arg(inst, "instrument");
    require_arg(rho, "rho");
    const double t = eff_tol(tol);
    return wrap(qmeas::apply_nonselective(
                    inst->value, qmeas::DensityOperator(rho->value, t), t)
                    .matrix());
  });
}

int qmeas_sample_counts(const qmeas_instrument* inst, const qmeas_matrix* rho,
                        uint64_t seed, uint64_t shots, double tol,
                        uint64_t* out_counts) {
  return guard_status([&] {
    require_arg(inst, "instrument");
    require_arg(rho, "rho");
    require_arg(out_counts, "out_counts");
    const double t = eff_tol(tol);
    std::vector<std::uint64_t> counts = qmeas::sample_counts(
        inst->value, qmeas::DensityOperator(rho->value, t), seed, shots, t);
    for (size_t i = 0; i < counts.size(); ++i) {
      out_counts[i] = counts[i];
    }
  });
}

int qmeas_has_sharp_value(const qmeas_matrix* rho,
                          const qmeas_observable* obs, size_t index,
                          double tol, int* out) {
  return guard_status([&] {
    require_arg(rho, "rho");
    require_arg(obs, "observable");
    require_arg(out, "out");
    const double t = eff_tol(tol);
    *out = qmeas::has_sharp_value(qmeas::DensityOperator(rho->value, t),
                                  obs->value, index, t)
               ? 1
               : 0;
  });
}

int qmeas_sharp_decomposition_check(const qmeas_matrix* rho,
                                    const qmeas_observable* obs, size_t index,
                                    size_t count, const double* weights,
                                    const double* states_interleaved,
                                    double tol, int* out) {
  return guard_status([&] {
    require_arg(rho, "rho");
    require_arg(obs, "observable");
    require_arg(weights, "weights");
    require_arg(states_interleaved, "states");
    require_arg(out, "out");
    const double t = eff_tol(tol);
    const int64_t dim = rho->value.rows();
    std::vector<double> w(weights, weights + count);
    std::vector<qmeas::StateVector> states;
    states.reserve(count);
    for (size_t k = 0; k < count; ++k) {
      states.emplace_back(
          read_vector(dim, states_interleaved + 2 * dim * k), t);
    }
    *out = qmeas::sharp_value_decomposition_check(
               qmeas::DensityOperator(rho->value, t), obs->value, index, w,
               states, t)
               ? 1
               : 0;
  });
}

/* -------------------------- classification ------------------------ */

qmeas_classification* qmeas_classify(const qmeas_instrument* inst,
                                     double tol) {
  return guard_ptr([&]() -> qmeas_classification* {
    require_arg(inst, "instrument");
    return new qmeas_classification{
        qmeas::classify_instrument(inst->value, eff_tol(tol))};
  });
}

void qmeas_classification_free(qmeas_classification* cls) { delete cls; }

const char* qmeas_classification_kind(const qmeas_classification* cls) {
  return guard_ptr([&]() -> const char* {
    require_arg(cls, "classification");
    return qmeas::to_string(cls->value.kind);
  });
}

int qmeas_classification_outcome_count(const qmeas_classification* cls,
                                       size_t* out) {
  return guard_status([&] {
    require_arg(cls, "classification");
    require_arg(out, "out");
    *out = cls->value.outcomes.size();
  });
}

int qmeas_classification_outcome(const qmeas_classification* cls, size_t index,
                                 qmeas_outcome_report* out) {
  return guard_status([&] {
    require_arg(cls, "classification");
    require_arg(out, "out");
    check_index(index, cls->value.outcomes.size());
    *out = to_report(cls->value.outcomes[index]);
  });
}

qmeas_matrix* qmeas_classification_projector(const qmeas_classification* cls,
                                             size_t index) {
  return guard_ptr([&]() -> qmeas_matrix* {
    require_arg(cls, "classification");
    check_index(index, cls->value.outcomes.size());
    const qmeas::OutcomeClassification& oc = cls->value.outcomes[index];
    if (!oc.projector) {
      throw qmeas::Error(qmeas::ErrorCode::InvalidArgument,
                         "outcome is not ordinary; it has no projector");
    }
    return wrap(*oc.projector);
  });
}

int qmeas_classification_projectors_complete(const qmeas_classification* cls,
                                             int* out_complete,
                                             double* out_residual) {
  return guard_status([&] {
    require_arg(cls, "classification");
    if (out_complete != nullptr) {
      *out_complete = cls->value.projectors_complete ? 1 : 0;
    }
    if (out_residual != nullptr) {
      *out_residual = cls->value.completeness_residual;
    }
  });
}

int qmeas_classify_single(const qmeas_matrix* m, double tol,
                          qmeas_outcome_report* out) {
  return guard_status([&] {
    require_arg(m, "matrix");
    require_arg(out, "out");
    *out = to_report(qmeas::classify_outcome(m->value, eff_tol(tol)));
  });
}

int qmeas_remark_projectors(const qmeas_matrix* m, double tol,
                            qmeas_matrix*** out_list, size_t* out_count) {
  return guard_status([&] {
    require_arg(m, "matrix");
    require_arg(out_list, "out_list");
    require_arg(out_count, "out_count");
    std::vector<CMat> projectors = qmeas::check_remark2(m->value, eff_tol(tol));
    std::unique_ptr<qmeas_matrix*[]> list(
        new qmeas_matrix*[projectors.size()]());
    for (size_t i = 0; i < projectors.size(); ++i) {
      list[i] = wrap(std::move(projectors[i]));
    }
    *out_count = projectors.size();
    *out_list = list.release();
  });
}

void qmeas_matrix_list_free(qmeas_matrix** list, size_t count) {
  if (list == nullptr) return;
  for (size_t i = 0; i < count; ++i) {
    delete list[i];
  }
  delete[] list;
}

/* ----------------------------- dilation --------------------------- */

qmeas_dilation* qmeas_dilate(const qmeas_instrument* inst, double tol) {
  return guard_ptr([&]() -> qmeas_dilation* {
    require_arg(inst, "instrument");
    return new qmeas_dilation{qmeas::dilate(inst->value, eff_tol(tol))};
  });
}

qmeas_dilation* qmeas_dilation_create(int64_t system_dim,
                                      int64_t apparatus_dim,
                                      const double* ready,
                                      const double* pointer_basis,
                                      const double* pointer_values,
                                      const qmeas_matrix* unitary,
                                      double tol) {
  return guard_ptr([&]() -> qmeas_dilation* {
    require_arg(ready, "ready");
    require_arg(pointer_basis, "pointer_basis");
    require_arg(pointer_values, "pointer_values");
    require_arg(unitary, "unitary");
    if (apparatus_dim <= 0) {
      throw qmeas::Error(qmeas::ErrorCode::InvalidArgument,
                         "apparatus dimension must be positive");
    }
    const double t = eff_tol(tol);
    std::vector<qmeas::StateVector> basis;
    basis.reserve(static_cast<size_t>(apparatus_dim));
    for (int64_t i = 0; i < apparatus_dim; ++i) {
      basis.emplace_back(
          read_vector(apparatus_dim, pointer_basis + 2 * apparatus_dim * i),
          t);
    }
    std::vector<double> values(pointer_values,
                               pointer_values + apparatus_dim);
    return new qmeas_dilation{qmeas::DilationModel(
        system_dim, qmeas::StateVector(read_vector(apparatus_dim, ready), t),
        std::move(basis), std::move(values), unitary->value, t)};
  });
}

void qmeas_dilation_free(qmeas_dilation* model) { delete model; }

int qmeas_dilation_system_dim(const qmeas_dilation* model, int64_t* out) {
  return guard_status([&] {
    require_arg(model, "model");
    require_arg(out, "out");
    *out = static_cast<int64_t>(model->value.system_dim());
  });
}

int qmeas_dilation_apparatus_dim(const qmeas_dilation* model, int64_t* out) {
  return guard_status([&] {
    require_arg(model, "model");
    require_arg(out, "out");
    *out = static_cast<int64_t>(model->value.apparatus_dim());
  });
}

qmeas_matrix* qmeas_dilation_unitary(const qmeas_dilation* model) {
  return guard_ptr([&]() -> qmeas_matrix* {
    require_arg(model, "model");
    return wrap(model->value.unitary());
  });
}

int qmeas_dilation_ready_state(const qmeas_dilation* model, double* out) {
  return guard_status([&] {
    require_arg(model, "model");
    require_arg(out, "out");
    write_vector(model->value.ready_state().amplitudes(), out);
  });
}

int qmeas_dilation_pointer_vector(const qmeas_dilation* model, size_t index,
                                  double* out) {
  return guard_status([&] {
    require_arg(model, "model");
    require_arg(out, "out");
    check_index(index, model->value.pointer_basis().size());
    write_vector(model->value.pointer_basis()[index].amplitudes(), out);
  });
}

int qmeas_dilation_pointer_value(const qmeas_dilation* model, size_t index,
                                 double* out) {
  return guard_status([&] {
    require_arg(model, "model");
    require_arg(out, "out");
    check_index(index, model->value.pointer_values().size());
    *out = model->value.pointer_values()[index];
  });
}

qmeas_instrument* qmeas_dilation_extract(const qmeas_dilation* model,
                                         double tol) {
  return guard_ptr([&]() -> qmeas_instrument* {
    require_arg(model, "model");
    return new qmeas_instrument{
        qmeas::extract_instrument(model->value, eff_tol(tol))};
  });
}

int qmeas_dilation_final_state(const qmeas_dilation* model,
                               const double* psi_interleaved, double tol,
                               double* out) {
  return guard_status([&] {
    require_arg(model, "model");
    require_arg(psi_interleaved, "psi");
    require_arg(out, "out");
    const double t = eff_tol(tol);
    qmeas::StateVector psi(
        read_vector(model->value.system_dim(), psi_interleaved), t);
    write_vector(qmeas::final_state(model->value, psi, t).amplitudes(), out);
  });
}

int qmeas_dilation_read_pointer(const qmeas_dilation* model,
                                const double* composite_interleaved,
                                size_t outcome_index, double tol,
                                double* out_probability, double* out_system) {
  return guard_status([&] {
    require_arg(model, "model");
    require_arg(composite_interleaved, "composite");
    const double t = eff_tol(tol);
    qmeas::StateVector composite(
        read_vector(model->value.system_dim() * model->value.apparatus_dim(),
                    composite_interleaved),
        t);
    qmeas::PointerReading reading =
        qmeas::read_pointer(model->value, composite, outcome_index, t);
    if (out_probability != nullptr) *out_probability = reading.probability;
    if (out_system != nullptr) {
      write_vector(reading.post_system_state.amplitudes(), out_system);
    }
  });
}

}  // extern "C"
