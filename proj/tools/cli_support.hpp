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
 * @file cli_support.hpp
 * Shared plumbing for the command-line tool: RAII owners for the C handles,
 * error propagation that preserves the library's exit-code contract, and the
 * interleaved-double helpers every command needs.
 *
 * The tool talks to the library exclusively through the public C interface;
 * nothing in this directory includes the C++ core headers.
 */

#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmeas/qmeas.h"

namespace qmeas_cli {

// Process exit codes. Usage errors are raised by the argument parser and do
// not pass through CommandError.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitConsistency = 3;
inline constexpr int kExitUsage = 64;

// Failure of a command after argument parsing; carries the exit code the
// process should terminate with.
class CommandError : public std::runtime_error {
 public:
  CommandError(int exit_code, const std::string& message)
      : std::runtime_error(message), exit_code_(exit_code) {}

  int exit_code() const { return exit_code_; }

 private:
  int exit_code_;
};

// Raises CommandError from the thread-local library error state. Consistency
// failures keep their dedicated exit code; every other library failure is a
// validation failure from the tool's point of view.
[[noreturn]] inline void throw_library_error(const std::string& context) {
  int code = qmeas_last_error_code();
  std::string message = qmeas_last_error_message();
  int exit_code =
      code == QMEAS_ERR_CONSISTENCY ? kExitConsistency : kExitValidation;
  if (message.empty()) {
    message = "library call failed with code " + std::to_string(code);
  }
  throw CommandError(exit_code, context.empty() ? message
                                                : context + ": " + message);
}

template <typename T, void (*Free)(T*)>
struct HandleDeleter {
  void operator()(T* p) const {
    if (p != nullptr) Free(p);
  }
};

using MatrixPtr =
    std::unique_ptr<qmeas_matrix, HandleDeleter<qmeas_matrix, qmeas_matrix_free>>;
using ObservablePtr =
    std::unique_ptr<qmeas_observable,
                    HandleDeleter<qmeas_observable, qmeas_observable_free>>;
using PovmPtr =
    std::unique_ptr<qmeas_povm, HandleDeleter<qmeas_povm, qmeas_povm_free>>;
using InstrumentPtr =
    std::unique_ptr<qmeas_instrument,
                    HandleDeleter<qmeas_instrument, qmeas_instrument_free>>;
using ClassificationPtr =
    std::unique_ptr<qmeas_classification,
                    HandleDeleter<qmeas_classification, qmeas_classification_free>>;
using DilationPtr =
    std::unique_ptr<qmeas_dilation,
                    HandleDeleter<qmeas_dilation, qmeas_dilation_free>>;

// Wraps a freshly returned handle, converting NULL into CommandError.
template <typename Ptr>
Ptr own(typename Ptr::pointer raw, const std::string& context) {
  if (raw == nullptr) throw_library_error(context);
  return Ptr(raw);
}

// Checks an int-returning library call.
inline void check(int status, const std::string& context) {
  if (status != QMEAS_OK) throw_library_error(context);
}

// Copies a matrix handle out into interleaved [re, im] doubles, row-major.
inline std::vector<double> matrix_entries(const qmeas_matrix* m) {
  int64_t rows = 0;
  int64_t cols = 0;
  check(qmeas_matrix_rows(m, &rows), "matrix rows");
  check(qmeas_matrix_cols(m, &cols), "matrix cols");
  std::vector<double> out(static_cast<std::size_t>(2 * rows * cols));
  check(qmeas_matrix_entries(m, out.data()), "matrix entries");
  return out;
}

inline int64_t matrix_rows(const qmeas_matrix* m) {
  int64_t rows = 0;
  check(qmeas_matrix_rows(m, &rows), "matrix rows");
  return rows;
}

inline int64_t matrix_cols(const qmeas_matrix* m) {
  int64_t cols = 0;
  check(qmeas_matrix_cols(m, &cols), "matrix cols");
  return cols;
}

inline MatrixPtr make_matrix(int64_t rows, int64_t cols,
                             const std::vector<double>& interleaved) {
  return own<MatrixPtr>(qmeas_matrix_create(rows, cols, interleaved.data()),
                        "matrix");
}

// Frobenius distance between two handles.
inline double distance(const qmeas_matrix* a, const qmeas_matrix* b) {
  double out = 0.0;
  check(qmeas_matrix_distance(a, b, &out), "matrix distance");
  return out;
}

}  // namespace qmeas_cli
