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

#pragma once

#include <stdexcept>
#include <string>

namespace qmeas {

// Numeric values mirror the QMEAS_ERR_* constants of the C API.
enum class ErrorCode : int {
  InvalidArgument = 1,
  NotHermitian = 2,
  NotPositive = 3,
  NotUnitary = 4,
  NotOrthonormal = 5,
  DimensionMismatch = 6,
  Validation = 7,
  ZeroProbabilityOutcome = 8,
  IndexOutOfRange = 9,
  InvalidDecomposition = 10,
  CompletenessViolation = 11,
  ConsistencyFailure = 12,
  NotSingular = 13,
  NotLocallyNontrivial = 14,
  Io = 15,
  Alloc = 16,
  Internal = 17,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

#define QMEAS_DEFINE_ERROR(Name)                       \
  struct Name : Error {                                \
    explicit Name(const std::string& w)                \
        : Error(ErrorCode::Name, w) {}                 \
  }

QMEAS_DEFINE_ERROR(NotHermitian);
QMEAS_DEFINE_ERROR(NotPositive);
QMEAS_DEFINE_ERROR(NotUnitary);
QMEAS_DEFINE_ERROR(NotOrthonormal);
QMEAS_DEFINE_ERROR(DimensionMismatch);
QMEAS_DEFINE_ERROR(Validation);
QMEAS_DEFINE_ERROR(ZeroProbabilityOutcome);
QMEAS_DEFINE_ERROR(IndexOutOfRange);
QMEAS_DEFINE_ERROR(InvalidDecomposition);
QMEAS_DEFINE_ERROR(CompletenessViolation);
QMEAS_DEFINE_ERROR(ConsistencyFailure);
QMEAS_DEFINE_ERROR(NotSingular);
QMEAS_DEFINE_ERROR(NotLocallyNontrivial);

#undef QMEAS_DEFINE_ERROR

}  // namespace qmeas
