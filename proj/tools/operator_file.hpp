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
 * @file operator_file.hpp
 * The on-disk operator format read and written by the command-line tool.
 *
 * A file is a JSON object with the common keys
 *
 *   schema_version  "1"
 *   kind            one of matrix, state, density, observable, povm,
 *                   instrument, dilation
 *   dim             integer, or [system_dim, apparatus_dim] for dilations
 *   labels          optional array of outcome labels
 *   metadata        optional string-to-string object
 *
 * plus one payload key per kind: "entries" (matrix), "amplitudes" (state),
 * "matrix" (density), "eigenvalues" + "projectors" (observable), "effects"
 * (povm), "transformers" (instrument), and "ready_state" + "pointer_basis" +
 * "pointer_values" + "unitary" (dilation). Complex scalars are encoded as
 * [real, imaginary] pairs and matrices as row-major arrays of rows.
 *
 * Numbers are written with 17 significant digits, so saving, loading, and
 * saving again reproduces the first file byte for byte.
 */

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cli_support.hpp"

namespace qmeas_cli {

// One parsed file with the deserialized object behind the matching handle.
// Exactly the members implied by `kind` are populated.
struct LoadedFile {
  std::string kind;
  std::vector<std::string> labels;
  std::map<std::string, std::string> metadata;

  // "matrix"/"density": the payload itself; "state": the induced density
  // |psi><psi|, validated (and reusable) at load time.
  MatrixPtr matrix;
  int64_t state_dim = 0;           // kind "state"
  std::vector<double> amplitudes;  // kind "state", interleaved
  ObservablePtr observable;        // kind "observable"
  PovmPtr povm;                    // kind "povm"
  InstrumentPtr instrument;        // kind "instrument"
  DilationPtr dilation;            // kind "dilation"
};

// Parses and validates one file. Structural problems and constructor
// rejections both surface as CommandError with the failed invariant named.
LoadedFile load_operator_file(const std::string& path, double tol);

// Serializers. Each writes the complete file for its kind; `metadata` may be
// empty and `labels` empty means the key is omitted.
void save_matrix_file(const std::string& path, const std::string& kind,
                      const qmeas_matrix* m,
                      const std::map<std::string, std::string>& metadata);
void save_state_file(const std::string& path, int64_t dim,
                     const std::vector<double>& amplitudes,
                     const std::map<std::string, std::string>& metadata);
void save_observable_file(const std::string& path, const qmeas_observable* obs,
                          const std::map<std::string, std::string>& metadata);
void save_povm_file(const std::string& path, const qmeas_povm* povm,
                    const std::map<std::string, std::string>& metadata);
void save_instrument_file(const std::string& path,
                          const qmeas_instrument* inst,
                          const std::map<std::string, std::string>& metadata);
void save_dilation_file(const std::string& path, const qmeas_dilation* model,
                        const std::vector<std::string>& labels,
                        const std::map<std::string, std::string>& metadata);

// Formats one double the way the serializers do (17 significant digits).
std::string format_number(double value);

// JSON string literal with escaping, quotes included.
std::string format_json_string(const std::string& s);

}  // namespace qmeas_cli
