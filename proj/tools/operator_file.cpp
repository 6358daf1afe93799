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

#include "operator_file.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <utility>

#include "json.hpp"

namespace qmeas_cli {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw CommandError(kExitValidation, path + ": " + message);
}

/* ------------------------------------------------------------------ */
/* Writing                                                            */

// 17 significant digits: enough for strtod to reproduce the exact double, so
// a rewritten file matches the original byte for byte. Negative zero is
// flattened to "0" because JSON parsers read -0 as the integer zero, which
// would change the bytes on the next rewrite.
void append_number(std::string& out, double value) {
  if (value == 0.0) {
    out += '0';
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  out += buf;
}

void append_json_string(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x",
                        static_cast<unsigned>(static_cast<unsigned char>(c)));
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void append_pair(std::string& out, double re, double im) {
  out += '[';
  append_number(out, re);
  out += ", ";
  append_number(out, im);
  out += ']';
}

// One complex vector on a single line: [[re, im], [re, im], ...].
void append_complex_row(std::string& out, const double* interleaved,
                        int64_t n) {
  out += '[';
  for (int64_t j = 0; j < n; ++j) {
    if (j > 0) out += ", ";
    append_pair(out, interleaved[2 * j], interleaved[2 * j + 1]);
  }
  out += ']';
}

// Row-major matrix as an array of rows, one row per line, closing bracket at
// `indent` spaces.
void append_matrix_array(std::string& out, const std::vector<double>& entries,
                         int64_t rows, int64_t cols, int indent) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  out += "[\n";
  for (int64_t i = 0; i < rows; ++i) {
    out += pad;
    out += "  ";
    append_complex_row(out, entries.data() + 2 * i * cols, cols);
    if (i + 1 < rows) out += ',';
    out += '\n';
  }
  out += pad;
  out += ']';
}

void append_real_row(std::string& out, const std::vector<double>& values) {
  out += '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    append_number(out, values[i]);
  }
  out += ']';
}

void append_header(std::string& out, const std::string& kind,
                   const std::vector<int64_t>& dims) {
  out += "{\n  \"schema_version\": \"1\",\n  \"kind\": ";
  append_json_string(out, kind);
  out += ",\n  \"dim\": ";
  if (dims.size() == 1) {
    out += std::to_string(dims[0]);
  } else {
    out += '[';
    for (std::size_t i = 0; i < dims.size(); ++i) {
      if (i > 0) out += ", ";
      out += std::to_string(dims[i]);
    }
    out += ']';
  }
}

void append_labels(std::string& out, const std::vector<std::string>& labels) {
  if (labels.empty()) return;
  out += ",\n  \"labels\": [";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i > 0) out += ", ";
    append_json_string(out, labels[i]);
  }
  out += ']';
}

void append_metadata(std::string& out,
                     const std::map<std::string, std::string>& metadata) {
  if (metadata.empty()) return;
  out += ",\n  \"metadata\": {";
  bool first = true;
  for (const auto& [key, value] : metadata) {
    out += first ? "\n    " : ",\n    ";
    first = false;
    append_json_string(out, key);
    out += ": ";
    append_json_string(out, value);
  }
  out += "\n  }";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw CommandError(kExitValidation, path + ": cannot open for writing");
  }
  out << content;
  out.close();
  if (!out) {
    throw CommandError(kExitValidation, path + ": write failed");
  }
}

/* ------------------------------------------------------------------ */
/* Parsing                                                            */

json parse_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw CommandError(kExitValidation, path + ": cannot open file");
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(path, std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail(path, "top level must be a JSON object");
  return j;
}

const json& require_key(const json& j, const std::string& path,
                        const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing key \"") + key + "\"");
  return *it;
}

double as_number(const json& v, const std::string& path, const char* what) {
  if (!v.is_number()) fail(path, std::string(what) + " must be a number");
  return v.get<double>();
}

std::pair<double, double> as_pair(const json& v, const std::string& path,
                                  const char* what) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
      !v[1].is_number()) {
    fail(path,
         std::string(what) + " entries must be [real, imaginary] pairs");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

// Interleaved [re, im] doubles from an array of pairs.
std::vector<double> as_complex_vector(const json& v, const std::string& path,
                                      const char* what) {
  if (!v.is_array()) fail(path, std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(2 * v.size());
  for (const json& entry : v) {
    auto [re, im] = as_pair(entry, path, what);
    out.push_back(re);
    out.push_back(im);
  }
  return out;
}

struct ParsedMatrix {
  int64_t rows = 0;
  int64_t cols = 0;
  std::vector<double> entries;  // interleaved, row-major
};

ParsedMatrix as_matrix(const json& v, const std::string& path,
                       const char* what) {
  if (!v.is_array() || v.empty()) {
    fail(path, std::string(what) + " must be a non-empty array of rows");
  }
  ParsedMatrix m;
  m.rows = static_cast<int64_t>(v.size());
  for (const json& row : v) {
    if (!row.is_array()) {
      fail(path, std::string(what) + " rows must be arrays");
    }
    if (m.cols == 0) {
      m.cols = static_cast<int64_t>(row.size());
      if (m.cols == 0) fail(path, std::string(what) + " rows must be non-empty");
      m.entries.reserve(static_cast<std::size_t>(2 * m.rows * m.cols));
    } else if (static_cast<int64_t>(row.size()) != m.cols) {
      fail(path, std::string(what) + " rows must all have the same length");
    }
    for (const json& entry : row) {
      auto [re, im] = as_pair(entry, path, what);
      m.entries.push_back(re);
      m.entries.push_back(im);
    }
  }
  return m;
}

int64_t as_dim_entry(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "dim must be a positive integer");
  int64_t d = v.get<int64_t>();
  if (d < 1) fail(path, "dim must be a positive integer");
  return d;
}

std::vector<int64_t> parse_dims(const json& v, const std::string& path) {
  std::vector<int64_t> dims;
  if (v.is_array()) {
    if (v.size() != 2) {
      fail(path, "dim must be an integer or a pair of integers");
    }
    for (const json& entry : v) dims.push_back(as_dim_entry(entry, path));
  } else {
    dims.push_back(as_dim_entry(v, path));
  }
  return dims;
}

std::vector<std::string> parse_labels(const json& j, const std::string& path) {
  std::vector<std::string> labels;
  auto it = j.find("labels");
  if (it == j.end()) return labels;
  if (!it->is_array()) fail(path, "labels must be an array of strings");
  for (const json& entry : *it) {
    if (!entry.is_string()) fail(path, "labels must be an array of strings");
    labels.push_back(entry.get<std::string>());
  }
  return labels;
}

std::map<std::string, std::string> parse_metadata(const json& j,
                                                  const std::string& path) {
  std::map<std::string, std::string> metadata;
  auto it = j.find("metadata");
  if (it == j.end()) return metadata;
  if (!it->is_object()) {
    fail(path, "metadata must be an object with string values");
  }
  for (const auto& [key, value] : it->items()) {
    if (!value.is_string()) {
      fail(path, "metadata must be an object with string values");
    }
    metadata[key] = value.get<std::string>();
  }
  return metadata;
}

// Payload keys per kind; anything else at top level is a likely typo and is
// rejected instead of silently ignored.
const std::set<std::string>& payload_keys(const std::string& kind,
                                          const std::string& path) {
  static const std::map<std::string, std::set<std::string>> table = {
      {"matrix", {"entries"}},
      {"state", {"amplitudes"}},
      {"density", {"matrix"}},
      {"observable", {"eigenvalues", "projectors"}},
      {"povm", {"effects"}},
      {"instrument", {"transformers"}},
      {"dilation",
       {"ready_state", "pointer_basis", "pointer_values", "unitary"}},
  };
  auto it = table.find(kind);
  if (it == table.end()) {
    fail(path, "unsupported kind \"" + kind +
                   "\" (expected matrix, state, density, observable, povm, "
                   "instrument, or dilation)");
  }
  return it->second;
}

void check_keys(const json& j, const std::string& path,
                const std::string& kind) {
  const std::set<std::string>& payload = payload_keys(kind, path);
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key == "schema_version" || key == "kind" || key == "dim" ||
        key == "labels" || key == "metadata" || payload.count(key) > 0) {
      continue;
    }
    fail(path, "unrecognized key \"" + key + "\" for kind \"" + kind + "\"");
  }
}

// Kinds whose payload carries no outcome list reject a labels key outright.
void forbid_labels(const LoadedFile& file, const std::string& path) {
  if (!file.labels.empty()) {
    fail(path, "labels are not meaningful for kind \"" + file.kind + "\"");
  }
}

std::vector<const char*> label_pointers(const std::vector<std::string>& labels) {
  std::vector<const char*> out;
  out.reserve(labels.size());
  for (const std::string& label : labels) out.push_back(label.c_str());
  return out;
}

}  // namespace

std::string format_number(double value) {
  std::string out;
  append_number(out, value);
  return out;
}

std::string format_json_string(const std::string& s) {
  std::string out;
  append_json_string(out, s);
  return out;
}

LoadedFile load_operator_file(const std::string& path, double tol) {
  json j = parse_json(path);

  const json& version = require_key(j, path, "schema_version");
  if (!version.is_string() || version.get<std::string>() != "1") {
    fail(path, "unsupported schema_version (expected \"1\")");
  }
  const json& kind_value = require_key(j, path, "kind");
  if (!kind_value.is_string()) fail(path, "kind must be a string");

  LoadedFile file;
  file.kind = kind_value.get<std::string>();
  check_keys(j, path, file.kind);
  file.labels = parse_labels(j, path);
  file.metadata = parse_metadata(j, path);

  std::vector<int64_t> dims = parse_dims(require_key(j, path, "dim"), path);
  if (file.kind == "dilation") {
    if (dims.size() != 2) {
      fail(path, "dilation dim must be [system_dim, apparatus_dim]");
    }
  } else if (dims.size() != 1 && file.kind != "matrix") {
    fail(path, "dim must be a single integer for kind \"" + file.kind + "\"");
  }

  double tol_eff = tol > 0 ? tol : 1e-9;

  if (file.kind == "matrix" || file.kind == "density") {
    const char* key = file.kind == "matrix" ? "entries" : "matrix";
    ParsedMatrix m = as_matrix(require_key(j, path, key), path, key);
    int64_t want_rows = dims[0];
    int64_t want_cols = dims.size() == 2 ? dims[1] : dims[0];
    if (m.rows != want_rows || m.cols != want_cols) {
      fail(path, std::string(key) + " shape does not match dim");
    }
    forbid_labels(file, path);
    file.matrix = own<MatrixPtr>(
        qmeas_matrix_create(m.rows, m.cols, m.entries.data()), path);
    if (file.kind == "density") {
      // Hermiticity and unit trace named here; positivity is delegated to
      // the square root, whose failure message names the offending
      // eigenvalue.
      MatrixPtr adj =
          own<MatrixPtr>(qmeas_matrix_adjoint(file.matrix.get()), path);
      double herm = distance(file.matrix.get(), adj.get());
      if (herm > tol_eff) {
        fail(path, "density matrix is not Hermitian: ||rho - rho^dagger|| = " +
                       format_number(herm));
      }
      double tr_re = 0.0;
      double tr_im = 0.0;
      check(qmeas_matrix_trace(file.matrix.get(), &tr_re, &tr_im), path);
      if (std::abs(tr_re - 1.0) > tol_eff || std::abs(tr_im) > tol_eff) {
        fail(path, "density matrix does not have unit trace: trace = " +
                       format_number(tr_re));
      }
      MatrixPtr psd_probe = own<MatrixPtr>(
          qmeas_matrix_positive_sqrt(file.matrix.get(), tol), path);
      (void)psd_probe;
    }
    return file;
  }

  if (file.kind == "state") {
    std::vector<double> amplitudes = as_complex_vector(
        require_key(j, path, "amplitudes"), path, "amplitudes");
    if (static_cast<int64_t>(amplitudes.size()) != 2 * dims[0]) {
      fail(path, "amplitudes length does not match dim");
    }
    forbid_labels(file, path);
    file.state_dim = dims[0];
    file.amplitudes = std::move(amplitudes);
    // Normalization check; keeps the induced density for direct use.
    file.matrix = own<MatrixPtr>(
        qmeas_density_from_state(file.state_dim, file.amplitudes.data(), tol),
        path);
    return file;
  }

  if (file.kind == "observable") {
    const json& values = require_key(j, path, "eigenvalues");
    if (!values.is_array() || values.empty()) {
      fail(path, "eigenvalues must be a non-empty array of numbers");
    }
    std::vector<double> eigenvalues;
    eigenvalues.reserve(values.size());
    for (const json& v : values) {
      eigenvalues.push_back(as_number(v, path, "eigenvalues"));
    }
    const json& projs = require_key(j, path, "projectors");
    if (!projs.is_array() || projs.size() != values.size()) {
      fail(path, "projectors count must match eigenvalues count");
    }
    forbid_labels(file, path);
    std::vector<MatrixPtr> owned;
    std::vector<const qmeas_matrix*> raw;
    for (const json& p : projs) {
      ParsedMatrix m = as_matrix(p, path, "projectors");
      if (m.rows != dims[0] || m.cols != dims[0]) {
        fail(path, "projectors shape does not match dim");
      }
      owned.push_back(own<MatrixPtr>(
          qmeas_matrix_create(m.rows, m.cols, m.entries.data()), path));
      raw.push_back(owned.back().get());
    }
    file.observable = own<ObservablePtr>(
        qmeas_observable_create(raw.size(), eigenvalues.data(), raw.data(),
                                tol),
        path);
    return file;
  }

  if (file.kind == "povm" || file.kind == "instrument") {
    const char* key = file.kind == "povm" ? "effects" : "transformers";
    const json& list = require_key(j, path, key);
    if (!list.is_array() || list.empty()) {
      fail(path, std::string(key) + " must be a non-empty array of matrices");
    }
    std::vector<MatrixPtr> owned;
    std::vector<const qmeas_matrix*> raw;
    for (const json& p : list) {
      ParsedMatrix m = as_matrix(p, path, key);
      if (m.rows != dims[0] || m.cols != dims[0]) {
        fail(path, std::string(key) + " shape does not match dim");
      }
      owned.push_back(own<MatrixPtr>(
          qmeas_matrix_create(m.rows, m.cols, m.entries.data()), path));
      raw.push_back(owned.back().get());
    }
    if (!file.labels.empty() && file.labels.size() != raw.size()) {
      fail(path, "labels count must match outcome count");
    }
    std::vector<const char*> labels = label_pointers(file.labels);
    const char* const* label_arg = labels.empty() ? nullptr : labels.data();
    if (file.kind == "povm") {
      file.povm = own<PovmPtr>(
          qmeas_povm_create(raw.size(), raw.data(), label_arg, tol), path);
    } else {
      file.instrument = own<InstrumentPtr>(
          qmeas_instrument_create(raw.size(), raw.data(), label_arg, tol),
          path);
    }
    return file;
  }

  // Remaining kind: dilation (check_keys already rejected anything else).
  int64_t d1 = dims[0];
  int64_t d2 = dims[1];
  std::vector<double> ready = as_complex_vector(
      require_key(j, path, "ready_state"), path, "ready_state");
  if (static_cast<int64_t>(ready.size()) != 2 * d2) {
    fail(path, "ready_state length does not match apparatus dim");
  }
  const json& basis = require_key(j, path, "pointer_basis");
  if (!basis.is_array() || static_cast<int64_t>(basis.size()) != d2) {
    fail(path, "pointer_basis must hold one vector per apparatus dimension");
  }
  std::vector<double> basis_flat;
  basis_flat.reserve(static_cast<std::size_t>(2 * d2 * d2));
  for (const json& v : basis) {
    std::vector<double> vec = as_complex_vector(v, path, "pointer_basis");
    if (static_cast<int64_t>(vec.size()) != 2 * d2) {
      fail(path, "pointer_basis vectors must match apparatus dim");
    }
    basis_flat.insert(basis_flat.end(), vec.begin(), vec.end());
  }
  const json& values = require_key(j, path, "pointer_values");
  if (!values.is_array() || static_cast<int64_t>(values.size()) != d2) {
    fail(path, "pointer_values must hold one number per apparatus dimension");
  }
  std::vector<double> pointer_values;
  pointer_values.reserve(values.size());
  for (const json& v : values) {
    pointer_values.push_back(as_number(v, path, "pointer_values"));
  }
  ParsedMatrix u = as_matrix(require_key(j, path, "unitary"), path, "unitary");
  if (u.rows != d1 * d2 || u.cols != d1 * d2) {
    fail(path, "unitary shape does not match system_dim * apparatus_dim");
  }
  if (!file.labels.empty() &&
      static_cast<int64_t>(file.labels.size()) != d2) {
    fail(path, "labels count must match apparatus dim");
  }
  MatrixPtr unitary = own<MatrixPtr>(
      qmeas_matrix_create(u.rows, u.cols, u.entries.data()), path);
  file.dilation = own<DilationPtr>(
      qmeas_dilation_create(d1, d2, ready.data(), basis_flat.data(),
                            pointer_values.data(), unitary.get(), tol),
      path);
  return file;
}

/* ------------------------------------------------------------------ */
/* Serializers                                                        */

void save_matrix_file(const std::string& path, const std::string& kind,
                      const qmeas_matrix* m,
                      const std::map<std::string, std::string>& metadata) {
  int64_t rows = matrix_rows(m);
  int64_t cols = matrix_cols(m);
  std::vector<double> entries = matrix_entries(m);
  std::string out;
  if (rows == cols) {
    append_header(out, kind, {rows});
  } else {
    append_header(out, kind, {rows, cols});
  }
  append_metadata(out, metadata);
  out += ",\n  \"";
  out += kind == "matrix" ? "entries" : "matrix";
  out += "\": ";
  append_matrix_array(out, entries, rows, cols, 2);
  out += "\n}\n";
  write_file(path, out);
}

void save_state_file(const std::string& path, int64_t dim,
                     const std::vector<double>& amplitudes,
                     const std::map<std::string, std::string>& metadata) {
  std::string out;
  append_header(out, "state", {dim});
  append_metadata(out, metadata);
  out += ",\n  \"amplitudes\": ";
  append_complex_row(out, amplitudes.data(), dim);
  out += "\n}\n";
  write_file(path, out);
}

void save_observable_file(const std::string& path, const qmeas_observable* obs,
                          const std::map<std::string, std::string>& metadata) {
  int64_t dim = 0;
  check(qmeas_observable_dim(obs, &dim), path);
  std::size_t count = 0;
  check(qmeas_observable_outcome_count(obs, &count), path);
  std::string out;
  append_header(out, "observable", {dim});
  append_metadata(out, metadata);
  out += ",\n  \"eigenvalues\": [";
  for (std::size_t i = 0; i < count; ++i) {
    double value = 0.0;
    check(qmeas_observable_eigenvalue(obs, i, &value), path);
    if (i > 0) out += ", ";
    append_number(out, value);
  }
  out += "],\n  \"projectors\": [\n";
  for (std::size_t i = 0; i < count; ++i) {
    MatrixPtr p = own<MatrixPtr>(qmeas_observable_projector(obs, i), path);
    out += "    ";
    append_matrix_array(out, matrix_entries(p.get()), dim, dim, 4);
    out += i + 1 < count ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  write_file(path, out);
}

void save_povm_file(const std::string& path, const qmeas_povm* povm,
                    const std::map<std::string, std::string>& metadata) {
  int64_t dim = 0;
  check(qmeas_povm_dim(povm, &dim), path);
  std::size_t count = 0;
  check(qmeas_povm_outcome_count(povm, &count), path);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < count; ++i) {
    const char* label = qmeas_povm_label(povm, i);
    if (label == nullptr) throw_library_error(path);
    labels.push_back(label);
  }
  std::string out;
  append_header(out, "povm", {dim});
  append_labels(out, labels);
  append_metadata(out, metadata);
  out += ",\n  \"effects\": [\n";
  for (std::size_t i = 0; i < count; ++i) {
    MatrixPtr e = own<MatrixPtr>(qmeas_povm_effect(povm, i), path);
    out += "    ";
    append_matrix_array(out, matrix_entries(e.get()), dim, dim, 4);
    out += i + 1 < count ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  write_file(path, out);
}

void save_instrument_file(const std::string& path,
                          const qmeas_instrument* inst,
                          const std::map<std::string, std::string>& metadata) {
  int64_t dim = 0;
  check(qmeas_instrument_dim(inst, &dim), path);
  std::size_t count = 0;
  check(qmeas_instrument_outcome_count(inst, &count), path);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < count; ++i) {
    const char* label = qmeas_instrument_label(inst, i);
    if (label == nullptr) throw_library_error(path);
    labels.push_back(label);
  }
  std::string out;
  append_header(out, "instrument", {dim});
  append_labels(out, labels);
  append_metadata(out, metadata);
  out += ",\n  \"transformers\": [\n";
  for (std::size_t i = 0; i < count; ++i) {
    MatrixPtr m = own<MatrixPtr>(qmeas_instrument_transformer(inst, i), path);
    out += "    ";
    append_matrix_array(out, matrix_entries(m.get()), dim, dim, 4);
    out += i + 1 < count ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  write_file(path, out);
}

void save_dilation_file(const std::string& path, const qmeas_dilation* model,
                        const std::vector<std::string>& labels,
                        const std::map<std::string, std::string>& metadata) {
  int64_t d1 = 0;
  int64_t d2 = 0;
  check(qmeas_dilation_system_dim(model, &d1), path);
  check(qmeas_dilation_apparatus_dim(model, &d2), path);
  std::vector<double> ready(static_cast<std::size_t>(2 * d2));
  check(qmeas_dilation_ready_state(model, ready.data()), path);
  std::string out;
  append_header(out, "dilation", {d1, d2});
  append_labels(out, labels);
  append_metadata(out, metadata);
  out += ",\n  \"ready_state\": ";
  append_complex_row(out, ready.data(), d2);
  out += ",\n  \"pointer_basis\": [\n";
  std::vector<double> vec(static_cast<std::size_t>(2 * d2));
  for (int64_t i = 0; i < d2; ++i) {
    check(qmeas_dilation_pointer_vector(model, static_cast<std::size_t>(i),
                                        vec.data()),
          path);
    out += "    ";
    append_complex_row(out, vec.data(), d2);
    out += i + 1 < d2 ? ",\n" : "\n";
  }
  out += "  ],\n  \"pointer_values\": ";
  std::vector<double> values(static_cast<std::size_t>(d2));
  for (int64_t i = 0; i < d2; ++i) {
    check(qmeas_dilation_pointer_value(model, static_cast<std::size_t>(i),
                                       &values[static_cast<std::size_t>(i)]),
          path);
  }
  append_real_row(out, values);
  MatrixPtr unitary = own<MatrixPtr>(qmeas_dilation_unitary(model), path);
  out += ",\n  \"unitary\": ";
  append_matrix_array(out, matrix_entries(unitary.get()), d1 * d2, d1 * d2, 2);
  out += "\n}\n";
  write_file(path, out);
}

}  // namespace qmeas_cli
