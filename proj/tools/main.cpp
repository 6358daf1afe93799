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
 * @file main.cpp
 * The `qmeas` command-line tool. Subcommands: classify, dilate, extract,
 * simulate, polar, refine, preset. Talks to the library only through the
 * public C interface.
 *
 * Exit codes: 0 success, 2 validation failure, 3 internal consistency
 * failure, 64 usage error.
 */

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "cli_support.hpp"
#include "operator_file.hpp"
#include "qmeas/qmeas.h"

namespace qmeas_cli {
namespace {

struct Options {
  double tol = 1e-9;
  bool json = false;
  std::string preset;
  std::vector<std::string> files;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::string preset_name;    // `preset` subcommand positional
  std::string preset_output;  // `preset` subcommand positional
};

[[noreturn]] void usage_error(const std::string& message) {
  throw CommandError(kExitUsage, message);
}

std::string strf(const char* format, ...)
    __attribute__((format(printf, 1, 2)));

std::string strf(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

std::string format_complex(double re, double im) {
  return strf("%.10g%+.10gi", re, im);
}

// Left-aligned cell of at least `width` characters.
std::string pad(const std::string& s, std::size_t width) {
  std::string out = s;
  if (out.size() < width) out.append(width - out.size(), ' ');
  return out;
}

void print_matrix(const std::string& title, const qmeas_matrix* m) {
  int64_t rows = matrix_rows(m);
  int64_t cols = matrix_cols(m);
  std::vector<double> e = matrix_entries(m);
  std::cout << title << ":\n";
  for (int64_t i = 0; i < rows; ++i) {
    std::string line = " ";
    for (int64_t j = 0; j < cols; ++j) {
      std::size_t at = static_cast<std::size_t>(2 * (i * cols + j));
      line += " " + pad(format_complex(e[at], e[at + 1]), 24);
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    std::cout << line << "\n";
  }
}

// Compact nested [re, im] pairs for machine-readable reports, full precision.
std::string matrix_json(const qmeas_matrix* m) {
  int64_t rows = matrix_rows(m);
  int64_t cols = matrix_cols(m);
  std::vector<double> e = matrix_entries(m);
  std::string out = "[";
  for (int64_t i = 0; i < rows; ++i) {
    if (i > 0) out += ", ";
    out += '[';
    for (int64_t j = 0; j < cols; ++j) {
      if (j > 0) out += ", ";
      std::size_t at = static_cast<std::size_t>(2 * (i * cols + j));
      out += '[' + format_number(e[at]) + ", " + format_number(e[at + 1]) + ']';
    }
    out += ']';
  }
  out += ']';
  return out;
}

int64_t instrument_dim(const qmeas_instrument* inst) {
  int64_t dim = 0;
  check(qmeas_instrument_dim(inst, &dim), "instrument dim");
  return dim;
}

std::size_t instrument_outcomes(const qmeas_instrument* inst) {
  std::size_t count = 0;
  check(qmeas_instrument_outcome_count(inst, &count), "instrument outcomes");
  return count;
}

std::vector<std::string> instrument_labels(const qmeas_instrument* inst) {
  std::size_t count = instrument_outcomes(inst);
  std::vector<std::string> labels;
  labels.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const char* label = qmeas_instrument_label(inst, i);
    if (label == nullptr) throw_library_error("instrument label");
    labels.push_back(label);
  }
  return labels;
}

// ||sum M_i^dagger M_i - 1||; summation of plain entries happens here, the
// operator algebra stays behind the library boundary.
double completeness_residual(const qmeas_instrument* inst) {
  int64_t d = instrument_dim(inst);
  std::size_t count = instrument_outcomes(inst);
  std::vector<double> acc(static_cast<std::size_t>(2 * d * d), 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    MatrixPtr m =
        own<MatrixPtr>(qmeas_instrument_transformer(inst, i), "transformer");
    MatrixPtr adj = own<MatrixPtr>(qmeas_matrix_adjoint(m.get()), "adjoint");
    MatrixPtr prod =
        own<MatrixPtr>(qmeas_matrix_multiply(adj.get(), m.get()), "product");
    std::vector<double> e = matrix_entries(prod.get());
    for (std::size_t at = 0; at < acc.size(); ++at) acc[at] += e[at];
  }
  MatrixPtr sum = make_matrix(d, d, acc);
  MatrixPtr id = own<MatrixPtr>(qmeas_matrix_identity(d), "identity");
  return distance(sum.get(), id.get());
}

/* ------------------------------------------------------------------ */
/* Input resolution                                                   */

struct InstrumentInput {
  InstrumentPtr inst;
  std::string description;
  std::map<std::string, std::string> metadata;
};

// An instrument argument is either a file (kind instrument, povm via its
// square-root instrument, or observable via its projective instrument) or a
// gallery preset named with --preset.
InstrumentInput load_instrument_input(const Options& opt,
                                      const std::string& file) {
  InstrumentInput in;
  if (!opt.preset.empty()) {
    in.inst = own<InstrumentPtr>(
        qmeas_instrument_preset(opt.preset.c_str(), opt.tol),
        "preset " + opt.preset);
    in.description = "preset " + opt.preset;
    return in;
  }
  LoadedFile f = load_operator_file(file, opt.tol);
  in.description = file;
  in.metadata = std::move(f.metadata);
  if (f.kind == "instrument") {
    in.inst = std::move(f.instrument);
  } else if (f.kind == "povm") {
    in.inst = own<InstrumentPtr>(
        qmeas_instrument_from_povm(f.povm.get(), nullptr, opt.tol), file);
  } else if (f.kind == "observable") {
    in.inst = own<InstrumentPtr>(qmeas_instrument_luders(f.observable.get()),
                                 file);
  } else {
    throw CommandError(kExitValidation,
                       file + ": expected kind instrument, povm, or "
                              "observable, got \"" +
                           f.kind + "\"");
  }
  return in;
}

// INPUT, or --preset alone.
std::string resolve_single_input(const Options& opt) {
  if (!opt.preset.empty()) {
    if (!opt.files.empty()) {
      usage_error("give either an input file or --preset, not both");
    }
    return {};
  }
  if (opt.files.size() != 1) {
    usage_error("expected exactly one input file (or --preset NAME)");
  }
  return opt.files[0];
}

// INPUT [OUTPUT], or --preset [OUTPUT].
std::pair<std::string, std::string> resolve_input_output(const Options& opt) {
  if (!opt.preset.empty()) {
    if (opt.files.size() > 1) {
      usage_error("with --preset expected at most one output file");
    }
    return {std::string(), opt.files.empty() ? std::string() : opt.files[0]};
  }
  if (opt.files.empty() || opt.files.size() > 2) {
    usage_error("expected INPUT [OUTPUT]");
  }
  return {opt.files[0],
          opt.files.size() == 2 ? opt.files[1] : std::string()};
}

/* ------------------------------------------------------------------ */
/* classify                                                           */

void run_classify(const Options& opt) {
  std::string input = resolve_single_input(opt);
  InstrumentInput in = load_instrument_input(opt, input);
  ClassificationPtr cls = own<ClassificationPtr>(
      qmeas_classify(in.inst.get(), opt.tol), in.description);

  std::size_t count = 0;
  check(qmeas_classification_outcome_count(cls.get(), &count),
        in.description);
  std::vector<qmeas_outcome_report> reports(count);
  bool all_ordinary = true;
  bool any_borderline = false;
  for (std::size_t i = 0; i < count; ++i) {
    check(qmeas_classification_outcome(cls.get(), i, &reports[i]),
          in.description);
    all_ordinary = all_ordinary && reports[i].is_ordinary != 0;
    any_borderline = any_borderline || reports[i].borderline != 0;
  }
  const char* kind = qmeas_classification_kind(cls.get());
  if (kind == nullptr) throw_library_error(in.description);
  int complete = 0;
  double complete_residual = 0.0;
  if (all_ordinary) {
    check(qmeas_classification_projectors_complete(cls.get(), &complete,
                                                   &complete_residual),
          in.description);
  }
  std::vector<std::string> labels = instrument_labels(in.inst.get());

  if (opt.json) {
    std::string out = "{\n  \"command\": \"classify\",\n  \"input\": " +
                      format_json_string(in.description) +
                      ",\n  \"tolerance\": " + format_number(opt.tol) +
                      ",\n  \"dim\": " +
                      std::to_string(instrument_dim(in.inst.get())) +
                      ",\n  \"outcomes\": [\n";
    for (std::size_t i = 0; i < count; ++i) {
      const qmeas_outcome_report& r = reports[i];
      out += "    {\"label\": " + format_json_string(labels[i]) +
             ", \"ordinary\": " + (r.is_ordinary ? "true" : "false") +
             ", \"projector_rank\": " + std::to_string(r.projector_rank) +
             ", \"repeatable\": " +
             (r.has_repeatable ? (r.is_repeatable ? "true" : "false")
                               : "null") +
             ", \"borderline\": " + (r.borderline ? "true" : "false") +
             ", \"projector_residual\": " +
             format_number(r.projector_residual) +
             ", \"repeatable_residual\": " +
             format_number(r.repeatable_residual) +
             ", \"ideal_distance\": " + format_number(r.ideal_distance) +
             "}";
      out += i + 1 < count ? ",\n" : "\n";
    }
    out += "  ],\n  \"projectors_complete\": ";
    out += all_ordinary ? (complete ? "true" : "false") : "null";
    if (all_ordinary) {
      out += ",\n  \"completeness_residual\": " +
             format_number(complete_residual);
    }
    out += ",\n  \"kind\": " + format_json_string(kind) + "\n}\n";
    std::cout << out;
    return;
  }

  std::cout << "instrument: " << in.description << "\n";
  std::cout << "dimension: " << instrument_dim(in.inst.get()) << "\n";
  std::cout << "outcomes: " << count << "\n";
  std::cout << strf("tolerance: %g\n\n", opt.tol);
  std::size_t label_width = 5;
  for (const std::string& label : labels) {
    label_width = std::max(label_width, label.size());
  }
  std::cout << "  " << pad("label", label_width + 2) << pad("ordinary", 10)
            << pad("rank", 6) << pad("repeatable", 12) << "||M - P||\n";
  for (std::size_t i = 0; i < count; ++i) {
    const qmeas_outcome_report& r = reports[i];
    std::string mark = r.borderline ? "*" : "";
    std::string rank =
        r.projector_rank >= 0 ? std::to_string(r.projector_rank) : "-";
    std::string repeatable =
        r.has_repeatable ? (r.is_repeatable ? "yes" : "no") + mark : "-";
    std::string ideal =
        r.has_repeatable ? strf("%.3g", r.ideal_distance) : "-";
    std::cout << "  " << pad(labels[i], label_width + 2)
              << pad(r.is_ordinary ? "yes" + mark : "no" + mark, 10)
              << pad(rank, 6) << pad(repeatable, 12) << ideal << "\n";
  }
  if (any_borderline) {
    std::cout << "  * borderline: deciding residual within a factor 10 of "
                 "the tolerance\n";
  }
  std::cout << "\n";
  if (all_ordinary) {
    std::cout << strf("projector completeness: %s (residual %.3g)\n",
                      complete ? "yes" : "no", complete_residual);
  } else {
    std::cout << "projector completeness: - (not all outcomes ordinary)\n";
  }
  std::cout << "kind: " << kind << "\n";
}

/* ------------------------------------------------------------------ */
/* dilate                                                             */

void run_dilate(const Options& opt) {
  auto [input, output] = resolve_input_output(opt);
  InstrumentInput in = load_instrument_input(opt, input);
  DilationPtr model = own<DilationPtr>(qmeas_dilate(in.inst.get(), opt.tol),
                                       in.description);
  int64_t d1 = 0;
  int64_t d2 = 0;
  check(qmeas_dilation_system_dim(model.get(), &d1), in.description);
  check(qmeas_dilation_apparatus_dim(model.get(), &d2), in.description);

  MatrixPtr u = own<MatrixPtr>(qmeas_dilation_unitary(model.get()),
                               in.description);
  MatrixPtr adj = own<MatrixPtr>(qmeas_matrix_adjoint(u.get()), "adjoint");
  MatrixPtr prod = own<MatrixPtr>(qmeas_matrix_multiply(adj.get(), u.get()),
                                  "product");
  MatrixPtr id = own<MatrixPtr>(qmeas_matrix_identity(d1 * d2), "identity");
  double unitarity = distance(prod.get(), id.get());

  InstrumentPtr back = own<InstrumentPtr>(
      qmeas_dilation_extract(model.get(), opt.tol), in.description);
  std::size_t count = instrument_outcomes(in.inst.get());
  double round_trip = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    MatrixPtr original = own<MatrixPtr>(
        qmeas_instrument_transformer(in.inst.get(), i), "transformer");
    MatrixPtr extracted = own<MatrixPtr>(
        qmeas_instrument_transformer(back.get(), i), "transformer");
    round_trip = std::max(round_trip,
                          distance(original.get(), extracted.get()));
  }

  if (!output.empty()) {
    save_dilation_file(output, model.get(),
                       instrument_labels(in.inst.get()), in.metadata);
  }

  if (opt.json) {
    std::string out = "{\n  \"command\": \"dilate\",\n  \"input\": " +
                      format_json_string(in.description) +
                      ",\n  \"tolerance\": " + format_number(opt.tol) +
                      ",\n  \"system_dim\": " + std::to_string(d1) +
                      ",\n  \"apparatus_dim\": " + std::to_string(d2) +
                      ",\n  \"unitarity_residual\": " +
                      format_number(unitarity) +
                      ",\n  \"round_trip_residual\": " +
                      format_number(round_trip);
    if (!output.empty()) {
      out += ",\n  \"output\": " + format_json_string(output);
    }
    out += "\n}\n";
    std::cout << out;
  } else {
    std::cout << "instrument: " << in.description << "\n";
    std::cout << strf("tolerance: %g\n", opt.tol);
    std::cout << "system dim: " << d1 << "\n";
    std::cout << "apparatus dim: " << d2 << "\n";
    std::cout << strf("unitarity residual: %.3g\n", unitarity);
    std::cout << strf("round-trip residual: %.3g\n", round_trip);
    if (!output.empty()) std::cout << "wrote dilation: " << output << "\n";
  }

  if (unitarity > opt.tol) {
    throw CommandError(kExitValidation,
                       strf("unitarity residual %.3g exceeds tolerance %g",
                            unitarity, opt.tol));
  }
  if (round_trip > opt.tol) {
    throw CommandError(kExitValidation,
                       strf("round-trip residual %.3g exceeds tolerance %g",
                            round_trip, opt.tol));
  }
}

/* ------------------------------------------------------------------ */
/* extract                                                            */

void run_extract(const Options& opt) {
  auto [input, output] = resolve_input_output(opt);
  LoadedFile f = load_operator_file(input, opt.tol);
  if (f.kind != "dilation") {
    throw CommandError(kExitValidation, input +
                                            ": expected kind dilation, got "
                                            "\"" +
                                            f.kind + "\"");
  }
  InstrumentPtr inst = own<InstrumentPtr>(
      qmeas_dilation_extract(f.dilation.get(), opt.tol), input);
  if (!f.labels.empty()) {
    // The model itself indexes outcomes; stored labels are reattached here.
    std::size_t count = instrument_outcomes(inst.get());
    std::vector<MatrixPtr> owned;
    std::vector<const qmeas_matrix*> raw;
    for (std::size_t i = 0; i < count; ++i) {
      owned.push_back(own<MatrixPtr>(
          qmeas_instrument_transformer(inst.get(), i), input));
      raw.push_back(owned.back().get());
    }
    std::vector<const char*> labels;
    for (const std::string& label : f.labels) labels.push_back(label.c_str());
    // Same slack the extraction itself allows, so relabeling never tightens
    // the completeness check.
    double relabel_tol = std::max(10.0 * opt.tol, 1e-8);
    inst = own<InstrumentPtr>(
        qmeas_instrument_create(count, raw.data(), labels.data(),
                                relabel_tol),
        input);
  }
  double residual = completeness_residual(inst.get());
  std::vector<std::string> labels = instrument_labels(inst.get());

  if (!output.empty()) save_instrument_file(output, inst.get(), f.metadata);

  if (opt.json) {
    std::string out = "{\n  \"command\": \"extract\",\n  \"input\": " +
                      format_json_string(input) +
                      ",\n  \"tolerance\": " + format_number(opt.tol) +
                      ",\n  \"dim\": " +
                      std::to_string(instrument_dim(inst.get())) +
                      ",\n  \"labels\": [";
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (i > 0) out += ", ";
      out += format_json_string(labels[i]);
    }
    out += "],\n  \"completeness_residual\": " + format_number(residual);
    if (!output.empty()) {
      out += ",\n  \"output\": " + format_json_string(output);
    }
    out += "\n}\n";
    std::cout << out;
  } else {
    std::cout << "dilation: " << input << "\n";
    std::cout << strf("tolerance: %g\n", opt.tol);
    std::cout << "dimension: " << instrument_dim(inst.get()) << "\n";
    std::cout << "outcomes: " << labels.size() << "\n";
    std::string joined;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (i > 0) joined += ", ";
      joined += labels[i];
    }
    std::cout << "labels: " << joined << "\n";
    std::cout << strf("completeness residual: %.3g\n", residual);
    if (!output.empty()) std::cout << "wrote instrument: " << output << "\n";
  }
}

/* ------------------------------------------------------------------ */
/* simulate                                                           */

void run_simulate(const Options& opt) {
  std::string inst_file;
  std::string state_file;
  if (!opt.preset.empty()) {
    if (opt.files.size() != 1) {
      usage_error("with --preset expected exactly one state file");
    }
    state_file = opt.files[0];
  } else {
    if (opt.files.size() != 2) {
      usage_error("expected INSTRUMENT STATE");
    }
    inst_file = opt.files[0];
    state_file = opt.files[1];
  }
  InstrumentInput in = load_instrument_input(opt, inst_file);
  LoadedFile st = load_operator_file(state_file, opt.tol);
  if (st.kind != "state" && st.kind != "density") {
    throw CommandError(kExitValidation,
                       state_file + ": expected kind state or density, got "
                                    "\"" +
                           st.kind + "\"");
  }

  std::size_t count = instrument_outcomes(in.inst.get());
  std::vector<double> probabilities(count);
  check(qmeas_probabilities(in.inst.get(), st.matrix.get(), opt.tol,
                            probabilities.data()),
        in.description);
  std::vector<std::uint64_t> counts(count);
  check(qmeas_sample_counts(in.inst.get(), st.matrix.get(), opt.seed,
                            opt.shots, opt.tol, counts.data()),
        in.description);
  double shots = static_cast<double>(opt.shots);
  double tv = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    tv += std::abs(probabilities[i] - static_cast<double>(counts[i]) / shots);
  }
  tv *= 0.5;
  std::vector<std::string> labels = instrument_labels(in.inst.get());

  if (opt.json) {
    std::string out = "{\n  \"command\": \"simulate\",\n  \"input\": " +
                      format_json_string(in.description) +
                      ",\n  \"state\": " + format_json_string(state_file) +
                      ",\n  \"tolerance\": " + format_number(opt.tol) +
                      ",\n  \"shots\": " + std::to_string(opt.shots) +
                      ",\n  \"seed\": " + std::to_string(opt.seed) +
                      ",\n  \"outcomes\": [\n";
    for (std::size_t i = 0; i < count; ++i) {
      out += "    {\"label\": " + format_json_string(labels[i]) +
             ", \"probability\": " + format_number(probabilities[i]) +
             ", \"count\": " + std::to_string(counts[i]) +
             ", \"frequency\": " +
             format_number(static_cast<double>(counts[i]) / shots) + "}";
      out += i + 1 < count ? ",\n" : "\n";
    }
    out += "  ],\n  \"total_variation_distance\": " + format_number(tv) +
           "\n}\n";
    std::cout << out;
    return;
  }

  std::cout << "instrument: " << in.description << "\n";
  std::cout << "state: " << state_file << "\n";
  std::cout << strf("tolerance: %g\n", opt.tol);
  std::cout << "shots: " << opt.shots << "\n";
  std::cout << "seed: " << opt.seed << "\n\n";
  std::size_t label_width = 5;
  for (const std::string& label : labels) {
    label_width = std::max(label_width, label.size());
  }
  std::cout << "  " << pad("label", label_width + 2)
            << pad("probability", 14) << pad("frequency", 14) << "count\n";
  for (std::size_t i = 0; i < count; ++i) {
    std::cout << "  " << pad(labels[i], label_width + 2)
              << pad(strf("%.9g", probabilities[i]), 14)
              << pad(strf("%.9g",
                          static_cast<double>(counts[i]) / shots),
                     14)
              << counts[i] << "\n";
  }
  std::cout << strf("\ntotal-variation distance: %.6g\n", tv);
}

/* ------------------------------------------------------------------ */
/* polar                                                              */

void run_polar(const Options& opt) {
  if (opt.files.size() != 1) usage_error("expected exactly one matrix file");
  const std::string& input = opt.files[0];
  LoadedFile f = load_operator_file(input, opt.tol);
  if (f.kind != "matrix" && f.kind != "density") {
    throw CommandError(kExitValidation,
                       input + ": expected kind matrix or density, got \"" +
                           f.kind + "\"");
  }
  qmeas_matrix* u_raw = nullptr;
  qmeas_matrix* h_raw = nullptr;
  qmeas_matrix* w_raw = nullptr;
  qmeas_matrix* q_raw = nullptr;
  check(qmeas_polar(f.matrix.get(), opt.tol, &u_raw, &h_raw, &w_raw, &q_raw),
        input);
  MatrixPtr u(u_raw);
  MatrixPtr h(h_raw);
  MatrixPtr w(w_raw);
  MatrixPtr q(q_raw);

  MatrixPtr uh =
      own<MatrixPtr>(qmeas_matrix_multiply(u.get(), h.get()), "product");
  double reconstruction = distance(uh.get(), f.matrix.get());
  MatrixPtr adj =
      own<MatrixPtr>(qmeas_matrix_adjoint(f.matrix.get()), "adjoint");
  MatrixPtr gram =
      own<MatrixPtr>(qmeas_matrix_multiply(adj.get(), f.matrix.get()),
                     "gram");
  MatrixPtr root = own<MatrixPtr>(
      qmeas_matrix_positive_sqrt(gram.get(), opt.tol), "square root");
  double sqrt_residual = distance(h.get(), root.get());

  if (opt.json) {
    std::string out = "{\n  \"command\": \"polar\",\n  \"input\": " +
                      format_json_string(input) +
                      ",\n  \"tolerance\": " + format_number(opt.tol) +
                      ",\n  \"unitary\": " + matrix_json(u.get()) +
                      ",\n  \"positive\": " + matrix_json(h.get()) +
                      ",\n  \"partial_isometry\": " + matrix_json(w.get()) +
                      ",\n  \"range_projector\": " + matrix_json(q.get()) +
                      ",\n  \"reconstruction_residual\": " +
                      format_number(reconstruction) +
                      ",\n  \"sqrt_residual\": " +
                      format_number(sqrt_residual) + "\n}\n";
    std::cout << out;
    return;
  }

  std::cout << "matrix: " << input << " (" << matrix_rows(f.matrix.get())
            << " x " << matrix_cols(f.matrix.get()) << ")\n";
  std::cout << strf("tolerance: %g\n\n", opt.tol);
  print_matrix("U (unitary)", u.get());
  print_matrix("H (positive)", h.get());
  print_matrix("U~ (partial isometry)", w.get());
  print_matrix("Q (range projector)", q.get());
  std::cout << strf("\nresidual ||U H - A||: %.3g\n", reconstruction);
  std::cout << strf("residual ||H - (A^dagger A)^(1/2)||: %.3g\n",
                    sqrt_residual);
}

/* ------------------------------------------------------------------ */
/* refine                                                             */

void run_refine(const Options& opt) {
  auto [input, output] = resolve_input_output(opt);
  LoadedFile f = load_operator_file(input, opt.tol);
  ObservablePtr obs;
  if (f.kind == "observable") {
    obs = std::move(f.observable);
  } else if (f.kind == "matrix" || f.kind == "density") {
    obs = own<ObservablePtr>(
        qmeas_observable_from_matrix(f.matrix.get(), -1.0, opt.tol), input);
  } else {
    throw CommandError(kExitValidation,
                       input + ": expected kind observable or matrix, got "
                               "\"" +
                           f.kind + "\"");
  }
  ObservablePtr fine =
      own<ObservablePtr>(qmeas_observable_refine(obs.get(), opt.tol), input);

  auto describe = [&](const qmeas_observable* o) {
    std::size_t count = 0;
    check(qmeas_observable_outcome_count(o, &count), input);
    std::vector<std::pair<double, int64_t>> rows;
    for (std::size_t i = 0; i < count; ++i) {
      double value = 0.0;
      check(qmeas_observable_eigenvalue(o, i, &value), input);
      MatrixPtr p = own<MatrixPtr>(qmeas_observable_projector(o, i), input);
      double tr_re = 0.0;
      double tr_im = 0.0;
      check(qmeas_matrix_trace(p.get(), &tr_re, &tr_im), input);
      rows.emplace_back(value, std::llround(tr_re));
    }
    return rows;
  };
  auto original = describe(obs.get());
  auto refined = describe(fine.get());

  if (!output.empty()) save_observable_file(output, fine.get(), f.metadata);

  if (opt.json) {
    auto rows_json = [](const std::vector<std::pair<double, int64_t>>& rows) {
      std::string out = "[";
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0) out += ", ";
        out += "{\"eigenvalue\": " + format_number(rows[i].first) +
               ", \"rank\": " + std::to_string(rows[i].second) + "}";
      }
      return out + "]";
    };
    std::string out = "{\n  \"command\": \"refine\",\n  \"input\": " +
                      format_json_string(input) +
                      ",\n  \"tolerance\": " + format_number(opt.tol) +
                      ",\n  \"original\": " + rows_json(original) +
                      ",\n  \"refined\": " + rows_json(refined);
    if (!output.empty()) {
      out += ",\n  \"output\": " + format_json_string(output);
    }
    out += "\n}\n";
    std::cout << out;
    return;
  }

  std::cout << "observable: " << input << "\n";
  std::cout << strf("tolerance: %g\n", opt.tol);
  auto print_rows =
      [](const char* title,
         const std::vector<std::pair<double, int64_t>>& rows) {
        std::cout << title << ":";
        for (const auto& [value, rank] : rows) {
          std::cout << strf(" %.10g(rank %lld)", value,
                            static_cast<long long>(rank));
        }
        std::cout << "\n";
      };
  print_rows("original", original);
  print_rows("refined", refined);
  if (!output.empty()) std::cout << "wrote observable: " << output << "\n";
}

/* ------------------------------------------------------------------ */
/* preset                                                             */

std::vector<std::string> preset_name_list();

void run_preset(const Options& opt) {
  if (opt.preset_name.empty()) {
    std::vector<std::string> names = preset_name_list();
    if (opt.json) {
      std::string out = "{\n  \"command\": \"preset\",\n  \"presets\": [";
      for (std::size_t i = 0; i < names.size(); ++i) {
        if (i > 0) out += ", ";
        out += format_json_string(names[i]);
      }
      out += "]\n}\n";
      std::cout << out;
    } else {
      for (const std::string& name : names) std::cout << name << "\n";
    }
    return;
  }

  InstrumentPtr inst = own<InstrumentPtr>(
      qmeas_instrument_preset(opt.preset_name.c_str(), opt.tol),
      "preset " + opt.preset_name);
  std::size_t count = instrument_outcomes(inst.get());
  std::vector<std::string> labels = instrument_labels(inst.get());

  if (!opt.preset_output.empty()) {
    save_instrument_file(opt.preset_output, inst.get(),
                         {{"preset", opt.preset_name}});
  }

  if (opt.json) {
    std::string out = "{\n  \"command\": \"preset\",\n  \"name\": " +
                      format_json_string(opt.preset_name) +
                      ",\n  \"dim\": " +
                      std::to_string(instrument_dim(inst.get())) +
                      ",\n  \"labels\": [";
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (i > 0) out += ", ";
      out += format_json_string(labels[i]);
    }
    out += "],\n  \"transformers\": [\n";
    for (std::size_t i = 0; i < count; ++i) {
      MatrixPtr m = own<MatrixPtr>(qmeas_instrument_transformer(inst.get(), i),
                                   opt.preset_name);
      out += "    " + matrix_json(m.get());
      out += i + 1 < count ? ",\n" : "\n";
    }
    out += "  ]";
    if (!opt.preset_output.empty()) {
      out += ",\n  \"output\": " + format_json_string(opt.preset_output);
    }
    out += "\n}\n";
    std::cout << out;
    return;
  }

  std::cout << "preset: " << opt.preset_name << "\n";
  std::cout << "dimension: " << instrument_dim(inst.get()) << "\n";
  std::cout << "outcomes: " << count << "\n";
  for (std::size_t i = 0; i < count; ++i) {
    MatrixPtr m = own<MatrixPtr>(qmeas_instrument_transformer(inst.get(), i),
                                 opt.preset_name);
    print_matrix("M[" + labels[i] + "]", m.get());
  }
  if (!opt.preset_output.empty()) {
    std::cout << "wrote instrument: " << opt.preset_output << "\n";
  }
}

/* ------------------------------------------------------------------ */
/* Argument wiring                                                    */

std::vector<std::string> preset_name_list() {
  std::vector<std::string> names;
  std::string all = qmeas_preset_names();
  std::size_t start = 0;
  while (start < all.size()) {
    std::size_t end = all.find('\n', start);
    if (end == std::string::npos) end = all.size();
    if (end > start) names.push_back(all.substr(start, end - start));
    start = end + 1;
  }
  return names;
}

int run_app(int argc, char** argv) {
  Options opt;
  CLI::App app{
      "construct, classify, dilate, and simulate discrete quantum "
      "measurements"};
  app.require_subcommand(1);
  app.set_version_flag("--version", qmeas_version());

  std::vector<std::string> presets = preset_name_list();

  auto add_common = [&](CLI::App* sub, bool with_preset) {
    sub->add_option("--tol", opt.tol,
                    "tolerance for validation and residual checks "
                    "(Frobenius norm)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_flag("--json", opt.json, "machine-readable report on stdout");
    if (with_preset) {
      sub->add_option("--preset", opt.preset,
                      "built-in instrument instead of an input file")
          ->check(CLI::IsMember(presets));
    }
  };

  CLI::App* classify = app.add_subcommand(
      "classify", "classify an instrument outcome by outcome");
  classify->add_option("files", opt.files,
                       "instrument file (kind instrument, povm, or "
                       "observable)");
  add_common(classify, true);
  classify->callback([&opt] { run_classify(opt); });

  CLI::App* dilate = app.add_subcommand(
      "dilate", "realize an instrument as a composite unitary model");
  dilate->add_option("files", opt.files, "INPUT [OUTPUT]");
  add_common(dilate, true);
  dilate->callback([&opt] { run_dilate(opt); });

  CLI::App* extract = app.add_subcommand(
      "extract", "read the state transformers back out of a dilation file");
  extract->add_option("files", opt.files, "INPUT [OUTPUT]");
  add_common(extract, false);
  extract->callback([&opt] { run_extract(opt); });

  CLI::App* simulate = app.add_subcommand(
      "simulate", "sample measurement outcomes and compare with the exact "
                  "distribution");
  simulate->add_option("files", opt.files, "INSTRUMENT STATE");
  simulate
      ->add_option("--shots", opt.shots, "number of draws (at least 1)")
      ->required()
      ->check(CLI::Range(std::uint64_t{1},
                         std::numeric_limits<std::uint64_t>::max()));
  simulate->add_option("--seed", opt.seed, "generator seed")
      ->capture_default_str();
  add_common(simulate, true);
  simulate->callback([&opt] { run_simulate(opt); });

  CLI::App* polar = app.add_subcommand(
      "polar", "polar factorization of a square matrix");
  polar->add_option("files", opt.files, "matrix file");
  add_common(polar, false);
  polar->callback([&opt] { run_polar(opt); });

  CLI::App* refine = app.add_subcommand(
      "refine", "maximal refinement of an observable into rank-1 outcomes");
  refine->add_option("files", opt.files, "INPUT [OUTPUT]");
  add_common(refine, false);
  refine->callback([&opt] { run_refine(opt); });

  CLI::App* preset = app.add_subcommand(
      "preset", "list built-in instruments or export one to a file");
  preset->add_option("name", opt.preset_name, "preset name")
      ->check(CLI::IsMember(presets));
  preset->add_option("output", opt.preset_output, "instrument file to write");
  add_common(preset, false);
  preset->callback([&opt] { run_preset(opt); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  return kExitOk;
}

}  // namespace
}  // namespace qmeas_cli

int main(int argc, char** argv) {
  try {
    return qmeas_cli::run_app(argc, argv);
  } catch (const qmeas_cli::CommandError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qmeas_cli::kExitValidation;
  }
}
