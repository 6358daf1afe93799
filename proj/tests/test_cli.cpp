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

// Drives the installed command-line binary as a subprocess and checks exit
// codes, report contents, and file outputs end to end.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

struct TempDir {
  fs::path dir;

  TempDir() {
    dir = fs::temp_directory_path() /
          ("qmeas_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  std::string file(const std::string& name) const {
    return (dir / name).string();
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  REQUIRE(out.good());
}

// Runs the binary with `args` appended, stdout and stderr merged.
RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string capture =
      (fs::temp_directory_path() /
       ("qmeas_cli_out_" + std::to_string(::getpid()) + "_" +
        std::to_string(counter++)))
          .string();
  const std::string command =
      std::string(QMEAS_CLI_PATH) + " " + args + " >" + capture + " 2>&1";
  const int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.output = slurp(capture);
  std::error_code ec;
  fs::remove(capture, ec);
  return result;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("usage problems exit with the usage code") {
  CHECK(run_cli("").exit_code == 64);
  CHECK(run_cli("classify").exit_code == 64);
  CHECK(run_cli("simulate --preset luders-z").exit_code == 64);
  CHECK(run_cli("classify --preset no-such-preset").exit_code == 64);
  CHECK(run_cli("simulate --preset luders-z --shots 0").exit_code == 64);
  CHECK(run_cli("frobnicate").exit_code == 64);

  RunResult help = run_cli("--help");
  CHECK(help.exit_code == 0);
  CHECK(contains(help.output, "classify"));
  CHECK(contains(help.output, "simulate"));

  RunResult version = run_cli("--version");
  CHECK(version.exit_code == 0);
  CHECK(!version.output.empty());
}

TEST_CASE("built-in presets classify to their advertised kinds") {
  const struct {
    const char* name;
    const char* kind;
  } expected[] = {
      {"appendix-c-ideal", "IdealOrdinary"},
      {"appendix-c-repeatable", "RepeatableOrdinary"},
      {"appendix-c-nonrepeatable", "NonrepeatableOrdinary"},
      {"luders-z", "IdealOrdinary"},
      {"symmetric-coin", "Generalized"},
  };
  for (const auto& row : expected) {
    RunResult r = run_cli(std::string("classify --preset ") + row.name);
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, std::string("kind: ") + row.kind));
    CHECK(contains(r.output, "tolerance"));
  }
}

TEST_CASE("classification output is available as JSON") {
  RunResult r = run_cli("classify --preset appendix-c-ideal --json");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "\"kind\": \"IdealOrdinary\""));
  CHECK(contains(r.output, "\"projectors_complete\": true"));
}

TEST_CASE("preset listing names every built-in instrument") {
  RunResult r = run_cli("preset");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "appendix-c-ideal"));
  CHECK(contains(r.output, "appendix-c-repeatable"));
  CHECK(contains(r.output, "appendix-c-nonrepeatable"));
  CHECK(contains(r.output, "luders-z"));
  CHECK(contains(r.output, "symmetric-coin"));
}

TEST_CASE("preset export and file classification agree") {
  TempDir tmp;
  const std::string path = tmp.file("ideal.json");
  RunResult save = run_cli("preset appendix-c-ideal " + path);
  CHECK(save.exit_code == 0);
  REQUIRE(fs::exists(path));

  RunResult r = run_cli("classify " + path);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "kind: IdealOrdinary"));
}

TEST_CASE("simulation is reproducible for a fixed seed") {
  TempDir tmp;
  const std::string state = tmp.file("plus.json");
  spit(state,
       "{\n  \"schema_version\": \"1\",\n  \"kind\": \"state\",\n"
       "  \"dim\": 2,\n  \"amplitudes\": [[0.70710678118654757, 0], "
       "[0.70710678118654757, 0]]\n}\n");

  const std::string args =
      "simulate --preset luders-z --shots 20000 --seed 7 " + state;
  RunResult first = run_cli(args);
  RunResult second = run_cli(args);
  CHECK(first.exit_code == 0);
  CHECK(first.output == second.output);
  CHECK(contains(first.output, "total-variation distance:"));
  CHECK(contains(first.output, "tolerance"));

  RunResult other = run_cli(
      "simulate --preset luders-z --shots 20000 --seed 8 " + state);
  CHECK(other.exit_code == 0);
  CHECK(other.output != first.output);
}

TEST_CASE("dilate then extract reproduces the instrument file") {
  TempDir tmp;
  const std::string inst = tmp.file("inst.json");
  const std::string dil = tmp.file("dil.json");
  const std::string back = tmp.file("back.json");

  CHECK(run_cli("preset appendix-c-repeatable " + inst).exit_code == 0);
  RunResult dilate = run_cli("dilate " + inst + " " + dil);
  CHECK(dilate.exit_code == 0);
  CHECK(contains(dilate.output, "unitarity residual"));
  CHECK(contains(dilate.output, "round-trip residual"));
  REQUIRE(fs::exists(dil));

  RunResult extract = run_cli("extract " + dil + " " + back);
  CHECK(extract.exit_code == 0);
  REQUIRE(fs::exists(back));

  // The reconstructed file matches the source byte for byte.
  CHECK(slurp(back) == slurp(inst));
}

TEST_CASE("polar reports exact factors for a nilpotent input") {
  TempDir tmp;
  const std::string path = tmp.file("nilpotent.json");
  spit(path,
       "{\n  \"schema_version\": \"1\",\n  \"kind\": \"matrix\",\n"
       "  \"dim\": 2,\n  \"entries\": [\n    [[0, 0], [1, 0]],\n"
       "    [[0, 0], [0, 0]]\n  ]\n}\n");
  RunResult r = run_cli("polar " + path);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "residual ||U H - A||: 0"));
  CHECK(contains(r.output, "tolerance"));

  const std::string rect = tmp.file("rect.json");
  spit(rect,
       "{\n  \"schema_version\": \"1\",\n  \"kind\": \"matrix\",\n"
       "  \"dim\": [1, 2],\n  \"entries\": [\n    [[1, 0], [0, 0]]\n  ]\n}\n");
  RunResult bad = run_cli("polar " + rect);
  CHECK(bad.exit_code == 2);
  CHECK(contains(bad.output, "square"));
}

TEST_CASE("refine splits degenerate eigenvalues into rank-one pieces") {
  TempDir tmp;
  const std::string path = tmp.file("eye.json");
  spit(path,
       "{\n  \"schema_version\": \"1\",\n  \"kind\": \"matrix\",\n"
       "  \"dim\": 2,\n  \"entries\": [\n    [[1, 0], [0, 0]],\n"
       "    [[0, 0], [1, 0]]\n  ]\n}\n");
  RunResult r = run_cli("refine " + path);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "original:"));
  CHECK(contains(r.output, "refined:"));
  CHECK(contains(r.output, "rank 1"));
}

TEST_CASE("validation failures exit with the validation code") {
  TempDir tmp;

  const std::string broken = tmp.file("broken.json");
  spit(broken,
       "{\"schema_version\": \"1\", \"kind\": \"instrument\", \"dim\": 2, "
       "\"transformers\": ["
       "[[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]], "
       "[[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]]]}");
  RunResult r = run_cli("classify " + broken);
  CHECK(r.exit_code == 2);
  CHECK(contains(r.output, "completeness relation"));

  const std::string garbage = tmp.file("garbage.json");
  spit(garbage, "this is not json");
  CHECK(run_cli("classify " + garbage).exit_code == 2);

  CHECK(run_cli("classify " + tmp.file("absent.json")).exit_code == 2);
}

TEST_CASE("povm files classify as generalized measurements") {
  TempDir tmp;
  const std::string path = tmp.file("coin.json");
  spit(path,
       "{\"schema_version\": \"1\", \"kind\": \"povm\", \"dim\": 2, "
       "\"labels\": [\"heads\", \"tails\"], \"effects\": ["
       "[[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]], "
       "[[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]]]}");
  RunResult r = run_cli("classify " + path);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "kind: Generalized"));
  CHECK(contains(r.output, "heads"));
}

TEST_CASE("observable files run through the projective update") {
  TempDir tmp;
  const std::string path = tmp.file("obs.json");
  spit(path,
       "{\"schema_version\": \"1\", \"kind\": \"observable\", \"dim\": 2, "
       "\"eigenvalues\": [-0.5, 0.5], \"projectors\": ["
       "[[[0, 0], [0, 0]], [[0, 0], [1, 0]]], "
       "[[[1, 0], [0, 0]], [[0, 0], [0, 0]]]]}");
  RunResult r = run_cli("classify " + path);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "kind: IdealOrdinary"));
}
