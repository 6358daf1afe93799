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

#include "gallery.hpp"

#include <cmath>
#include <utility>

namespace qmeas {

namespace {

CMat projector_first_up() {
  CMat p = CMat::Zero(4, 4);
  p(0, 0) = p(1, 1) = Complex(1.0, 0.0);
  return p;
}

CMat projector_first_down() {
  CMat p = CMat::Zero(4, 4);
  p(2, 2) = p(3, 3) = Complex(1.0, 0.0);
  return p;
}

CMat two_qubit_swap() {
  CMat s = CMat::Zero(4, 4);
  s(0, 0) = s(3, 3) = Complex(1.0, 0.0);
  s(1, 2) = s(2, 1) = Complex(1.0, 0.0);
  return s;
}

void require_unitary_dim(const CMat& u, Index dim, const char* what,
                         double tol) {
  if (u.rows() != dim || u.cols() != dim) {
    throw DimensionMismatch(std::string(what) + " must be " +
                            std::to_string(dim) + "x" + std::to_string(dim));
  }
  if (!is_unitary(u, tol)) {
    throw NotUnitary(std::string(what) + " is not unitary within tolerance");
  }
}

// A pair unitary "acts on the first spin" unless it factors as 1 (x) v. The
// candidate v is the upper-left second-spin block, made unitary through its
// polar factor; if that reproduces the whole operator, the first spin is
// untouched.
void require_first_spin_action(const CMat& u, const char* what, double tol) {
  const CMat block = u.topLeftCorner(2, 2);
  const CMat v = polar_factorize(block, tol).unitary;
  const CMat id2 = CMat::Identity(2, 2);
  if ((u - tensor(id2, v)).norm() <= tol) {
    throw NotLocallyNontrivial(
        std::string(what) +
        " factors as 1 (x) v and leaves the first spin untouched");
  }
}

}  // namespace

CMat pauli(char axis) {
  CMat m(2, 2);
  switch (axis) {
    case 'x':
      m << Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0);
      return m;
    case 'y':
      m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
      return m;
    case 'z':
      m << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0);
      return m;
    default:
      throw Error(ErrorCode::InvalidArgument,
                  std::string("unknown Pauli axis '") + axis +
                      "'; expected x, y, or z");
  }
}

Observable spin_pair_observable() {
  return Observable({-1.0, +1.0}, {projector_first_down(), projector_first_up()});
}

Instrument spin_pair_ideal() {
  return Instrument({projector_first_up(), projector_first_down()},
                    {"up", "down"});
}

Instrument spin_pair_repeatable(const CMat& u_up, const CMat& u_down,
                                double tol) {
  require_unitary_dim(u_up, 2, "second-spin unitary for outcome up", tol);
  require_unitary_dim(u_down, 2, "second-spin unitary for outcome down", tol);
  const CMat id2 = CMat::Identity(2, 2);
  std::vector<CMat> transformers = {
      tensor(id2, u_up) * projector_first_up(),
      tensor(id2, u_down) * projector_first_down()};
  return Instrument(std::move(transformers), {"up", "down"}, 10.0 * tol);
}

Instrument spin_pair_nonrepeatable(const CMat& u_up, const CMat& u_down,
                                   double tol) {
  require_unitary_dim(u_up, 4, "pair unitary for outcome up", tol);
  require_unitary_dim(u_down, 4, "pair unitary for outcome down", tol);
  require_first_spin_action(u_up, "pair unitary for outcome up", tol);
  require_first_spin_action(u_down, "pair unitary for outcome down", tol);
  std::vector<CMat> transformers = {u_up * projector_first_up(),
                                    u_down * projector_first_down()};
  return Instrument(std::move(transformers), {"up", "down"}, 10.0 * tol);
}

std::vector<std::string> preset_names() {
  return {"appendix-c-ideal", "appendix-c-repeatable",
          "appendix-c-nonrepeatable", "luders-z", "symmetric-coin"};
}

Instrument preset_instrument(const std::string& name, double tol) {
  if (name == "appendix-c-ideal") {
    return spin_pair_ideal();
  }
  if (name == "appendix-c-repeatable") {
    return spin_pair_repeatable(pauli('x'), CMat::Identity(2, 2), tol);
  }
  if (name == "appendix-c-nonrepeatable") {
    const CMat swap = two_qubit_swap();
    return spin_pair_nonrepeatable(swap, swap, tol);
  }
  if (name == "luders-z") {
    return luders_instrument(Observable::from_matrix(pauli('z'), {}, tol));
  }
  if (name == "symmetric-coin") {
    const CMat half = 0.5 * CMat::Identity(2, 2);
    return instrument_from_povm(Povm({half, half}, {"heads", "tails"}, tol),
                                {}, tol);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown preset '" + name + "'");
}

}  // namespace qmeas
