// Copyright 2026 The mqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MQEC_CLIFFORD_H
#define MQEC_CLIFFORD_H

#include <array>
#include <complex>
#include <cstdint>
#include <string>

namespace mqec {

using cplx = std::complex<double>;

// Single-qubit unitary as a row-major 2x2 matrix. Used both for exact Clifford
// bookkeeping in the compiler and for statevector gate application.
struct Mat2 {
    std::array<cplx, 4> m{cplx(1), cplx(0), cplx(0), cplx(1)};

    Mat2 operator*(const Mat2 &o) const;
    Mat2 dagger() const;
    // Equality up to a global phase.
    bool equiv(const Mat2 &o, double tol = 1e-9) const;
    bool is_diagonal(double tol = 1e-9) const;
    bool is_antidiagonal(double tol = 1e-9) const;

    static Mat2 identity() { return Mat2{}; }
    static Mat2 h();
    static Mat2 x();
    static Mat2 y();
    static Mat2 z();
    static Mat2 s();
    static Mat2 sdg();
    static Mat2 rz(double theta);
    static Mat2 rx(double theta);
    // exp(-i theta/2 (cos(phi) X + sin(phi) Y)).
    static Mat2 gr(double theta, double phi);
};

// Double cosets of the diagonal Cliffords inside the single-qubit Clifford group.
// D: diagonal, X: X times diagonal, H: maps Z to the equator.
enum class CliffordClass : uint8_t { D, X, H };
CliffordClass clifford_class(const Mat2 &u);
const char *class_name(CliffordClass c);

// Conjugation action of a single-qubit Clifford on Paulis: images of X and Z as
// letter code (1=X, 2=Z, 3=Y) plus sign bit. Built from the matrix; throws
// UnsupportedError when u is not Clifford.
struct PauliAction {
    uint8_t x_image = 1;
    bool x_sign = false;
    uint8_t z_image = 2;
    bool z_sign = false;
};
PauliAction pauli_action(const Mat2 &u);
bool is_clifford(const Mat2 &u);

// Angle helpers: returns k with theta = k*pi/2 (mod 2pi) when theta is such a
// multiple, else -1.
int quarter_turns(double theta);

}  // namespace mqec

#endif
