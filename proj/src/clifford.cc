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

#include "mqec/clifford.h"

#include <cmath>
#include <numbers>

#include "mqec/errors.h"

namespace mqec {

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

Mat2 make(cplx a, cplx b, cplx c, cplx d) {
    Mat2 r;
    r.m = {a, b, c, d};
    return r;
}

// Returns the Pauli letter code and sign s with u P u^dag = s Q, or 0 when the image is not a Pauli.
std::pair<uint8_t, bool> conjugate(const Mat2 &u, const Mat2 &p) {
    Mat2 img = u * p * u.dagger();
    const Mat2 cands[3] = {Mat2::x(), Mat2::z(), Mat2::y()};
    const uint8_t codes[3] = {1, 2, 3};
    for (int k = 0; k < 3; k++) {
        for (int sgn = 0; sgn < 2; sgn++) {
            double s = sgn ? -1.0 : 1.0;
            bool ok = true;
            for (int e = 0; e < 4; e++) {
                if (std::abs(img.m[e] - s * cands[k].m[e]) > 1e-9) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                return {codes[k], sgn == 1};
            }
        }
    }
    return {0, false};
}

}  // namespace

Mat2 Mat2::operator*(const Mat2 &o) const {
    return make(m[0] * o.m[0] + m[1] * o.m[2], m[0] * o.m[1] + m[1] * o.m[3], m[2] * o.m[0] + m[3] * o.m[2],
                m[2] * o.m[1] + m[3] * o.m[3]);
}

Mat2 Mat2::dagger() const {
    return make(std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3]));
}

bool Mat2::equiv(const Mat2 &o, double tol) const {
    // Find a reference entry and compare after removing the relative phase.
    int k = 0;
    for (int e = 0; e < 4; e++) {
        if (std::abs(m[e]) > std::abs(m[k])) {
            k = e;
        }
    }
    if (std::abs(o.m[k]) < 1e-12) {
        return false;
    }
    cplx ph = m[k] / o.m[k];
    if (std::abs(std::abs(ph) - 1.0) > tol) {
        return false;
    }
    for (int e = 0; e < 4; e++) {
        if (std::abs(m[e] - ph * o.m[e]) > tol) {
            return false;
        }
    }
    return true;
}

bool Mat2::is_diagonal(double tol) const {
    return std::abs(m[1]) < tol && std::abs(m[2]) < tol;
}

bool Mat2::is_antidiagonal(double tol) const {
    return std::abs(m[0]) < tol && std::abs(m[3]) < tol;
}

Mat2 Mat2::h() {
    return make(kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2);
}

Mat2 Mat2::x() {
    return make(0, 1, 1, 0);
}

Mat2 Mat2::y() {
    return make(0, cplx(0, -1), cplx(0, 1), 0);
}

Mat2 Mat2::z() {
    return make(1, 0, 0, -1);
}

Mat2 Mat2::s() {
    return make(1, 0, 0, cplx(0, 1));
}

Mat2 Mat2::sdg() {
    return make(1, 0, 0, cplx(0, -1));
}

Mat2 Mat2::rz(double theta) {
    return make(std::polar(1.0, -theta / 2), 0, 0, std::polar(1.0, theta / 2));
}

Mat2 Mat2::rx(double theta) {
    double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return make(c, cplx(0, -s), cplx(0, -s), c);
}

Mat2 Mat2::gr(double theta, double phi) {
    double c = std::cos(theta / 2), s = std::sin(theta / 2);
    // -i sin(theta/2) (cos phi X + sin phi Y)
    cplx off01 = cplx(0, -s) * std::polar(1.0, -phi);
    cplx off10 = cplx(0, -s) * std::polar(1.0, phi);
    return make(c, off01, off10, c);
}

CliffordClass clifford_class(const Mat2 &u) {
    if (u.is_diagonal()) {
        return CliffordClass::D;
    }
    if (u.is_antidiagonal()) {
        return CliffordClass::X;
    }
    return CliffordClass::H;
}

const char *class_name(CliffordClass c) {
    switch (c) {
        case CliffordClass::D:
            return "D";
        case CliffordClass::X:
            return "X";
        case CliffordClass::H:
            return "H";
    }
    return "?";
}

bool is_clifford(const Mat2 &u) {
    return conjugate(u, Mat2::x()).first != 0 && conjugate(u, Mat2::z()).first != 0;
}

PauliAction pauli_action(const Mat2 &u) {
    auto [xi, xs] = conjugate(u, Mat2::x());
    auto [zi, zs] = conjugate(u, Mat2::z());
    if (xi == 0 || zi == 0) {
        throw UnsupportedError("pauli_action: unitary is not Clifford");
    }
    PauliAction a;
    a.x_image = xi;
    a.x_sign = xs;
    a.z_image = zi;
    a.z_sign = zs;
    return a;
}

int quarter_turns(double theta) {
    double q = theta / (std::numbers::pi / 2);
    double r = std::round(q);
    if (std::abs(q - r) > 1e-9) {
        return -1;
    }
    long long k = static_cast<long long>(r) % 4;
    if (k < 0) {
        k += 4;
    }
    return static_cast<int>(k);
}

}  // namespace mqec
