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

#include "mqec/pauli.h"

#include <bit>

#include "mqec/errors.h"

namespace mqec {

PauliString::PauliString(size_t n) : n_(n), xs_((n + 63) / 64, 0), zs_((n + 63) / 64, 0) {
}

PauliString PauliString::from_text(std::string_view text) {
    uint8_t phase = 0;
    size_t k = 0;
    if (k < text.size() && (text[k] == '+' || text[k] == '-')) {
        if (text[k] == '-') {
            phase = 2;
        }
        k++;
    }
    if (k < text.size() && text[k] == 'i') {
        phase = (phase + 1) & 3;
        k++;
    }
    PauliString p(text.size() - k);
    for (size_t q = 0; k < text.size(); k++, q++) {
        p.set_letter(q, text[k]);
    }
    p.phase_ = phase;
    return p;
}

void PauliString::set_x(size_t q, bool v) {
    uint64_t m = uint64_t{1} << (q & 63);
    xs_[q >> 6] = v ? (xs_[q >> 6] | m) : (xs_[q >> 6] & ~m);
}

void PauliString::set_z(size_t q, bool v) {
    uint64_t m = uint64_t{1} << (q & 63);
    zs_[q >> 6] = v ? (zs_[q >> 6] | m) : (zs_[q >> 6] & ~m);
}

char PauliString::letter(size_t q) const {
    static const char table[4] = {'I', 'X', 'Z', 'Y'};
    return table[(x(q) ? 1 : 0) | (z(q) ? 2 : 0)];
}

void PauliString::set_letter(size_t q, char c) {
    switch (c) {
        case 'I':
        case '_':
            set_x(q, false);
            set_z(q, false);
            break;
        case 'X':
            set_x(q, true);
            set_z(q, false);
            break;
        case 'Y':
            set_x(q, true);
            set_z(q, true);
            break;
        case 'Z':
            set_x(q, false);
            set_z(q, true);
            break;
        default:
            throw ConfigError(std::string("bad Pauli letter '") + c + "'");
    }
}

size_t PauliString::weight() const {
    size_t w = 0;
    for (size_t k = 0; k < xs_.size(); k++) {
        w += std::popcount(xs_[k] | zs_[k]);
    }
    return w;
}

bool PauliString::is_x_type() const {
    for (uint64_t w : zs_) {
        if (w) {
            return false;
        }
    }
    return true;
}

bool PauliString::is_z_type() const {
    for (uint64_t w : xs_) {
        if (w) {
            return false;
        }
    }
    return true;
}

bool PauliString::commutes(const PauliString &other) const {
    if (other.n_ != n_) {
        throw StructuralError("commutes: size mismatch");
    }
    int parity = 0;
    for (size_t k = 0; k < xs_.size(); k++) {
        parity ^= std::popcount((xs_[k] & other.zs_[k]) ^ (zs_[k] & other.xs_[k])) & 1;
    }
    return parity == 0;
}

int pauli_product_phase(uint64_t x1, uint64_t z1, uint64_t x2, uint64_t z2) {
    uint64_t pos = (x1 & z1 & ~x2 & z2) | (x1 & ~z1 & x2 & z2) | (~x1 & z1 & x2 & ~z2);
    uint64_t neg = (x1 & z1 & x2 & ~z2) | (x1 & ~z1 & ~x2 & z2) | (~x1 & z1 & x2 & z2);
    return (std::popcount(pos) - std::popcount(neg)) & 3;
}

PauliString PauliString::operator*(const PauliString &other) const {
    if (other.n_ != n_) {
        throw StructuralError("product: size mismatch");
    }
    PauliString r(n_);
    int ph = phase_ + other.phase_;
    for (size_t k = 0; k < xs_.size(); k++) {
        ph += pauli_product_phase(xs_[k], zs_[k], other.xs_[k], other.zs_[k]);
        r.xs_[k] = xs_[k] ^ other.xs_[k];
        r.zs_[k] = zs_[k] ^ other.zs_[k];
    }
    r.phase_ = ph & 3;
    return r;
}

bool PauliString::operator==(const PauliString &other) const {
    return phase_ == other.phase_ && same_letters(other);
}

bool PauliString::same_letters(const PauliString &other) const {
    return n_ == other.n_ && xs_ == other.xs_ && zs_ == other.zs_;
}

PauliString PauliString::tensor(const PauliString &other) const {
    PauliString r(n_ + other.n_);
    for (size_t q = 0; q < n_; q++) {
        r.set_x(q, x(q));
        r.set_z(q, z(q));
    }
    for (size_t q = 0; q < other.n_; q++) {
        r.set_x(n_ + q, other.x(q));
        r.set_z(n_ + q, other.z(q));
    }
    r.phase_ = (phase_ + other.phase_) & 3;
    return r;
}

std::string PauliString::letters() const {
    std::string s(n_, 'I');
    for (size_t q = 0; q < n_; q++) {
        s[q] = letter(q);
    }
    return s;
}

std::string PauliString::str() const {
    static const char *prefix[4] = {"+", "+i", "-", "-i"};
    return prefix[phase_] + letters();
}

}  // namespace mqec
