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

#include "mqec/tableau.h"

#include "mqec/errors.h"
#include "mqec/pauli.h"

namespace mqec {

CliffordTable clifford_table(const Mat2 &u) {
    PauliAction a = pauli_action(u);
    CliffordTable t{};
    auto xz = [](uint8_t letter, uint8_t *x, uint8_t *z) {
        *x = letter == 1 || letter == 3;
        *z = letter == 2 || letter == 3;
    };
    // I
    t.x[0] = t.z[0] = t.flip[0] = 0;
    // X
    xz(a.x_image, &t.x[1], &t.z[1]);
    t.flip[1] = a.x_sign;
    // Z
    xz(a.z_image, &t.x[2], &t.z[2]);
    t.flip[2] = a.z_sign;
    // Y = i X Z maps to i (sx Px)(sz Pz).
    uint64_t x1 = t.x[1], z1 = t.z[1], x2 = t.x[2], z2 = t.z[2];
    int ph = 1 + pauli_product_phase(x1, z1, x2, z2);
    t.x[3] = static_cast<uint8_t>(x1 ^ x2);
    t.z[3] = static_cast<uint8_t>(z1 ^ z2);
    t.flip[3] = static_cast<uint8_t>(((ph & 3) >> 1) ^ a.x_sign ^ a.z_sign);
    return t;
}

Tableau::Tableau(int n) : n_(n) {
    if (n < 0 || n > 64) {
        throw CapacityError("tableau: " + std::to_string(n) + " atoms exceeds the 64-atom cap");
    }
    x_.assign(2 * n + 1, 0);
    z_.assign(2 * n + 1, 0);
    r_.assign(2 * n + 1, 0);
    for (int i = 0; i < n; i++) {
        x_[i] = uint64_t(1) << i;
        z_[n + i] = uint64_t(1) << i;
    }
}

void Tableau::flip_if(const std::vector<uint64_t> &mask, int q) {
    for (int i = 0; i < 2 * n_; i++) {
        r_[i] ^= (mask[i] >> q) & 1;
    }
}

void Tableau::h(int q) {
    uint64_t b = uint64_t(1) << q;
    for (int i = 0; i < 2 * n_; i++) {
        uint64_t xi = x_[i] & b, zi = z_[i] & b;
        r_[i] ^= (xi && zi);
        x_[i] = (x_[i] & ~b) | zi;
        z_[i] = (z_[i] & ~b) | xi;
    }
}

void Tableau::s(int q) {
    uint64_t b = uint64_t(1) << q;
    for (int i = 0; i < 2 * n_; i++) {
        uint64_t xi = x_[i] & b;
        r_[i] ^= (xi && (z_[i] & b));
        z_[i] ^= xi;
    }
}

void Tableau::y(int q) {
    for (int i = 0; i < 2 * n_; i++) {
        r_[i] ^= ((x_[i] ^ z_[i]) >> q) & 1;
    }
}

void Tableau::cz(int a, int b) {
    for (int i = 0; i < 2 * n_; i++) {
        uint64_t xa = (x_[i] >> a) & 1, xb = (x_[i] >> b) & 1;
        uint64_t za = (z_[i] >> a) & 1, zb = (z_[i] >> b) & 1;
        r_[i] ^= xa & xb & (za ^ zb);
        z_[i] ^= (xb << a) | (xa << b);
    }
}

void Tableau::cx(int c, int t) {
    for (int i = 0; i < 2 * n_; i++) {
        uint64_t xc = (x_[i] >> c) & 1, xt = (x_[i] >> t) & 1;
        uint64_t zc = (z_[i] >> c) & 1, zt = (z_[i] >> t) & 1;
        r_[i] ^= xc & zt & (xt ^ zc ^ 1);
        x_[i] ^= xc << t;
        z_[i] ^= zt << c;
    }
}

void Tableau::apply(int q, const CliffordTable &t) {
    uint64_t b = uint64_t(1) << q;
    for (int i = 0; i < 2 * n_; i++) {
        int l = static_cast<int>(((x_[i] >> q) & 1) | (((z_[i] >> q) & 1) << 1));
        if (!l) {
            continue;
        }
        r_[i] ^= t.flip[l];
        x_[i] = (x_[i] & ~b) | (uint64_t(t.x[l]) << q);
        z_[i] = (z_[i] & ~b) | (uint64_t(t.z[l]) << q);
    }
}

void Tableau::rowsum(int h, int i) {
    int ph = 2 * r_[h] + 2 * r_[i] + pauli_product_phase(x_[i], z_[i], x_[h], z_[h]);
    r_[h] = static_cast<uint8_t>((ph & 3) >> 1);
    x_[h] ^= x_[i];
    z_[h] ^= z_[i];
}

bool Tableau::is_deterministic(int q) const {
    for (int p = n_; p < 2 * n_; p++) {
        if ((x_[p] >> q) & 1) {
            return false;
        }
    }
    return true;
}

int Tableau::deterministic_outcome(int q) const {
    // Accumulate the stabilizer product equal to +/- Z_q without touching the tableau.
    uint64_t sx = 0, sz = 0;
    int ph = 0;
    for (int i = 0; i < n_; i++) {
        if ((x_[i] >> q) & 1) {
            int row = i + n_;
            ph += 2 * r_[row] + pauli_product_phase(x_[row], z_[row], sx, sz);
            sx ^= x_[row];
            sz ^= z_[row];
        }
    }
    return (ph & 3) >> 1;
}

double Tableau::peek_probability_one(int q) const {
    if (!is_deterministic(q)) {
        return 0.5;
    }
    return deterministic_outcome(q);
}

int Tableau::measure(int q, int coin) {
    int p = -1;
    for (int i = n_; i < 2 * n_; i++) {
        if ((x_[i] >> q) & 1) {
            p = i;
            break;
        }
    }
    if (p < 0) {
        return deterministic_outcome(q);
    }
    for (int i = 0; i < 2 * n_; i++) {
        if (i != p && ((x_[i] >> q) & 1)) {
            rowsum(i, p);
        }
    }
    x_[p - n_] = x_[p];
    z_[p - n_] = z_[p];
    r_[p - n_] = r_[p];
    x_[p] = 0;
    z_[p] = uint64_t(1) << q;
    r_[p] = static_cast<uint8_t>(coin & 1);
    return coin & 1;
}

}  // namespace mqec
