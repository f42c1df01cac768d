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

#ifndef MQEC_TABLEAU_H
#define MQEC_TABLEAU_H

#include <cstdint>
#include <vector>

#include "mqec/clifford.h"

namespace mqec {

// Conjugation table for a single-qubit Clifford: image letter (0 I, 1 X, 2 Z, 3 Y) and sign
// flip for each input letter, indexed by x + 2z.
struct CliffordTable {
    uint8_t x[4];
    uint8_t z[4];
    uint8_t flip[4];
};
CliffordTable clifford_table(const Mat2 &u);

// Stabilizer tableau (destabilizers rows 0..n-1, stabilizers rows n..2n-1) with one uint64 mask
// of X bits and Z bits per row; n <= 64.
class Tableau {
   public:
    explicit Tableau(int n);

    int num_qubits() const { return n_; }

    void h(int q);
    void s(int q);
    void x(int q) { flip_if(z_, q); }
    void z(int q) { flip_if(x_, q); }
    void y(int q);
    void cz(int a, int b);
    void cx(int c, int t);
    void apply(int q, const CliffordTable &t);

    // Z measurement. If the outcome is random, 'coin' (0/1) picks it.
    bool is_deterministic(int q) const;
    int measure(int q, int coin);
    // Outcome probability of reading 1: 0, 0.5, or 1.
    double peek_probability_one(int q) const;

   private:
    void flip_if(const std::vector<uint64_t> &mask, int q);
    void rowsum(int h, int i);
    int deterministic_outcome(int q) const;

    int n_;
    std::vector<uint64_t> x_, z_;
    std::vector<uint8_t> r_;
};

}  // namespace mqec

#endif
