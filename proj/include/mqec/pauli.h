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

#ifndef MQEC_PAULI_H
#define MQEC_PAULI_H

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mqec {

// Pauli string in symplectic form. Letter k is I, X, Z or Y for (x,z) = 00, 10, 01, 11
// and the operator is i^phase times the tensor product of the letters.
class PauliString {
   public:
    PauliString() = default;
    explicit PauliString(size_t n);

    // Parses "XXZI", "+XYZ", "-iZZ". Letters I X Y Z, or '_' for identity.
    static PauliString from_text(std::string_view text);

    size_t num_qubits() const { return n_; }
    uint8_t phase() const { return phase_; }
    void set_phase(uint8_t p) { phase_ = p & 3; }

    bool x(size_t q) const { return (xs_[q >> 6] >> (q & 63)) & 1; }
    bool z(size_t q) const { return (zs_[q >> 6] >> (q & 63)) & 1; }
    void set_x(size_t q, bool v);
    void set_z(size_t q, bool v);
    char letter(size_t q) const;
    void set_letter(size_t q, char c);

    size_t weight() const;
    bool is_identity() const { return weight() == 0; }
    bool is_x_type() const;
    bool is_z_type() const;
    bool commutes(const PauliString &other) const;

    // Exact product including phase: (*this) * other.
    PauliString operator*(const PauliString &other) const;
    bool operator==(const PauliString &other) const;
    bool operator!=(const PauliString &other) const { return !(*this == other); }

    // Same letters, ignoring phase.
    bool same_letters(const PauliString &other) const;

    // Tensor product this (x) other.
    PauliString tensor(const PauliString &other) const;

    // Letters only, e.g. "IXXI".
    std::string letters() const;
    // Phase prefix plus letters, e.g. "-iXZ".
    std::string str() const;

    const std::vector<uint64_t> &x_words() const { return xs_; }
    const std::vector<uint64_t> &z_words() const { return zs_; }

   private:
    size_t n_ = 0;
    uint8_t phase_ = 0;
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
};

// Exponent of i (mod 4) picked up when multiplying Hermitian letters bitwise:
// sum over qubits of g(x1,z1,x2,z2) with masks packed into 64-bit words.
int pauli_product_phase(uint64_t x1, uint64_t z1, uint64_t x2, uint64_t z2);

}  // namespace mqec

#endif
