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

#ifndef MQEC_STATEVECTOR_H
#define MQEC_STATEVECTOR_H

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "mqec/circuit.h"
#include "mqec/clifford.h"

namespace mqec {

// Dense state vector over n qubits; qubit q is bit q of the basis index.
class StateVector {
   public:
    explicit StateVector(int n);

    int num_qubits() const { return n_; }
    const std::vector<cplx> &amplitudes() const { return amp_; }

    void apply_1q(int q, const Mat2 &u);
    void apply_cz(int a, int b);
    void apply_cx(int c, int t);
    void apply_swap(int a, int b);
    double probability(size_t basis) const { return std::norm(amp_[basis]); }

   private:
    int n_;
    std::vector<cplx> amp_;
};

// Exact noiseless outcome distribution. Keys hold one char per qubit ('0'/'1'); unmeasured
// qubits read '0'. Measurements are deferred to the end, which is exact because measured
// qubits are never reused. Logical-tier corrections are applied to the bits; physical-tier
// corrections act on decoded bits and are left to post-processing.
std::map<std::string, double> statevector_oracle(const Circuit &circuit, double cutoff = 1e-14);

}  // namespace mqec

#endif
