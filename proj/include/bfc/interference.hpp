// Copyright 2026 The bfc authors
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

#ifndef BFC_INTERFERENCE_HPP
#define BFC_INTERFERENCE_HPP

#include <map>
#include <string>
#include <vector>

#include "bfc/algebra.hpp"

namespace bfc {

enum class Species { Boson, Fermion, Classical };

std::string species_name(Species s);

/// Particle counts per mode.
class OccupationVector {
  public:
    OccupationVector() = default;
    explicit OccupationVector(std::vector<int> occ);
    static OccupationVector zeros(int m) {
        return OccupationVector(std::vector<int>(m, 0));
    }

    int total() const;
    int modes() const { return static_cast<int>(occ_.size()); }
    int operator[](int i) const { return occ_[i]; }
    const std::vector<int>& values() const { return occ_; }
    bool is_vacuum() const { return total() == 0; }
    bool is_binary() const;
    bool dominates(const OccupationVector& other) const;  // other <= this elementwise
    OccupationVector minus(const OccupationVector& other) const;

    /// Product of factorials of the entries.
    double factorial_product() const;

    /// Sorted list of mode indices, mode i appearing occ[i] times.
    std::vector<int> expand() const;

    bool operator==(const OccupationVector& o) const { return occ_ == o.occ_; }
    bool operator<(const OccupationVector& o) const { return occ_ < o.occ_; }

    std::string to_string() const;  // "1,1,0"

  private:
    std::vector<int> occ_;
};

/// All occupation vectors over m modes with the given total, in
/// lexicographic order (weak compositions of n into m parts).
std::vector<OccupationVector> weak_compositions(int n, int m);

/// n x n submatrix of U with rows repeated per the input occupation and
/// columns per the output occupation: out(a, b) = U(expand(in)[a], expand(out)[b]).
Matrix effective_scattering_matrix(const UnitaryMatrix& u,
                                   const OccupationVector& in,
                                   const OccupationVector& out);

/// Order-3 tensor combining the effective scattering matrix with the
/// expanded Gram submatrix: w(k, l, t) = Usub(k, t) * conj(Usub(l, t)) * Ssub(l, k).
class WTensor {
  public:
    WTensor(int n, std::vector<Complex> entries);

    int n() const { return n_; }
    Complex at(int k, int l, int t) const { return w_[(k * n_ + l) * n_ + t]; }
    Complex& at(int k, int l, int t) { return w_[(k * n_ + l) * n_ + t]; }

  private:
    int n_;
    std::vector<Complex> w_;
};

WTensor build_w_tensor(const UnitaryMatrix& u, const GramMatrix& s,
                       const OccupationVector& in, const OccupationVector& out);

/// Naive double-permutation sum, O((n!)^2 n). n <= 6.
Complex tensor_permanent_def(const WTensor& w);
Complex tensor_determinant_def(const WTensor& w);

/// Single permutation sum over matrix permanents of entrywise products,
/// O(n! 2^n n). n <= 10.
Complex tensor_permanent_compact(const UnitaryMatrix& u, const GramMatrix& s,
                                 const OccupationVector& in,
                                 const OccupationVector& out);
Complex tensor_determinant_compact(const UnitaryMatrix& u, const GramMatrix& s,
                                   const OccupationVector& in,
                                   const OccupationVector& out);

/// Transition probability k -> i for the given species. Bosons use the
/// tensor permanent, fermions the tensor determinant (each divided by
/// k! i!), classical particles the bosonic formula at S = I (equivalently
/// perm(|Usub|^2)/(k! i!) for binary k). Returns 0 when totals differ.
/// Fermionic inputs must be binary.
double transition_probability(const UnitaryMatrix& u, const GramMatrix& s,
                              const OccupationVector& k,
                              const OccupationVector& i, Species species);

struct OutcomeDistribution {
    Species species;
    OccupationVector input;
    std::map<OccupationVector, double> probabilities;
    double normalization_defect = 0.0;
};

/// Probabilities over every output with the input's particle total.
/// Negative roundoff below 1e-12 in magnitude is clamped to 0 here
/// (transition_probability itself reports raw values).
OutcomeDistribution full_distribution(const UnitaryMatrix& u, const GramMatrix& s,
                                      const OccupationVector& k, Species species);

}  // namespace bfc

#endif
