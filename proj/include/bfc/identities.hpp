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

#ifndef BFC_IDENTITIES_HPP
#define BFC_IDENTITIES_HPP

#include "bfc/interference.hpp"

namespace bfc {

struct ConvolutionReport {
    OccupationVector k;
    OccupationVector i;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    long term_count = 0;  // all elementwise-dominated pairs (m, j) <= (k, i)
    std::string species_pair;
};

/// Double-convolution complementarity:
///   sum_{m<=k, j<=i} (-1)^|j| F_{m->j} B_{k-m -> i-j} = delta_{k,0} delta_{i,0}.
/// Fermionic terms with a multiply occupied input mode are zero and skipped.
ConvolutionReport verify_bf_complementarity(const UnitaryMatrix& u,
                                            const GramMatrix& s,
                                            const OccupationVector& k,
                                            const OccupationVector& i);

/// Residual of the classical convolution
///   P_{k->i} = sum_kappa P_{j_split->kappa} P_{k-j_split -> i-kappa},
/// maximized over all outputs i with |i| = |k|.
struct ClassicalConvolutionReport {
    OccupationVector k;
    OccupationVector j_split;
    double max_residual = 0.0;
};

ClassicalConvolutionReport verify_classical_convolution(
    const UnitaryMatrix& u, const OccupationVector& k,
    const OccupationVector& j_split);

/// Same alternating double convolution with the permanental classical
/// weights perm(|Usub|^2)/(m! j!) on both factors. These equal the
/// classical probabilities on binary occupations and are the
/// normalization under which the alternating sum telescopes.
ConvolutionReport verify_classical_complementarity(const UnitaryMatrix& u,
                                                   const OccupationVector& k,
                                                   const OccupationVector& i);

/// B - F for k = i = (1,1,1) at two Gram matrices sharing the pairwise
/// magnitudes of S but differing in the triple phase arg(S12 S23 S31).
/// Three-particle interference cancels in the difference, so the two
/// values agree.
struct ThreeParticleReport {
    double b_minus_f_base = 0.0;
    double b_minus_f_twisted = 0.0;
    double twist_angle = 0.0;
    double delta() const { return std::abs(b_minus_f_base - b_minus_f_twisted); }
};

ThreeParticleReport three_particle_difference_scan(const UnitaryMatrix& u,
                                                   const GramMatrix& s);

}  // namespace bfc

#endif
