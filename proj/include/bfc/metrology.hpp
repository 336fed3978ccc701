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

#ifndef BFC_METROLOGY_HPP
#define BFC_METROLOGY_HPP

#include "bfc/interference.hpp"

namespace bfc {

enum class CovarianceMethod { ClosedForm, BruteForce };

/// Output particle-number covariance C_ab = <n_a n_b> - <n_a><n_b>.
struct CovarianceMatrix {
    Species species;
    OccupationVector input;
    RealMatrix entries;
    CovarianceMethod method;
};

/// First and second moments assembled from the full output distribution.
/// Works for all three species; binary input, total <= 5.
CovarianceMatrix covariance_brute_force(const UnitaryMatrix& u, const GramMatrix& s,
                                        const OccupationVector& k, Species species);

/// Closed-form bosonic/fermionic covariance:
///   C_ii = sum_l' |U_li|^2 - sum_l |U_li|^4
///          +- sum_{l != l'} |S_ll'|^2 |U_li|^2 |U_l'i|^2
///   C_ij = -sum_l |U_li U_lj|^2
///          +- sum_{l != l'} |S_ll'|^2 U_li U_l'j conj(U_l'i U_lj)
/// (sums over occupied input modes l, l'; upper sign bosonic).
CovarianceMatrix covariance_closed_form(const UnitaryMatrix& u, const GramMatrix& s,
                                        const OccupationVector& k, Species species);

struct SumRuleReport {
    /// max-norm of C^B + C^F - 2 C^cl with all three from brute force
    double brute_residual = 0.0;
    /// same, with the closed forms substituted for C^B and C^F
    double closed_residual = 0.0;
    /// entrywise closed-form vs brute-force disagreement (max over B and F)
    double method_disagreement = 0.0;
};

SumRuleReport verify_covariance_sum_rule(const UnitaryMatrix& u, const GramMatrix& s,
                                         const OccupationVector& k);

struct QfiReport {
    Species species;
    RealVector per_mode_qfi;       // 4 * C_ii per phase-shifter mode
    RealVector cramer_rao_floor;   // 1/(N * qfi); +inf where qfi = 0
    long measurements = 0;
};

QfiReport qfi_report(const UnitaryMatrix& u, const GramMatrix& s,
                     const OccupationVector& k, Species species, long measurements);

}  // namespace bfc

#endif
