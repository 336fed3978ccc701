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

#include "bfc/metrology.hpp"

#include <cmath>
#include <limits>

namespace bfc {

namespace {
constexpr double kImagTol = 1e-12;
}

CovarianceMatrix covariance_brute_force(const UnitaryMatrix& u, const GramMatrix& s,
                                        const OccupationVector& k, Species species) {
    if (!k.is_binary()) {
        throw ValidationError("covariance_brute_force: binary input required");
    }
    if (k.total() > 5) {
        throw ResourceLimitError("covariance_brute_force: total > 5");
    }
    const int m = k.modes();
    OutcomeDistribution dist = full_distribution(u, s, k, species);

    RealVector mean = RealVector::Zero(m);
    RealMatrix second = RealMatrix::Zero(m, m);
    for (const auto& [out, p] : dist.probabilities) {
        for (int a = 0; a < m; ++a) {
            mean(a) += p * out[a];
            for (int b = 0; b < m; ++b) second(a, b) += p * out[a] * out[b];
        }
    }
    CovarianceMatrix cov;
    cov.species = species;
    cov.input = k;
    cov.method = CovarianceMethod::BruteForce;
    cov.entries = second - mean * mean.transpose();
    return cov;
}

CovarianceMatrix covariance_closed_form(const UnitaryMatrix& u, const GramMatrix& s,
                                        const OccupationVector& k, Species species) {
    if (species == Species::Classical) {
        throw ValidationError("covariance_closed_form: boson or fermion only");
    }
    if (!k.is_binary()) {
        throw ValidationError("covariance_closed_form: binary input required");
    }
    const int m = k.modes();
    const double sign = species == Species::Boson ? 1.0 : -1.0;
    const Matrix& uu = u.matrix();
    const Matrix& ss = s.matrix();

    std::vector<int> occupied;
    for (int l = 0; l < m; ++l) {
        if (k[l]) occupied.push_back(l);
    }

    CovarianceMatrix cov;
    cov.species = species;
    cov.input = k;
    cov.method = CovarianceMethod::ClosedForm;
    cov.entries = RealMatrix::Zero(m, m);

    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            if (i == j) {
                double v = 0.0;
                for (int l : occupied) {
                    double p = std::norm(uu(l, i));
                    v += p - p * p;
                }
                double cross = 0.0;
                for (int l : occupied) {
                    for (int lp : occupied) {
                        if (l == lp) continue;
                        cross += std::norm(ss(l, lp)) * std::norm(uu(l, i)) *
                                 std::norm(uu(lp, i));
                    }
                }
                cov.entries(i, i) = v + sign * cross;
            } else {
                double v = 0.0;
                for (int l : occupied) {
                    v -= std::norm(uu(l, i)) * std::norm(uu(l, j));
                }
                Complex cross(0.0, 0.0);
                for (int l : occupied) {
                    for (int lp : occupied) {
                        if (l == lp) continue;
                        cross += std::norm(ss(l, lp)) * uu(l, i) * uu(lp, j) *
                                 std::conj(uu(lp, i)) * std::conj(uu(l, j));
                    }
                }
                if (std::abs(cross.imag()) > kImagTol * std::max(1.0, std::abs(cross))) {
                    throw ValidationError(
                        "covariance_closed_form: imaginary residue in pair sum");
                }
                cov.entries(i, j) = v + sign * cross.real();
            }
        }
    }
    return cov;
}

SumRuleReport verify_covariance_sum_rule(const UnitaryMatrix& u, const GramMatrix& s,
                                         const OccupationVector& k) {
    SumRuleReport report;
    RealMatrix cb = covariance_brute_force(u, s, k, Species::Boson).entries;
    RealMatrix cf = covariance_brute_force(u, s, k, Species::Fermion).entries;
    RealMatrix cc = covariance_brute_force(u, s, k, Species::Classical).entries;
    report.brute_residual = (cb + cf - 2.0 * cc).cwiseAbs().maxCoeff();

    RealMatrix cbc = covariance_closed_form(u, s, k, Species::Boson).entries;
    RealMatrix cfc = covariance_closed_form(u, s, k, Species::Fermion).entries;
    report.closed_residual = (cbc + cfc - 2.0 * cc).cwiseAbs().maxCoeff();
    report.method_disagreement =
        std::max((cb - cbc).cwiseAbs().maxCoeff(), (cf - cfc).cwiseAbs().maxCoeff());
    return report;
}

QfiReport qfi_report(const UnitaryMatrix& u, const GramMatrix& s,
                     const OccupationVector& k, Species species, long measurements) {
    if (measurements < 1) {
        throw ValidationError("qfi_report: N >= 1 required");
    }
    CovarianceMatrix cov =
        species == Species::Classical
            ? covariance_brute_force(u, s, k, species)
            : covariance_closed_form(u, s, k, species);

    const int m = k.modes();
    QfiReport report;
    report.species = species;
    report.measurements = measurements;
    report.per_mode_qfi = RealVector(m);
    report.cramer_rao_floor = RealVector(m);
    for (int i = 0; i < m; ++i) {
        double qfi = 4.0 * cov.entries(i, i);
        report.per_mode_qfi(i) = qfi;
        report.cramer_rao_floor(i) =
            qfi > 0.0 ? 1.0 / (static_cast<double>(measurements) * qfi)
                      : std::numeric_limits<double>::infinity();
    }
    return report;
}

}  // namespace bfc
