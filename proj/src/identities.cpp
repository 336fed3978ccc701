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

#include "bfc/identities.hpp"

#include <cmath>

namespace bfc {

namespace {

/// All vectors v <= cap elementwise, lexicographic.
std::vector<OccupationVector> dominated_vectors(const OccupationVector& cap) {
    std::vector<OccupationVector> out;
    const int m = cap.modes();
    std::vector<int> cur(m, 0);
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == m) {
            out.emplace_back(cur);
            return;
        }
        for (int c = 0; c <= cap[pos]; ++c) {
            cur[pos] = c;
            self(self, pos + 1);
        }
    };
    rec(rec, 0);
    return out;
}

/// Permanental classical weight perm(|Usub|^2)/(in! out!). Coincides with
/// the classical transition probability whenever `in` is binary; for bunched
/// inputs it is the convolution-compatible normalization the alternating
/// identity needs (the multinomial probability is not).
double classical_perm_weight(const UnitaryMatrix& u, const OccupationVector& in,
                             const OccupationVector& out) {
    if (in.total() != out.total()) return 0.0;
    if (in.is_vacuum()) return 1.0;
    Matrix sub = effective_scattering_matrix(u, in, out).cwiseAbs2();
    return permanent(sub).real() /
           (in.factorial_product() * out.factorial_product());
}

ConvolutionReport double_convolution(const UnitaryMatrix& u, const GramMatrix* s,
                                     const OccupationVector& k,
                                     const OccupationVector& i, bool classical) {
    if (k.total() != i.total()) {
        throw ValidationError("complementarity: |k| != |i|");
    }
    if (k.total() > 4) {
        throw ResourceLimitError("complementarity: total > 4");
    }

    ConvolutionReport report;
    report.k = k;
    report.i = i;
    report.species_pair = classical ? "classical/classical" : "fermion/boson";

    const std::vector<OccupationVector> ms = dominated_vectors(k);
    const std::vector<OccupationVector> js = dominated_vectors(i);
    report.term_count = static_cast<long>(ms.size()) * static_cast<long>(js.size());

    KahanSum acc;
    for (const OccupationVector& m : ms) {
        for (const OccupationVector& j : js) {
            // Conservation kills terms with mismatched totals on either factor.
            if (m.total() != j.total()) continue;
            double first, second;
            if (classical) {
                first = classical_perm_weight(u, m, j);
                second = classical_perm_weight(u, k.minus(m), i.minus(j));
            } else {
                if (!m.is_binary()) continue;  // zero fermionic probability
                first = transition_probability(u, *s, m, j, Species::Fermion);
                second = transition_probability(u, *s, k.minus(m), i.minus(j),
                                                Species::Boson);
            }
            acc.add((j.total() % 2 ? -1.0 : 1.0) * first * second);
        }
    }
    report.lhs = acc.value();
    report.rhs = (k.is_vacuum() && i.is_vacuum()) ? 1.0 : 0.0;
    report.residual = std::abs(report.lhs - report.rhs);
    return report;
}

}  // namespace

ConvolutionReport verify_bf_complementarity(const UnitaryMatrix& u,
                                            const GramMatrix& s,
                                            const OccupationVector& k,
                                            const OccupationVector& i) {
    return double_convolution(u, &s, k, i, false);
}

ConvolutionReport verify_classical_complementarity(const UnitaryMatrix& u,
                                                   const OccupationVector& k,
                                                   const OccupationVector& i) {
    GramMatrix ident = GramMatrix::identity(u.modes());
    return double_convolution(u, &ident, k, i, true);
}

ClassicalConvolutionReport verify_classical_convolution(
    const UnitaryMatrix& u, const OccupationVector& k,
    const OccupationVector& j_split) {
    if (!k.dominates(j_split)) {
        throw ValidationError("classical convolution: split not <= k");
    }
    GramMatrix ident = GramMatrix::identity(u.modes());
    const OccupationVector rest = k.minus(j_split);
    ClassicalConvolutionReport report;
    report.k = k;
    report.j_split = j_split;

    for (const OccupationVector& i : weak_compositions(k.total(), k.modes())) {
        double lhs = transition_probability(u, ident, k, i, Species::Classical);
        KahanSum rhs;
        for (const OccupationVector& kappa :
             weak_compositions(j_split.total(), k.modes())) {
            if (!i.dominates(kappa)) continue;
            rhs.add(transition_probability(u, ident, j_split, kappa,
                                           Species::Classical) *
                    transition_probability(u, ident, rest, i.minus(kappa),
                                           Species::Classical));
        }
        report.max_residual =
            std::max(report.max_residual, std::abs(lhs - rhs.value()));
    }
    return report;
}

ThreeParticleReport three_particle_difference_scan(const UnitaryMatrix& u,
                                                   const GramMatrix& s) {
    if (u.modes() != 3) {
        throw DimensionError("three_particle_difference_scan: 3-mode unitary required");
    }
    const double a12 = std::abs(s.matrix()(0, 1));
    const double a23 = std::abs(s.matrix()(1, 2));
    const double a13 = std::abs(s.matrix()(0, 2));

    auto make_gram = [&](double phase) {
        Matrix g(3, 3);
        g.setIdentity();
        g(0, 1) = a12 * Complex(std::cos(phase), std::sin(phase));
        g(1, 0) = std::conj(g(0, 1));
        g(1, 2) = a23;
        g(2, 1) = a23;
        g(0, 2) = a13;
        g(2, 0) = a13;
        return g;
    };

    auto psd_ok = [](const Matrix& g) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(g, Eigen::EigenvaluesOnly);
        return es.eigenvalues().minCoeff() >= -1e-10;
    };

    // Base: real Gram with the same magnitudes; twisted: phase on S12.
    // Halve the twist until both matrices are PSD.
    double twist = 0.4;
    Matrix base = make_gram(0.0);
    Matrix twisted = make_gram(twist);
    while (twist > 1e-6 && (!psd_ok(base) || !psd_ok(twisted))) {
        twist *= 0.5;
        twisted = make_gram(twist);
    }
    if (!psd_ok(base) || !psd_ok(twisted)) {
        throw ValidationError("three_particle_difference_scan: no PSD twist found");
    }

    OccupationVector ones(std::vector<int>{1, 1, 1});
    auto b_minus_f = [&](const Matrix& g) {
        GramMatrix gram(g);
        return transition_probability(u, gram, ones, ones, Species::Boson) -
               transition_probability(u, gram, ones, ones, Species::Fermion);
    };

    ThreeParticleReport report;
    report.twist_angle = twist;
    report.b_minus_f_base = b_minus_f(base);
    report.b_minus_f_twisted = b_minus_f(twisted);
    return report;
}

}  // namespace bfc
