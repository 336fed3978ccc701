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

#include "fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace bfc::oracle {

namespace {

// Distinguishable particles: each one scatters independently, so the
// probability of a mode content is a plain sum over assignment functions.
double classical_probability(const UnitaryMatrix& u, const std::vector<int>& ks,
                             const OccupationVector& out) {
    const int n = static_cast<int>(ks.size());
    const int m = static_cast<int>(u.modes());
    double total = 0.0;
    std::vector<int> f(n, 0);
    while (true) {
        std::vector<int> content(m, 0);
        for (int a = 0; a < n; ++a) ++content[f[a]];
        if (OccupationVector(content) == out) {
            double p = 1.0;
            for (int a = 0; a < n; ++a) p *= std::norm(u.matrix()(ks[a], f[a]));
            total += p;
        }
        int a = n - 1;
        while (a >= 0 && ++f[a] == m) f[a--] = 0;
        if (a < 0) break;
    }
    return total;
}

}  // namespace

double fock_probability(const UnitaryMatrix& u, const GramMatrix& s,
                        const OccupationVector& in, const OccupationVector& out,
                        Species species) {
    if (in.total() != out.total()) return 0.0;
    const int n = in.total();
    if (n == 0) return 1.0;
    if (n > 3) throw ResourceLimitError("fock oracle limited to n <= 3");
    const int m = static_cast<int>(u.modes());
    const std::vector<int> ks = in.expand();

    if (species == Species::Classical) return classical_probability(u, ks, out);

    // Concrete internal states realizing the expanded Gram matrix: rows of
    // V sqrt(D) from the eigendecomposition of Sexp (phi_a . conj(phi_b) = S_ab).
    Matrix sexp(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) sexp(a, b) = s.matrix()(ks[a], ks[b]);
    Eigen::SelfAdjointEigenSolver<Matrix> es(sexp);
    Matrix l = es.eigenvectors() *
               es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
    const int d = n;

    // Evolved single-particle vectors over the (mode, internal) index
    // p = t*d + c: w_a(p) = U(ks[a], t) * conj(L(a, c)).
    const int dim = m * d;
    std::vector<ComplexVector> w(n, ComplexVector::Zero(dim));
    for (int a = 0; a < n; ++a)
        for (int t = 0; t < m; ++t)
            for (int c = 0; c < d; ++c)
                w[a](t * d + c) = u.matrix()(ks[a], t) * std::conj(l(a, c));

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);

    // Sum |(anti)symmetrized amplitude|^2 over every ordered basis tuple,
    // keeping the numerator only when the tuple's mode content matches out.
    double numerator = 0.0, norm2 = 0.0;
    std::vector<int> p(n, 0);
    while (true) {
        Complex amp = 0.0;
        std::vector<int> perm = order;
        do {
            int sign = 1;
            if (species == Species::Fermion) {
                std::vector<int> tmp = perm;
                for (int a = 0; a < n; ++a) {
                    while (tmp[a] != a) {
                        std::swap(tmp[a], tmp[tmp[a]]);
                        sign = -sign;
                    }
                }
            }
            Complex term = static_cast<double>(sign);
            for (int a = 0; a < n; ++a) term *= w[perm[a]](p[a]);
            amp += term;
        } while (std::next_permutation(perm.begin(), perm.end()));

        const double a2 = std::norm(amp);
        norm2 += a2;
        std::vector<int> content(m, 0);
        for (int a = 0; a < n; ++a) ++content[p[a] / d];
        if (OccupationVector(content) == out) numerator += a2;

        int a = n - 1;
        while (a >= 0 && ++p[a] == dim) p[a--] = 0;
        if (a < 0) break;
    }
    return numerator / norm2;
}

}  // namespace bfc::oracle
