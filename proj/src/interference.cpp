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

#include "bfc/interference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

namespace bfc {

namespace {
constexpr double kImagTol = 1e-12;
constexpr double kClampTol = 1e-12;

int permutation_sign(const std::vector<int>& perm) {
    std::vector<int> p = perm;
    int sign = 1;
    for (int i = 0; i < static_cast<int>(p.size()); ++i) {
        while (p[i] != i) {
            std::swap(p[i], p[p[i]]);
            sign = -sign;
        }
    }
    return sign;
}

Matrix expanded_gram(const GramMatrix& s, const std::vector<int>& rows) {
    const int n = static_cast<int>(rows.size());
    Matrix sub(n, n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) sub(a, b) = s.matrix()(rows[a], rows[b]);
    }
    return sub;
}

// Shared body of the compact perm/det forms; with_sign toggles sgn(sigma).
Complex tensor_compact(const UnitaryMatrix& u, const GramMatrix& s,
                       const OccupationVector& in, const OccupationVector& out,
                       bool with_sign) {
    if (in.total() != out.total()) {
        throw DimensionError("tensor compact: particle totals differ");
    }
    const int n = in.total();
    if (n > 10) throw ResourceLimitError("tensor compact: n > 10");
    if (n == 0) return Complex(1.0, 0.0);

    Matrix usub = effective_scattering_matrix(u, in, out);
    Matrix ssub = expanded_gram(s, in.expand());

    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    Complex total(0.0, 0.0);
    do {
        Matrix prod(n, n);
        for (int a = 0; a < n; ++a) {
            for (int t = 0; t < n; ++t) {
                prod(a, t) = usub(a, t) * std::conj(usub(sigma[a], t));
            }
        }
        Complex gram_factor(1.0, 0.0);
        for (int a = 0; a < n; ++a) gram_factor *= ssub(sigma[a], a);
        Complex term = permanent(prod) * gram_factor;
        if (with_sign && permutation_sign(sigma) < 0) term = -term;
        total += term;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return total;
}

Complex tensor_def(const WTensor& w, bool with_sign) {
    const int n = w.n();
    if (n > 6) throw ResourceLimitError("tensor def: n > 6");
    if (n == 0) return Complex(1.0, 0.0);

    std::vector<int> s1(n);
    std::iota(s1.begin(), s1.end(), 0);
    Complex total(0.0, 0.0);
    do {
        const int sgn1 = with_sign ? permutation_sign(s1) : 1;
        std::vector<int> s2(n);
        std::iota(s2.begin(), s2.end(), 0);
        do {
            Complex prod(1.0, 0.0);
            for (int t = 0; t < n; ++t) prod *= w.at(s1[t], s2[t], t);
            if (with_sign) {
                prod *= static_cast<double>(sgn1 * permutation_sign(s2));
            }
            total += prod;
        } while (std::next_permutation(s2.begin(), s2.end()));
    } while (std::next_permutation(s1.begin(), s1.end()));
    return total;
}

double real_checked(Complex v, const char* what) {
    double scale = std::max(1.0, std::abs(v));
    if (std::abs(v.imag()) > kImagTol * scale) {
        throw ValidationError(std::string(what) + ": imaginary residue " +
                              std::to_string(v.imag()));
    }
    return v.real();
}
}  // namespace

std::string species_name(Species s) {
    switch (s) {
        case Species::Boson: return "boson";
        case Species::Fermion: return "fermion";
        case Species::Classical: return "classical";
    }
    return "?";
}

OccupationVector::OccupationVector(std::vector<int> occ) : occ_(std::move(occ)) {
    for (int c : occ_) {
        if (c < 0) throw ValidationError("OccupationVector: negative count");
    }
}

int OccupationVector::total() const {
    return std::accumulate(occ_.begin(), occ_.end(), 0);
}

bool OccupationVector::is_binary() const {
    return std::all_of(occ_.begin(), occ_.end(), [](int c) { return c <= 1; });
}

bool OccupationVector::dominates(const OccupationVector& other) const {
    if (other.modes() != modes()) return false;
    for (int i = 0; i < modes(); ++i) {
        if (other.occ_[i] > occ_[i]) return false;
    }
    return true;
}

OccupationVector OccupationVector::minus(const OccupationVector& other) const {
    if (!dominates(other)) {
        throw ValidationError("OccupationVector::minus: not elementwise <=");
    }
    std::vector<int> out(occ_);
    for (int i = 0; i < modes(); ++i) out[i] -= other.occ_[i];
    return OccupationVector(std::move(out));
}

double OccupationVector::factorial_product() const {
    double f = 1.0;
    for (int c : occ_) {
        for (int j = 2; j <= c; ++j) f *= j;
    }
    return f;
}

std::vector<int> OccupationVector::expand() const {
    std::vector<int> out;
    out.reserve(total());
    for (int i = 0; i < modes(); ++i) {
        out.insert(out.end(), occ_[i], i);
    }
    return out;
}

std::string OccupationVector::to_string() const {
    std::string s;
    for (int i = 0; i < modes(); ++i) {
        if (i) s += ',';
        s += std::to_string(occ_[i]);
    }
    return s;
}

std::vector<OccupationVector> weak_compositions(int n, int m) {
    std::vector<OccupationVector> out;
    std::vector<int> cur(m, 0);
    // lexicographic over (cur[0], ..., cur[m-1])
    auto rec = [&](auto&& self, int pos, int rem) -> void {
        if (pos == m - 1) {
            cur[pos] = rem;
            out.emplace_back(cur);
            return;
        }
        for (int c = 0; c <= rem; ++c) {
            cur[pos] = c;
            self(self, pos + 1, rem - c);
        }
    };
    if (m >= 1) rec(rec, 0, n);
    return out;
}

Matrix effective_scattering_matrix(const UnitaryMatrix& u,
                                   const OccupationVector& in,
                                   const OccupationVector& out) {
    if (in.total() != out.total()) {
        throw DimensionError("effective_scattering_matrix: particle totals differ");
    }
    if (in.modes() != u.modes() || out.modes() != u.modes()) {
        throw DimensionError("effective_scattering_matrix: mode count mismatch");
    }
    const std::vector<int> rows = in.expand();
    const std::vector<int> cols = out.expand();
    const int n = static_cast<int>(rows.size());
    Matrix sub(n, n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) sub(a, b) = u.matrix()(rows[a], cols[b]);
    }
    return sub;
}

WTensor::WTensor(int n, std::vector<Complex> entries) : n_(n), w_(std::move(entries)) {
    if (static_cast<int>(w_.size()) != n * n * n) {
        throw DimensionError("WTensor: entry count != n^3");
    }
}

WTensor build_w_tensor(const UnitaryMatrix& u, const GramMatrix& s,
                       const OccupationVector& in, const OccupationVector& out) {
    if (s.modes() != u.modes()) {
        throw DimensionError("build_w_tensor: Gram/unitary mode mismatch");
    }
    Matrix usub = effective_scattering_matrix(u, in, out);
    Matrix ssub = expanded_gram(s, in.expand());
    const int n = static_cast<int>(usub.rows());
    WTensor w(n, std::vector<Complex>(static_cast<size_t>(n) * n * n));
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            for (int t = 0; t < n; ++t) {
                w.at(k, l, t) = usub(k, t) * std::conj(usub(l, t)) * ssub(l, k);
            }
        }
    }
    return w;
}

Complex tensor_permanent_def(const WTensor& w) { return tensor_def(w, false); }
Complex tensor_determinant_def(const WTensor& w) { return tensor_def(w, true); }

Complex tensor_permanent_compact(const UnitaryMatrix& u, const GramMatrix& s,
                                 const OccupationVector& in,
                                 const OccupationVector& out) {
    return tensor_compact(u, s, in, out, false);
}

Complex tensor_determinant_compact(const UnitaryMatrix& u, const GramMatrix& s,
                                   const OccupationVector& in,
                                   const OccupationVector& out) {
    return tensor_compact(u, s, in, out, true);
}

double transition_probability(const UnitaryMatrix& u, const GramMatrix& s,
                              const OccupationVector& k,
                              const OccupationVector& i, Species species) {
    if (k.modes() != u.modes() || i.modes() != u.modes()) {
        throw DimensionError("transition_probability: mode count mismatch");
    }
    if (species == Species::Fermion && !k.is_binary()) {
        throw ValidationError(
            "transition_probability: fermionic input with a multiply occupied "
            "mode violates the exclusion principle");
    }
    if (k.total() != i.total()) return 0.0;  // particle-number conservation

    const int n = k.total();
    if (n == 0) return 1.0;

    const GramMatrix* gram = &s;
    std::optional<GramMatrix> ident;
    Species branch = species;
    if (species == Species::Classical) {
        // Classical = bosonic formula at S = I; the expanded Gram submatrix
        // keeps same-mode input particles mutually indistinguishable.
        ident.emplace(GramMatrix::identity(u.modes()));
        gram = &*ident;
        branch = Species::Boson;
    }

    Complex value;
    if (n >= 5) {
        value = branch == Species::Boson
                    ? tensor_permanent_compact(u, *gram, k, i)
                    : tensor_determinant_compact(u, *gram, k, i);
    } else {
        WTensor w = build_w_tensor(u, *gram, k, i);
        value = branch == Species::Boson ? tensor_permanent_def(w)
                                         : tensor_determinant_def(w);
    }
    double p = real_checked(value, "transition_probability");
    return p / (k.factorial_product() * i.factorial_product());
}

OutcomeDistribution full_distribution(const UnitaryMatrix& u, const GramMatrix& s,
                                      const OccupationVector& k, Species species) {
    const int n = k.total();
    if (n > 6) throw ResourceLimitError("full_distribution: total > 6");

    OutcomeDistribution dist;
    dist.species = species;
    dist.input = k;
    KahanSum sum;
    for (const OccupationVector& out : weak_compositions(n, k.modes())) {
        double p = transition_probability(u, s, k, out, species);
        if (p < 0.0) {
            if (p < -kClampTol) {
                throw ValidationError("full_distribution: probability " +
                                      std::to_string(p) + " below -1e-12");
            }
            p = 0.0;
        }
        dist.probabilities.emplace(out, p);
        sum.add(p);
    }
    dist.normalization_defect = std::abs(sum.value() - 1.0);
    return dist;
}

}  // namespace bfc
