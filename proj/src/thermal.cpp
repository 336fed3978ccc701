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

#include "bfc/thermal.hpp"

#include <cmath>
#include <numbers>

namespace bfc {

namespace {

Matrix multiplicity_submatrix(const Matrix& m, const OccupationVector& j) {
    const std::vector<int> idx = j.expand();
    const int n = static_cast<int>(idx.size());
    Matrix sub(n, n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) sub(a, b) = m(idx[a], idx[b]);
    }
    return sub;
}

Matrix gf_kernel(const UnitaryMatrix& u, const GramMatrix& s,
                 const ComplexVector& y) {
    if (y.size() != u.modes()) {
        throw DimensionError("gf kernel: y length != mode count");
    }
    Matrix t = u.matrix() * y.asDiagonal() * u.matrix().adjoint();
    // Gram factor enters transposed: row = destination of the conjugated
    // amplitude, matching the w(a, b, t) tensor's S(b, a) ordering. S is
    // Hermitian, so this only matters once complex triple phases appear.
    return t.cwiseProduct(s.matrix().transpose());
}

/// Binary vectors i <= cap (elementwise), lexicographic.
std::vector<OccupationVector> binary_subvectors(const OccupationVector& cap) {
    std::vector<OccupationVector> out;
    const int m = cap.modes();
    std::vector<int> cur(m, 0);
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == m) {
            out.emplace_back(cur);
            return;
        }
        for (int c = 0; c <= std::min(1, cap[pos]); ++c) {
            cur[pos] = c;
            self(self, pos + 1);
        }
    };
    rec(rec, 0);
    return out;
}

}  // namespace

ThermalParams::ThermalParams(RealVector x) : x_(std::move(x)) {
    for (Eigen::Index i = 0; i < x_.size(); ++i) {
        if (!(x_(i) >= 0.0 && x_(i) < 1.0)) {
            throw ValidationError("ThermalParams: x must lie in [0, 1)");
        }
    }
}

double ThermalParams::vacuum_weight_boson() const {
    double w = 1.0;
    for (Eigen::Index i = 0; i < x_.size(); ++i) w *= 1.0 - x_(i);
    return w;
}

double ThermalParams::vacuum_weight_fermion() const {
    double w = 1.0;
    for (Eigen::Index i = 0; i < x_.size(); ++i) w *= 1.0 / (1.0 + x_(i));
    return w;
}

Matrix thermal_kernel(const UnitaryMatrix& u, const ThermalParams& x) {
    if (x.modes() != u.modes()) {
        throw DimensionError("thermal_kernel: parameter/mode mismatch");
    }
    return u.matrix().adjoint() * x.values().asDiagonal().toDenseMatrix().cast<Complex>() *
           u.matrix();
}

double thermal_prob(const UnitaryMatrix& u, const ThermalParams& x,
                    const OccupationVector& j, Species species) {
    if (species == Species::Classical) {
        throw ValidationError("thermal_prob: boson or fermion only");
    }
    if (j.modes() != u.modes()) {
        throw DimensionError("thermal_prob: occupation/mode mismatch");
    }
    if (species == Species::Fermion && !j.is_binary()) {
        throw ValidationError("thermal_prob: fermionic output must be binary");
    }
    Matrix m = thermal_kernel(u, x);
    Matrix sub = multiplicity_submatrix(m, j);
    if (species == Species::Boson) {
        Complex p = permanent(sub);
        return x.vacuum_weight_boson() * p.real() / j.factorial_product();
    }
    Complex d = determinant(sub);
    return x.vacuum_weight_fermion() * d.real();
}

MixtureResult thermal_prob_mixture_oracle(const UnitaryMatrix& u,
                                          const GramMatrix& s,
                                          const ThermalParams& x,
                                          const OccupationVector& j,
                                          Species species, double epsilon) {
    if (species == Species::Classical) {
        throw ValidationError("mixture oracle: boson or fermion only");
    }
    (void)epsilon;  // the |k| = |j| restriction already makes the sum exact
    const int m = j.modes();
    const int n = j.total();
    if (n > 6) {
        throw ResourceLimitError("mixture oracle: output total > 6");
    }

    MixtureResult result;
    KahanSum acc;
    for (const OccupationVector& k : weak_compositions(n, m)) {
        if (species == Species::Fermion && !k.is_binary()) continue;
        double weight = 1.0;
        for (int i = 0; i < m; ++i) {
            if (species == Species::Boson) {
                weight *= (1.0 - x[i]) * std::pow(x[i], k[i]);
            } else {
                weight *= (k[i] ? x[i] : 1.0) / (1.0 + x[i]);
            }
        }
        if (weight == 0.0) continue;
        acc.add(weight * transition_probability(u, s, k, j, species));
    }
    // Inputs with |k| != |j| contribute exactly zero; the remaining mixture
    // weight over totals != n multiplies vanishing probabilities.
    result.value = acc.value();
    result.tail_bound = 0.0;
    return result;
}

Complex gf_eval(const UnitaryMatrix& u, const GramMatrix& s,
                const ThermalParams& x, const ComplexVector& y, Species species) {
    if (species == Species::Classical) {
        throw ValidationError("gf_eval: boson or fermion only");
    }
    const Eigen::Index m = u.modes();
    Matrix t = gf_kernel(u, s, y);
    Matrix tx = t * x.values().asDiagonal().toDenseMatrix().cast<Complex>();
    Matrix eye = Matrix::Identity(m, m);
    if (species == Species::Fermion) {
        double denom = 1.0;
        for (Eigen::Index i = 0; i < m; ++i) denom *= 1.0 + x[i];
        return determinant(eye + tx) / denom;
    }
    double rho = Eigen::ComplexEigenSolver<Matrix>(tx, false)
                     .eigenvalues()
                     .cwiseAbs()
                     .maxCoeff();
    if (rho >= 1.0) {
        throw DivergenceError("gf_eval: bosonic kernel spectral radius " +
                              std::to_string(rho) + " >= 1");
    }
    double numer = 1.0;
    for (Eigen::Index i = 0; i < m; ++i) numer *= 1.0 - x[i];
    return numer / determinant(eye - tx);
}

Complex CoefficientTable::at(const std::vector<int>& j) const {
    auto it = coefficients.find(j);
    if (it == coefficients.end()) {
        throw ValidationError("CoefficientTable: multi-index outside caps");
    }
    return it->second;
}

CoefficientTable extract_coefficients(
    const std::function<Complex(const ComplexVector&)>& f,
    const std::vector<int>& degree_caps, double radius) {
    if (!(radius > 0.0 && radius < 1.0)) {
        throw ValidationError("extract_coefficients: radius must lie in (0, 1)");
    }
    const int m = static_cast<int>(degree_caps.size());
    std::vector<int> sizes(m);
    long grid = 1;
    for (int i = 0; i < m; ++i) {
        if (degree_caps[i] < 0) {
            throw ValidationError("extract_coefficients: negative cap");
        }
        sizes[i] = degree_caps[i] + 1;
        grid *= sizes[i];
    }
    if (grid > (1L << 22)) {
        throw ResourceLimitError("extract_coefficients: grid too large");
    }

    // Evaluate f on the product grid of roots of unity scaled by the radius.
    std::vector<Complex> samples(grid);
    std::vector<int> t(m, 0);
    ComplexVector y(m);
    for (long flat = 0; flat < grid; ++flat) {
        for (int i = 0; i < m; ++i) {
            double angle = 2.0 * std::numbers::pi * t[i] / sizes[i];
            y(i) = radius * Complex(std::cos(angle), std::sin(angle));
        }
        samples[flat] = f(y);
        for (int i = m - 1; i >= 0; --i) {
            if (++t[i] < sizes[i]) break;
            t[i] = 0;
        }
    }

    // Invert one axis at a time (separable DFT): O(grid * sum sizes) instead
    // of O(grid^2). Axis i has stride prod of the sizes to its right.
    std::vector<Complex> work(samples);
    std::vector<Complex> line;
    long stride = 1;
    for (int i = m - 1; i >= 0; --i) {
        const int n = sizes[i];
        line.assign(n, Complex(0.0, 0.0));
        for (long base = 0; base < grid; ++base) {
            const long pos = (base / stride) % n;
            if (pos != 0) continue;  // visit each 1-D line once, at its head
            for (int jj = 0; jj < n; ++jj) {
                Complex sum(0.0, 0.0);
                for (int tt = 0; tt < n; ++tt) {
                    double phase = -2.0 * std::numbers::pi * tt * jj / n;
                    sum += work[base + tt * stride] *
                           Complex(std::cos(phase), std::sin(phase));
                }
                line[jj] = sum / static_cast<double>(n);
            }
            for (int jj = 0; jj < n; ++jj) work[base + jj * stride] = line[jj];
        }
        stride *= n;
    }

    CoefficientTable table;
    table.degree_caps = degree_caps;
    table.extraction_radius = radius;
    std::vector<int> j(m, 0);
    for (long jflat = 0; jflat < grid; ++jflat) {
        int degree = 0;
        for (int c : j) degree += c;
        table.coefficients[j] = work[jflat] / std::pow(radius, degree);
        for (int i = m - 1; i >= 0; --i) {
            if (++j[i] < sizes[i]) break;
            j[i] = 0;
        }
    }
    return table;
}

MuirReport verify_muir(const UnitaryMatrix& u, const ThermalParams& x,
                       const OccupationVector& j) {
    MuirReport report;
    report.j = j;

    const bool vacuum = j.is_vacuum();
    Matrix m = thermal_kernel(u, x);

    // Corollary form: alternating b/f convolution over binary i <= j.
    {
        KahanSum acc;
        for (const OccupationVector& i : binary_subvectors(j)) {
            double b = thermal_prob(u, x, j.minus(i), Species::Boson);
            double f = thermal_prob(u, x, i, Species::Fermion);
            acc.add((i.total() % 2 ? -1.0 : 1.0) * b * f);
        }
        double rhs = 0.0;
        if (vacuum) {
            rhs = 1.0;
            for (Eigen::Index l = 0; l < x.modes(); ++l) {
                rhs *= (1.0 - x[l]) / (1.0 + x[l]);
            }
        }
        report.convolution_residual = std::abs(acc.value() - rhs);
    }

    // Raw perm/det form: sum_i (-1)^|i| perm(M^(j-i,j-i))/(j-i)! det(M^(i,i)).
    {
        KahanSum acc;
        for (const OccupationVector& i : binary_subvectors(j)) {
            OccupationVector rem = j.minus(i);
            Complex p = permanent(multiplicity_submatrix(m, rem));
            Complex d = determinant(multiplicity_submatrix(m, i));
            acc.add((i.total() % 2 ? -1.0 : 1.0) * (p * d).real() /
                    rem.factorial_product());
        }
        report.raw_residual = std::abs(acc.value() - (vacuum ? 1.0 : 0.0));
    }
    return report;
}

Complex fixed_input_gf(const UnitaryMatrix& u, const GramMatrix& s,
                       const OccupationVector& k, const ComplexVector& y,
                       Species species) {
    if (species == Species::Classical) {
        throw ValidationError("fixed_input_gf: boson or fermion only");
    }
    if (!k.is_binary()) {
        throw ValidationError("fixed_input_gf: input must be binary");
    }
    Matrix t = gf_kernel(u, s, y);
    Matrix sub = multiplicity_submatrix(t, k);
    return species == Species::Fermion ? determinant(sub) : permanent(sub);
}

Complex moment_gf(const UnitaryMatrix& u, const GramMatrix& s,
                  const OccupationVector& k, const RealVector& t, Species species) {
    ComplexVector y(t.size());
    for (Eigen::Index i = 0; i < t.size(); ++i) y(i) = std::exp(t(i));
    return fixed_input_gf(u, s, k, y, species);
}

}  // namespace bfc
