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

#ifndef BFC_THERMAL_HPP
#define BFC_THERMAL_HPP

#include <functional>
#include <map>

#include "bfc/interference.hpp"

namespace bfc {

/// Per-mode thermal parameters x_i in [0, 1). Bosonic mean occupation is
/// x_i/(1 - x_i), fermionic x_i/(1 + x_i).
class ThermalParams {
  public:
    explicit ThermalParams(RealVector x);

    const RealVector& values() const { return x_; }
    Eigen::Index modes() const { return x_.size(); }
    double operator[](Eigen::Index i) const { return x_(i); }

    /// prod (1 - x_i)
    double vacuum_weight_boson() const;
    /// prod 1/(1 + x_i)
    double vacuum_weight_fermion() const;

  private:
    RealVector x_;
};

/// Thrown when the bosonic generating function is evaluated outside its
/// convergence region (spectral radius of the series kernel >= 1).
struct DivergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Output-mode kernel of the thermal sampler: M = U^dagger diag(x) U.
Matrix thermal_kernel(const UnitaryMatrix& u, const ThermalParams& x);

/// Thermal sampling probability of output occupation j for fully
/// indistinguishable particles:
///   boson:   prod(1-x_i) * perm(M^(j,j)) / j!
///   fermion: prod 1/(1+x_i) * det(M^(j,j)), j binary.
double thermal_prob(const UnitaryMatrix& u, const ThermalParams& x,
                    const OccupationVector& j, Species species);

struct MixtureResult {
    double value = 0.0;
    /// Upper bound on neglected mixture weight. Particle-number
    /// conservation makes the sum over inputs with |k| = |j| exact, so
    /// this is 0 unless a resource cap forced truncation.
    double tail_bound = 0.0;
};

/// Explicit Fock-mixture realization of the thermal probabilities: sums
/// w(k) * P_{k->j} over input occupations. Valid for arbitrary Gram
/// matrices, which the closed thermal formula is not.
MixtureResult thermal_prob_mixture_oracle(const UnitaryMatrix& u,
                                          const GramMatrix& s,
                                          const ThermalParams& x,
                                          const OccupationVector& j,
                                          Species species, double epsilon = 1e-10);

/// Closed determinant form of the thermal generating functions:
///   g_F(x, y) = det(I + T(y) X) / det(I + X)
///   g_B(x, y) = det(I - X) / det(I - T(y) X)
/// with T(y) = (U diag(y) U^dagger) entrywise* S^T and X = diag(x).
/// The bosonic branch requires spectral radius of T(y) X below 1.
Complex gf_eval(const UnitaryMatrix& u, const GramMatrix& s,
                const ThermalParams& x, const ComplexVector& y, Species species);

struct CoefficientTable {
    std::vector<int> degree_caps;
    double extraction_radius = 0.0;
    std::map<std::vector<int>, Complex> coefficients;

    Complex at(const std::vector<int>& j) const;
};

/// Taylor coefficients of f on the polydisc of radius r via roots-of-unity
/// sampling: a multidimensional discrete Fourier inversion, exact (up to
/// roundoff) for per-variable degree <= caps[i].
CoefficientTable extract_coefficients(
    const std::function<Complex(const ComplexVector&)>& f,
    const std::vector<int>& degree_caps, double radius);

struct MuirReport {
    OccupationVector j;
    /// | sum_i (-1)^|i| b(x, j-i) f(x, i) - prod((1-x)/(1+x)) delta_{j,0} |
    double convolution_residual = 0.0;
    /// Residual of the raw perm/det alternating sum with M = thermal_kernel.
    double raw_residual = 0.0;
};

MuirReport verify_muir(const UnitaryMatrix& u, const ThermalParams& x,
                       const OccupationVector& j);

/// Fixed-input generating function G(y|k) = det/perm(T(y)^(k,k)), k binary.
Complex fixed_input_gf(const UnitaryMatrix& u, const GramMatrix& s,
                       const OccupationVector& k, const ComplexVector& y,
                       Species species);

/// Moment generating function M(t|k) = G(e^t|k).
Complex moment_gf(const UnitaryMatrix& u, const GramMatrix& s,
                  const OccupationVector& k, const RealVector& t, Species species);

}  // namespace bfc

#endif
