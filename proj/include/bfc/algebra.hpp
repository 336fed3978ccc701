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

#ifndef BFC_ALGEBRA_HPP
#define BFC_ALGEBRA_HPP

#include <complex>
#include <cstdint>
#include <stdexcept>

#include <Eigen/Dense>

namespace bfc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Thrown when matrix shapes don't conform.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a computation exceeds the hard size limits (permanents
/// beyond n = 24, tensor sums beyond their caps, ...).
struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when an input fails a physical/mathematical invariant
/// (non-unitary U, non-PSD Gram matrix, non-normalized states, ...).
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

void require_finite(const Matrix& a, const char* what);

/// m x m unitary describing the interferometer in phase space.
/// Convention used throughout: u(a, b) is the amplitude for a particle
/// entering input mode a to exit at output mode b.
class UnitaryMatrix {
  public:
    explicit UnitaryMatrix(Matrix u);

    const Matrix& matrix() const { return u_; }
    Eigen::Index modes() const { return u_.rows(); }
    double unitarity_residual() const { return residual_; }

  private:
    Matrix u_;
    double residual_;
};

/// Hermitian PSD matrix with unit diagonal; S(i, j) = <phi_i|phi_j> is the
/// overlap of the internal states attached to input modes i and j.
class GramMatrix {
  public:
    explicit GramMatrix(Matrix s);

    /// m-mode matrix with every off-diagonal overlap equal to x:
    /// (1 - x) I + x * ones. PSD for x in [0, 1].
    static GramMatrix equal_overlap(Eigen::Index m, double x);
    static GramMatrix identity(Eigen::Index m) { return equal_overlap(m, 0.0); }
    static GramMatrix all_ones(Eigen::Index m) { return equal_overlap(m, 1.0); }

    const Matrix& matrix() const { return s_; }
    Eigen::Index modes() const { return s_.rows(); }
    double eigen_floor() const { return eigen_floor_; }

  private:
    Matrix s_;
    double eigen_floor_;
};

/// Internal states of the m input modes, row i = coefficients of |phi_i>
/// in a d-dimensional orthonormal basis (d <= m). Row convention, so the
/// derived Gram matrix is S = C C^dagger.
class InternalStateBank {
  public:
    explicit InternalStateBank(Matrix states);

    const Matrix& states() const { return c_; }
    Eigen::Index modes() const { return c_.rows(); }

  private:
    Matrix c_;
};

/// det(A) by LU with partial pivoting. det of the empty 0x0 matrix is 1.
Complex determinant(const Matrix& a);

/// perm(A) by Ryser's formula with Gray-code subset iteration, O(2^n n).
/// perm of the empty 0x0 matrix is 1. Hard limit n <= 24.
Complex permanent(const Matrix& a);

/// Column-wise Kronecker product: column j of the result is
/// col_j(A) (x) col_j(B); shape (rA*rB) x c.
Matrix khatri_rao_column(const Matrix& a, const Matrix& b);

/// Row-wise Kronecker product: row i of the result is row_i(A) (x) row_i(B).
Matrix khatri_rao_row(const Matrix& a, const Matrix& b);

/// Haar-distributed m x m unitary: QR of an i.i.d. complex Gaussian matrix
/// with the R-diagonal phase correction. Deterministic for a fixed seed.
UnitaryMatrix haar_unitary(Eigen::Index m, std::uint64_t seed);

/// S_ij = row_i(C) . conj(row_j(C)).
GramMatrix gram_from_states(const InternalStateBank& bank);

/// Random internal-state bank (normalized complex Gaussian rows); the
/// derived Gram matrix is automatically PSD with unit diagonal.
InternalStateBank random_state_bank(Eigen::Index m, Eigen::Index d,
                                    std::uint64_t seed);

/// Deterministic RNG used by the sampling routines. Gaussians come from an
/// explicit Box-Muller over mt19937_64 uniforms so that fixed seeds give
/// the same stream on every standard library.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    double uniform();          // in [0, 1)
    double gaussian();         // standard normal
    Complex complex_gaussian() { return {gaussian(), gaussian()}; }

    /// Decorrelated child seed for shard i (splitmix64 over seed ^ i).
    static std::uint64_t child_seed(std::uint64_t seed, std::uint64_t i);

  private:
    std::uint64_t next_word();
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Compensated (Kahan) accumulator.
class KahanSum {
  public:
    void add(double x) {
        double y = x - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

  private:
    double s_ = 0.0;
    double c_ = 0.0;
};

}  // namespace bfc

#endif
