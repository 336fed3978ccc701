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

#include "bfc/algebra.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace bfc {

namespace {
constexpr double kUnitarityTol = 1e-10;
constexpr double kHermitianTol = 1e-12;
constexpr double kDiagTol = 1e-12;
constexpr double kPsdFloor = -1e-10;
constexpr double kRowNormTol = 1e-12;
}  // namespace

void require_finite(const Matrix& a, const char* what) {
    if (!a.allFinite()) {
        throw ValidationError(std::string(what) + ": non-finite entries");
    }
}

UnitaryMatrix::UnitaryMatrix(Matrix u) : u_(std::move(u)) {
    if (u_.rows() != u_.cols() || u_.rows() < 1) {
        throw DimensionError("UnitaryMatrix: square matrix required");
    }
    require_finite(u_, "UnitaryMatrix");
    Matrix defect = u_.adjoint() * u_ - Matrix::Identity(u_.rows(), u_.cols());
    residual_ = defect.cwiseAbs().rowwise().sum().maxCoeff();
    if (residual_ > kUnitarityTol) {
        throw ValidationError("UnitaryMatrix: unitarity residual " +
                              std::to_string(residual_) + " exceeds 1e-10");
    }
}

GramMatrix::GramMatrix(Matrix s) : s_(std::move(s)) {
    if (s_.rows() != s_.cols() || s_.rows() < 1) {
        throw DimensionError("GramMatrix: square matrix required");
    }
    require_finite(s_, "GramMatrix");
    if ((s_ - s_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
        throw ValidationError("GramMatrix: not Hermitian within 1e-12");
    }
    for (Eigen::Index i = 0; i < s_.rows(); ++i) {
        if (std::abs(s_(i, i) - 1.0) > kDiagTol) {
            throw ValidationError("GramMatrix: diagonal entry differs from 1");
        }
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (s_ + s_.adjoint()),
                                             Eigen::EigenvaluesOnly);
    eigen_floor_ = es.eigenvalues().minCoeff();
    if (eigen_floor_ < kPsdFloor) {
        throw ValidationError("GramMatrix: eigenvalue floor " +
                              std::to_string(eigen_floor_) + " below -1e-10");
    }
}

GramMatrix GramMatrix::equal_overlap(Eigen::Index m, double x) {
    if (x < 0.0 || x > 1.0) {
        throw ValidationError("equal_overlap: x must lie in [0, 1]");
    }
    Matrix s = Matrix::Constant(m, m, Complex(x, 0.0));
    s.diagonal().setConstant(Complex(1.0, 0.0));
    return GramMatrix(std::move(s));
}

InternalStateBank::InternalStateBank(Matrix states) : c_(std::move(states)) {
    if (c_.rows() < 1 || c_.cols() < 1) {
        throw DimensionError("InternalStateBank: nonempty matrix required");
    }
    require_finite(c_, "InternalStateBank");
    for (Eigen::Index i = 0; i < c_.rows(); ++i) {
        if (std::abs(c_.row(i).norm() - 1.0) > kRowNormTol) {
            throw ValidationError("InternalStateBank: row " + std::to_string(i) +
                                  " is not unit-norm");
        }
    }
}

Complex determinant(const Matrix& a) {
    if (a.rows() != a.cols()) {
        throw DimensionError("determinant: square matrix required");
    }
    if (a.rows() == 0) return Complex(1.0, 0.0);
    if (a.rows() > 64) {
        throw ResourceLimitError("determinant: n > 64");
    }
    return Eigen::PartialPivLU<Matrix>(a).determinant();
}

Complex permanent(const Matrix& a) {
    if (a.rows() != a.cols()) {
        throw DimensionError("permanent: square matrix required");
    }
    const int n = static_cast<int>(a.rows());
    if (n == 0) return Complex(1.0, 0.0);
    if (n > 24) {
        throw ResourceLimitError("permanent: n > 24");
    }

    // Ryser: perm(A) = (-1)^n sum_{S != 0} (-1)^|S| prod_i sum_{j in S} a_ij.
    // Gray-code order updates one column of the row sums per step.
    std::vector<Complex> rowsum(n, Complex(0.0, 0.0));
    Complex total(0.0, 0.0);
    std::uint64_t gray = 0;
    int popcount = 0;
    const std::uint64_t steps = 1ull << n;
    for (std::uint64_t k = 1; k < steps; ++k) {
        std::uint64_t next = k ^ (k >> 1);
        std::uint64_t diff = gray ^ next;
        int j = std::countr_zero(diff);
        if (next & diff) {
            for (int i = 0; i < n; ++i) rowsum[i] += a(i, j);
            ++popcount;
        } else {
            for (int i = 0; i < n; ++i) rowsum[i] -= a(i, j);
            --popcount;
        }
        gray = next;
        Complex prod(1.0, 0.0);
        for (int i = 0; i < n; ++i) prod *= rowsum[i];
        total += ((popcount & 1) ? -1.0 : 1.0) * prod;
    }
    return ((n & 1) ? -1.0 : 1.0) * total;
}

Matrix khatri_rao_column(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) {
        throw DimensionError("khatri_rao_column: column counts differ");
    }
    Matrix out(a.rows() * b.rows(), a.cols());
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index p = 0; p < a.rows(); ++p) {
            out.block(p * b.rows(), j, b.rows(), 1) = a(p, j) * b.col(j);
        }
    }
    return out;
}

Matrix khatri_rao_row(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) {
        throw DimensionError("khatri_rao_row: row counts differ");
    }
    Matrix out(a.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index p = 0; p < a.cols(); ++p) {
            out.block(i, p * b.cols(), 1, b.cols()) = a(i, p) * b.row(i);
        }
    }
    return out;
}

std::uint64_t Rng::next_word() {
    // splitmix64; full 64-bit state walk, no shared globals.
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    return static_cast<double>(next_word() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

std::uint64_t Rng::child_seed(std::uint64_t seed, std::uint64_t i) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (i + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

UnitaryMatrix haar_unitary(Eigen::Index m, std::uint64_t seed) {
    if (m < 1) throw DimensionError("haar_unitary: m >= 1 required");
    Rng rng(seed);
    Matrix z(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            z(i, j) = rng.complex_gaussian() / std::sqrt(2.0);
        }
    }
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ() * Matrix::Identity(m, m);
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < m; ++j) {
        Complex d = r(j, j);
        q.col(j) *= d / std::abs(d);
    }
    return UnitaryMatrix(std::move(q));
}

GramMatrix gram_from_states(const InternalStateBank& bank) {
    const Matrix& c = bank.states();
    Matrix s = c * c.adjoint();
    // Force exact Hermitian symmetry and unit diagonal before validation;
    // roundoff from the product would otherwise trip the 1e-12 gates.
    s = 0.5 * (s + s.adjoint().eval());
    s.diagonal().setConstant(Complex(1.0, 0.0));
    return GramMatrix(std::move(s));
}

InternalStateBank random_state_bank(Eigen::Index m, Eigen::Index d,
                                    std::uint64_t seed) {
    Rng rng(seed);
    Matrix c(m, d);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) c(i, j) = rng.complex_gaussian();
        c.row(i) /= c.row(i).norm();
    }
    return InternalStateBank(std::move(c));
}

}  // namespace bfc
