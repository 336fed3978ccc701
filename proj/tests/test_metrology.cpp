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

#include <doctest.h>

#include <cmath>

#include "bfc/metrology.hpp"

using namespace bfc;

TEST_CASE("closed-form covariance equals the brute-force moments") {
    UnitaryMatrix u = haar_unitary(4, 401);
    GramMatrix s = gram_from_states(random_state_bank(4, 2, 402));
    OccupationVector k(std::vector<int>{1, 1, 0, 1});

    for (Species sp : {Species::Boson, Species::Fermion}) {
        CovarianceMatrix brute = covariance_brute_force(u, s, k, sp);
        CovarianceMatrix closed = covariance_closed_form(u, s, k, sp);
        CHECK((brute.entries - closed.entries).cwiseAbs().maxCoeff() <= 1e-10);
        // Rows/columns of a number-conserving covariance sum to zero.
        CHECK(closed.entries.rowwise().sum().cwiseAbs().maxCoeff() <= 1e-10);
        CHECK((closed.entries - closed.entries.transpose())
                  .cwiseAbs()
                  .maxCoeff() <= 1e-12);
    }
}

TEST_CASE("covariance sum rule C^B + C^F = 2 C^cl") {
    for (std::uint64_t seed : {1ull, 2ull}) {
        UnitaryMatrix u = haar_unitary(3, 410 + seed);
        GramMatrix s = gram_from_states(random_state_bank(3, 2, 420 + seed));
        OccupationVector k(std::vector<int>{1, 1, 0});
        SumRuleReport r = verify_covariance_sum_rule(u, s, k);
        CHECK(r.brute_residual <= 1e-10);
        CHECK(r.closed_residual <= 1e-10);
        CHECK(r.method_disagreement <= 1e-10);
    }
}

TEST_CASE("brute force rejects non-binary and oversized inputs") {
    UnitaryMatrix u = haar_unitary(3, 430);
    GramMatrix s = GramMatrix::identity(3);
    CHECK_THROWS_AS(covariance_brute_force(
                        u, s, OccupationVector(std::vector<int>{2, 0, 0}),
                        Species::Boson),
                    ValidationError);
    CHECK_THROWS_AS(covariance_closed_form(u, s,
                                           OccupationVector(std::vector<int>{1, 1, 1}),
                                           Species::Classical),
                    ValidationError);
}

TEST_CASE("qfi report ties to the covariance diagonal") {
    UnitaryMatrix u = haar_unitary(3, 440);
    GramMatrix s = gram_from_states(random_state_bank(3, 2, 441));
    OccupationVector k(std::vector<int>{1, 1, 0});
    const long n = 1000;

    for (Species sp : {Species::Boson, Species::Fermion, Species::Classical}) {
        QfiReport r = qfi_report(u, s, k, sp, n);
        CovarianceMatrix c = covariance_brute_force(u, s, k, sp);
        for (int i = 0; i < 3; ++i) {
            CHECK(std::abs(r.per_mode_qfi(i) - 4.0 * c.entries(i, i)) <= 1e-9);
            if (r.per_mode_qfi(i) > 0.0) {
                CHECK(r.cramer_rao_floor(i) ==
                      doctest::Approx(1.0 / (n * r.per_mode_qfi(i))));
            } else {
                CHECK(std::isinf(r.cramer_rao_floor(i)));
            }
        }
        CHECK(r.measurements == n);
    }
}

TEST_CASE("indistinguishable bosons beat classical phase sensitivity on a dip") {
    // At a 50:50 splitter with x = 1 the bosonic output variance in each
    // mode exceeds the classical one, so QFI orders B > cl > F.
    Matrix m(2, 2);
    const double r = 1.0 / std::sqrt(2.0);
    m << r, r, r, -r;
    UnitaryMatrix u{m};
    OccupationVector k(std::vector<int>{1, 1});
    GramMatrix ones = GramMatrix::all_ones(2);
    QfiReport qb = qfi_report(u, ones, k, Species::Boson, 1);
    QfiReport qf = qfi_report(u, ones, k, Species::Fermion, 1);
    QfiReport qc = qfi_report(u, GramMatrix::identity(2), k, Species::Classical, 1);
    CHECK(qb.per_mode_qfi(0) > qc.per_mode_qfi(0));
    CHECK(qc.per_mode_qfi(0) > qf.per_mode_qfi(0));
    CHECK(qb.per_mode_qfi(0) == doctest::Approx(4.0));   // 4 * C_ii = 4 * 1
    CHECK(qf.per_mode_qfi(0) == doctest::Approx(0.0).epsilon(1e-12));
}
