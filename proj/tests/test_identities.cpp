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

#include "bfc/identities.hpp"

using namespace bfc;

TEST_CASE("boson-fermion double convolution is a delta function") {
    UnitaryMatrix u = haar_unitary(3, 301);
    GramMatrix s = gram_from_states(random_state_bank(3, 2, 302));

    // Vacuum -> vacuum keeps the delta.
    ConvolutionReport vac = verify_bf_complementarity(
        u, s, OccupationVector::zeros(3), OccupationVector::zeros(3));
    CHECK(vac.lhs == doctest::Approx(1.0));
    CHECK(vac.residual <= 1e-12);

    for (int total = 1; total <= 3; ++total) {
        for (const auto& k : weak_compositions(total, 3)) {
            for (const auto& i : weak_compositions(total, 3)) {
                ConvolutionReport r = verify_bf_complementarity(u, s, k, i);
                CHECK(r.rhs == 0.0);
                CHECK(r.residual <= 1e-10);
                CHECK(r.term_count > 0);
            }
        }
    }
}

TEST_CASE("convolution with bunched input modes") {
    UnitaryMatrix u = haar_unitary(3, 311);
    GramMatrix s = gram_from_states(random_state_bank(3, 3, 312));
    OccupationVector k(std::vector<int>{2, 1, 0});
    for (const auto& i : weak_compositions(3, 3)) {
        ConvolutionReport r = verify_bf_complementarity(u, s, k, i);
        CHECK(r.residual <= 1e-10);
    }
}

TEST_CASE("classical probabilities convolve multiplicatively") {
    UnitaryMatrix u = haar_unitary(3, 321);
    OccupationVector k(std::vector<int>{1, 1, 1});
    OccupationVector split(std::vector<int>{1, 0, 1});
    ClassicalConvolutionReport r = verify_classical_convolution(u, k, split);
    CHECK(r.max_residual <= 1e-12);
}

TEST_CASE("classical double convolution cancels identically") {
    UnitaryMatrix u = haar_unitary(3, 331);
    for (int total = 1; total <= 2; ++total) {
        for (const auto& k : weak_compositions(total, 3)) {
            for (const auto& i : weak_compositions(total, 3)) {
                ConvolutionReport r = verify_classical_complementarity(u, k, i);
                CHECK(r.residual <= 1e-12);
            }
        }
    }
}

TEST_CASE("triple-phase twist leaves B - F unchanged") {
    UnitaryMatrix u = haar_unitary(3, 341);
    GramMatrix s = gram_from_states(random_state_bank(3, 3, 342));
    ThreeParticleReport r = three_particle_difference_scan(u, s);
    CHECK(r.twist_angle > 0.0);
    CHECK(r.delta() <= 1e-10);
    // Sanity: the difference itself is a nontrivial number.
    CHECK(std::abs(r.b_minus_f_base) > 1e-6);
}
