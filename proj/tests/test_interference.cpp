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

#include "bfc/interference.hpp"
#include "fock_oracle.hpp"

using namespace bfc;

namespace {

UnitaryMatrix beamsplitter50() {
    Matrix u(2, 2);
    const double r = 1.0 / std::sqrt(2.0);
    u << r, r, r, -r;
    return UnitaryMatrix(u);
}

}  // namespace

TEST_CASE("occupation vector basics") {
    OccupationVector k(std::vector<int>{2, 0, 1});
    CHECK(k.total() == 3);
    CHECK(k.modes() == 3);
    CHECK(k.factorial_product() == doctest::Approx(2.0));
    CHECK(k.expand() == std::vector<int>{0, 0, 2});
    CHECK_FALSE(k.is_binary());
    CHECK(k.to_string() == "2,0,1");
    CHECK(k.dominates(OccupationVector(std::vector<int>{1, 0, 1})));
    CHECK_FALSE(k.dominates(OccupationVector(std::vector<int>{0, 1, 0})));
    OccupationVector d = k.minus(OccupationVector(std::vector<int>{1, 0, 0}));
    CHECK(d == OccupationVector(std::vector<int>{1, 0, 1}));
    CHECK_THROWS_AS(OccupationVector(std::vector<int>{-1, 0}), ValidationError);
}

TEST_CASE("weak compositions enumerate every outcome once") {
    auto list = weak_compositions(3, 3);
    CHECK(list.size() == 10);  // C(3+3-1, 3-1)
    for (std::size_t i = 1; i < list.size(); ++i) CHECK(list[i - 1] < list[i]);
    for (const auto& v : list) CHECK(v.total() == 3);
}

TEST_CASE("effective scattering matrix repeats rows and columns") {
    UnitaryMatrix u = haar_unitary(3, 5);
    OccupationVector in(std::vector<int>{2, 1, 0});
    OccupationVector out(std::vector<int>{0, 1, 2});
    Matrix sub = effective_scattering_matrix(u, in, out);
    REQUIRE(sub.rows() == 3);
    CHECK(sub(0, 0) == u.matrix()(0, 1));
    CHECK(sub(1, 0) == u.matrix()(0, 1));  // doubled input row
    CHECK(sub(2, 1) == sub(2, 2));         // doubled output column
    CHECK(sub(2, 2) == u.matrix()(1, 2));
}

TEST_CASE("compact tensor forms equal the definitional double sum") {
    UnitaryMatrix u = haar_unitary(4, 21);
    GramMatrix s = gram_from_states(random_state_bank(4, 3, 22));
    OccupationVector in(std::vector<int>{1, 2, 0, 1});
    OccupationVector out(std::vector<int>{0, 1, 2, 1});
    WTensor w = build_w_tensor(u, s, in, out);

    Complex pd = tensor_permanent_def(w);
    Complex pc = tensor_permanent_compact(u, s, in, out);
    CHECK(std::abs(pd - pc) <= 1e-10 * (1.0 + std::abs(pd)));

    Complex dd = tensor_determinant_def(w);
    Complex dc = tensor_determinant_compact(u, s, in, out);
    CHECK(std::abs(dd - dc) <= 1e-10 * (1.0 + std::abs(dd)));
}

TEST_CASE("hom dip and its distinguishable limits") {
    UnitaryMatrix u = beamsplitter50();
    OccupationVector in(std::vector<int>{1, 1});
    OccupationVector coinc(std::vector<int>{1, 1});
    OccupationVector bunch(std::vector<int>{2, 0});

    // Indistinguishable bosons never coincide; fermions always do.
    GramMatrix ones = GramMatrix::all_ones(2);
    CHECK(transition_probability(u, ones, in, coinc, Species::Boson) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(transition_probability(u, ones, in, bunch, Species::Boson) ==
          doctest::Approx(0.5));
    CHECK(transition_probability(u, ones, in, coinc, Species::Fermion) ==
          doctest::Approx(1.0));
    GramMatrix ident = GramMatrix::identity(2);

    // Partial distinguishability interpolates: P_coinc = (1 -+ x^2)/2.
    for (double x : {0.0, 0.3, 0.7, 1.0}) {
        GramMatrix s = GramMatrix::equal_overlap(2, x);
        CHECK(transition_probability(u, s, in, coinc, Species::Boson) ==
              doctest::Approx((1.0 - x * x) / 2.0));
        CHECK(transition_probability(u, s, in, coinc, Species::Fermion) ==
              doctest::Approx((1.0 + x * x) / 2.0));
    }
    CHECK(transition_probability(u, ident, in, coinc, Species::Classical) ==
          doctest::Approx(0.5));
}

TEST_CASE("probabilities match the first-quantized oracle") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        UnitaryMatrix u = haar_unitary(3, seed);
        GramMatrix s = gram_from_states(random_state_bank(3, 2, seed + 50));
        OccupationVector in(std::vector<int>{1, 1, 1});
        for (Species sp : {Species::Boson, Species::Fermion, Species::Classical}) {
            for (const auto& out : weak_compositions(3, 3)) {
                double lib = transition_probability(u, s, in, out, sp);
                double ref = oracle::fock_probability(u, s, in, out, sp);
                CHECK(std::abs(lib - ref) <= 1e-10);
            }
        }
    }
}

TEST_CASE("bunched bosonic input matches the oracle") {
    UnitaryMatrix u = haar_unitary(3, 9);
    GramMatrix s = gram_from_states(random_state_bank(3, 3, 10));
    OccupationVector in(std::vector<int>{2, 1, 0});
    for (const auto& out : weak_compositions(3, 3)) {
        double lib = transition_probability(u, s, in, out, Species::Boson);
        double ref = oracle::fock_probability(u, s, in, out, Species::Boson);
        CHECK(std::abs(lib - ref) <= 1e-10);
        double cl = transition_probability(u, s, in, out, Species::Classical);
        double clref = oracle::fock_probability(u, s, in, out, Species::Classical);
        CHECK(std::abs(cl - clref) <= 1e-10);
    }
}

TEST_CASE("species rules and guards") {
    UnitaryMatrix u = haar_unitary(3, 1);
    GramMatrix s = GramMatrix::identity(3);
    OccupationVector doubled(std::vector<int>{2, 0, 0});
    OccupationVector out(std::vector<int>{1, 1, 0});
    CHECK_THROWS_AS(
        transition_probability(u, s, doubled, out, Species::Fermion),
        ValidationError);
    // Pauli blocking: indistinguishable fermions never bunch at the output.
    OccupationVector in(std::vector<int>{1, 1, 0});
    OccupationVector bunch(std::vector<int>{2, 0, 0});
    CHECK(std::abs(transition_probability(u, GramMatrix::all_ones(3), in, bunch,
                                          Species::Fermion)) <= 1e-12);
    // Mismatched totals give zero.
    CHECK(transition_probability(u, s, in, OccupationVector(std::vector<int>{1, 0, 0}),
                                 Species::Boson) == 0.0);
}

TEST_CASE("full distribution normalizes for every species") {
    UnitaryMatrix u = haar_unitary(4, 33);
    GramMatrix s = gram_from_states(random_state_bank(4, 2, 34));
    OccupationVector in(std::vector<int>{1, 0, 1, 1});
    for (Species sp : {Species::Boson, Species::Fermion, Species::Classical}) {
        OutcomeDistribution d = full_distribution(u, s, in, sp);
        CHECK(std::abs(d.normalization_defect) <= 1e-10);
        double total = 0.0;
        for (const auto& [out, p] : d.probabilities) {
            CHECK(p >= 0.0);
            total += p;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(d.probabilities.size() == weak_compositions(3, 4).size());
    }
}
