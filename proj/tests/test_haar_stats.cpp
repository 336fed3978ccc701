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

#include "bfc/haar_stats.hpp"

using namespace bfc;

TEST_CASE("fourth moment formula reproduces known U(m) averages") {
    for (int m : {2, 3, 5}) {
        // E|U00|^4 = 2/(m(m+1)), E|U00 U01|^2 = 1/(m(m+1)),
        // E|U00 U11|^2 = 1/(m^2 - 1)  (only the identity pairing survives).
        CHECK(haar_fourth_moment(0, 0, 0, 0, 0, 0, 0, 0, m) ==
              doctest::Approx(2.0 / (m * (m + 1.0))));
        CHECK(haar_fourth_moment(0, 0, 0, 1, 0, 0, 0, 1, m) ==
              doctest::Approx(1.0 / (m * (m + 1.0))));
        CHECK(haar_fourth_moment(0, 1, 0, 1, 0, 1, 0, 1, m) ==
              doctest::Approx(1.0 / (m * m - 1.0)));
        // Mismatched index content has zero average.
        CHECK(haar_fourth_moment(0, 0, 0, 0, 1, 1, 0, 0, m) == 0.0);
    }
}

TEST_CASE("weingarten reference closed forms") {
    for (double x : {0.0, 0.25, 0.6, 1.0}) {
        CHECK(weingarten_reference(HaarQuantity::BosonCoincidence, x) ==
              doctest::Approx((2.0 - x * x) / 3.0));
        CHECK(weingarten_reference(HaarQuantity::FermionCoincidence, x) ==
              doctest::Approx((2.0 + x * x) / 3.0));
        CHECK(weingarten_reference(HaarQuantity::BosonBunch, x) ==
              doctest::Approx((1.0 + x * x) / 6.0));
        CHECK(weingarten_reference(HaarQuantity::FermionBunch, x) ==
              doctest::Approx((1.0 - x * x) / 6.0));

        // Complementarity sums and per-species normalization.
        double cb = weingarten_reference(HaarQuantity::BosonCoincidence, x);
        double cf = weingarten_reference(HaarQuantity::FermionCoincidence, x);
        double bb = weingarten_reference(HaarQuantity::BosonBunch, x);
        double bf = weingarten_reference(HaarQuantity::FermionBunch, x);
        CHECK(cb + cf == doctest::Approx(4.0 / 3.0));
        CHECK(bb + bf == doctest::Approx(1.0 / 3.0));
        CHECK(cb + 2.0 * bb == doctest::Approx(1.0));
        CHECK(cf + 2.0 * bf == doctest::Approx(1.0));
    }
}

TEST_CASE("quantity names round-trip") {
    for (HaarQuantity q :
         {HaarQuantity::BosonCoincidence, HaarQuantity::FermionCoincidence,
          HaarQuantity::BosonBunch, HaarQuantity::FermionBunch}) {
        CHECK(parse_haar_quantity(haar_quantity_name(q)) == q);
    }
    CHECK_THROWS_AS(parse_haar_quantity("nonsense"), ValidationError);
}

TEST_CASE("monte carlo converges to the weingarten reference") {
    for (HaarQuantity q :
         {HaarQuantity::BosonCoincidence, HaarQuantity::FermionBunch}) {
        HaarEstimate e = haar_monte_carlo(q, 0.5, 20000, 1234);
        CHECK(e.std_error > 0.0);
        CHECK(e.std_error < 0.01);
        CHECK(std::abs(e.z_score) < 5.0);
        CHECK(std::abs(e.mean - e.exact) < 5.0 * e.std_error + 1e-12);
    }
}

TEST_CASE("monte carlo is seed-deterministic") {
    HaarEstimate a = haar_monte_carlo(HaarQuantity::BosonBunch, 0.3, 500, 9);
    HaarEstimate b = haar_monte_carlo(HaarQuantity::BosonBunch, 0.3, 500, 9);
    HaarEstimate c = haar_monte_carlo(HaarQuantity::BosonBunch, 0.3, 500, 10);
    CHECK(a.mean == b.mean);
    CHECK(a.mean != c.mean);
    CHECK_THROWS_AS(haar_monte_carlo(HaarQuantity::BosonBunch, 0.3, 10, 1),
                    ValidationError);
}
