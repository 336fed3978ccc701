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

#ifndef BFC_HAAR_STATS_HPP
#define BFC_HAAR_STATS_HPP

#include "bfc/interference.hpp"

namespace bfc {

/// Two-particle transition quantities averaged over Haar-random U(2):
/// coincidence is (1,1) -> (1,1), bunch is (1,1) -> (2,0).
enum class HaarQuantity {
    BosonCoincidence,
    FermionCoincidence,
    BosonBunch,
    FermionBunch,
};

std::string haar_quantity_name(HaarQuantity q);
HaarQuantity parse_haar_quantity(const std::string& name);

/// Fourth Haar moment E[U_{i1 j1} U_{i2 j2} conj(U_{i1' j1'} U_{i2' j2'})]
/// on U(m), assembled from the Weingarten contraction over S2 x S2 with
/// Wg(e, m) = 1/(m^2 - 1) and Wg((12), m) = -1/(m (m^2 - 1)).
double haar_fourth_moment(int i1, int i2, int j1, int j2, int ip1, int ip2,
                          int jp1, int jp2, int m);

/// Exact Haar average of the quantity at internal overlap x, built by
/// contracting the tensor perm/det expansion term by term against the
/// fourth-moment formula (specialized to m = 2, no hard-coded constants):
///   boson coincidence  (2 - x^2)/3    fermion coincidence  (2 + x^2)/3
///   boson bunch        (1 + x^2)/6    fermion bunch        (1 - x^2)/6
double weingarten_reference(HaarQuantity q, double x);

struct HaarEstimate {
    HaarQuantity quantity;
    double overlap = 0.0;
    long samples = 0;
    double mean = 0.0;
    double std_error = 0.0;
    double exact = 0.0;   // Weingarten reference
    double z_score = 0.0; // (mean - exact)/std_error
};

/// Monte Carlo over Haar U(2) samples; each sample evaluates the exact
/// per-draw probability with S = [[1, x], [x, 1]]. Per-sample seeds are
/// derived from the master seed by a counter split.
HaarEstimate haar_monte_carlo(HaarQuantity q, double x, long samples,
                              std::uint64_t seed);

}  // namespace bfc

#endif
