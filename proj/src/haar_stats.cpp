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

#include "bfc/haar_stats.hpp"

#include <array>
#include <cmath>

namespace bfc {

namespace {

bool is_boson(HaarQuantity q) {
    return q == HaarQuantity::BosonCoincidence || q == HaarQuantity::BosonBunch;
}

OccupationVector output_of(HaarQuantity q) {
    const bool bunch =
        q == HaarQuantity::BosonBunch || q == HaarQuantity::FermionBunch;
    return OccupationVector(bunch ? std::vector<int>{2, 0}
                                  : std::vector<int>{1, 1});
}

}  // namespace

std::string haar_quantity_name(HaarQuantity q) {
    switch (q) {
        case HaarQuantity::BosonCoincidence: return "boson-coincidence";
        case HaarQuantity::FermionCoincidence: return "fermion-coincidence";
        case HaarQuantity::BosonBunch: return "boson-bunch";
        case HaarQuantity::FermionBunch: return "fermion-bunch";
    }
    return "?";
}

HaarQuantity parse_haar_quantity(const std::string& name) {
    for (HaarQuantity q :
         {HaarQuantity::BosonCoincidence, HaarQuantity::FermionCoincidence,
          HaarQuantity::BosonBunch, HaarQuantity::FermionBunch}) {
        if (haar_quantity_name(q) == name) return q;
    }
    throw ValidationError("unknown Haar quantity: " + name);
}

double haar_fourth_moment(int i1, int i2, int j1, int j2, int ip1, int ip2,
                          int jp1, int jp2, int m) {
    const double wg_e = 1.0 / (static_cast<double>(m) * m - 1.0);
    const double wg_t = -1.0 / (m * (static_cast<double>(m) * m - 1.0));

    const std::array<int, 2> i{i1, i2}, j{j1, j2}, ip{ip1, ip2}, jp{jp1, jp2};
    // sigma, tau run over S2 = {e, (12)}; Wg depends on sigma^{-1} tau.
    const std::array<std::array<int, 2>, 2> perms{{{0, 1}, {1, 0}}};
    double total = 0.0;
    for (int si = 0; si < 2; ++si) {
        for (int ti = 0; ti < 2; ++ti) {
            bool match = true;
            for (int r = 0; r < 2 && match; ++r) {
                match = i[r] == ip[perms[si][r]] && j[r] == jp[perms[ti][r]];
            }
            if (match) total += (si == ti) ? wg_e : wg_t;
        }
    }
    return total;
}

double weingarten_reference(HaarQuantity q, double x) {
    if (x < 0.0 || x > 1.0) {
        throw ValidationError("weingarten_reference: overlap outside [0, 1]");
    }
    constexpr int m = 2;
    const bool boson = is_boson(q);
    const std::vector<int> outs = output_of(q).expand();  // column modes
    const double out_fact = output_of(q).factorial_product();
    const std::array<std::array<double, 2>, 2> ssub{{{1.0, x}, {x, 1.0}}};
    const std::array<std::array<int, 2>, 2> perms{{{0, 1}, {1, 0}}};
    const std::array<int, 2> sign{1, -1};

    // E[Perm/Det(W)] term by term: rows sigma1(r) / conj rows sigma2(r),
    // both reading column outs[r]; Gram factor prod_r Ssub(sigma2(r), sigma1(r)).
    double total = 0.0;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            double gram = 1.0;
            for (int r = 0; r < 2; ++r) gram *= ssub[perms[b][r]][perms[a][r]];
            double moment = haar_fourth_moment(
                perms[a][0], perms[a][1], outs[0], outs[1], perms[b][0],
                perms[b][1], outs[0], outs[1], m);
            double term = gram * moment;
            if (!boson) term *= sign[a] * sign[b];
            total += term;
        }
    }
    return total / out_fact;
}

HaarEstimate haar_monte_carlo(HaarQuantity q, double x, long samples,
                              std::uint64_t seed) {
    if (samples < 100) {
        throw ValidationError("haar_monte_carlo: at least 100 samples required");
    }
    const GramMatrix s = GramMatrix::equal_overlap(2, x);
    const OccupationVector in(std::vector<int>{1, 1});
    const OccupationVector out = output_of(q);
    const Species species = is_boson(q) ? Species::Boson : Species::Fermion;

    // Welford running mean/variance.
    double mean = 0.0, m2 = 0.0;
    for (long n = 0; n < samples; ++n) {
        UnitaryMatrix u = haar_unitary(2, Rng::child_seed(seed, n));
        double p = transition_probability(u, s, in, out, species);
        double delta = p - mean;
        mean += delta / static_cast<double>(n + 1);
        m2 += delta * (p - mean);
    }

    HaarEstimate est;
    est.quantity = q;
    est.overlap = x;
    est.samples = samples;
    est.mean = mean;
    est.std_error = std::sqrt(m2 / static_cast<double>(samples - 1) /
                              static_cast<double>(samples));
    est.exact = weingarten_reference(q, x);
    est.z_score = est.std_error > 0.0 ? (est.mean - est.exact) / est.std_error : 0.0;
    return est;
}

}  // namespace bfc
