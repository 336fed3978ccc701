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

// bfc: boson/fermion/classical interference toolbox.
// Exit codes: 0 = all checks pass, 1 = residual failure, 2 = usage error.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bfc/haar_stats.hpp"
#include "bfc/identities.hpp"
#include "bfc/metrology.hpp"
#include "bfc/thermal.hpp"

using namespace bfc;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- plumbing -------------------------------------------------------------

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_output(const std::string& path, const std::string& body) {
    if (path.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings
    if (!out) throw UsageError("cannot open output file: " + path);
    out << body;
}

std::vector<double> parse_grid(const std::string& spec) {
    double start = 0.0, stop = 0.0;
    int steps = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(spec);
    if (!(in >> start >> c1 >> stop >> c2 >> steps) || c1 != ':' || c2 != ':' ||
        steps < 1 || !(in >> std::ws).eof()) {
        throw UsageError("bad grid spec '" + spec + "', expected start:stop:steps");
    }
    std::vector<double> grid(steps);
    for (int i = 0; i < steps; ++i) {
        grid[i] = steps == 1 ? start : start + i * (stop - start) / (steps - 1);
    }
    return grid;
}

OccupationVector parse_occupation(const std::string& spec) {
    std::vector<int> occ;
    std::istringstream in(spec);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        try {
            occ.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw UsageError("bad occupation '" + spec + "'");
        }
    }
    if (occ.empty()) throw UsageError("empty occupation vector");
    return OccupationVector(occ);
}

Matrix load_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open matrix file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw UsageError("bad JSON in " + path + ": " + e.what());
    }
    if (!doc.contains("rows") || !doc.contains("cols") || !doc.contains("entries")) {
        throw UsageError(path + ": expected keys rows, cols, entries");
    }
    const Eigen::Index rows = doc["rows"].get<Eigen::Index>();
    const Eigen::Index cols = doc["cols"].get<Eigen::Index>();
    const auto& entries = doc["entries"];
    if (!entries.is_array() ||
        static_cast<Eigen::Index>(entries.size()) != rows * cols) {
        throw UsageError(path + ": entry count != rows*cols");
    }
    Matrix m(rows, cols);
    Eigen::Index flat = 0;
    for (const auto& e : entries) {  // row-major [re, im] pairs
        if (!e.is_array() || e.size() != 2) {
            throw UsageError(path + ": entries must be [re, im] pairs");
        }
        const double re = e[0].get<double>(), im = e[1].get<double>();
        if (!std::isfinite(re) || !std::isfinite(im)) {
            throw UsageError(path + ": non-finite entry");
        }
        m(flat / cols, flat % cols) = Complex(re, im);
        ++flat;
    }
    return m;
}

GramMatrix resolve_gram(const std::string& gram_path, double overlap,
                        bool overlap_set, Eigen::Index m) {
    if (!gram_path.empty() && overlap_set) {
        throw UsageError("give either --gram or --overlap, not both");
    }
    if (!gram_path.empty()) return GramMatrix(load_matrix_file(gram_path));
    if (overlap_set) return GramMatrix::equal_overlap(m, overlap);
    throw UsageError("a Gram matrix is required (--gram file or --overlap x)");
}

// ---- hom -------------------------------------------------------------------

int cmd_hom(const std::vector<double>& grid, double theta, double tolerance,
            const std::string& out_path) {
    Matrix bsm(2, 2);
    bsm << std::cos(theta), std::sin(theta), std::sin(theta), -std::cos(theta);
    UnitaryMatrix bs{bsm};
    OccupationVector in(std::vector<int>{1, 1});
    OccupationVector coinc(std::vector<int>{1, 1});
    OccupationVector bunch(std::vector<int>{2, 0});

    std::string csv =
        "x,B_coincidence,F_coincidence,P_coincidence,B_bunch,F_bunch,"
        "sum_rule_residual\n";
    double worst = 0.0;
    for (double x : grid) {
        if (x < 0.0 || x > 1.0) throw UsageError("overlap outside [0, 1]");
        GramMatrix s = GramMatrix::equal_overlap(2, x);
        double b = transition_probability(bs, s, in, coinc, Species::Boson);
        double f = transition_probability(bs, s, in, coinc, Species::Fermion);
        double p = transition_probability(bs, GramMatrix::identity(2), in, coinc,
                                          Species::Classical);
        double bb = transition_probability(bs, s, in, bunch, Species::Boson);
        double fb = transition_probability(bs, s, in, bunch, Species::Fermion);
        double residual = std::abs(b + f - 2.0 * p);
        worst = std::max(worst, residual);
        csv += fmt(x) + "," + fmt(b) + "," + fmt(f) + "," + fmt(p) + "," +
               fmt(bb) + "," + fmt(fb) + "," + fmt(residual) + "\n";
    }
    write_output(out_path, csv);
    return worst <= tolerance ? 0 : 1;
}

// ---- verify ----------------------------------------------------------------

struct Case {
    std::string label;
    double residual;
};

int cmd_verify(const std::string& suite, int modes, int max_total, int trials,
               std::uint64_t seed, double tolerance, const std::string& out_path) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<Case> cases;

    auto random_pair = [&](int trial) {
        UnitaryMatrix u = haar_unitary(modes, Rng::child_seed(seed, 2 * trial));
        GramMatrix s = gram_from_states(random_state_bank(
            modes, std::max(2, modes - 1), Rng::child_seed(seed, 2 * trial + 1)));
        return std::make_pair(std::move(u), std::move(s));
    };

    if (suite == "complementarity") {
        for (int trial = 0; trial < trials; ++trial) {
            auto [u, s] = random_pair(trial);
            for (int total = 0; total <= max_total; ++total) {
                for (const auto& k : weak_compositions(total, modes)) {
                    for (const auto& i : weak_compositions(total, modes)) {
                        ConvolutionReport r = verify_bf_complementarity(u, s, k, i);
                        cases.push_back({"trial " + std::to_string(trial) + " k=" +
                                             k.to_string() + " i=" + i.to_string(),
                                         r.residual});
                    }
                }
            }
        }
    } else if (suite == "muir") {
        for (int trial = 0; trial < trials; ++trial) {
            UnitaryMatrix u = haar_unitary(modes, Rng::child_seed(seed, 2 * trial));
            Rng rng(Rng::child_seed(seed, 2 * trial + 1));
            RealVector xv(modes);
            for (int i = 0; i < modes; ++i) xv(i) = 0.1 + 0.6 * rng.uniform();
            ThermalParams x{xv};
            for (int total = 0; total <= max_total; ++total) {
                for (const auto& j : weak_compositions(total, modes)) {
                    MuirReport r = verify_muir(u, x, j);
                    cases.push_back({"trial " + std::to_string(trial) + " j=" +
                                         j.to_string() + " convolution",
                                     r.convolution_residual});
                    cases.push_back({"trial " + std::to_string(trial) + " j=" +
                                         j.to_string() + " raw",
                                     r.raw_residual});
                }
            }
        }
    } else if (suite == "covariance") {
        for (int trial = 0; trial < trials; ++trial) {
            auto [u, s] = random_pair(trial);
            for (int total = 1; total <= std::min(max_total, modes); ++total) {
                for (const auto& k : weak_compositions(total, modes)) {
                    if (!k.is_binary()) continue;
                    SumRuleReport r = verify_covariance_sum_rule(u, s, k);
                    const double worst =
                        std::max({r.brute_residual, r.closed_residual,
                                  r.method_disagreement});
                    cases.push_back({"trial " + std::to_string(trial) + " k=" +
                                         k.to_string(),
                                     worst});
                }
            }
        }
    } else if (suite == "macmahon") {
        if (modes > 4) throw UsageError("macmahon suite supports modes <= 4");
        for (int trial = 0; trial < trials; ++trial) {
            Rng rng(Rng::child_seed(seed, trial));
            Matrix a(modes, modes);
            for (int r = 0; r < modes; ++r)
                for (int c = 0; c < modes; ++c)
                    a(r, c) = 0.25 * rng.complex_gaussian();
            auto fdet = [&](const ComplexVector& y) {
                return determinant(Matrix(Matrix::Identity(modes, modes) +
                                          Matrix(y.asDiagonal()) * a));
            };
            auto fperm = [&](const ComplexVector& y) {
                return 1.0 / determinant(Matrix(Matrix::Identity(modes, modes) -
                                                Matrix(y.asDiagonal()) * a));
            };
            CoefficientTable dt =
                extract_coefficients(fdet, std::vector<int>(modes, 1), 0.5);
            CoefficientTable pt =
                extract_coefficients(fperm, std::vector<int>(modes, 15), 0.3);
            KahanSum det_sum_re, perm_sum_re;
            double det_worst = 0.0, perm_worst = 0.0;
            for (int mask = 0; mask < (1 << modes); ++mask) {
                std::vector<int> jv(modes);
                std::vector<int> idx;
                for (int i = 0; i < modes; ++i) {
                    jv[i] = (mask >> i) & 1;
                    if (jv[i]) idx.push_back(i);
                }
                Matrix sub(idx.size(), idx.size());
                for (std::size_t r = 0; r < idx.size(); ++r)
                    for (std::size_t c = 0; c < idx.size(); ++c)
                        sub(r, c) = a(idx[r], idx[c]);
                Complex dref = determinant(sub);
                Complex pref = permanent(sub);
                det_worst = std::max(det_worst, std::abs(dt.at(jv) - dref));
                perm_worst = std::max(perm_worst, std::abs(pt.at(jv) - pref));
                det_sum_re.add(dref.real());
                perm_sum_re.add(pref.real());
            }
            Matrix shifted = Matrix::Identity(modes, modes) + a;
            cases.push_back({"trial " + std::to_string(trial) + " det branch",
                             det_worst});
            cases.push_back({"trial " + std::to_string(trial) + " perm branch",
                             perm_worst});
            cases.push_back(
                {"trial " + std::to_string(trial) + " det minor expansion",
                 std::abs(det_sum_re.value() - determinant(shifted).real())});
            cases.push_back(
                {"trial " + std::to_string(trial) + " perm minor expansion",
                 std::abs(perm_sum_re.value() - permanent(shifted).real())});
        }
    } else if (suite == "classical") {
        for (int trial = 0; trial < trials; ++trial) {
            UnitaryMatrix u = haar_unitary(modes, Rng::child_seed(seed, trial));
            for (int total = 1; total <= max_total; ++total) {
                for (const auto& k : weak_compositions(total, modes)) {
                    for (const auto& i : weak_compositions(total, modes)) {
                        ConvolutionReport r =
                            verify_classical_complementarity(u, k, i);
                        cases.push_back({"trial " + std::to_string(trial) + " k=" +
                                             k.to_string() + " i=" + i.to_string(),
                                         r.residual});
                    }
                    if (k.is_binary() && k.total() >= 2) {
                        std::vector<int> half(modes, 0);
                        int taken = 0;
                        for (int q = 0; q < modes && taken < k.total() / 2; ++q) {
                            if (k[q]) half[q] = 1, ++taken;
                        }
                        ClassicalConvolutionReport r = verify_classical_convolution(
                            u, k, OccupationVector(half));
                        cases.push_back({"trial " + std::to_string(trial) +
                                             " convolution k=" + k.to_string(),
                                         r.max_residual});
                    }
                }
            }
        }
    } else {
        throw UsageError("unknown suite '" + suite + "'");
    }

    double max_residual = 0.0;
    for (const Case& c : cases) max_residual = std::max(max_residual, c.residual);
    const bool passed = max_residual <= tolerance;
    const double wall_ms = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - t0)
                               .count();
    json report = {{"suite", suite},
                   {"seed", seed},
                   {"cases", json::array()},
                   {"max_residual", max_residual},
                   {"passed", passed},
                   {"wall_ms", wall_ms},
                   {"tolerance", tolerance},
                   {"version", kVersion}};
    for (const Case& c : cases) {
        report["cases"].push_back({{"label", c.label}, {"residual", c.residual}});
    }
    write_output(out_path, report.dump(2) + "\n");
    return passed ? 0 : 1;
}

// ---- haar ------------------------------------------------------------------

int cmd_haar(const std::string& quantity, double overlap, long samples,
             std::uint64_t seed, const std::string& out_path) {
    HaarEstimate e =
        haar_monte_carlo(parse_haar_quantity(quantity), overlap, samples, seed);
    const bool passed = std::abs(e.z_score) <= 4.0;
    json report = {{"quantity", quantity}, {"overlap", overlap},
                   {"samples", samples},   {"seed", seed},
                   {"mean", e.mean},       {"std_error", e.std_error},
                   {"exact", e.exact},     {"z_score", e.z_score},
                   {"passed", passed},     {"version", kVersion}};
    write_output(out_path, report.dump(2) + "\n");
    return passed ? 0 : 1;
}

// ---- distribution ----------------------------------------------------------

int cmd_distribution(const std::string& unitary_path, const std::string& gram_path,
                     double overlap, bool overlap_set, const std::string& input,
                     const std::string& species, double tolerance,
                     const std::string& out_path) {
    UnitaryMatrix u{load_matrix_file(unitary_path)};
    GramMatrix s = resolve_gram(gram_path, overlap, overlap_set, u.modes());
    OccupationVector k = parse_occupation(input);
    if (k.modes() != u.modes()) {
        throw UsageError("input occupation length != interferometer modes");
    }

    std::vector<Species> wanted;
    if (species == "all") {
        wanted = {Species::Boson, Species::Fermion, Species::Classical};
    } else if (species == "boson") {
        wanted = {Species::Boson};
    } else if (species == "fermion") {
        wanted = {Species::Fermion};
    } else if (species == "classical") {
        wanted = {Species::Classical};
    } else {
        throw UsageError("unknown species '" + species + "'");
    }
    for (Species sp : wanted) {
        if (sp == Species::Fermion && !k.is_binary()) {
            throw UsageError("fermionic input must be binary (Pauli exclusion)");
        }
    }

    std::map<Species, OutcomeDistribution> dists;
    for (Species sp : wanted) dists[sp] = full_distribution(u, s, k, sp);

    std::string csv = "output";
    for (Species sp : wanted) csv += "," + species_name(sp);
    csv += "\n";
    double worst_defect = 0.0;
    for (const auto& out : weak_compositions(k.total(), k.modes())) {
        csv += "\"" + out.to_string() + "\"";
        for (Species sp : wanted) {
            csv += "," + fmt(dists[sp].probabilities.at(out));
        }
        csv += "\n";
    }
    csv += "\"total\"";
    for (Species sp : wanted) {
        double total = 0.0;
        for (const auto& [out, p] : dists[sp].probabilities) total += p;
        worst_defect = std::max(worst_defect, dists[sp].normalization_defect);
        csv += "," + fmt(total);
    }
    csv += "\n";
    write_output(out_path, csv);
    return worst_defect <= tolerance ? 0 : 1;
}

// ---- qfi -------------------------------------------------------------------

int cmd_qfi(const std::string& unitary_path, const std::string& gram_sweep,
            const std::string& input, long measurements, double tolerance,
            const std::string& out_path) {
    UnitaryMatrix u{load_matrix_file(unitary_path)};
    OccupationVector k = parse_occupation(input);
    if (k.modes() != u.modes()) {
        throw UsageError("input occupation length != interferometer modes");
    }
    if (!k.is_binary()) throw UsageError("qfi input must be binary");
    const int m = static_cast<int>(u.modes());

    std::string csv = "x";
    for (const char* sp : {"boson", "fermion", "classical"}) {
        for (int i = 0; i < m; ++i) {
            csv += std::string(",") + sp + "_qfi_" + std::to_string(i);
        }
        for (int i = 0; i < m; ++i) {
            csv += std::string(",") + sp + "_cr_floor_" + std::to_string(i);
        }
    }
    csv += ",sum_rule_residual\n";

    double worst = 0.0;
    for (double x : parse_grid(gram_sweep)) {
        if (x < 0.0 || x > 1.0) throw UsageError("overlap outside [0, 1]");
        GramMatrix s = GramMatrix::equal_overlap(m, x);
        QfiReport rb = qfi_report(u, s, k, Species::Boson, measurements);
        QfiReport rf = qfi_report(u, s, k, Species::Fermion, measurements);
        QfiReport rc = qfi_report(u, GramMatrix::identity(m), k,
                                  Species::Classical, measurements);
        double residual = 0.0;
        for (int i = 0; i < m; ++i) {
            residual = std::max(residual,
                                std::abs(rb.per_mode_qfi(i) + rf.per_mode_qfi(i) -
                                         2.0 * rc.per_mode_qfi(i)));
        }
        worst = std::max(worst, residual);
        csv += fmt(x);
        for (const QfiReport* r : {&rb, &rf, &rc}) {
            for (int i = 0; i < m; ++i) csv += "," + fmt(r->per_mode_qfi(i));
            for (int i = 0; i < m; ++i) csv += "," + fmt(r->cramer_rao_floor(i));
        }
        csv += "," + fmt(residual) + "\n";
    }
    write_output(out_path, csv);
    return worst <= tolerance ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"boson/fermion/classical interference toolbox"};
    app.require_subcommand(1);
    app.fallthrough();

    std::uint64_t seed = 12345;
    double tolerance = -1.0;  // per-command default when negative
    std::string out_path, format = "csv";
    app.add_option("--seed", seed, "master RNG seed");
    app.add_option("--tolerance", tolerance, "override the pass/fail tolerance");
    app.add_option("--out", out_path, "output file (default stdout)");
    app.add_option("--format", format, "output format hint: csv|json");

    auto* hom = app.add_subcommand("hom", "two-particle beam-splitter sweep");
    std::string grid_spec = "0:1:11";
    double theta = M_PI / 4.0, overlap_single = -1.0;
    hom->add_option("--overlap-grid", grid_spec, "overlap grid start:stop:steps");
    hom->add_option("--overlap", overlap_single, "single overlap value");
    hom->add_option("--theta", theta, "beam-splitter angle (pi/4 = 50:50)");

    auto* verify = app.add_subcommand("verify", "identity verification suites");
    std::string suite;
    int modes = 3, max_total = 3, trials = 10;
    verify->add_option("suite", suite,
                       "complementarity|muir|covariance|macmahon|classical")
        ->required();
    verify->add_option("--modes", modes, "interferometer modes");
    verify->add_option("--max-total", max_total, "max particle total");
    verify->add_option("--trials", trials, "random trials");

    auto* haar = app.add_subcommand("haar", "Haar-average Monte Carlo");
    std::string quantity = "boson-coincidence";
    double haar_overlap = 0.0;
    long samples = 100000;
    haar->add_option("--quantity", quantity,
                     "boson-coincidence|fermion-coincidence|boson-bunch|fermion-bunch");
    haar->add_option("--overlap", haar_overlap, "internal-state overlap x");
    haar->add_option("--samples", samples, "Monte Carlo samples");

    auto* dist = app.add_subcommand("distribution", "full output distribution");
    std::string unitary_path, gram_path, input_spec = "1,1", species = "all";
    double gram_overlap = 0.0;
    dist->add_option("--unitary", unitary_path, "unitary MatrixFile (JSON)")
        ->required();
    dist->add_option("--gram", gram_path, "Gram MatrixFile (JSON)");
    auto* dist_overlap =
        dist->add_option("--overlap", gram_overlap, "equal-overlap Gram shorthand");
    dist->add_option("--input", input_spec, "input occupation, e.g. 1,1,0");
    dist->add_option("--species", species, "all|boson|fermion|classical");

    auto* qfi = app.add_subcommand("qfi", "per-mode QFI / Cramer-Rao sweep");
    std::string qfi_unitary, qfi_sweep = "0:1:11", qfi_input = "1,1";
    long measurements = 1000;
    qfi->add_option("--unitary", qfi_unitary, "unitary MatrixFile (JSON)")
        ->required();
    qfi->add_option("--gram-sweep", qfi_sweep, "overlap grid start:stop:steps");
    qfi->add_option("--input", qfi_input, "binary input occupation");
    qfi->add_option("--measurements", measurements, "repetitions N for the floor");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (hom->parsed()) {
            std::vector<double> grid = overlap_single >= 0.0
                                           ? std::vector<double>{overlap_single}
                                           : parse_grid(grid_spec);
            return cmd_hom(grid, theta, tolerance < 0 ? 1e-12 : tolerance,
                           out_path);
        }
        if (verify->parsed()) {
            const double tol =
                tolerance >= 0 ? tolerance : (suite == "macmahon" ? 1e-9 : 1e-10);
            return cmd_verify(suite, modes, max_total, trials, seed, tol, out_path);
        }
        if (haar->parsed()) {
            return cmd_haar(quantity, haar_overlap, samples, seed, out_path);
        }
        if (dist->parsed()) {
            return cmd_distribution(unitary_path, gram_path, gram_overlap,
                                    dist_overlap->count() > 0, input_spec, species,
                                    tolerance < 0 ? 1e-10 : tolerance, out_path);
        }
        if (qfi->parsed()) {
            return cmd_qfi(qfi_unitary, qfi_sweep, qfi_input, measurements,
                           tolerance < 0 ? 1e-10 : tolerance, out_path);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DimensionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
