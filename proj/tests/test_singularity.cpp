#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "weakwave/singularity.hpp"

using namespace weakwave;

namespace {

const Complex kI{0.0, 1.0};
constexpr double kPi = 3.14159265358979323846;
constexpr double kOmegaS0 = 7.853981633974483;   // 2.5 pi
constexpr double kOmegaS1 = 23.561944901923447;  // 7.5 pi

ResponseFn reference_response() {
    return make_response(Scenario::default_for(DispersionModel::reference()));
}

// independent brute-force winding oracle: wrapped phase sum on an N-point
// circle, no shared code with the library path
int circle_winding_oracle(const ResponseFn& t, double rho, double eta, double r,
                          int n = 400) {
    double sum = 0.0;
    double prev = std::arg(t({rho + r, eta}));
    for (int k = 1; k <= n; ++k) {
        const double a = 2.0 * kPi * k / n;
        const double cur = std::arg(t({rho + r * std::cos(a), eta + r * std::sin(a)}));
        double d = cur - prev;
        while (d > kPi) d -= 2.0 * kPi;
        while (d <= -kPi) d += 2.0 * kPi;
        sum += d;
        prev = cur;
    }
    return static_cast<int>(std::lround(sum / (2.0 * kPi)));
}

}  // namespace

TEST_CASE("phase grid of a constant response") {
    const ResponseFn one = [](ParamPoint) { return Complex{1.0}; };
    const PhaseGrid pg = phase_grid(one, {0.0, 1.0, 0.0, 1.0, 5, 4});
    CHECK(pg.arg_t.size() == 20);
    CHECK(pg.abs_t.size() == 20);
    for (const double a : pg.arg_t) CHECK(a == 0.0);
    for (const double m : pg.abs_t) CHECK(m == 1.0);
}

TEST_CASE("phase grid stores principal values that wrap once over 3 pi") {
    const ResponseFn t = [](ParamPoint p) { return std::exp(kI * p.rho); };
    const GridSpec g{0.0, 3.0 * kPi, 0.0, 1.0, 200, 2};
    const PhaseGrid pg = phase_grid(t, g);
    int wraps = 0;
    for (int i = 0; i + 1 < g.n_rho; ++i) {
        const double d = pg.arg_t[pg.idx(i + 1, 0)] - pg.arg_t[pg.idx(i, 0)];
        if (std::abs(d) > kPi) ++wraps;
        CHECK(pg.arg_t[pg.idx(i, 0)] <= kPi);
        CHECK(pg.arg_t[pg.idx(i, 0)] > -kPi);
    }
    CHECK(wraps == 1);
}

TEST_CASE("near-zero neighborhoods of the reference model form 8 islands") {
    const PhaseGrid pg =
        phase_grid(reference_response(), {1.0, 62.0, 0.1, 3.0, 600, 300});

    // count 4-connected components of {|T| < 0.02} with a flood fill
    const int nr = pg.spec.n_rho, ne = pg.spec.n_eta;
    std::vector<char> low(nr * ne), seen(nr * ne);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < ne; ++j)
            low[pg.idx(i, j)] = pg.abs_t[pg.idx(i, j)] < 0.02;

    int components = 0;
    std::vector<std::pair<int, int>> stack;
    for (int i = 0; i < nr; ++i) {
        for (int j = 0; j < ne; ++j) {
            if (!low[pg.idx(i, j)] || seen[pg.idx(i, j)]) continue;
            ++components;
            stack.push_back({i, j});
            seen[pg.idx(i, j)] = 1;
            while (!stack.empty()) {
                const auto [ci, cj] = stack.back();
                stack.pop_back();
                const int di[] = {1, -1, 0, 0}, dj[] = {0, 0, 1, -1};
                for (int k = 0; k < 4; ++k) {
                    const int ni = ci + di[k], nj = cj + dj[k];
                    if (ni < 0 || ni >= nr || nj < 0 || nj >= ne) continue;
                    if (!low[pg.idx(ni, nj)] || seen[pg.idx(ni, nj)]) continue;
                    seen[pg.idx(ni, nj)] = 1;
                    stack.push_back({ni, nj});
                }
            }
        }
    }
    CHECK(components == 8);
}

TEST_CASE("canonical vortex and antivortex plaquette windings") {
    const ResponseFn vortex = [](ParamPoint p) { return Complex{p.rho, p.eta}; };
    const ResponseFn anti = [](ParamPoint p) { return Complex{p.rho, -p.eta}; };
    const GridSpec g{-0.53, 0.47, -0.51, 0.49, 11, 11};

    const WindingScan wv = plaquette_windings(phase_grid(vortex, g));
    REQUIRE(wv.cells.size() == 1);
    CHECK(wv.cells[0].winding == 1);

    const WindingScan wa = plaquette_windings(phase_grid(anti, g));
    REQUIRE(wa.cells.size() == 1);
    CHECK(wa.cells[0].winding == -1);
}

TEST_CASE("lattice cells carry unit windings of opposite sign, matching the oracle") {
    const ResponseFn t = reference_response();

    auto cell_winding = [&](double w0, double b0) {
        const GridSpec g{w0 - 0.015, w0 + 0.015, b0 - 0.015, b0 + 0.015, 4, 4};
        const WindingScan ws = plaquette_windings(phase_grid(t, g));
        REQUIRE(ws.cells.size() == 1);
        return ws.cells[0].winding;
    };

    const int w_quarter = cell_winding(kOmegaS0, kPi / 4);
    const int w_three_quarter = cell_winding(kOmegaS0, 3.0 * kPi / 4);
    CHECK(std::abs(w_quarter) == 1);
    CHECK(std::abs(w_three_quarter) == 1);
    CHECK(w_quarter == -w_three_quarter);

    CHECK(w_quarter == circle_winding_oracle(t, kOmegaS0, kPi / 4, 0.01));
    CHECK(w_three_quarter ==
          circle_winding_oracle(t, kOmegaS0, 3.0 * kPi / 4, 0.01));
}

TEST_CASE("charge quantization at grid spacing 0.02") {
    const ResponseFn t = reference_response();
    // spans two singularities and the phase-slip arcs between them
    const GridSpec g{6.9, 8.9, 0.3, 1.3, 101, 51};
    const WindingScan ws = plaquette_windings(phase_grid(t, g));
    CHECK(!ws.cells.empty());
    for (const auto& c : ws.cells) CHECK(std::abs(c.winding) == 1);
}

TEST_CASE("refine_zero lands on the lattice points") {
    const ResponseFn t = reference_response();

    const SingularityRecord r1 = refine_zero(t, {7.85, 0.78});
    CHECK(std::abs(r1.rho - kOmegaS0) <= 1e-8);
    CHECK(std::abs(r1.eta - kPi / 4) <= 1e-8);
    CHECK(r1.residual <= 1e-10);
    CHECK(std::abs(r1.charge) == 1);
    CHECK(r1.charge == circle_winding_oracle(t, r1.rho, r1.eta, 0.01));

    const SingularityRecord r2 = refine_zero(t, {23.56, 2.36});
    CHECK(std::abs(r2.rho - kOmegaS1) <= 1e-8);
    CHECK(std::abs(r2.eta - 3.0 * kPi / 4) <= 1e-8);

    CHECK_THROWS_AS(refine_zero(t, {5.0, 0.5}), convergence_error);
}

TEST_CASE("predicted lattice enumerates the half-waveplate grid") {
    const DispersionModel m = DispersionModel::reference();

    const auto pts = predicted_lattice(m, {0.0, 63.0, 0.0, kPi, 2, 2});
    REQUIRE(pts.size() == 8);
    const double omegas[] = {kOmegaS0, kOmegaS1, 39.269908169872414,
                             54.977871437821380};
    const double betas[] = {kPi / 4, 3.0 * kPi / 4};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 2; ++j) {
            const ParamPoint& p = pts[2 * i + j];  // row-major, omega outer
            CHECK(std::abs(p.rho - omegas[i]) <= 1e-9);
            CHECK(std::abs(p.eta - betas[j]) <= 1e-9);
        }
    }

    CHECK(predicted_lattice(m, {0.0, 10.0, 0.0, kPi / 2, 2, 2}).size() == 1);
    CHECK(predicted_lattice(m, {0.0, 5.0, 0.0, kPi / 2, 2, 2}).empty());

    const DispersionModel degenerate{1.0, 0.0, 1.0, 0.0};
    CHECK_THROWS_AS(predicted_lattice(degenerate, {0.0, 1.0, 0.0, 1.0, 2, 2}),
                    model_error);
}

TEST_CASE("lattice report: vortex-antivortex pairs, single vortex, empty input") {
    // the refined lattice pairs up across beta: each point's nearest
    // neighbor is its opposite-charge partner half a turn away
    std::vector<SingularityRecord> recs;
    const double omegas[] = {kOmegaS0, kOmegaS1, 39.269908169872414,
                             54.977871437821380};
    const double betas[] = {kPi / 4, 3.0 * kPi / 4};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 2; ++j)
            recs.push_back({omegas[i], betas[j], (j == 0) ? -1 : 1, 1e-12, 3});

    const LatticeReport rep = lattice_report(recs);
    CHECK(rep.n_positive == 4);
    CHECK(rep.n_negative == 4);
    CHECK(rep.net_charge == 0);
    CHECK(rep.alternating);
    CHECK(rep.neighbor_products.size() == 4);
    for (const auto& pr : rep.neighbor_products) CHECK(pr.product == -1);

    const LatticeReport single = lattice_report({{1.0, 1.0, 1, 1e-12, 2}});
    CHECK(single.net_charge == 1);
    CHECK(single.neighbor_products.empty());

    const LatticeReport empty = lattice_report({});
    CHECK(empty.net_charge == 0);
    CHECK(empty.n_positive == 0);
    CHECK(empty.n_negative == 0);
}

TEST_CASE("boundary winding counts enclosed charges") {
    const ResponseFn t = reference_response();

    // the full 8-point lattice is charge-neutral
    CHECK(boundary_winding(t, {1.0, 62.0, 0.1, 3.0}) == 0);

    // a box around a single singularity carries its charge
    const SingularityRecord rec = refine_zero(t, {7.85, 0.78});
    const int w = boundary_winding(t, {kOmegaS0 - 1.0, kOmegaS0 + 1.0,
                                       kPi / 4 - 0.3, kPi / 4 + 0.3});
    CHECK(std::abs(w) == 1);
    CHECK(w == rec.charge);

    // empty box
    CHECK(boundary_winding(t, {2.0, 5.0, 0.2, 1.0}) == 0);

    // a loop through the zero cannot be classified
    CHECK_THROWS_AS(
        boundary_winding(t, {kOmegaS0 - 1.0, kOmegaS0 + 1.0, kPi / 4, kPi / 2}),
        loop_error);

    CHECK_THROWS_AS(boundary_winding(t, {2.0, 1.0, 0.0, 1.0}), argument_error);
}

TEST_CASE("winding is conserved under model perturbations") {
    const DispersionModel m = DispersionModel::reference();
    const Rect loop{1.0, 62.0, 0.1, 3.0};

    const auto [b1, a1] = perturb_and_conserve(m, {0.0, 0.05, 0.0, 0.0}, loop);
    CHECK(b1 == 0);
    CHECK(a1 == 0);

    const auto [b2, a2] = perturb_and_conserve(m, {0.01, 0.0, 0.0, 0.0}, loop);
    CHECK(b2 == 0);
    CHECK(a2 == 0);

    const auto [b3, a3] = perturb_and_conserve(m, {}, loop);
    CHECK(b3 == a3);

    // same checks around a single charge
    const Rect one{kOmegaS0 - 1.0, kOmegaS0 + 1.0, kPi / 4 - 0.3, kPi / 4 + 0.3};
    const auto [b4, a4] = perturb_and_conserve(m, {0.0, 0.02, 0.0, -0.03}, one);
    CHECK(b4 == a4);
    CHECK(std::abs(b4) == 1);
}

TEST_CASE("boundary winding equals the sum of enclosed refined charges") {
    const ResponseFn t = reference_response();
    const ScanResult scan =
        scan_singularities(t, {1.0, 62.0, 0.1, 3.0, 300, 150});
    REQUIRE(scan.records.size() == 8);

    std::mt19937 rng(31);
    std::uniform_real_distribution<double> ur(1.0, 62.0), ue(0.1, 3.0);
    int tested = 0;
    while (tested < 8) {
        Rect r{ur(rng), ur(rng), ue(rng), ue(rng)};
        if (r.rho_min > r.rho_max) std::swap(r.rho_min, r.rho_max);
        if (r.eta_min > r.eta_max) std::swap(r.eta_min, r.eta_max);
        if (r.rho_max - r.rho_min < 0.5 || r.eta_max - r.eta_min < 0.1) continue;

        // keep the boundary clear of the lattice zeros
        bool clear = true;
        int enclosed = 0;
        for (const auto& rec : scan.records) {
            const double d_rho =
                std::min(std::abs(rec.rho - r.rho_min), std::abs(rec.rho - r.rho_max));
            const double d_eta =
                std::min(std::abs(rec.eta - r.eta_min), std::abs(rec.eta - r.eta_max));
            const bool inside_rho = rec.rho > r.rho_min && rec.rho < r.rho_max;
            const bool inside_eta = rec.eta > r.eta_min && rec.eta < r.eta_max;
            if ((inside_rho && d_eta < 0.05) || (inside_eta && d_rho < 0.05)) {
                clear = false;
                break;
            }
            if (inside_rho && inside_eta) enclosed += rec.charge;
        }
        if (!clear) continue;
        ++tested;
        CHECK(boundary_winding(t, r) == enclosed);
    }
}

TEST_CASE("scan pipeline recovers the full lattice with correct topology") {
    const ResponseFn t = reference_response();
    const ScanResult scan = scan_singularities(t, {0.0, 63.0, 0.0, kPi, 300, 150});

    REQUIRE(scan.records.size() == 8);
    const auto predicted = predicted_lattice(DispersionModel::reference(),
                                             {0.0, 63.0, 0.0, kPi, 2, 2});
    for (std::size_t k = 0; k < 8; ++k) {
        CHECK(std::abs(scan.records[k].rho - predicted[k].rho) <= 1e-6);
        CHECK(std::abs(scan.records[k].eta - predicted[k].eta) <= 1e-6);
        CHECK(scan.records[k].residual <= 1e-10);
        CHECK(std::abs(scan.records[k].charge) == 1);
    }

    const LatticeReport rep = lattice_report(scan.records);
    CHECK(rep.net_charge == 0);
    CHECK(rep.alternating);
    CHECK(rep.neighbor_products.size() == 4);

    // charges agree with the independent circle oracle at every point
    for (const auto& rec : scan.records)
        CHECK(rec.charge == circle_winding_oracle(t, rec.rho, rec.eta, 0.01));
}

TEST_CASE("saddle points sit between same-beta singularities") {
    const ResponseFn t = reference_response();
    // segment between (omega_s0, pi/4) and (omega_s1, pi/4), clear of both ends
    std::vector<double> norm;
    for (int k = 0; k <= 40; ++k) {
        const double f = 0.1 + 0.8 * k / 40.0;
        const ParamPoint p{kOmegaS0 + f * (kOmegaS1 - kOmegaS0), kPi / 4};
        const double gr = pointer_from_response(t, p, Axis::rho).value.real();
        const double ge = pointer_from_response(t, p, Axis::eta).value.real();
        norm.push_back(std::hypot(gr, ge));
    }
    const auto min_it = std::min_element(norm.begin(), norm.end());
    CHECK(min_it != norm.begin());
    CHECK(min_it != norm.end() - 1);
    CHECK(*min_it < norm.front());
    CHECK(*min_it < norm.back());
}
