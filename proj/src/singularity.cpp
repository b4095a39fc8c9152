#include "weakwave/singularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace weakwave {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kCoarseEdge = kPi - 0.1;

double wrap_pi(double a) {
    double w = std::remainder(a, 2.0 * kPi);
    if (w <= -kPi) w += 2.0 * kPi;
    return w;
}

double principal_arg(Complex v) {
    double a = std::arg(v);  // [-pi, pi]
    if (a <= -kPi) a += 2.0 * kPi;
    return a;
}

// winding of T around a closed polyline; densifies by inserting midpoints
// until every wrapped step is below pi/2
int closed_path_winding(const ResponseFn& t, std::vector<ParamPoint> pts,
                        double eps_sing, const char* what) {
    for (int attempt = 0; attempt < 14; ++attempt) {
        std::vector<double> args(pts.size());
        bool too_coarse = false;
        for (std::size_t k = 0; k < pts.size(); ++k) {
            const Complex v = t(pts[k]);
            if (std::abs(v) <= eps_sing)
                throw loop_error(std::string(what) + " passes too near a zero");
            args[k] = principal_arg(v);
        }
        double sum = 0.0;
        for (std::size_t k = 0; k < pts.size(); ++k) {
            const double d = wrap_pi(args[(k + 1) % pts.size()] - args[k]);
            if (std::abs(d) >= kPi / 2.0) {
                too_coarse = true;
                break;
            }
            sum += d;
        }
        if (!too_coarse) return static_cast<int>(std::lround(sum / (2.0 * kPi)));

        if (pts.size() > (1u << 18))
            throw loop_error(std::string(what) +
                             ": cannot resolve the phase along the loop");
        std::vector<ParamPoint> finer;
        finer.reserve(2 * pts.size());
        for (std::size_t k = 0; k < pts.size(); ++k) {
            const ParamPoint a = pts[k];
            const ParamPoint b = pts[(k + 1) % pts.size()];
            finer.push_back(a);
            finer.push_back({0.5 * (a.rho + b.rho), 0.5 * (a.eta + b.eta)});
        }
        pts = std::move(finer);
    }
    throw loop_error(std::string(what) + ": loop refinement did not settle");
}

std::vector<ParamPoint> rectangle_path(const Rect& r, int per_edge) {
    std::vector<ParamPoint> pts;
    pts.reserve(4 * per_edge);
    for (int k = 0; k < per_edge; ++k) {  // bottom, left to right
        const double f = static_cast<double>(k) / per_edge;
        pts.push_back({r.rho_min + f * (r.rho_max - r.rho_min), r.eta_min});
    }
    for (int k = 0; k < per_edge; ++k) {  // right, bottom to top
        const double f = static_cast<double>(k) / per_edge;
        pts.push_back({r.rho_max, r.eta_min + f * (r.eta_max - r.eta_min)});
    }
    for (int k = 0; k < per_edge; ++k) {  // top, right to left
        const double f = static_cast<double>(k) / per_edge;
        pts.push_back({r.rho_max - f * (r.rho_max - r.rho_min), r.eta_max});
    }
    for (int k = 0; k < per_edge; ++k) {  // left, top to bottom
        const double f = static_cast<double>(k) / per_edge;
        pts.push_back({r.rho_min, r.eta_max - f * (r.eta_max - r.eta_min)});
    }
    return pts;
}

}  // namespace

double GridSpec::rho_at(int i) const {
    return rho_min + (rho_max - rho_min) * i / (n_rho - 1);
}

double GridSpec::eta_at(int j) const {
    return eta_min + (eta_max - eta_min) * j / (n_eta - 1);
}

void GridSpec::validate() const {
    if (!(rho_max > rho_min) || !(eta_max > eta_min))
        throw argument_error("grid window must have max > min on both axes");
    if (n_rho < 2 || n_eta < 2)
        throw argument_error("grid needs at least 2 nodes per axis");
}

PhaseGrid phase_grid(const ResponseFn& t, const GridSpec& g) {
    g.validate();
    PhaseGrid pg;
    pg.spec = g;
    pg.arg_t.resize(static_cast<std::size_t>(g.n_rho) * g.n_eta);
    pg.abs_t.resize(pg.arg_t.size());
    for (int i = 0; i < g.n_rho; ++i) {
        for (int j = 0; j < g.n_eta; ++j) {
            const Complex v = t({g.rho_at(i), g.eta_at(j)});
            pg.arg_t[pg.idx(i, j)] = principal_arg(v);
            pg.abs_t[pg.idx(i, j)] = std::abs(v);
        }
    }
    return pg;
}

WindingScan plaquette_windings(const PhaseGrid& pg) {
    WindingScan out;
    const GridSpec& g = pg.spec;
    for (int i = 0; i + 1 < g.n_rho; ++i) {
        for (int j = 0; j + 1 < g.n_eta; ++j) {
            // counterclockwise: (i,j) -> (i+1,j) -> (i+1,j+1) -> (i,j+1)
            const double a0 = pg.arg_t[pg.idx(i, j)];
            const double a1 = pg.arg_t[pg.idx(i + 1, j)];
            const double a2 = pg.arg_t[pg.idx(i + 1, j + 1)];
            const double a3 = pg.arg_t[pg.idx(i, j + 1)];
            const double d0 = wrap_pi(a1 - a0);
            const double d1 = wrap_pi(a2 - a1);
            const double d2 = wrap_pi(a3 - a2);
            const double d3 = wrap_pi(a0 - a3);
            const bool coarse = std::abs(d0) >= kCoarseEdge ||
                                std::abs(d1) >= kCoarseEdge ||
                                std::abs(d2) >= kCoarseEdge ||
                                std::abs(d3) >= kCoarseEdge;
            if (coarse) out.coarse_cells.emplace_back(i, j);
            const int w =
                static_cast<int>(std::lround((d0 + d1 + d2 + d3) / (2.0 * kPi)));
            if (w != 0) out.cells.push_back({i, j, w});
        }
    }
    return out;
}

SingularityRecord refine_zero(const ResponseFn& t, ParamPoint seed, double tol,
                              int max_iter, double leash) {
    ParamPoint x = seed;
    double last_step = 0.0;

    int iter = 0;
    Complex tv = t({x.rho, x.eta});
    while (std::abs(tv) > tol) {
        if (iter >= max_iter)
            throw convergence_error("zero refinement did not converge in " +
                                    std::to_string(max_iter) + " iterations");

        const double hr = 1e-6 * std::max(1.0, std::abs(x.rho));
        const double he = 1e-6 * std::max(1.0, std::abs(x.eta));
        const Complex dtr =
            (t({x.rho + hr, x.eta}) - t({x.rho - hr, x.eta})) / (2.0 * hr);
        const Complex dte =
            (t({x.rho, x.eta + he}) - t({x.rho, x.eta - he})) / (2.0 * he);

        // J is the real Jacobian of (Re T, Im T)
        const double j00 = dtr.real(), j01 = dte.real();
        const double j10 = dtr.imag(), j11 = dte.imag();
        const double det = j00 * j11 - j01 * j10;
        const double scale = std::max({std::abs(j00), std::abs(j01),
                                       std::abs(j10), std::abs(j11), 1e-30});
        if (std::abs(det) <= 1e-12 * scale * scale)
            throw degenerate_error(
                "singular Jacobian: zero is degenerate or absent");

        const double fr = tv.real(), fi = tv.imag();
        const double drho = -(j11 * fr - j01 * fi) / det;
        const double deta = -(-j10 * fr + j00 * fi) / det;
        x.rho += drho;
        x.eta += deta;
        last_step = std::hypot(drho, deta);
        ++iter;

        if (std::abs(x.rho - seed.rho) > leash || std::abs(x.eta - seed.eta) > leash)
            throw convergence_error("refinement diverged away from its seed");
        tv = t({x.rho, x.eta});
    }

    // charge from a small circle around the converged point
    const double radius = std::max(
        2.0 * last_step, 1e-6 * std::max({1.0, std::abs(x.rho), std::abs(x.eta)}));
    std::vector<ParamPoint> circle;
    const int n_circle = 64;
    circle.reserve(n_circle);
    for (int k = 0; k < n_circle; ++k) {
        const double a = 2.0 * kPi * k / n_circle;
        circle.push_back({x.rho + radius * std::cos(a), x.eta + radius * std::sin(a)});
    }
    const int charge = closed_path_winding(t, std::move(circle), tol * 1e-2,
                                           "charge circle");

    return {x.rho, x.eta, charge, std::abs(tv), iter};
}

std::vector<ParamPoint> predicted_lattice(const DispersionModel& model,
                                          const GridSpec& g) {
    g.validate();
    const double s = model.slope_minus();
    if (s == 0.0)
        throw model_error("equal TE/TM slopes: no half-waveplate lattice exists");
    const double ic = model.intercept_minus();

    // odd k with omega(k) = (k pi/2 - ic)/s inside [rho_min, rho_max]
    double lo = (s * g.rho_min + ic) / (kPi / 2.0);
    double hi = (s * g.rho_max + ic) / (kPi / 2.0);
    if (lo > hi) std::swap(lo, hi);
    std::vector<double> omegas;
    for (long k = static_cast<long>(std::ceil(lo)); k <= static_cast<long>(std::floor(hi)); ++k) {
        if ((k % 2 + 2) % 2 != 1) continue;  // odd multiples of pi/2 only
        const double w = (k * kPi / 2.0 - ic) / s;
        if (w >= g.rho_min && w <= g.rho_max) omegas.push_back(w);
    }
    std::sort(omegas.begin(), omegas.end());

    std::vector<double> betas;
    const long jlo = static_cast<long>(std::ceil(g.eta_min / (kPi / 4.0)));
    const long jhi = static_cast<long>(std::floor(g.eta_max / (kPi / 4.0)));
    for (long j = jlo; j <= jhi; ++j) {
        if ((j % 2 + 2) % 2 != 1) continue;
        const double b = j * kPi / 4.0;
        if (b >= g.eta_min && b <= g.eta_max) betas.push_back(b);
    }

    std::vector<ParamPoint> out;
    out.reserve(omegas.size() * betas.size());
    for (const double w : omegas)
        for (const double b : betas) out.push_back({w, b});
    return out;
}

LatticeReport lattice_report(const std::vector<SingularityRecord>& records) {
    LatticeReport rep;
    for (const auto& r : records) {
        if (r.charge > 0)
            ++rep.n_positive;
        else if (r.charge < 0)
            ++rep.n_negative;
        rep.net_charge += r.charge;
    }
    if (records.size() < 2) return rep;

    // nearest neighbors by Euclidean distance in the (rho, eta) plane,
    // with a relative band to catch ties
    auto dist = [&](std::size_t a, std::size_t b) {
        return std::hypot(records[a].rho - records[b].rho,
                          records[a].eta - records[b].eta);
    };
    std::vector<double> dmin(records.size(),
                             std::numeric_limits<double>::infinity());
    for (std::size_t a = 0; a < records.size(); ++a)
        for (std::size_t b = 0; b < records.size(); ++b)
            if (a != b) dmin[a] = std::min(dmin[a], dist(a, b));

    for (std::size_t a = 0; a < records.size(); ++a) {
        for (std::size_t b = a + 1; b < records.size(); ++b) {
            const double d = dist(a, b);
            const bool nearest =
                d <= dmin[a] * (1.0 + 1e-6) || d <= dmin[b] * (1.0 + 1e-6);
            if (!nearest) continue;
            const int prod = records[a].charge * records[b].charge;
            rep.neighbor_products.push_back({a, b, prod});
            if (prod != -1) rep.alternating = false;
        }
    }
    return rep;
}

int boundary_winding(const ResponseFn& t, const Rect& loop, int samples,
                     double eps_sing) {
    if (!(loop.rho_max > loop.rho_min) || !(loop.eta_max > loop.eta_min))
        throw argument_error("winding loop must have max > min on both axes");
    const int per_edge = std::max(2, samples / 4);
    return closed_path_winding(t, rectangle_path(loop, per_edge), eps_sing,
                               "boundary loop");
}

DispersionModel perturbed(const DispersionModel& m, const ModelPerturbation& d) {
    return {m.slope_te + d.d_slope_te, m.intercept_te + d.d_intercept_te,
            m.slope_tm + d.d_slope_tm, m.intercept_tm + d.d_intercept_tm};
}

std::pair<int, int> perturb_and_conserve(const DispersionModel& model,
                                         const ModelPerturbation& delta,
                                         const Rect& loop, int samples) {
    const ResponseFn before = make_response(Scenario::default_for(model));
    const ResponseFn after =
        make_response(Scenario::default_for(perturbed(model, delta)));
    return {boundary_winding(before, loop, samples),
            boundary_winding(after, loop, samples)};
}

ScanResult scan_singularities(const ResponseFn& t, const GridSpec& g,
                              const ScanOptions& opts) {
    ScanResult result;
    const PhaseGrid pg = phase_grid(t, g);
    const WindingScan ws = plaquette_windings(pg);
    result.n_coarse_cells = static_cast<int>(ws.coarse_cells.size());

    std::set<std::pair<int, int>> coarse(ws.coarse_cells.begin(),
                                         ws.coarse_cells.end());
    std::set<std::pair<int, int>> candidates;
    for (const auto& c : ws.cells) {
        if (opts.subdivide_coarse && coarse.count({c.i, c.j})) continue;
        candidates.insert({c.i, c.j});
    }
    if (opts.subdivide_coarse) {
        // coarse cells are reclassified on a subdivided boundary loop
        for (const auto& [i, j] : coarse) {
            const Rect cell{g.rho_at(i), g.rho_at(i + 1), g.eta_at(j),
                            g.eta_at(j + 1)};
            try {
                if (boundary_winding(t, cell, 16) != 0) candidates.insert({i, j});
            } catch (const loop_error&) {
                candidates.insert({i, j});  // loop grazed a zero: let Newton decide
            }
        }
    }
    result.n_candidates = static_cast<int>(candidates.size());

    const double cell_rho = (g.rho_max - g.rho_min) / (g.n_rho - 1);
    const double cell_eta = (g.eta_max - g.eta_min) / (g.n_eta - 1);
    const double leash = 10.0 * std::max(cell_rho, cell_eta);

    for (const auto& [i, j] : candidates) {
        // seed at the min-|T| corner of the cell
        ParamPoint seed{g.rho_at(i), g.eta_at(j)};
        double best = pg.abs_t[pg.idx(i, j)];
        for (const auto& [ci, cj] :
             {std::pair{i + 1, j}, std::pair{i, j + 1}, std::pair{i + 1, j + 1}}) {
            if (pg.abs_t[pg.idx(ci, cj)] < best) {
                best = pg.abs_t[pg.idx(ci, cj)];
                seed = {g.rho_at(ci), g.eta_at(cj)};
            }
        }
        try {
            const SingularityRecord rec =
                refine_zero(t, seed, opts.residual_tol, opts.max_iter, leash);
            const bool duplicate =
                std::any_of(result.records.begin(), result.records.end(),
                            [&](const SingularityRecord& o) {
                                return std::abs(o.rho - rec.rho) <=
                                           1e-6 * std::max(1.0, std::abs(rec.rho)) &&
                                       std::abs(o.eta - rec.eta) <=
                                           1e-6 * std::max(1.0, std::abs(rec.eta));
                            });
            if (!duplicate && rec.residual <= opts.residual_tol)
                result.records.push_back(rec);
        } catch (const error& e) {
            result.failures.emplace_back(seed, e.what());
        }
    }

    // row-major order; refined rho values carry ~1e-12 noise, so runs of
    // equal-within-tolerance rho are re-sorted by eta
    std::sort(result.records.begin(), result.records.end(),
              [](const SingularityRecord& a, const SingularityRecord& b) {
                  if (a.rho != b.rho) return a.rho < b.rho;
                  return a.eta < b.eta;
              });
    std::size_t run_start = 0;
    for (std::size_t k = 1; k <= result.records.size(); ++k) {
        const bool new_run =
            k == result.records.size() ||
            result.records[k].rho - result.records[run_start].rho >
                1e-6 * std::max(1.0, std::abs(result.records[k].rho));
        if (new_run) {
            std::sort(result.records.begin() + run_start,
                      result.records.begin() + k,
                      [](const SingularityRecord& a, const SingularityRecord& b) {
                          return a.eta < b.eta;
                      });
            run_start = k;
        }
    }
    return result;
}

}  // namespace weakwave
