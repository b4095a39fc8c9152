#pragma once

// Phase singularities of a complex response over a 2D parameter window:
// sampled phase grids, plaquette winding numbers (discrete residues),
// Newton refinement of transmission zeros with topological charges, and
// the predicted half-waveplate singularity lattice.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "weakwave/weak.hpp"

namespace weakwave {

struct GridSpec {
    double rho_min = 0.0, rho_max = 1.0;
    double eta_min = 0.0, eta_max = 1.0;
    int n_rho = 2, n_eta = 2;

    double rho_at(int i) const;
    double eta_at(int j) const;
    void validate() const;  // throws argument_error
};

struct PhaseGrid {
    GridSpec spec;
    // row-major, i (rho) slow: idx = i * n_eta + j
    std::vector<double> arg_t;  // principal value in (-pi, pi]
    std::vector<double> abs_t;

    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * spec.n_eta + j;
    }
};

PhaseGrid phase_grid(const ResponseFn& t, const GridSpec& g);

struct CellWinding {
    int i = 0, j = 0;   // cell between nodes (i, j) and (i+1, j+1)
    int winding = 0;
};

struct WindingScan {
    std::vector<CellWinding> cells;                 // winding != 0 only
    std::vector<std::pair<int, int>> coarse_cells;  // an edge step >= pi - 0.1
};

// winding per plaquette from wrapped phase differences taken
// counterclockwise (rho horizontal); coarse cells are flagged, not fatal
WindingScan plaquette_windings(const PhaseGrid& pg);

struct SingularityRecord {
    double rho = 0.0, eta = 0.0;
    int charge = 0;
    double residual = 0.0;  // |T| at the refined point
    int iterations = 0;
};

// 2D Newton on (Re T, Im T) with a finite-difference Jacobian; attaches the
// winding charge from a small circle around the converged point. The leash
// bounds how far the iteration may wander from its seed.
SingularityRecord refine_zero(const ResponseFn& t, ParamPoint seed,
                              double tol = 1e-10, int max_iter = 50,
                              double leash = 1.0);

// all (omega^n, beta^m) with phi_minus(omega^n) = (2n+1) pi/2 and
// beta^m = (2m+1) pi/4 inside the window, row-major (omega outer)
std::vector<ParamPoint> predicted_lattice(const DispersionModel& model,
                                          const GridSpec& g);

struct LatticeReport {
    int n_positive = 0, n_negative = 0, net_charge = 0;
    struct Pair {
        std::size_t a = 0, b = 0;  // record indices
        int product = 0;
    };
    std::vector<Pair> neighbor_products;  // lattice-adjacent pairs
    bool alternating = true;              // all products == -1
};

// clusters record coordinates into lattice rows/columns and reports the
// charge products of axis-adjacent neighbors (checkerboard check)
LatticeReport lattice_report(const std::vector<SingularityRecord>& records);

struct Rect {
    double rho_min = 0.0, rho_max = 1.0;
    double eta_min = 0.0, eta_max = 1.0;
};

// total winding along the counterclockwise rectangle boundary; equals the
// sum of enclosed charges. Sampling densifies adaptively; throws loop_error
// if the loop passes too near a zero.
int boundary_winding(const ResponseFn& t, const Rect& loop, int samples = 512,
                     double eps_sing = k_eps_singular);

struct ModelPerturbation {
    double d_slope_te = 0.0, d_intercept_te = 0.0;
    double d_slope_tm = 0.0, d_intercept_tm = 0.0;
};

DispersionModel perturbed(const DispersionModel& m, const ModelPerturbation& d);

// boundary winding of the default scenario before and after the perturbation
std::pair<int, int> perturb_and_conserve(const DispersionModel& model,
                                         const ModelPerturbation& delta,
                                         const Rect& loop, int samples = 512);

struct ScanOptions {
    double residual_tol = 1e-10;
    int max_iter = 50;
    bool subdivide_coarse = true;  // reclassify coarse cells on a finer loop
};

struct ScanResult {
    std::vector<SingularityRecord> records;  // row-major (rho, then eta)
    std::vector<std::pair<ParamPoint, std::string>> failures;  // seed, reason
    int n_coarse_cells = 0;
    int n_candidates = 0;
};

// full pipeline: sample -> classify plaquettes -> refine one seed per
// candidate cell (at its min-|T| corner) -> dedupe and filter by residual
ScanResult scan_singularities(const ResponseFn& t, const GridSpec& g,
                              const ScanOptions& opts = {});

}  // namespace weakwave
