#pragma once

// CSV formats for complex transmission sweeps, pointer curves and phase
// grids. Files are UTF-8 with LF line endings; '#'-prefixed comment lines
// are permitted before the data; numbers are printed with 17 significant
// digits so that values round-trip bit-exactly, with a locale-independent
// '.' decimal separator.

#include <string>
#include <vector>

#include "weakwave/singularity.hpp"

namespace weakwave {

struct SweepRow {
    double omega = 0.0;  // rad/ns
    Complex t;
};

struct SweepTable {
    double beta = 0.0;  // rad, carried in a '# beta_rad=' comment
    std::vector<SweepRow> rows;  // strictly increasing omega, >= 3 rows
};

// header `omega,re_t,im_t`; pass with_ghz_column to append a convenience
// `f_ghz` column (readers ignore it)
void write_sweep_csv(const SweepTable& table, const std::string& path,
                     bool with_ghz_column = false);

// accepts `omega,re_t,im_t[,f_ghz]` and the convenience form
// `omega,phase_rad,magnitude` (converted to complex on load)
SweepTable read_sweep_csv(const std::string& path);

struct PointerRow {
    double x = 0.0;
    double re = 0.0, im = 0.0;
    bool gap = false;  // |T| below the singular guard; re/im meaningless
};

// A pointer curve holds one weak-value component sampled along a parameter
// line: `pointer` names the component (frequency, angle, or an arbitrary
// unit direction), `scan` names the coordinate that varies along the rows.
struct PointerCurve {
    enum class Pointer { omega, beta, direction };
    enum class ScanVar { omega, beta };
    Pointer pointer = Pointer::omega;
    ScanVar scan = ScanVar::omega;
    double fixed = 0.0;  // the held coordinate of the line
    double dir_rho = 0.0, dir_eta = 0.0;  // unit direction when applicable
    std::vector<PointerRow> rows;
    // optional closed-form column; empty or one value per row
    std::vector<double> analytic;
};

// central differences of unwrapped arg T and ln |T| per interior row;
// rows with |T| < eps_sing become gap markers, their neighbors fall back
// to one-sided differences
PointerCurve ingest_pointer_curve(const SweepTable& table,
                                  double eps_sing = k_eps_singular);

// gap rows serialize as `x,nan,nan`; omega-axis curves get an `f_ghz`
// convenience column
void write_pointer_csv(const PointerCurve& curve, const std::string& path);

// header comments `# rho_min=...` etc., then rows `i,j,arg_t,abs_t`
// in row-major order (i indexes rho)
void write_phase_grid(const PhaseGrid& pg, const std::string& path);
PhaseGrid read_phase_grid(const std::string& path);

// rows `rho,eta,charge,residual,f_ghz`
void write_singularity_csv(const std::vector<SingularityRecord>& records,
                           const std::string& path);

}  // namespace weakwave
