#pragma once

#include <stdexcept>
#include <string>

namespace weakwave {

// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid argument (bad Pauli index, non-unit direction, bad grid spec, ...).
struct argument_error : error {
    using error::error;
};

// The dispersion model cannot support the requested operation
// (equal TE/TM slopes make phi_minus constant).
struct model_error : error {
    using error::error;
};

// No solution in the requested domain (e.g. the half-waveplate frequency
// for the given index would be negative).
struct domain_error : error {
    using error::error;
};

// The transfer function is too close to a zero: the weak value is unbounded.
struct singularity_error : error {
    using error::error;
};

// A finite-difference phase step exceeded pi/2; the caller must shrink h.
struct step_error : error {
    using error::error;
};

// A user-supplied callable violated its contract (e.g. a unitary family
// returned an operator that fails the unitarity check).
struct contract_error : error {
    using error::error;
};

// Iterative refinement failed to converge or diverged away from its seed.
struct convergence_error : error {
    using error::error;
};

// Zero with a singular Jacobian (higher-order zero); not refinable by Newton.
struct degenerate_error : error {
    using error::error;
};

// A winding loop passes too near a zero of the response.
struct loop_error : error {
    using error::error;
};

// Unreadable file content; carries the offending 1-based line number.
struct parse_error : error {
    parse_error(const std::string& msg, int line_no)
        : error(msg + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
    int line;
};

// Structurally invalid data (bad header, non-monotone sweep, short table).
struct format_error : error {
    using error::error;
};

// Not enough usable data for the requested computation.
struct data_error : error {
    using error::error;
};

// Filesystem failure; the message carries the path.
struct io_error : error {
    using error::error;
};

}  // namespace weakwave
