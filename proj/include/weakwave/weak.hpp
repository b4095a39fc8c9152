#pragma once

// Weak values of a two-parameter unitary family and their response-function
// pointers.
//
// For U(rho, eta) with response T(rho, eta) = <psi_f| U |psi_in>, the
// generators A_j = -i (d_j U) U^dag are Hermitian and, away from zeros of T,
// the weak value
//     <psi_f| A_j U |psi_in> / <psi_f| U |psi_in>
// equals the complex pointer
//     d_j[arg T] - i d_j[ln |T|].
// Both routes are implemented independently; the second needs only the
// scalar response, so it applies equally to measured sweep data.

#include <functional>

#include "weakwave/waveplate.hpp"

namespace weakwave {

struct ParamPoint {
    double rho = 0.0;  // here: omega, rad/ns
    double eta = 0.0;  // here: beta, rad
};

using ResponseFn = std::function<Complex(ParamPoint)>;
using UnitaryFamily = std::function<Operator2(ParamPoint)>;

enum class Axis { rho, eta };
enum class Stencil { central2, central4 };

// |denominator| guard below which a weak value counts as unbounded
inline constexpr double k_eps_singular = 1e-10;
// |cos 2 beta| guard for the secant in the group-delay closed form
inline constexpr double k_eps_secant = 1e-9;
// construction-time unitarity tolerance
inline constexpr double k_eps_unitary = 1e-12;

struct DiffSettings {
    double step_rho = 1e-5;
    double step_eta = 1e-5;
    Stencil stencil = Stencil::central4;
    // default: steps are relative, h = step * max(1, |coordinate|);
    // set absolute_steps to difference with h = step exactly (e.g. to match
    // the spacing of a tabulated sweep)
    bool absolute_steps = false;
};

struct PointerAxis {
    enum class Kind { rho, eta, direction };
    Kind kind = Kind::rho;
    double dir_rho = 1.0;  // unit vector; (1,0) / (0,1) for the axis kinds
    double dir_eta = 0.0;

    static PointerAxis along(Axis a);
    // validates unit Euclidean norm at 1e-12
    static PointerAxis direction(double dr, double de);
};

struct PointerValue {
    Complex value;  // re = d_j[arg T], im = -d_j[ln |T|]
    PointerAxis axis;
};

// A_j(p) = -i [d_j U] U^dag, differenced with the configured stencil.
// Throws contract_error if the family fails the unitarity check near p.
Operator2 generator_operator(const UnitaryFamily& fam, ParamPoint p, Axis axis,
                             const DiffSettings& settings = {});

// <psi_f| A_j |psi_tilde> / <psi_f|psi_tilde> with psi_tilde = U(p) psi_in.
// Throws singularity_error when |<psi_f|psi_tilde>| <= eps_sing.
Complex weak_value_operator_form(const UnitaryFamily& fam, const Vec2C& psi_in,
                                 const Vec2C& psi_f, ParamPoint p, Axis axis,
                                 const DiffSettings& settings = {},
                                 double eps_sing = k_eps_singular);

// Response-gradient pointer. Phase differences are wrapped to (-pi, pi];
// a stencil phase step above pi/2 raises step_error instead of aliasing.
PointerValue pointer_from_response(const ResponseFn& t, ParamPoint p, Axis axis,
                                   const DiffSettings& settings = {},
                                   double eps_sing = k_eps_singular);

// Directional pointer along a unit vector: the gradient combination
// d_rho * pointer_rho + d_eta * pointer_eta, cross-checked at 1e-6 against
// a direct 1D difference along the direction.
PointerValue directional_pointer(const ResponseFn& t, ParamPoint p, double dir_rho,
                                 double dir_eta, const DiffSettings& settings = {},
                                 double eps_sing = k_eps_singular);

// T(p0) * (1 + i [A_rho]_W d_rho + i [A_eta]_W d_eta)
Complex first_order_transfer(const UnitaryFamily& fam, const Vec2C& psi_in,
                             const Vec2C& psi_f, ParamPoint p0, double delta_rho,
                             double delta_eta, const DiffSettings& settings = {},
                             double eps_sing = k_eps_singular);

// Group delay along the line (omega_s, beta0) for the default |1> -> |1>
// scenario: sec(2 b0) [cos^2 b0 * slope_tm - sin^2 b0 * slope_te], in ns.
// Throws singularity_error when |cos 2 b0| <= eps.
double group_delay_analytic(const DispersionModel& model, double beta0,
                            double eps = k_eps_secant);

// Helicity pointer along the line (omega0, pi/4) for the default scenario:
// 2 tan(phi_minus(omega0)), dimensionless.
double helicity_pointer_analytic(const DispersionModel& model, double omega0,
                                 double eps = k_eps_singular);

ResponseFn make_response(const Scenario& s);
UnitaryFamily make_family(const DispersionModel& model);

}  // namespace weakwave
