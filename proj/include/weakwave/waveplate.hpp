#pragma once

// Rotatable birefringent waveplate: linear TE/TM dispersion, the unitary
// family U(omega, beta) = R(beta) U(omega, 0) R(-beta), and the complex
// transmission T(omega, beta) = <psi_f| U(omega, beta) |psi_in>.
//
// Units: omega is angular frequency in rad/ns (f_GHz = omega / 2pi), beta
// is the plate rotation in rad, slopes are rad*ns. Frequency derivatives of
// the transmitted phase then come out in ns.

#include <string>

#include "weakwave/polarization.hpp"

namespace weakwave {

struct Phases {
    double te;      // phi_TE, accumulated on |2> = x-hat (fast axis at beta=0)
    double tm;      // phi_TM, accumulated on |1> = z-hat
    double plus;    // (te + tm) / 2
    double minus;   // (te - tm) / 2
};

struct DispersionModel {
    double slope_te = 0.0;      // rad*ns
    double intercept_te = 0.0;  // rad
    double slope_tm = 0.0;
    double intercept_tm = 0.0;

    Phases phases(double omega) const;
    double slope_plus() const { return 0.5 * (slope_te + slope_tm); }
    double slope_minus() const { return 0.5 * (slope_te - slope_tm); }
    double intercept_minus() const { return 0.5 * (intercept_te - intercept_tm); }

    // The omega > 0 solving phi_minus(omega) = (2n+1) pi/2, n >= 0.
    // Throws model_error for equal slopes, domain_error if the solution
    // is not positive.
    double half_waveplate_frequency(int n) const;

    // slopes 1.2 / 0.8 with zero intercepts; the reference model used
    // throughout the tests
    static DispersionModel reference();

    // illustrative microwave-band model: first half-waveplate frequency at
    // 16.7 GHz, slope_plus = 10 * slope_minus
    static DispersionModel microwave_preset();
};

struct Scenario {
    DispersionModel model;
    Vec2C psi_in = Vec2C::basis1();
    Vec2C psi_f = Vec2C::basis1();

    // validates that both states are normalized at 1e-12
    static Scenario make(const DispersionModel& m, const Vec2C& in, const Vec2C& f);
    static Scenario default_for(const DispersionModel& m);

    bool default_states(double tol = 1e-12) const;
};

// diag(e^{i phi_TM}, e^{i phi_TE}) in basis (|1>, |2>)
Operator2 build_u0(const DispersionModel& model, double omega);

// R(beta) * U(omega, 0) * R(-beta)
Operator2 build_u(const DispersionModel& model, double omega, double beta);

// <psi_f| U(omega, beta) |psi_in> via the matrix path
Complex transfer(const Scenario& s, double omega, double beta);

// e^{i phi_plus} (cos phi_minus - i sin phi_minus cos 2 beta); equals
// transfer() for the default |1> -> |1> scenario. Kept as an independent
// cross-check of the matrix path, not used as the primary route.
Complex transfer_default_closed_form(const DispersionModel& model, double omega,
                                     double beta);

// Flat key=value config (keys: slope_te, intercept_te, slope_tm,
// intercept_tm, psi_in, psi_f). States accept one number (linear
// polarization angle in rad), two (real amplitudes) or four (re1, im1,
// re2, im2) comma-separated values and are normalized on load.
Scenario load_scenario(const std::string& path);
Vec2C parse_state(const std::string& text);

}  // namespace weakwave
