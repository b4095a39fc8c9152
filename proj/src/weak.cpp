#include "weakwave/weak.hpp"

#include <array>
#include <cmath>

namespace weakwave {

namespace {

const Complex kI{0.0, 1.0};
constexpr double kPi = 3.14159265358979323846;

double wrap_pi(double a) {
    double w = std::remainder(a, 2.0 * kPi);  // [-pi, pi]
    if (w <= -kPi) w += 2.0 * kPi;
    return w;
}

double coordinate(ParamPoint p, Axis axis) {
    return axis == Axis::rho ? p.rho : p.eta;
}

ParamPoint shifted(ParamPoint p, Axis axis, double h) {
    if (axis == Axis::rho) return {p.rho + h, p.eta};
    return {p.rho, p.eta + h};
}

double step_size(const DiffSettings& s, Axis axis, ParamPoint p) {
    const double step = axis == Axis::rho ? s.step_rho : s.step_eta;
    if (step <= 0.0) throw argument_error("finite-difference step must be > 0");
    if (s.absolute_steps) return step;
    return step * std::max(1.0, std::abs(coordinate(p, axis)));
}

// derivative of a scalar sequence sampled at offsets {-2,-1,0,1,2}*h,
// built from the successive differences d[k] = f(k) - f(k-1)
double stencil_from_diffs(const std::array<double, 4>& d, Stencil stencil,
                          double h) {
    if (stencil == Stencil::central2) return (d[1] + d[2]) / (2.0 * h);
    return (7.0 * (d[1] + d[2]) - d[0] - d[3]) / (12.0 * h);
}

struct ResponseStencil {
    std::array<Complex, 5> t;  // offsets -2..2; central2 leaves the ends unset
    double h;
};

ResponseStencil eval_response(const ResponseFn& fn, ParamPoint p, Axis axis,
                              const DiffSettings& s, double eps_sing) {
    ResponseStencil out{};
    out.h = step_size(s, axis, p);
    const int reach = s.stencil == Stencil::central4 ? 2 : 1;
    for (int k = -reach; k <= reach; ++k) {
        const Complex v = fn(shifted(p, axis, k * out.h));
        if (std::abs(v) <= eps_sing)
            throw singularity_error(
                "response magnitude below the singular guard at a stencil point");
        out.t[k + 2] = v;
    }
    return out;
}

// phase derivative via principal-value wrapped successive differences
double phase_derivative(const ResponseStencil& st, Stencil stencil) {
    std::array<double, 4> d{};
    const int reach = stencil == Stencil::central4 ? 2 : 1;
    for (int k = -reach + 1; k <= reach; ++k) {
        const double step =
            wrap_pi(std::arg(st.t[k + 2]) - std::arg(st.t[k + 1]));
        if (std::abs(step) > kPi / 2.0)
            throw step_error("phase step exceeds pi/2 between stencil points; "
                             "shrink the differentiation step");
        d[k + 1] = step;
    }
    if (stencil == Stencil::central2) {
        // place the two central differences where stencil_from_diffs expects
        return (d[1] + d[2]) / (2.0 * st.h);
    }
    return stencil_from_diffs(d, stencil, st.h);
}

double log_magnitude_derivative(const ResponseStencil& st, Stencil stencil) {
    std::array<double, 4> d{};
    const int reach = stencil == Stencil::central4 ? 2 : 1;
    for (int k = -reach + 1; k <= reach; ++k) {
        d[k + 1] = std::log(std::abs(st.t[k + 2])) -
                   std::log(std::abs(st.t[k + 1]));
    }
    return stencil_from_diffs(d, stencil, st.h);
}

void require_unitary(const Operator2& u) {
    if (unitarity_deviation(u) > k_eps_unitary)
        throw contract_error("unitary family returned a non-unitary operator");
}

}  // namespace

PointerAxis PointerAxis::along(Axis a) {
    if (a == Axis::rho) return {Kind::rho, 1.0, 0.0};
    return {Kind::eta, 0.0, 1.0};
}

PointerAxis PointerAxis::direction(double dr, double de) {
    if (std::abs(std::hypot(dr, de) - 1.0) > 1e-12)
        throw argument_error("direction must be a unit 2-vector");
    return {Kind::direction, dr, de};
}

Operator2 generator_operator(const UnitaryFamily& fam, ParamPoint p, Axis axis,
                             const DiffSettings& settings) {
    const double h = step_size(settings, axis, p);
    const Operator2 u0 = fam(p);
    require_unitary(u0);

    Operator2 du{};
    if (settings.stencil == Stencil::central2) {
        const Operator2 up = fam(shifted(p, axis, h));
        const Operator2 um = fam(shifted(p, axis, -h));
        require_unitary(up);
        require_unitary(um);
        du = Complex{1.0 / (2.0 * h)} * (up - um);
    } else {
        const Operator2 up1 = fam(shifted(p, axis, h));
        const Operator2 um1 = fam(shifted(p, axis, -h));
        const Operator2 up2 = fam(shifted(p, axis, 2.0 * h));
        const Operator2 um2 = fam(shifted(p, axis, -2.0 * h));
        require_unitary(up1);
        require_unitary(um1);
        require_unitary(up2);
        require_unitary(um2);
        du = Complex{1.0 / (12.0 * h)} *
             (Complex{8.0} * (up1 - um1) - (up2 - um2));
    }
    return -kI * matmul(du, adjoint(u0));
}

Complex weak_value_operator_form(const UnitaryFamily& fam, const Vec2C& psi_in,
                                 const Vec2C& psi_f, ParamPoint p, Axis axis,
                                 const DiffSettings& settings, double eps_sing) {
    const Operator2 us = fam(p);
    require_unitary(us);
    const Vec2C psi_tilde = apply(us, psi_in);
    const Complex denom = inner(psi_f, psi_tilde);
    if (std::abs(denom) <= eps_sing)
        throw singularity_error(
            "transfer function has a zero here; the weak value is unbounded");
    const Operator2 a = generator_operator(fam, p, axis, settings);
    return inner(psi_f, apply(a, psi_tilde)) / denom;
}

PointerValue pointer_from_response(const ResponseFn& t, ParamPoint p, Axis axis,
                                   const DiffSettings& settings, double eps_sing) {
    const ResponseStencil st = eval_response(t, p, axis, settings, eps_sing);
    const double re = phase_derivative(st, settings.stencil);
    const double im = -log_magnitude_derivative(st, settings.stencil);
    return {Complex{re, im}, PointerAxis::along(axis)};
}

PointerValue directional_pointer(const ResponseFn& t, ParamPoint p, double dir_rho,
                                 double dir_eta, const DiffSettings& settings,
                                 double eps_sing) {
    const PointerAxis axis = PointerAxis::direction(dir_rho, dir_eta);

    Complex combo{};
    if (dir_rho != 0.0)
        combo += dir_rho * pointer_from_response(t, p, Axis::rho, settings, eps_sing).value;
    if (dir_eta != 0.0)
        combo += dir_eta * pointer_from_response(t, p, Axis::eta, settings, eps_sing).value;

    // independent route: 1D difference along the direction itself
    const double scale =
        std::max(1.0, std::abs(p.rho * dir_rho) + std::abs(p.eta * dir_eta));
    const double rel = 0.5 * (settings.step_rho + settings.step_eta);
    const double h = settings.absolute_steps ? rel : rel * scale;

    const ResponseFn line = [&](ParamPoint q) {
        // q.rho carries the arc parameter
        return t({p.rho + q.rho * dir_rho, p.eta + q.rho * dir_eta});
    };
    DiffSettings line_settings = settings;
    line_settings.step_rho = h;
    line_settings.absolute_steps = true;
    const PointerValue direct =
        pointer_from_response(line, ParamPoint{0.0, 0.0}, Axis::rho, line_settings,
                              eps_sing);

    if (std::abs(direct.value - combo) > 1e-6 * std::max(1.0, std::abs(combo)))
        throw step_error(
            "directional pointer cross-check failed; shrink the step");
    return {combo, axis};
}

Complex first_order_transfer(const UnitaryFamily& fam, const Vec2C& psi_in,
                             const Vec2C& psi_f, ParamPoint p0, double delta_rho,
                             double delta_eta, const DiffSettings& settings,
                             double eps_sing) {
    const Operator2 us = fam(p0);
    require_unitary(us);
    const Complex t0 = inner(psi_f, apply(us, psi_in));
    if (std::abs(t0) <= eps_sing)
        throw singularity_error("first-order expansion undefined at a zero of T");
    const Complex w_rho =
        weak_value_operator_form(fam, psi_in, psi_f, p0, Axis::rho, settings, eps_sing);
    const Complex w_eta =
        weak_value_operator_form(fam, psi_in, psi_f, p0, Axis::eta, settings, eps_sing);
    return t0 * (Complex{1.0} + kI * w_rho * delta_rho + kI * w_eta * delta_eta);
}

double group_delay_analytic(const DispersionModel& model, double beta0, double eps) {
    const double c2 = std::cos(2.0 * beta0);
    if (std::abs(c2) <= eps)
        throw singularity_error(
            "group delay unbounded at beta = pi/4 + m pi/2 (transmission zero)");
    const double cb = std::cos(beta0);
    const double sb = std::sin(beta0);
    return (cb * cb * model.slope_tm - sb * sb * model.slope_te) / c2;
}

double helicity_pointer_analytic(const DispersionModel& model, double omega0,
                                 double eps) {
    const double pm = model.phases(omega0).minus;
    if (std::abs(std::cos(pm)) <= eps)
        throw singularity_error(
            "helicity pointer unbounded where phi_minus = (2n+1) pi/2");
    return 2.0 * std::tan(pm);
}

ResponseFn make_response(const Scenario& s) {
    return [s](ParamPoint p) { return transfer(s, p.rho, p.eta); };
}

UnitaryFamily make_family(const DispersionModel& model) {
    return [model](ParamPoint p) { return build_u(model, p.rho, p.eta); };
}

}  // namespace weakwave
