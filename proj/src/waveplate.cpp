#include "weakwave/waveplate.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <vector>

namespace weakwave {

namespace {
const Complex kI{0.0, 1.0};
constexpr double kPi = 3.14159265358979323846;
}  // namespace

Phases DispersionModel::phases(double omega) const {
    const double te = slope_te * omega + intercept_te;
    const double tm = slope_tm * omega + intercept_tm;
    return {te, tm, 0.5 * (te + tm), 0.5 * (te - tm)};
}

double DispersionModel::half_waveplate_frequency(int n) const {
    if (n < 0) throw argument_error("half-waveplate index must be >= 0");
    const double s = slope_minus();
    if (s == 0.0)
        throw model_error(
            "equal TE/TM slopes: phi_minus is constant, no half-waveplate "
            "frequency exists");
    const double omega = ((2.0 * n + 1.0) * 0.5 * kPi - intercept_minus()) / s;
    if (!(omega > 0.0))
        throw domain_error("half-waveplate frequency for n=" + std::to_string(n) +
                           " is not positive");
    return omega;
}

DispersionModel DispersionModel::reference() {
    return {1.2, 0.0, 0.8, 0.0};
}

DispersionModel DispersionModel::microwave_preset() {
    // phi_minus(2 pi * 16.7) = pi/2  =>  slope_minus = 0.25 / 16.7 rad*ns
    const double s_minus = 0.25 / 16.7;
    const double s_plus = 10.0 * s_minus;
    return {s_plus + s_minus, 0.0, s_plus - s_minus, 0.0};
}

Scenario Scenario::make(const DispersionModel& m, const Vec2C& in, const Vec2C& f) {
    if (!in.is_state()) throw argument_error("psi_in is not normalized");
    if (!f.is_state()) throw argument_error("psi_f is not normalized");
    return {m, in, f};
}

Scenario Scenario::default_for(const DispersionModel& m) {
    return {m, Vec2C::basis1(), Vec2C::basis1()};
}

bool Scenario::default_states(double tol) const {
    const Vec2C e1 = Vec2C::basis1();
    auto close = [tol](const Vec2C& a, const Vec2C& b) {
        return std::abs(a.c1 - b.c1) <= tol && std::abs(a.c2 - b.c2) <= tol;
    };
    return close(psi_in, e1) && close(psi_f, e1);
}

Operator2 build_u0(const DispersionModel& model, double omega) {
    const Phases p = model.phases(omega);
    return {std::exp(kI * p.tm), Complex{}, Complex{}, std::exp(kI * p.te)};
}

Operator2 build_u(const DispersionModel& model, double omega, double beta) {
    return matmul(rotation(beta), matmul(build_u0(model, omega), rotation(-beta)));
}

Complex transfer(const Scenario& s, double omega, double beta) {
    return inner(s.psi_f, apply(build_u(s.model, omega, beta), s.psi_in));
}

Complex transfer_default_closed_form(const DispersionModel& model, double omega,
                                     double beta) {
    const Phases p = model.phases(omega);
    return std::exp(kI * p.plus) *
           (std::cos(p.minus) - kI * std::sin(p.minus) * std::cos(2.0 * beta));
}

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& tok, int line_no) {
    const std::string t = trim(tok);
    double v = 0.0;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw parse_error("cannot parse number '" + t + "'", line_no);
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        const size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            break;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

}  // namespace

Vec2C parse_state(const std::string& text) {
    const auto parts = split(text, ',');
    std::vector<double> v;
    v.reserve(parts.size());
    for (const auto& p : parts) v.push_back(parse_double(p, 0));

    Vec2C state;
    if (v.size() == 1) {
        // linear polarization at angle theta from |1>
        state = {Complex{std::cos(v[0])}, Complex{std::sin(v[0])}};
    } else if (v.size() == 2) {
        state = {Complex{v[0]}, Complex{v[1]}};
    } else if (v.size() == 4) {
        state = {Complex{v[0], v[1]}, Complex{v[2], v[3]}};
    } else {
        throw argument_error("state needs 1, 2 or 4 comma-separated numbers, got " +
                             std::to_string(v.size()));
    }
    const double n = state.norm();
    if (n == 0.0) throw argument_error("state has zero norm");
    return {state.c1 / n, state.c2 / n};
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file: " + path);

    DispersionModel model{};
    Vec2C psi_in = Vec2C::basis1();
    Vec2C psi_f = Vec2C::basis1();
    bool have_slope_te = false, have_slope_tm = false;

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw parse_error("expected key=value", line_no);
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));

        if (key == "slope_te") {
            model.slope_te = parse_double(value, line_no);
            have_slope_te = true;
        } else if (key == "intercept_te") {
            model.intercept_te = parse_double(value, line_no);
        } else if (key == "slope_tm") {
            model.slope_tm = parse_double(value, line_no);
            have_slope_tm = true;
        } else if (key == "intercept_tm") {
            model.intercept_tm = parse_double(value, line_no);
        } else if (key == "psi_in") {
            try {
                psi_in = parse_state(value);
            } catch (const argument_error& e) {
                throw parse_error(e.what(), line_no);
            }
        } else if (key == "psi_f") {
            try {
                psi_f = parse_state(value);
            } catch (const argument_error& e) {
                throw parse_error(e.what(), line_no);
            }
        } else {
            throw parse_error("unknown key '" + key + "'", line_no);
        }
    }
    if (!have_slope_te || !have_slope_tm)
        throw format_error("config must set slope_te and slope_tm: " + path);
    return Scenario::make(model, psi_in, psi_f);
}

}  // namespace weakwave
