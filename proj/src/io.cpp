#include "weakwave/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace weakwave {

namespace {

constexpr double kPi = 3.14159265358979323846;

double wrap_pi(double a) {
    double w = std::remainder(a, 2.0 * kPi);
    if (w <= -kPi) w += 2.0 * kPi;
    return w;
}

std::string fmt17(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

double parse_number(const std::string& tok, int line_no) {
    std::string t = tok;
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front())))
        t.erase(t.begin());
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back())))
        t.pop_back();
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size())
        throw parse_error("cannot parse number '" + t + "'", line_no);
    return v;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open for reading: " + path);
    return in;
}

void validate_sweep(const SweepTable& table) {
    if (table.rows.size() < 3)
        throw format_error("sweep table needs at least 3 rows");
    for (std::size_t k = 1; k < table.rows.size(); ++k) {
        if (!(table.rows[k].omega > table.rows[k - 1].omega))
            throw format_error("sweep omega column must be strictly increasing");
    }
}

}  // namespace

void write_sweep_csv(const SweepTable& table, const std::string& path,
                     bool with_ghz_column) {
    validate_sweep(table);
    std::ofstream out = open_out(path);
    out << "# beta_rad=" << fmt17(table.beta) << "\n";
    out << (with_ghz_column ? "omega,re_t,im_t,f_ghz" : "omega,re_t,im_t") << "\n";
    for (const auto& r : table.rows) {
        out << fmt17(r.omega) << ',' << fmt17(r.t.real()) << ','
            << fmt17(r.t.imag());
        if (with_ghz_column) out << ',' << fmt17(r.omega / (2.0 * kPi));
        out << '\n';
    }
    if (!out) throw io_error("write failed: " + path);
}

SweepTable read_sweep_csv(const std::string& path) {
    std::ifstream in = open_in(path);
    SweepTable table;

    enum class Layout { complex_t, phase_magnitude };
    Layout layout = Layout::complex_t;
    std::size_t n_cols = 3;
    bool header_seen = false;
    bool data_seen = false;

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (data_seen)
                throw parse_error("comment lines are only allowed before data",
                                  line_no);
            const std::string key = "# beta_rad=";
            if (line.rfind(key, 0) == 0)
                table.beta = parse_number(line.substr(key.size()), line_no);
            continue;
        }
        if (!header_seen) {
            if (line == "omega,re_t,im_t") {
                layout = Layout::complex_t;
                n_cols = 3;
            } else if (line == "omega,re_t,im_t,f_ghz") {
                layout = Layout::complex_t;
                n_cols = 4;
            } else if (line == "omega,phase_rad,magnitude") {
                layout = Layout::phase_magnitude;
                n_cols = 3;
            } else {
                throw parse_error("missing or unknown sweep header", line_no);
            }
            header_seen = true;
            continue;
        }
        const auto cols = split_csv(line);
        if (cols.size() != n_cols)
            throw parse_error("expected " + std::to_string(n_cols) + " columns",
                              line_no);
        SweepRow row;
        row.omega = parse_number(cols[0], line_no);
        if (layout == Layout::complex_t) {
            row.t = Complex{parse_number(cols[1], line_no),
                            parse_number(cols[2], line_no)};
        } else {
            const double phase = parse_number(cols[1], line_no);
            const double mag = parse_number(cols[2], line_no);
            row.t = Complex{mag * std::cos(phase), mag * std::sin(phase)};
        }
        data_seen = true;
        table.rows.push_back(row);
    }
    if (!header_seen) throw parse_error("missing or unknown sweep header", line_no);
    validate_sweep(table);
    return table;
}

PointerCurve ingest_pointer_curve(const SweepTable& table, double eps_sing) {
    validate_sweep(table);
    const auto& rows = table.rows;
    const std::size_t n = rows.size();

    std::vector<bool> gap(n);
    std::size_t usable = 0;
    for (std::size_t k = 0; k < n; ++k) {
        gap[k] = std::abs(rows[k].t) < eps_sing;
        if (!gap[k]) ++usable;
    }
    if (usable < 3) throw data_error("fewer than 3 usable rows in the sweep");

    // unwrap phases within each maximal run of non-gap rows
    std::vector<double> theta(n, 0.0), logmag(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        if (gap[k]) continue;
        const double raw = std::arg(rows[k].t);
        if (k > 0 && !gap[k - 1])
            theta[k] = theta[k - 1] + wrap_pi(raw - std::arg(rows[k - 1].t));
        else
            theta[k] = raw;
        logmag[k] = std::log(std::abs(rows[k].t));
    }

    PointerCurve curve;
    curve.pointer = PointerCurve::Pointer::omega;
    curve.scan = PointerCurve::ScanVar::omega;
    curve.fixed = table.beta;

    auto slope = [&](std::size_t a, std::size_t b, const std::vector<double>& f) {
        return (f[b] - f[a]) / (rows[b].omega - rows[a].omega);
    };

    for (std::size_t k = 1; k + 1 < n; ++k) {
        if (gap[k]) {
            curve.rows.push_back({rows[k].omega, 0.0, 0.0, true});
            continue;
        }
        const bool left_ok = !gap[k - 1];
        const bool right_ok = !gap[k + 1];
        std::size_t a, b;
        if (left_ok && right_ok) {
            a = k - 1;
            b = k + 1;
        } else if (right_ok) {
            a = k;
            b = k + 1;  // one-sided away from the gap
        } else if (left_ok) {
            a = k - 1;
            b = k;
        } else {
            continue;  // isolated row between two gaps: nothing to difference
        }
        curve.rows.push_back(
            {rows[k].omega, slope(a, b, theta), -slope(a, b, logmag), false});
    }
    return curve;
}

void write_pointer_csv(const PointerCurve& curve, const std::string& path) {
    std::ofstream out = open_out(path);
    const bool has_analytic = !curve.analytic.empty();
    if (has_analytic && curve.analytic.size() != curve.rows.size())
        throw argument_error("analytic column must match the row count");

    std::string x_name;
    if (curve.scan == PointerCurve::ScanVar::omega) {
        x_name = "omega";
        out << "# scan=omega\n# beta_rad=" << fmt17(curve.fixed) << "\n";
    } else {
        x_name = "beta";
        out << "# scan=beta\n# omega_rad_ns=" << fmt17(curve.fixed) << "\n";
    }
    switch (curve.pointer) {
        case PointerCurve::Pointer::omega:
            out << "# pointer=omega\n";
            break;
        case PointerCurve::Pointer::beta:
            out << "# pointer=beta\n";
            break;
        case PointerCurve::Pointer::direction:
            out << "# pointer=direction dir_rho=" << fmt17(curve.dir_rho)
                << " dir_eta=" << fmt17(curve.dir_eta) << "\n";
            break;
    }
    const bool ghz = curve.scan == PointerCurve::ScanVar::omega;
    out << x_name << ",re_pointer,im_pointer";
    if (has_analytic) out << ",analytic";
    if (ghz) out << ",f_ghz";
    out << "\n";

    for (std::size_t k = 0; k < curve.rows.size(); ++k) {
        const auto& r = curve.rows[k];
        out << fmt17(r.x) << ',';
        if (r.gap)
            out << "nan,nan";
        else
            out << fmt17(r.re) << ',' << fmt17(r.im);
        if (has_analytic) out << ',' << fmt17(curve.analytic[k]);
        if (ghz) out << ',' << fmt17(r.x / (2.0 * kPi));
        out << '\n';
    }
    if (!out) throw io_error("write failed: " + path);
}

void write_phase_grid(const PhaseGrid& pg, const std::string& path) {
    pg.spec.validate();
    std::ofstream out = open_out(path);
    const GridSpec& g = pg.spec;
    out << "# rho_min=" << fmt17(g.rho_min) << "\n";
    out << "# rho_max=" << fmt17(g.rho_max) << "\n";
    out << "# n_rho=" << g.n_rho << "\n";
    out << "# eta_min=" << fmt17(g.eta_min) << "\n";
    out << "# eta_max=" << fmt17(g.eta_max) << "\n";
    out << "# n_eta=" << g.n_eta << "\n";
    out << "i,j,arg_t,abs_t\n";
    for (int i = 0; i < g.n_rho; ++i) {
        for (int j = 0; j < g.n_eta; ++j) {
            out << i << ',' << j << ',' << fmt17(pg.arg_t[pg.idx(i, j)]) << ','
                << fmt17(pg.abs_t[pg.idx(i, j)]) << '\n';
        }
    }
    if (!out) throw io_error("write failed: " + path);
}

PhaseGrid read_phase_grid(const std::string& path) {
    std::ifstream in = open_in(path);
    GridSpec g{};
    bool have[6] = {};
    bool header_seen = false;

    PhaseGrid pg;
    std::string line;
    int line_no = 0;
    std::size_t expected = 0, row_count = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (row_count > 0)
                throw parse_error("comment lines are only allowed before data",
                                  line_no);
            std::istringstream ss(line.substr(1));
            std::string kv;
            while (ss >> kv) {
                const std::size_t eq = kv.find('=');
                if (eq == std::string::npos) continue;
                const std::string key = kv.substr(0, eq);
                const std::string val = kv.substr(eq + 1);
                if (key == "rho_min") {
                    g.rho_min = parse_number(val, line_no);
                    have[0] = true;
                } else if (key == "rho_max") {
                    g.rho_max = parse_number(val, line_no);
                    have[1] = true;
                } else if (key == "n_rho") {
                    g.n_rho = static_cast<int>(parse_number(val, line_no));
                    have[2] = true;
                } else if (key == "eta_min") {
                    g.eta_min = parse_number(val, line_no);
                    have[3] = true;
                } else if (key == "eta_max") {
                    g.eta_max = parse_number(val, line_no);
                    have[4] = true;
                } else if (key == "n_eta") {
                    g.n_eta = static_cast<int>(parse_number(val, line_no));
                    have[5] = true;
                }
            }
            continue;
        }
        if (!header_seen) {
            if (line != "i,j,arg_t,abs_t")
                throw parse_error("missing or unknown phase-grid header", line_no);
            for (const bool h : have)
                if (!h)
                    throw format_error(
                        "phase-grid file lacks a window comment: " + path);
            g.validate();
            expected = static_cast<std::size_t>(g.n_rho) * g.n_eta;
            pg.spec = g;
            pg.arg_t.resize(expected);
            pg.abs_t.resize(expected);
            header_seen = true;
            continue;
        }
        const auto cols = split_csv(line);
        if (cols.size() != 4) throw parse_error("expected 4 columns", line_no);
        const int i = static_cast<int>(parse_number(cols[0], line_no));
        const int j = static_cast<int>(parse_number(cols[1], line_no));
        if (i < 0 || i >= g.n_rho || j < 0 || j >= g.n_eta)
            throw parse_error("grid index out of range", line_no);
        if (row_count != pg.idx(i, j))
            throw format_error("phase-grid rows must be in row-major order: " +
                               path);
        pg.arg_t[pg.idx(i, j)] = parse_number(cols[2], line_no);
        pg.abs_t[pg.idx(i, j)] = parse_number(cols[3], line_no);
        ++row_count;
    }
    if (!header_seen)
        throw parse_error("missing or unknown phase-grid header", line_no);
    if (row_count != expected)
        throw format_error("phase-grid file is truncated: " + path);
    return pg;
}

void write_singularity_csv(const std::vector<SingularityRecord>& records,
                           const std::string& path) {
    std::ofstream out = open_out(path);
    out << "rho,eta,charge,residual,f_ghz\n";
    for (const auto& r : records) {
        out << fmt17(r.rho) << ',' << fmt17(r.eta) << ',' << r.charge << ','
            << fmt17(r.residual) << ',' << fmt17(r.rho / (2.0 * kPi)) << '\n';
    }
    if (!out) throw io_error("write failed: " + path);
}

}  // namespace weakwave
