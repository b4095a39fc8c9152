#pragma once

// Exact 2x2 complex algebra for polarization states and operators.
//
// Basis order is (|1> = z-hat vertical, |2> = x-hat horizontal), so
// sigma_3 = diag(-1, +1): |2> carries the +1 eigenvalue. With sigma_1 kept
// as [[0,1],[1,0]], the algebra sigma_j sigma_k = delta_jk I + i eps_jkl
// sigma_l then forces sigma_2 = [[0,i],[-i,0]] (the negative of the usual
// representation, consistent with the basis swap). All other modules
// inherit these conventions.

#include <complex>
#include <utility>

#include "weakwave/errors.hpp"

namespace weakwave {

using Complex = std::complex<double>;

struct Vec2C {
    Complex c1{};  // amplitude on |1> (vertical, z-hat)
    Complex c2{};  // amplitude on |2> (horizontal, x-hat)

    double norm() const;
    bool is_state(double tol = 1e-12) const;  // a "state" has unit norm

    static Vec2C basis1() { return {Complex{1.0, 0.0}, Complex{0.0, 0.0}}; }
    static Vec2C basis2() { return {Complex{0.0, 0.0}, Complex{1.0, 0.0}}; }
};

struct Operator2 {
    Complex m11{}, m12{};
    Complex m21{}, m22{};

    static Operator2 identity() {
        return {Complex{1.0, 0.0}, Complex{}, Complex{}, Complex{1.0, 0.0}};
    }
};

// sigma_k for k in {1,2,3}; throws argument_error otherwise.
Operator2 pauli(int k);

// R(beta) = [[cos b, -sin b], [sin b, cos b]].
Operator2 rotation(double beta);

// <bra|ket>: conjugate-linear in bra, linear in ket.
Complex inner(const Vec2C& bra, const Vec2C& ket);

Vec2C apply(const Operator2& op, const Vec2C& v);
Operator2 matmul(const Operator2& a, const Operator2& b);
Operator2 adjoint(const Operator2& a);

Operator2 operator+(const Operator2& a, const Operator2& b);
Operator2 operator-(const Operator2& a, const Operator2& b);
Operator2 operator*(Complex s, const Operator2& a);

// max-entry norm of U U^dag - I; 0 for exactly unitary U.
double unitarity_deviation(const Operator2& u);

// max-entry norm of A - A^dag.
double hermiticity_deviation(const Operator2& a);

// max-entry norm of A - B; handy for tests and convergence checks.
double max_abs_diff(const Operator2& a, const Operator2& b);

// eigenvalues of a (numerically) Hermitian operator, ascending.
std::pair<double, double> hermitian_eigenvalues(const Operator2& a);

}  // namespace weakwave
