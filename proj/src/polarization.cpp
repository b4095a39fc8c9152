#include "weakwave/polarization.hpp"

#include <algorithm>
#include <cmath>

namespace weakwave {

double Vec2C::norm() const {
    return std::sqrt(std::norm(c1) + std::norm(c2));
}

bool Vec2C::is_state(double tol) const {
    return std::abs(norm() - 1.0) <= tol;
}

Operator2 pauli(int k) {
    const Complex i{0.0, 1.0};
    switch (k) {
        case 1:
            return {Complex{}, Complex{1.0}, Complex{1.0}, Complex{}};
        case 2:
            return {Complex{}, i, -i, Complex{}};
        case 3:
            return {Complex{-1.0}, Complex{}, Complex{}, Complex{1.0}};
        default:
            throw argument_error("pauli index must be 1, 2 or 3, got " +
                                 std::to_string(k));
    }
}

Operator2 rotation(double beta) {
    const double c = std::cos(beta);
    const double s = std::sin(beta);
    return {Complex{c}, Complex{-s}, Complex{s}, Complex{c}};
}

Complex inner(const Vec2C& bra, const Vec2C& ket) {
    return std::conj(bra.c1) * ket.c1 + std::conj(bra.c2) * ket.c2;
}

Vec2C apply(const Operator2& op, const Vec2C& v) {
    return {op.m11 * v.c1 + op.m12 * v.c2, op.m21 * v.c1 + op.m22 * v.c2};
}

Operator2 matmul(const Operator2& a, const Operator2& b) {
    return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
            a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
}

Operator2 adjoint(const Operator2& a) {
    return {std::conj(a.m11), std::conj(a.m21), std::conj(a.m12),
            std::conj(a.m22)};
}

Operator2 operator+(const Operator2& a, const Operator2& b) {
    return {a.m11 + b.m11, a.m12 + b.m12, a.m21 + b.m21, a.m22 + b.m22};
}

Operator2 operator-(const Operator2& a, const Operator2& b) {
    return {a.m11 - b.m11, a.m12 - b.m12, a.m21 - b.m21, a.m22 - b.m22};
}

Operator2 operator*(Complex s, const Operator2& a) {
    return {s * a.m11, s * a.m12, s * a.m21, s * a.m22};
}

double unitarity_deviation(const Operator2& u) {
    return max_abs_diff(matmul(u, adjoint(u)), Operator2::identity());
}

double hermiticity_deviation(const Operator2& a) {
    return max_abs_diff(a, adjoint(a));
}

double max_abs_diff(const Operator2& a, const Operator2& b) {
    return std::max({std::abs(a.m11 - b.m11), std::abs(a.m12 - b.m12),
                     std::abs(a.m21 - b.m21), std::abs(a.m22 - b.m22)});
}

std::pair<double, double> hermitian_eigenvalues(const Operator2& a) {
    // For Hermitian A the diagonal is real and m21 = conj(m12).
    const double mean = 0.5 * (a.m11.real() + a.m22.real());
    const double half = 0.5 * (a.m11.real() - a.m22.real());
    const double r = std::sqrt(half * half + std::norm(a.m12));
    return {mean - r, mean + r};
}

}  // namespace weakwave
