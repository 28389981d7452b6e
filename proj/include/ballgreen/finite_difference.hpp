#pragma once

// Finite-difference differential operators for scalar fields on R^n. These
// are the independent oracle for the PDE and boundary conditions; they use
// nothing but point evaluations of the field.

#include "ballgreen/core.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace ballgreen {

class stencil_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

namespace detail {

inline void check_step(double h) {
    if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("finite difference: step must be positive");
}

inline void check_stencil(const Vector& p, double domain_radius) {
    if (p.norm() > domain_radius * (1.0 + ball_slack<double>()))
        throw stencil_error("finite difference: stencil point leaves the domain");
}

// Richardson tableau for a difference quotient whose error expands in powers
// of h^order_step: estimates[i] was computed with step h / 2^i.
inline double richardson(std::vector<double> estimates, int order_step) {
    const double base = std::pow(2.0, order_step);
    double factor = base;
    for (std::size_t level = 1; level < estimates.size(); ++level) {
        for (std::size_t i = estimates.size() - 1; i >= level; --i)
            estimates[i] = estimates[i] + (estimates[i] - estimates[i - 1]) / (factor - 1.0);
        factor *= base;
    }
    return estimates.back();
}

} // namespace detail

/// Central second-order gradient.
template <typename F>
Vector fd_gradient(F&& g, const Vector& x, double h,
                   double domain_radius = std::numeric_limits<double>::infinity()) {
    detail::check_step(h);
    Vector grad(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        Vector plus = x, minus = x;
        plus[i] += h;
        minus[i] -= h;
        detail::check_stencil(plus, domain_radius);
        detail::check_stencil(minus, domain_radius);
        grad[i] = (g(plus) - g(minus)) / (2.0 * h);
    }
    return grad;
}

/// Central second-order Laplacian, the sum of the axis-wise second differences.
template <typename F>
double fd_laplacian(F&& g, const Vector& x, double h,
                    double domain_radius = std::numeric_limits<double>::infinity()) {
    detail::check_step(h);
    detail::check_stencil(x, domain_radius);
    const double center = g(x);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        Vector plus = x, minus = x;
        plus[i] += h;
        minus[i] -= h;
        detail::check_stencil(plus, domain_radius);
        detail::check_stencil(minus, domain_radius);
        sum += (g(plus) - 2.0 * center + g(minus)) / (h * h);
    }
    return sum;
}

/// fd_laplacian at steps h, h/2, ..., h/2^(levels-1), Richardson-extrapolated
/// to order 2 levels.
template <typename F>
double fd_laplacian_extrapolated(F&& g, const Vector& x, double h, int levels,
                                 double domain_radius = std::numeric_limits<double>::infinity()) {
    if (levels < 1) throw std::invalid_argument("fd_laplacian_extrapolated: levels must be >= 1");
    std::vector<double> est;
    for (int i = 0; i < levels; ++i) est.push_back(fd_laplacian(g, x, h / std::pow(2.0, i), domain_radius));
    return detail::richardson(std::move(est), 2);
}

/// Central difference of g along `direction` (not normalized), Richardson-extrapolated.
template <typename F>
double fd_directional_derivative(F&& g, const Vector& x, const Vector& direction, double h, int levels = 2,
                                 double domain_radius = std::numeric_limits<double>::infinity()) {
    detail::check_step(h);
    if (levels < 1) throw std::invalid_argument("fd_directional_derivative: levels must be >= 1");
    std::vector<double> est;
    for (int i = 0; i < levels; ++i) {
        const double step = h / std::pow(2.0, i);
        const Vector plus = x + step * direction;
        const Vector minus = x - step * direction;
        detail::check_stencil(plus, domain_radius);
        detail::check_stencil(minus, domain_radius);
        est.push_back((g(plus) - g(minus)) / (2.0 * step));
    }
    return detail::richardson(std::move(est), 2);
}

/// Outward normal derivative at a boundary point u of the ball |x| = |u|.
///
/// One-sided differences (g(u) - g(u - s nu)) / s are taken inward along
/// nu = u/|u| at s = h, h/2, ..., and Richardson-extrapolated; the default of
/// two levels gives 2 D(h/2) - D(h).
template <typename F>
double boundary_normal_derivative(F&& g, const Vector& u, double h, int levels = 2) {
    detail::check_step(h);
    if (levels < 1) throw std::invalid_argument("boundary_normal_derivative: levels must be >= 1");
    const double radius = u.norm();
    if (!(radius > 0.0)) throw std::invalid_argument("boundary_normal_derivative: boundary point must be nonzero");
    const Vector nu = u / radius;
    const double at_boundary = g(u);
    std::vector<double> est;
    for (int i = 0; i < levels; ++i) {
        const double step = h / std::pow(2.0, i);
        est.push_back((at_boundary - g(Vector(u - step * nu))) / step);
    }
    return detail::richardson(std::move(est), 1);
}

} // namespace ballgreen
