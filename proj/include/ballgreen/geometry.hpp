#pragma once

#include "ballgreen/core.hpp"

#include <cmath>
#include <stdexcept>

namespace ballgreen {

template <typename Scalar = double>
Scalar pi() {
    return static_cast<Scalar>(EIGEN_PI);
}

/// Surface area of the unit sphere in R^n, 2 pi^(n/2) / Gamma(n/2).
///
/// Gamma at integer and half-integer arguments is built from the recurrence
/// Gamma(x+1) = x Gamma(x) starting at Gamma(1) = 1 or Gamma(1/2) = sqrt(pi),
/// so omega_1 = 2, omega_2 = 2 pi, omega_3 = 4 pi, omega_4 = 2 pi^2, ...
template <typename Scalar = double>
Scalar surface_area(int n) {
    using std::sqrt;
    if (n < 1) throw std::invalid_argument("surface_area: dimension must be >= 1");
    const Scalar p = pi<Scalar>();
    // pi^(n/2) / Gamma(n/2), accumulated factor by factor.
    Scalar ratio;
    if (n % 2 == 0) {
        ratio = Scalar(1); // pi^0 / Gamma(1)
        for (int m = 1; m < n / 2; ++m) ratio *= p / Scalar(m);
        ratio *= p;
    } else {
        ratio = Scalar(1); // pi^(1/2) / Gamma(1/2)
        for (int twice = 1; twice < n; twice += 2) ratio *= p / (Scalar(twice) / Scalar(2));
    }
    return Scalar(2) * ratio;
}

/// Fundamental solution of the Laplacian in R^n (Laplacian of Phi = delta_0).
template <typename Derived>
typename Derived::Scalar fundamental_phi(const Eigen::MatrixBase<Derived>& x) {
    using Scalar = typename Derived::Scalar;
    using std::log;
    using std::pow;
    detail::require_finite(x, "fundamental_phi");
    const int n = static_cast<int>(x.size());
    const Scalar r = x.norm();
    if (r == Scalar(0)) throw std::domain_error("fundamental_phi: singular at x = 0");
    if (n == 1) return r / Scalar(2);
    if (n == 2) return log(r) / (Scalar(2) * pi<Scalar>());
    return Scalar(-1) / (Scalar(n - 2) * surface_area<Scalar>(n) * pow(r, n - 2));
}

/// Free-space dipole kernel x / (omega_n |x|^n), the gradient of fundamental_phi.
template <typename Derived>
VectorX<typename Derived::Scalar> fundamental_psi(const Eigen::MatrixBase<Derived>& x) {
    using Scalar = typename Derived::Scalar;
    using std::pow;
    detail::require_finite(x, "fundamental_psi");
    const int n = static_cast<int>(x.size());
    const Scalar r = x.norm();
    if (r == Scalar(0)) throw std::domain_error("fundamental_psi: singular at x = 0");
    return x / (surface_area<Scalar>(n) * pow(r, n));
}

/// Image of z under inversion in the unit sphere, z / |z|^2.
///
/// On the sphere |x| = 1 the reflection identity |x - z| = |z| |x - z*| holds.
template <typename Derived>
VectorX<typename Derived::Scalar> invert_point(const Eigen::MatrixBase<Derived>& z) {
    using Scalar = typename Derived::Scalar;
    detail::require_finite(z, "invert_point");
    const Scalar r2 = z.squaredNorm();
    if (r2 == Scalar(0)) throw std::domain_error("invert_point: image of the center is at infinity");
    if (!(r2 < Scalar(1))) throw std::invalid_argument("invert_point: point must lie strictly inside the unit ball");
    return z / r2;
}

} // namespace ballgreen
