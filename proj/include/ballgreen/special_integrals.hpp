#pragma once

// Closed forms for the one-dimensional integrals behind the ball Green's
// functions:
//
//   J_j(a)          = int_0^a (1 + t^2)^(-j/2) dt
//   Z_j(x, e, c)    = int_0^c |s x - e|^(-j) ds
//   Gamma_k(x, e, c) = int_0^c (e.x - 1/s) / |s x - e|^k + 1/s ds
//
// e is a unit vector, 0 <= c < 1 and x lies in the closed unit ball, so
// |s x - e| >= 1 - c |x| > 0 on the whole integration range.

#include "ballgreen/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ballgreen {

namespace detail {

// k!! with the conventions (-1)!! = 0!! = 1.
template <typename Scalar>
Scalar double_factorial(int k) {
    Scalar r(1);
    for (int i = k; i > 1; i -= 2) r *= Scalar(i);
    return r;
}

template <typename Scalar>
Scalar binomial(int m, int i) {
    Scalar r(1);
    for (int l = 1; l <= i; ++l) r = r * Scalar(m - i + l) / Scalar(l);
    return r;
}

// Decomposition of x relative to the axis e: |x|, e.x and |x - (e.x) e|.
template <typename Scalar>
struct AxisFrame {
    Scalar r;
    Scalar axial;
    Scalar perp;

    // Cosine of the angle between x and e, and its sine A.
    Scalar cosine() const { return axial / r; }
    Scalar sine() const { return perp / r; }
};

template <typename DX, typename DE>
AxisFrame<typename DX::Scalar> axis_frame(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DE>& e) {
    using Scalar = typename DX::Scalar;
    const Scalar axial = e.dot(x);
    return {x.norm(), axial, (x - axial * e).norm()};
}

template <typename DX, typename DE, typename Scalar>
void check_integral_args(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DE>& e, Scalar c, const char* what) {
    using std::abs;
    using std::isfinite;
    require_finite(x, what);
    require_finite(e, what);
    require_same_dim(x, e, what);
    if (abs(e.norm() - Scalar(1)) > Scalar(1e-14) + Scalar(4) * Eigen::NumTraits<Scalar>::epsilon())
        throw std::invalid_argument(std::string(what) + ": direction must be a unit vector");
    if (!isfinite(c) || c < Scalar(0) || !(c < Scalar(1)))
        throw std::invalid_argument(std::string(what) + ": c must lie in [0, 1)");
    if (x.norm() > Scalar(1) + ball_slack<Scalar>())
        throw std::invalid_argument(std::string(what) + ": x must lie in the closed unit ball");
}

// Below this sine the substitution t = (s|x| - e.x/|x|) / A is abandoned for
// the exact one-dimensional antiderivatives.
template <typename Scalar>
Scalar collinear_threshold() {
    return Scalar(1e-7);
}

// Above this value of c|x| the closed form is used for Z_j; below it the
// endpoints of the substituted interval are too close for the difference of
// primitives to keep its digits, and the Gegenbauer expansion converges fast.
template <typename Scalar>
Scalar small_reach_threshold() {
    return Scalar(0.25);
}

template <typename Scalar>
bool frame_is_collinear(const AxisFrame<Scalar>& f) {
    using std::max;
    return f.r > Scalar(0) && f.perp < collinear_threshold<Scalar>() * max(Scalar(1), f.r) * f.r;
}

// int_0^c (1 - sigma r s)^(-j) ds for sigma = +-1 (x parallel or antiparallel to e).
template <typename Scalar>
Scalar z_integral_collinear(int j, Scalar r, Scalar sigma, Scalar c) {
    using std::expm1;
    using std::log1p;
    const Scalar log_end = log1p(-sigma * r * c); // log(1 - sigma r c)
    if (j == 1) return -log_end / (sigma * r);
    return expm1(Scalar(1 - j) * log_end) / (sigma * r * Scalar(j - 1));
}

// Z_j by the generating function of the Gegenbauer polynomials,
// |s x - e|^(-j) = sum_k C_k^(j/2)(cos) (s r)^k, integrated termwise.
template <typename Scalar>
Scalar z_integral_series(int j, const AxisFrame<Scalar>& f, Scalar c) {
    using std::abs;
    const Scalar lambda = Scalar(j) / Scalar(2);
    const Scalar p = f.cosine();
    const Scalar q = c * f.r;
    const Scalar eps = Eigen::NumTraits<Scalar>::epsilon();

    Scalar c_prev(0);     // C_{k-2}
    Scalar c_curr(1);     // C_{k-1}, starts as C_0
    Scalar bound(1);      // C_k(1) = binom(k + 2 lambda - 1, k) >= |C_k(p)|
    Scalar q_power(1);    // q^k
    Scalar sum = c;       // k = 0 term
    for (int k = 1; k < 2000; ++k) {
        const Scalar next = (k == 1) ? Scalar(2) * lambda * p
                                     : (Scalar(2) * p * (Scalar(k) + lambda - Scalar(1)) * c_curr
                                        - (Scalar(k) + Scalar(2) * lambda - Scalar(2)) * c_prev)
                                           / Scalar(k);
        c_prev = c_curr;
        c_curr = next;
        bound *= (Scalar(k) + Scalar(2) * lambda - Scalar(1)) / Scalar(k);
        q_power *= q;
        sum += c_curr * q_power * c / Scalar(k + 1);
        // Remaining terms are dominated by a geometric tail of the bound.
        const Scalar tail = bound * q_power * c / Scalar(k + 1);
        if (Scalar(k) > Scalar(2) * lambda && tail < eps * abs(sum) * (Scalar(1) - q) / Scalar(4)) break;
    }
    return sum;
}

} // namespace detail

/// int_0^a (1 + t^2)^(-j/2) dt for j >= 1, any finite a; odd in a.
///
/// Even j uses the double-factorial recursion
///   (j-3)!!/(j-2)!! (arctan a + sum_{i = j-2, j-4, .., 2} i!!/(i-1)!! a / (i (1+a^2)^(i/2))).
/// Odd j substitutes t = 1/sqrt(z^2 - 1), which maps [0, a] onto
/// [sqrt(1 + 1/a^2), inf) and turns the integrand into the polynomial
/// z^(1-j) (z^2 - 1)^((j-3)/2). With w = 1/sqrt(1 + 1/a^2) = a / sqrt(1 + a^2):
///   J_j(a) = sum_{l=0}^{m} (-1)^l C(m, l) w^(2l+1) / (2l+1),   m = (j-3)/2,
/// and J_1(a) = log(a + sqrt(1 + a^2)).
template <typename Scalar>
Scalar primitive_J(int j, Scalar a) {
    using std::abs;
    using std::asinh;
    using std::atan;
    using std::copysign;
    using std::isfinite;
    using std::pow;
    using std::sqrt;
    if (j < 1) throw std::invalid_argument("primitive_J: j must be >= 1");
    if (!isfinite(a)) throw std::invalid_argument("primitive_J: a must be finite");
    if (a == Scalar(0)) return Scalar(0);
    const Scalar u = abs(a);

    Scalar value;
    if (j == 1) {
        value = asinh(u);
    } else if (j % 2 == 0) {
        const Scalar one_plus = Scalar(1) + u * u;
        Scalar acc = atan(u);
        for (int i = j - 2; i >= 2; i -= 2)
            acc += detail::double_factorial<Scalar>(i) / detail::double_factorial<Scalar>(i - 1) * u
                   / (Scalar(i) * pow(one_plus, i / 2));
        value = detail::double_factorial<Scalar>(j - 3) / detail::double_factorial<Scalar>(j - 2) * acc;
    } else {
        const int m = (j - 3) / 2;
        const Scalar w = u / sqrt(Scalar(1) + u * u);
        const Scalar w2 = w * w;
        Scalar w_power = w;
        value = Scalar(0);
        for (int l = 0; l <= m; ++l) {
            const Scalar term = detail::binomial<Scalar>(m, l) * w_power / Scalar(2 * l + 1);
            value += (l % 2 == 0) ? term : -term;
            w_power *= w2;
        }
    }
    return copysign(value, a);
}

/// J_j(hi) - J_j(lo), evaluated without cancellation when both limits lie
/// far out on the same side of the origin.
template <typename Scalar>
Scalar primitive_J_difference(int j, Scalar lo, Scalar hi) {
    using std::atan;
    using std::expm1;
    using std::abs;
    using std::log;
    using std::log1p;
    using std::pow;
    using std::sqrt;
    if (lo == hi) return Scalar(0);
    if (lo > hi) return -primitive_J_difference(j, hi, lo);
    if (!(lo > Scalar(0)) && !(hi < Scalar(0))) return primitive_J(j, hi) - primitive_J(j, lo);
    if (hi < Scalar(0)) return primitive_J_difference(j, -hi, -lo);

    // 0 < lo < hi from here on.
    if (j == 1) {
        const Scalar s_lo = sqrt(Scalar(1) + lo * lo);
        const Scalar s_hi = sqrt(Scalar(1) + hi * hi);
        const Scalar gap = (hi - lo) * (Scalar(1) + (hi + lo) / (s_hi + s_lo));
        return log1p(gap / (lo + s_lo));
    }
    if (j == 2) return atan((hi - lo) / (Scalar(1) + hi * lo));
    if (lo < Scalar(2)) return primitive_J(j, hi) - primitive_J(j, lo);

    // Tail expansion in v = 1/t:
    //   int_lo^hi (1+t^2)^(-j/2) dt = sum_k binom(-j/2, k) (v_lo^p - v_hi^p) / p,  p = j - 1 + 2k.
    const Scalar eps = Eigen::NumTraits<Scalar>::epsilon();
    const Scalar v_lo = Scalar(1) / lo;
    const Scalar log_ratio = log(lo / hi);
    Scalar coeff(1);
    Scalar sum(0);
    for (int k = 0; k < 400; ++k) {
        const int p = j - 1 + 2 * k;
        const Scalar term = coeff * pow(v_lo, p) * (-expm1(Scalar(p) * log_ratio)) / Scalar(p);
        sum += term;
        if (2 * k > j && abs(term) <= eps * abs(sum)) break;
        coeff *= (-Scalar(j) / Scalar(2) - Scalar(k)) / Scalar(k + 1);
    }
    return sum;
}

/// True when x is so close to the line spanned by e that Z_j and Gamma_k
/// switch to their one-dimensional antiderivatives.
template <typename DX, typename DE>
bool is_collinear(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DE>& e) {
    return detail::frame_is_collinear(detail::axis_frame(x, e));
}

/// Z_j(x, e, c) = int_0^c |s x - e|^(-j) ds.
///
/// General position: with A the sine of the angle between x and e,
///   Z_j = (J_j((c|x|^2 - e.x) / (A|x|)) - J_j(-e.x / (A|x|))) / (|x| A^(j-1)).
/// Near the axis of e the integrand is (1 -+ s|x|)^(-j) and is integrated
/// exactly; for c|x| <= 1/4 a Gegenbauer expansion is summed instead.
template <typename DX, typename DE>
typename DX::Scalar z_integral(int j, const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DE>& e,
                               typename DX::Scalar c) {
    using Scalar = typename DX::Scalar;
    using std::pow;
    if (j < 1) throw std::invalid_argument("z_integral: j must be >= 1");
    detail::check_integral_args(x, e, c, "z_integral");
    if (c == Scalar(0)) return Scalar(0);
    const auto f = detail::axis_frame(x, e);
    if (f.r == Scalar(0)) return c;
    if (detail::frame_is_collinear(f))
        return detail::z_integral_collinear(j, f.r, f.axial >= Scalar(0) ? Scalar(1) : Scalar(-1), c);
    if (c * f.r <= detail::small_reach_threshold<Scalar>()) return detail::z_integral_series(j, f, c);

    const Scalar A = f.sine();
    const Scalar p = f.cosine();
    const Scalar lo = -p / A;
    const Scalar hi = (c * f.r - p) / A;
    return primitive_J_difference(j, lo, hi) / (f.r * pow(A, j - 1));
}

/// Gamma_k(x, e, c) = int_0^c (e.x - 1/s) / |s x - e|^k + 1/s ds.
///
///   Gamma_2 = log|c x - e|
///   Gamma_1 = log(c/2 sqrt(|x|^2 - (e.x)^2)) + (e.x/|x|) log((c|x|^2 - e.x + |x||cx - e|) / (|x| - e.x))
///             - artanh((c e.x - 1) / |cx - e|)
///   Gamma_k = sum_{j = k-2, k-4, .. > 0} (1/j - 1/(j |cx - e|^j) - (e.x) Z_j) + Gamma_{1 or 2}
///
/// Gamma_1 is evaluated in the algebraically equivalent form
///   log((|cx - e| + 1 - c e.x) / 2) + (e.x/|x|) log(ratio),
/// which has no singular terms on the axis of e; on that axis (and in one
/// dimension) the integrand vanishes identically and Gamma_1 = 0.
/// x = 0 also makes the integrand vanish, so Gamma_k(0, e, c) = 0.
template <typename DX, typename DE>
typename DX::Scalar gamma_integral(int k, const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DE>& e,
                                   typename DX::Scalar c) {
    using Scalar = typename DX::Scalar;
    using std::expm1;
    using std::hypot;
    using std::log;
    using std::log1p;
    if (k < 1) throw std::invalid_argument("gamma_integral: k must be >= 1");
    detail::check_integral_args(x, e, c, "gamma_integral");
    if (c == Scalar(0)) return Scalar(0);
    const auto f = detail::axis_frame(x, e);
    if (f.r == Scalar(0)) return Scalar(0);

    const bool collinear = x.size() == 1 || detail::frame_is_collinear(f);
    const Scalar p = f.cosine();
    const Scalar A = f.sine();
    const Scalar cr = c * f.r;
    // log|cx - e|, with |cx - e|^2 = 1 + c (c|x|^2 - 2 e.x).
    const Scalar log_dist = log1p(c * (c * f.r * f.r - Scalar(2) * f.axial)) / Scalar(2);

    Scalar base;
    if (k % 2 == 0) {
        base = log_dist;
    } else if (collinear) {
        base = Scalar(0);
    } else {
        const Scalar dist = hypot(cr - p, A);
        // (dist + 1 - c e.x)/2 - 1, using dist - 1 = (c^2 r^2 - 2 c r p) / (dist + 1).
        const Scalar shifted = ((cr * cr - Scalar(2) * cr * p) / (dist + Scalar(1)) - cr * p) / Scalar(2);
        Scalar ratio;
        if (cr - p < Scalar(0)) {
            ratio = (Scalar(1) + p) / (dist + p - cr);
        } else {
            const Scalar one_minus_p = p > Scalar(0) ? A * A / (Scalar(1) + p) : Scalar(1) - p;
            ratio = ((cr - p) + dist) / one_minus_p;
        }
        base = log1p(shifted) + p * log(ratio);
    }

    Scalar acc(0);
    for (int j = k - 2; j > 0; j -= 2) {
        const Scalar boundary = -expm1(-Scalar(j) * log_dist) / Scalar(j); // 1/j - 1/(j |cx-e|^j)
        acc += boundary - f.axial * z_integral(j, x, e, c);
    }
    return acc + base;
}

} // namespace ballgreen
