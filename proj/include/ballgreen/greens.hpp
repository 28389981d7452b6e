#pragma once

// Green's functions of the Neumann problems on the unit ball B in R^n:
//
//   Poisson:  Lap G = delta_z - n/omega_n  in B,   grad G . nu = 0 on dB
//   EEG:      Lap G = div(D delta_z)        in B,   grad G . nu = 0 on dB
//
// Both are determined up to an additive function of the source position;
// the radius-R variants follow by rescaling.

#include "ballgreen/core.hpp"
#include "ballgreen/geometry.hpp"
#include "ballgreen/special_integrals.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ballgreen {

/// Which algebraic form of the general dipole Green's function to evaluate.
/// `integral` keeps the integral of 1/|sx-e|^n + n(s x.e - 1)/|sx-e|^(n+2)
/// together; `expanded` splits it into Z_n, Z_{n+2} and a boundary term that
/// divides by |x|^2. `automatic` picks `expanded` unless |x| is small.
enum class EegForm { automatic, integral, expanded };

// Evaluation points closer than this to the source are rejected.
inline constexpr double source_coincidence_radius = 1e-8;
// Evaluation points closer than this are accepted but flagged.
inline constexpr double near_source_radius = 1e-6;
// Sources closer than this to the center use the centered formulas.
inline constexpr double centered_source_radius = 1e-12;
// Below this |x|, EegForm::automatic selects the integral form.
inline constexpr double expanded_form_min_radius = 1e-3;

namespace detail {

template <typename DZ, typename DX>
typename DX::Scalar check_source_and_point(const Eigen::MatrixBase<DZ>& z, const Eigen::MatrixBase<DX>& x,
                                           typename DX::Scalar radius, const char* what) {
    using Scalar = typename DX::Scalar;
    require_finite(z, what);
    require_finite(x, what);
    require_same_dim(z, x, what);
    if (!(z.norm() < radius)) throw std::invalid_argument(std::string(what) + ": source must lie inside the ball");
    if (x.norm() > radius * (Scalar(1) + ball_slack<Scalar>()))
        throw std::invalid_argument(std::string(what) + ": evaluation point must lie in the closed ball");
    const Scalar gap = (x - z).norm();
    if (gap < Scalar(source_coincidence_radius) * radius)
        throw source_coincidence_error(std::string(what) + ": evaluation point coincides with the source");
    return gap;
}

template <typename Scalar>
void check_ball(const BallSpec<Scalar>& ball, Eigen::Index size, const char* what) {
    if (!(ball.radius > Scalar(0)) || ball.dim < 1) throw std::invalid_argument(std::string(what) + ": invalid ball");
    if (size != ball.dim) throw std::invalid_argument(std::string(what) + ": vector length does not match the ball dimension");
}

} // namespace detail

/// Dipole at c e pointing along e, made Neumann by a reflected dipole at e/c:
///   G(x) = [(e.x - c) / |x - c e|^n - (e.x - 1/c) / (c^n |x - e/c|^n)] / omega_n.
template <typename DE, typename DX>
GreenEval<typename DX::Scalar> greens_eeg_radial(typename DX::Scalar c, const Eigen::MatrixBase<DE>& e,
                                                 const Eigen::MatrixBase<DX>& x) {
    using Scalar = typename DX::Scalar;
    using std::abs;
    using std::pow;
    detail::require_finite(e, "greens_eeg_radial");
    detail::require_finite(x, "greens_eeg_radial");
    detail::require_same_dim(e, x, "greens_eeg_radial");
    if (abs(e.norm() - Scalar(1)) > Scalar(1e-14) + Scalar(4) * Eigen::NumTraits<Scalar>::epsilon())
        throw std::invalid_argument("greens_eeg_radial: direction must be a unit vector");
    if (c == Scalar(0)) throw centered_source_error("greens_eeg_radial: c = 0 has no image dipole; use greens_eeg");
    if (!(c > Scalar(0) && c < Scalar(1))) throw std::invalid_argument("greens_eeg_radial: c must lie in (0, 1)");
    const VectorX<Scalar> z = c * e;
    const Scalar gap = detail::check_source_and_point(z, x, Scalar(1), "greens_eeg_radial");

    const int n = static_cast<int>(x.size());
    const Scalar axial = e.dot(x);
    const Scalar image_dist = (c * x - e).norm(); // c |x - e/c|
    GreenEval<Scalar> out;
    out.value = ((axial - c) / pow(gap, n) - (axial - Scalar(1) / c) / pow(image_dist, n)) / surface_area<Scalar>(n);
    if (gap < Scalar(near_source_radius)) out.set(EvalFlag::near_source_singularity);
    return out;
}

/// Neumann Green's function of the Poisson problem on the unit ball,
///   G_z(x) = Phi(x - z) + Gamma_n(x, z/|z|, |z|) / omega_n - |x|^2 / (2 omega_n),
/// reducing to Phi(x) - |x|^2 / (2 omega_n) for a centered source.
template <typename DZ, typename DX>
GreenEval<typename DX::Scalar> greens_poisson(const Eigen::MatrixBase<DZ>& z, const Eigen::MatrixBase<DX>& x) {
    using Scalar = typename DX::Scalar;
    const Scalar gap = detail::check_source_and_point(z, x, Scalar(1), "greens_poisson");
    const int n = static_cast<int>(x.size());
    const Scalar omega = surface_area<Scalar>(n);
    const Scalar c = z.norm();

    GreenEval<Scalar> out;
    if (gap < Scalar(near_source_radius)) out.set(EvalFlag::near_source_singularity);
    const Scalar quadratic = x.squaredNorm() / (Scalar(2) * omega);
    if (c < Scalar(centered_source_radius)) {
        out.set(EvalFlag::centered_source);
        out.value = fundamental_phi(x) - quadratic;
        return out;
    }
    const VectorX<Scalar> e = z / c;
    if (n >= 2 && is_collinear(x, e)) out.set(EvalFlag::collinear_fallback);
    out.value = fundamental_phi((x - z).eval()) + gamma_integral(n, x, e, c) / omega - quadratic;
    return out;
}

/// Neumann Green's function of the dipole (EEG) problem on the unit ball,
///
///   omega_n G(x) = D . ( (x - z)/|x - z|^n - (x.z - 1)/(|z|^n |x - z*|^n) z*
///                        - I(x) (I - e e^T) x / |z| ),
///
/// with e = z/|z|, z* = z/|z|^2 and
///   I(x) = int_0^|z| 1/|sx - e|^n + n (s x.e - 1)/|sx - e|^(n+2) ds
///        = Z_n + n(cos^2 - 1) Z_{n+2} - (x.e/|x|^2) (1/|cx - e|^n - 1).
///
/// The constant -D.z*/omega_n of the unnormalized expression is dropped, so a
/// radial dipole reproduces greens_eeg_radial exactly. The result equals
/// -D . grad_z greens_poisson up to that function of z.
template <typename DX>
GreenEval<typename DX::Scalar> greens_eeg(const Dipole<typename DX::Scalar>& dipole, const Eigen::MatrixBase<DX>& x,
                                          EegForm form = EegForm::automatic) {
    using Scalar = typename DX::Scalar;
    using std::expm1;
    using std::log1p;
    using std::pow;
    const auto& z = dipole.position;
    const auto& moment = dipole.moment;
    detail::require_finite(moment, "greens_eeg");
    detail::require_same_dim(moment, x, "greens_eeg");
    if (!(moment.norm() > Scalar(0))) throw std::invalid_argument("greens_eeg: dipole moment must be nonzero");
    const Scalar gap = detail::check_source_and_point(z, x, Scalar(1), "greens_eeg");
    const Scalar c = z.norm();
    if (c < Scalar(centered_source_radius))
        throw centered_source_error("greens_eeg: dipole at the center has no image point");

    const int n = static_cast<int>(x.size());
    const VectorX<Scalar> e = z / c;
    const VectorX<Scalar> image = e / c;
    const auto frame = detail::axis_frame(x, e);

    GreenEval<Scalar> out;
    if (gap < Scalar(near_source_radius)) out.set(EvalFlag::near_source_singularity);
    if (n >= 2 && detail::frame_is_collinear(frame)) out.set(EvalFlag::collinear_fallback);

    // log|cx - e| and 1/|cx - e|^n - 1.
    const Scalar log_dist = log1p(c * (c * frame.r * frame.r - Scalar(2) * frame.axial)) / Scalar(2);
    const Scalar inv_pow_minus_one = expm1(-Scalar(n) * log_dist);
    const Scalar inv_pow = inv_pow_minus_one + Scalar(1);

    VectorX<Scalar> field = (x - z) / pow(gap, n) - (x.dot(z) - Scalar(1)) * inv_pow * image;

    // The projected term vanishes identically at x = 0.
    if (frame.r > Scalar(0)) {
        if (form == EegForm::automatic)
            form = frame.r >= Scalar(expanded_form_min_radius) ? EegForm::expanded : EegForm::integral;
        const Scalar r2 = frame.r * frame.r;
        const Scalar zn = z_integral(n, x, e, c);
        const Scalar zn2 = z_integral(n + 2, x, e, c);
        Scalar bracket;
        if (form == EegForm::integral) {
            // int_0^c s/|sx - e|^(n+2) ds from d/ds |sx - e|^(-n) = -n (s|x|^2 - x.e) |sx - e|^(-n-2).
            const Scalar first_moment = (frame.axial * zn2 - inv_pow_minus_one / Scalar(n)) / r2;
            bracket = zn + Scalar(n) * frame.axial * first_moment - Scalar(n) * zn2;
        } else {
            const Scalar sine2 = frame.sine() * frame.sine();
            bracket = -(frame.axial / r2) * inv_pow_minus_one + zn - Scalar(n) * sine2 * zn2;
        }
        field -= bracket / c * (x - frame.axial * e);
    }
    out.value = moment.dot(field) / surface_area<Scalar>(n);
    return out;
}

/// Poisson Green's function on the ball of radius R:
/// R^(2-n) G_{z/R}(x/R), solving Lap G = delta_z - n/(omega_n R^n).
template <typename DZ, typename DX>
GreenEval<typename DX::Scalar> greens_poisson_radius(const BallSpec<typename DX::Scalar>& ball,
                                                     const Eigen::MatrixBase<DZ>& z,
                                                     const Eigen::MatrixBase<DX>& x) {
    using Scalar = typename DX::Scalar;
    using std::pow;
    detail::check_ball(ball, x.size(), "greens_poisson_radius");
    detail::check_ball(ball, z.size(), "greens_poisson_radius");
    const Scalar R = ball.radius;
    auto out = greens_poisson((z / R).eval(), (x / R).eval());
    out.value *= pow(R, 2 - ball.dim);
    return out;
}

/// Dipole Green's function on the ball of radius R:
/// R^(1-n) G^D_{z/R}(x/R), solving Lap G = div(D delta_z).
template <typename DX>
GreenEval<typename DX::Scalar> greens_eeg_radius(const BallSpec<typename DX::Scalar>& ball,
                                                 const Dipole<typename DX::Scalar>& dipole,
                                                 const Eigen::MatrixBase<DX>& x, EegForm form = EegForm::automatic) {
    using Scalar = typename DX::Scalar;
    using std::pow;
    detail::check_ball(ball, x.size(), "greens_eeg_radius");
    detail::check_ball(ball, dipole.position.size(), "greens_eeg_radius");
    const Scalar R = ball.radius;
    const Dipole<Scalar> unit{dipole.position / R, dipole.moment};
    auto out = greens_eeg(unit, (x / R).eval(), form);
    out.value *= pow(R, 1 - ball.dim);
    return out;
}

} // namespace ballgreen
