#include <doctest.h>

#include "ballgreen/geometry.hpp"
#include "ballgreen/quadrature.hpp"
#include "ballgreen/special_integrals.hpp"

#include <cmath>

using namespace ballgreen;

namespace {
Vector vec(std::initializer_list<double> v) {
    Vector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double t : v) out[i++] = t;
    return out;
}
Vector axis(int n, int i) { return Vector::Unit(n, i); }
const double pi_ = pi<double>();
} // namespace

// Reference values: tests/oracle/frozen_values.py (mpmath quadrature).

TEST_CASE("primitive_J reference values") {
    CHECK(primitive_J(2, 1.0) == doctest::Approx(pi_ / 4).epsilon(1e-15));
    CHECK(primitive_J(1, 1.0) == doctest::Approx(0.88137358701954302523).epsilon(1e-15));
    CHECK(primitive_J(4, 1.0) == doctest::Approx(0.25 + pi_ / 8).epsilon(1e-15));
    CHECK(primitive_J(3, 2.0) == doctest::Approx(0.89442719099991587856).epsilon(1e-15));
    CHECK(primitive_J(5, 1.0) == doctest::Approx(0.58925565098878960367).epsilon(1e-15));
    CHECK(primitive_J(7, -3.0) == doctest::Approx(-0.53316001350438875538).epsilon(1e-14));
    CHECK(primitive_J(6, 0.5) == doctest::Approx(0.40386785337530229358).epsilon(1e-14));
    for (int j = 1; j <= 9; ++j) CHECK(primitive_J(j, 0.0) == 0.0);
    CHECK_THROWS_AS(primitive_J(0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(primitive_J(3, INFINITY), std::invalid_argument);
}

TEST_CASE("primitive_J is odd and increasing") {
    for (int j = 1; j <= 12; ++j) {
        double prev = primitive_J(j, -4.0);
        for (double a = -3.9; a < 4.0; a += 0.1) {
            CHECK(primitive_J(j, -a) == -primitive_J(j, a));
            const double v = primitive_J(j, a);
            CHECK(v > prev);
            prev = v;
        }
    }
}

TEST_CASE("primitive_J_difference keeps digits far out") {
    for (int j = 1; j <= 9; ++j) {
        for (double lo : {-50.0, 0.3, 2.5, 40.0, 1e4}) {
            const double hi = lo + 0.001 * std::abs(lo) + 0.01;
            const double oracle = quad_integral([j](double t) { return std::pow(1 + t * t, -0.5 * j); }, lo, hi);
            CHECK(primitive_J_difference(j, lo, hi) == doctest::Approx(oracle).epsilon(1e-11));
            CHECK(primitive_J_difference(j, hi, lo) == doctest::Approx(-oracle).epsilon(1e-11));
        }
    }
}

TEST_CASE("z_integral reference values") {
    CHECK(z_integral(3, vec({0.1, 0.2}), axis(2, 0), 0.0) == 0.0);
    CHECK(z_integral(3, vec({0, 0, 0}), axis(3, 0), 0.7) == doctest::Approx(0.7).epsilon(1e-15));
    // exact collinear value 7/9
    CHECK(z_integral(3, vec({0.5, 0, 0}), axis(3, 0), 0.5) == doctest::Approx(7.0 / 9.0).epsilon(1e-14));
    CHECK(is_collinear(vec({0.5, 0, 0}), axis(3, 0)));
    CHECK(z_integral(2, vec({0.3, 0.4}), axis(2, 0), 0.9) == doctest::Approx(1.1453828969939740548).epsilon(1e-13));
    CHECK(z_integral(5, vec({-0.2, 0.5, 0.6}), axis(3, 2), 0.8) == doctest::Approx(2.8721627878157325708).epsilon(1e-13));
    // small c|x|: series branch
    CHECK(z_integral(1, vec({0.1, 0.05}), axis(2, 1), 0.3) == doctest::Approx(0.30222621962534591352).epsilon(1e-14));
}

TEST_CASE("z_integral argument validation") {
    CHECK_THROWS_AS(z_integral(0, vec({0.1, 0.2}), axis(2, 0), 0.5), std::invalid_argument);
    CHECK_THROWS_AS(z_integral(2, vec({0.1, 0.2}), vec({1, 1}), 0.5), std::invalid_argument);
    CHECK_THROWS_AS(z_integral(2, vec({0.1, 0.2}), axis(2, 0), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(z_integral(2, vec({0.1, 0.2}), axis(2, 0), -0.1), std::invalid_argument);
    CHECK_THROWS_AS(z_integral(2, vec({1.1, 0.2}), axis(2, 0), 0.5), std::invalid_argument);
    CHECK_THROWS_AS(z_integral(2, vec({0.1, 0.2, 0}), axis(2, 0), 0.5), std::invalid_argument);
}

TEST_CASE("gamma_integral reference values") {
    CHECK(gamma_integral(4, vec({0.1, 0.2}), axis(2, 0), 0.0) == 0.0);
    CHECK(gamma_integral(2, vec({0.5, 0}), axis(2, 0), 0.5) == doctest::Approx(std::log(0.75)).epsilon(1e-15));
    CHECK(gamma_integral(3, vec({0, 0.8, 0}), axis(3, 0), 0.6) == doctest::Approx(0.15165459610557097965).epsilon(1e-13));
    CHECK(gamma_integral(3, vec({-0.7, 0.2, 0.1}), axis(3, 0), 0.85)
          == doctest::Approx(0.84785025606218477202).epsilon(1e-13));
    CHECK(gamma_integral(5, vec({0.3, 0.3, 0.3, 0.3, 0.3}), axis(5, 0), 0.7)
          == doctest::Approx(-0.68528932070581281752).epsilon(1e-13));
    CHECK(gamma_integral(4, vec({0.6, -0.3, 0.2, 0.5}), axis(4, 1), 0.9)
          == doctest::Approx(0.83970423593703506686).epsilon(1e-13));
    CHECK(gamma_integral(1, vec({0.3, 0.6}), axis(2, 0), 0.75) == doctest::Approx(0.063515400272349792252).epsilon(1e-13));
}

TEST_CASE("gamma_integral degenerate inputs") {
    CHECK(gamma_integral(1, vec({0.4}), vec({1}), 0.5) == 0.0);
    CHECK(gamma_integral(1, vec({-0.9}), vec({-1}), 0.9) == 0.0);
    CHECK(gamma_integral(1, vec({0, 0.5, 0}), vec({0, 1, 0}), 0.5) == 0.0); // on the axis
    CHECK(gamma_integral(3, vec({0, 0, 0}), axis(3, 0), 0.5) == 0.0);
    CHECK_THROWS_AS(gamma_integral(0, vec({0.1, 0.2}), axis(2, 0), 0.5), std::invalid_argument);
}

TEST_CASE("gamma_integral agrees with quadrature of the combined integrand") {
    const Vector x = vec({0.2, -0.5, 0.4, 0.1});
    const Vector e = vec({0.5, 0.5, 0.5, 0.5});
    for (int k = 1; k <= 8; ++k) {
        auto f = [&](double s) { return (e.dot(x) - 1 / s) / std::pow((s * x - e).norm(), k) + 1 / s; };
        const double q = quad_integral(f, 0.0, 0.9);
        CHECK(gamma_integral(k, x, e, 0.9) == doctest::Approx(q).epsilon(1e-11));
    }
}

TEST_CASE("collinear fallback is continuous") {
    const Vector e = axis(3, 0);
    for (double sine : {0.5e-7, 0.99e-7, 1.01e-7, 2e-7}) {
        const Vector x = 0.8 * vec({std::sqrt(1 - sine * sine), sine, 0});
        const Vector on_axis = vec({0.8, 0, 0});
        for (int j = 1; j <= 5; ++j)
            CHECK(z_integral(j, x, e, 0.9) == doctest::Approx(z_integral(j, on_axis, e, 0.9)).epsilon(1e-9));
        CHECK(gamma_integral(3, x, e, 0.9) == doctest::Approx(gamma_integral(3, on_axis, e, 0.9)).epsilon(1e-9));
    }
}
