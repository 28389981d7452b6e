#include <doctest.h>

#include "ballgreen/finite_difference.hpp"
#include "ballgreen/geometry.hpp"
#include "ballgreen/greens.hpp"
#include "ballgreen/quadrature.hpp"
#include "ballgreen/suite.hpp"

#include <cmath>

using namespace ballgreen;

namespace {
Vector vec(std::initializer_list<double> v) {
    Vector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double t : v) out[i++] = t;
    return out;
}
const double pi_ = pi<double>();
} // namespace

TEST_CASE("adaptive quadrature") {
    CHECK(quad_integral([](double) { return 1.0; }, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(quad_integral([](double t) { return 1 / (1 + t * t); }, 0.0, 1.0) == doctest::Approx(pi_ / 4).epsilon(1e-14));
    for (int p = 0; p <= 6; ++p)
        CHECK(std::abs(quad_integral([p](double t) { return std::pow(t, p); }, 0.0, 1.0) - 1.0 / (p + 1)) < 1e-12);
    CHECK(quad_integral([](double t) { return std::sqrt(t); }, 0.0, 1.0) == doctest::Approx(2.0 / 3).epsilon(1e-12));
    CHECK(quad_integral([](double) { return 1.0; }, 0.5, 0.5) == 0.0);
    CHECK_THROWS_AS(quad_integral([](double) { return 1.0; }, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(quad_integral([](double t) { return 1 / t; }, 0.0, 1.0), quadrature_error);
    QuadratureConfig tight;
    tight.max_subdivisions = 1;
    CHECK_THROWS_AS(quad_integral([](double t) { return std::sin(200 * t); }, 0.0, 3.0, tight), quadrature_error);
    QuadratureConfig bad;
    bad.abs_tol = -1;
    CHECK_THROWS_AS(quad_integral([](double) { return 1.0; }, 0.0, 1.0, bad), std::invalid_argument);
}

TEST_CASE("Gauss-Legendre rule") {
    const GaussLegendre gl(12);
    double sum = 0;
    for (double w : gl.weights) sum += w;
    CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
    double moment = 0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) moment += gl.weights[i] * std::pow(gl.nodes[i], 22);
    CHECK(moment == doctest::Approx(2.0 / 23).epsilon(1e-13));
    CHECK(GaussLegendre(1).nodes[0] == 0.0);
    CHECK_THROWS_AS(GaussLegendre(0), std::invalid_argument);
}

TEST_CASE("finite differences") {
    auto sq = [](const Vector& x) { return x.squaredNorm(); };
    CHECK(fd_laplacian(sq, vec({0.1, 0.2, 0.3}), 1e-3) == doctest::Approx(6.0).epsilon(1e-8));
    CHECK(boundary_normal_derivative(sq, vec({0.6, 0.8}), 1e-6) == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(boundary_normal_derivative([](const Vector&) { return 3.0; }, vec({0, 1}), 1e-6) == 0.0);
    auto phi = [](const Vector& x) { return fundamental_phi(x); };
    CHECK(std::abs(fd_laplacian_extrapolated(phi, vec({0.5, 0.3, 0.2}), 1e-3, 2)) < 1e-7);
    auto g2 = [](const Vector& x) { return greens_poisson(vec({0.2, 0.1}), x).value; };
    CHECK(fd_laplacian_extrapolated(g2, vec({-0.4, 0.3}), 1e-3, 2, 1.0) == doctest::Approx(-1 / pi_).epsilon(1e-6));
    const Vector grad = fd_gradient(sq, vec({0.1, -0.2}), 1e-5);
    CHECK(grad[0] == doctest::Approx(0.2).epsilon(1e-9));
    CHECK(grad[1] == doctest::Approx(-0.4).epsilon(1e-9));
    CHECK_THROWS_AS(fd_laplacian(sq, vec({0.9995, 0}), 1e-3, 1.0), stencil_error);
    CHECK_THROWS_AS(fd_laplacian(sq, vec({0.5, 0}), 0.0), std::invalid_argument);
}

TEST_CASE("radial dipole has zero normal derivative") {
    auto g = [](const Vector& x) { return greens_eeg_radial(0.6, vec({0, 1}), x).value; };
    for (double t = 0.1; t < 6.3; t += 0.7)
        CHECK(std::abs(boundary_normal_derivative(g, vec({std::cos(t), std::sin(t)}), 1e-6)) < 1e-6);
}

TEST_CASE("source-gradient relation") {
    const Vector z = vec({0.2, -0.1, 0.3});
    CHECK(check_eeg_poisson_relation(z, vec({1, 2, -1}), vec({0.5, 0.5, 0}), vec({-0.4, 0, -0.6})) < 1e-6);
    CHECK(check_eeg_poisson_relation(vec({0.4}), vec({1}), vec({0.9}), vec({-0.2})) < 1e-6);
    CHECK_THROWS_AS(check_eeg_poisson_relation(z, vec({0, 0, 0}), vec({0.5, 0, 0}), vec({0, 0.5, 0})),
                    std::invalid_argument);
}

TEST_CASE("manufactured solution has zero normal derivative") {
    for (int n = 1; n <= 3; ++n) {
        const auto s = default_manufactured_solution(n);
        Vector u = Vector::Ones(n) / std::sqrt(double(n));
        CHECK(std::abs(boundary_normal_derivative(s.u, u, 1e-6)) < 1e-6);
        auto lap = fd_laplacian(s.u, Vector(0.3 * u), 1e-3);
        CHECK(lap == doctest::Approx(s.laplacian(Vector(0.3 * u))).epsilon(1e-6));
    }
}

TEST_CASE("representation solve") {
    CHECK(representation_solve_check(1, 16) < 1e-6);
    CHECK(representation_solve_check(2, 48) < 1e-3);
    ManufacturedSolution constant;
    constant.u = [](const Vector&) { return 2.0; };
    constant.laplacian = [](const Vector&) { return 0.0; };
    CHECK(representation_solve_check(2, 8, constant) == 0.0);
    CHECK_THROWS_AS(representation_solve_check(4, 8), std::invalid_argument);
}

TEST_CASE("sampler is deterministic") {
    Sampler a(7), b(7);
    for (int i = 0; i < 100; ++i) CHECK(a.normal() == b.normal());
    Sampler c(7);
    for (int i = 0; i < 200; ++i) {
        const double u = c.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const Vector p = c.in_shell(4, 0.2, 0.5);
        CHECK(p.norm() >= 0.2 - 1e-15);
        CHECK(p.norm() <= 0.5 + 1e-15);
    }
    CHECK(check_seed(42, "a") != check_seed(42, "b"));
    CHECK(check_seed(42, "a") != check_seed(43, "a"));
}

TEST_CASE("suite plumbing") {
    const auto empty = run_suite(42, {});
    CHECK(empty.pass);
    CHECK(empty.checks.empty());
    CHECK(to_json(empty) == "{\n  \"seed\": 42,\n  \"dims\": [],\n  \"checks\": [],\n  \"pass\": true\n}\n");
    CHECK_THROWS_AS(run_suite(42, {11}), std::invalid_argument);
    CHECK(json_number(0.1) == "0.10000000000000001");
    CHECK(json_number(NAN) == "null");

    const auto a = run_suite(5, {2});
    const auto b = run_suite(5, {2});
    CHECK(a.pass);
    CHECK(to_json(a) == to_json(b));
    for (const auto& c : a.checks) {
        INFO(c.name);
        CHECK(c.pass);
    }
}
