#include "ballgreen/suite.hpp"

#include "ballgreen/geometry.hpp"
#include "ballgreen/greens.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ballgreen {

ManufacturedSolution default_manufactured_solution(int n) {
    ManufacturedSolution s;
    s.u = [](const Vector& x) {
        const double r2 = x.squaredNorm();
        return (r2 - 1.0) * (r2 - 1.0) + x[0] * (r2 - 3.0);
    };
    s.laplacian = [n](const Vector& x) {
        const double r2 = x.squaredNorm();
        return 4.0 * n * (r2 - 1.0) + 8.0 * r2 + (2.0 * n + 4.0) * x[0];
    };
    return s;
}

namespace {

// Gauss-Legendre rule mapped to [lo, hi].
struct MappedRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

MappedRule mapped(const GaussLegendre& gl, double lo, double hi) {
    MappedRule m;
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        m.nodes.push_back(mid + half * gl.nodes[i]);
        m.weights.push_back(half * gl.weights[i]);
    }
    return m;
}

// Radial rule on [0, 1] split at the singular radius.
MappedRule radial_rule(const GaussLegendre& gl, double split) {
    MappedRule out;
    for (auto [lo, hi] : {std::pair{0.0, split}, std::pair{split, 1.0}}) {
        if (!(hi > lo)) continue;
        const MappedRule m = mapped(gl, lo, hi);
        out.nodes.insert(out.nodes.end(), m.nodes.begin(), m.nodes.end());
        out.weights.insert(out.weights.end(), m.weights.begin(), m.weights.end());
    }
    return out;
}

// Orthonormal basis whose first vector is the direction of p (e_1 when p = 0).
std::vector<Vector> aligned_basis(const Vector& p) {
    const int n = static_cast<int>(p.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
    if (p.norm() > 0.0) m.col(0) = p / p.norm();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    Eigen::MatrixXd q = qr.householderQ();
    if (q.col(0).dot(m.col(0)) < 0.0) q.col(0) *= -1.0;
    std::vector<Vector> basis;
    for (int i = 0; i < n; ++i) basis.emplace_back(q.col(i));
    return basis;
}

// int_B G_p(y) f(y) dy in coordinates centered at the origin with the polar
// axis through p. G_p depends on y only through |y| and the polar angle, so it
// is evaluated once per (radius, angle) node.
double represent(const Vector& p, int quad_points, const std::function<double(const Vector&)>& f) {
    const int n = static_cast<int>(p.size());
    const GaussLegendre gl(quad_points);
    const MappedRule rho = radial_rule(gl, p.norm());
    const auto basis = aligned_basis(p);
    const double pi_ = pi<double>();

    double total = 0.0;
    if (n == 1) {
        // Kink at y = p.
        for (auto [lo, hi] : {std::pair{-1.0, p[0]}, std::pair{p[0], 1.0}}) {
            const MappedRule m = mapped(gl, lo, hi);
            for (std::size_t i = 0; i < m.nodes.size(); ++i) {
                Vector y(1);
                y[0] = m.nodes[i];
                total += m.weights[i] * greens_poisson(p, y).value * f(y);
            }
        }
        return total;
    }

    // Polar angle through w in [0, 1], clustered at the axis where the
    // singularity sits.
    const MappedRule w = mapped(gl, 0.0, 1.0);
    for (std::size_t i = 0; i < rho.nodes.size(); ++i) {
        const double r = rho.nodes[i];
        for (std::size_t k = 0; k < w.nodes.size(); ++k) {
            const double s = w.nodes[k];
            if (n == 2) {
                const double theta = pi_ * s * s;
                const double jac = 2.0 * pi_ * s * w.weights[k] * r * rho.weights[i];
                const Vector y_plus = r * (std::cos(theta) * basis[0] + std::sin(theta) * basis[1]);
                const Vector y_minus = r * (std::cos(theta) * basis[0] - std::sin(theta) * basis[1]);
                const double g = greens_poisson(p, y_plus).value;
                total += jac * g * (f(y_plus) + f(y_minus));
            } else {
                const double u = 1.0 - 2.0 * s * s;
                const double sine = std::sqrt(std::max(0.0, 1.0 - u * u));
                const double jac = 4.0 * s * w.weights[k] * r * r * rho.weights[i];
                const Vector axial = r * u * basis[0];
                const double g = greens_poisson(p, Vector(axial + r * sine * basis[1])).value;
                // Trapezoid rule in azimuth, exact for the polynomial sources used here.
                const int m = 2 * quad_points;
                double ring = 0.0;
                for (int a = 0; a < m; ++a) {
                    const double phi = 2.0 * pi_ * a / m;
                    ring += f(Vector(axial + r * sine * (std::cos(phi) * basis[1] + std::sin(phi) * basis[2])));
                }
                total += jac * g * ring * 2.0 * pi_ / m;
            }
        }
    }
    return total;
}

} // namespace

double representation_solve_check(int n, int quad_points, const ManufacturedSolution& solution) {
    if (n < 1 || n > 3) throw std::invalid_argument("representation_solve_check: dimension must be 1, 2 or 3");
    if (quad_points < 2) throw std::invalid_argument("representation_solve_check: quad_points must be >= 2");

    Sampler rng(20240611ull + static_cast<std::uint64_t>(n));
    std::vector<Vector> points{Vector::Zero(n)};
    while (points.size() < 20) points.push_back(rng.in_ball(n, 0.8));

    std::vector<double> rep, exact;
    for (const auto& p : points) {
        rep.push_back(represent(p, quad_points, solution.laplacian));
        exact.push_back(solution.u(p));
    }
    const auto mean = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x;
        return s / static_cast<double>(v.size());
    };
    const double mr = mean(rep), me = mean(exact);
    double worst = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) worst = std::max(worst, std::abs((rep[i] - mr) - (exact[i] - me)));
    return worst;
}

double representation_solve_check(int n, int quad_points) {
    return representation_solve_check(n, quad_points, default_manufactured_solution(n));
}

} // namespace ballgreen
