#pragma once

// Verification suite: every closed form is arbitrated against adaptive
// quadrature, finite differences of the defining PDE and boundary
// conditions, or both.

#include "ballgreen/core.hpp"
#include "ballgreen/quadrature.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace ballgreen {

/// Deterministic sampler; identical seeds give identical streams on every
/// platform (no std distributions are involved).
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : engine_(seed) {}

    double uniform();                       // [0, 1)
    double uniform(double lo, double hi);
    double normal();
    Vector normal_vector(int n);
    Vector unit_vector(int n);
    Vector in_ball(int n, double radius);   // uniform in the ball
    Vector in_shell(int n, double r_min, double r_max);

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

struct CheckRecord {
    std::string name;
    long samples = 0;
    double max_error = 0.0;
    double tolerance = 0.0;
    bool pass = true;
};

struct SuiteReport {
    std::uint64_t seed = 0;
    std::vector<int> dims;
    std::vector<CheckRecord> checks;
    bool pass = true;
};

/// |[-D.grad_z G^P](x1) - [-D.grad_z G^P](x2) - (G^E(x1) - G^E(x2))| with the z-gradient
/// taken by Richardson-extrapolated central differences of step h.
double check_eeg_poisson_relation(const Vector& z, const Vector& moment, const Vector& x1, const Vector& x2,
                                  double h = 1e-5, double radius = 1.0);

struct ManufacturedSolution {
    std::function<double(const Vector&)> u;
    std::function<double(const Vector&)> laplacian;
};

/// u = (|x|^2 - 1)^2 + x_1 (|x|^2 - 3): zero normal derivative on the unit sphere.
ManufacturedSolution default_manufactured_solution(int n);

/// Solves Lap u = f with zero Neumann data through u(x) - mean = int_B G_x(z) f(z) dz
/// and returns the largest deviation from the manufactured u over 20 fixed
/// test points, both sides centered by their mean over the test set.
/// quad_points is the Gauss-Legendre order per coordinate and sub-interval.
double representation_solve_check(int n, int quad_points,
                                  const ManufacturedSolution& solution);
double representation_solve_check(int n, int quad_points);

namespace checks {

CheckRecord psi_matches_phi_gradient(int n, Sampler& rng);
CheckRecord reflection_identity(int n, Sampler& rng);
CheckRecord surface_area_gamma();
CheckRecord quadrature_self_test(const QuadratureConfig& cfg);

CheckRecord gamma_vs_quadrature(int n, int samples, Sampler& rng, const QuadratureConfig& cfg);
CheckRecord z_vs_quadrature(int n, int samples, Sampler& rng, const QuadratureConfig& cfg);
CheckRecord primitive_vs_quadrature(int samples, Sampler& rng, const QuadratureConfig& cfg);
CheckRecord primitive_parity(Sampler& rng);
CheckRecord monotonicity(Sampler& rng);
CheckRecord recursion_consistency(int n, Sampler& rng);
CheckRecord collinear_continuity(int n, Sampler& rng);
CheckRecord gamma1_one_dimensional(int samples, Sampler& rng);

CheckRecord poisson_pde_residual(int n, double radius, int samples, Sampler& rng);
CheckRecord eeg_pde_residual(int n, double radius, int samples, Sampler& rng);
CheckRecord poisson_neumann(int n, double radius, int samples, Sampler& rng);
CheckRecord eeg_neumann(int n, double radius, int samples, Sampler& rng);
CheckRecord eeg_radial_neumann(int n, int samples, Sampler& rng);
CheckRecord eeg_poisson_relation(int n, double radius, int samples, Sampler& rng);
CheckRecord radial_reduction(int n, int samples, Sampler& rng);
CheckRecord form_agreement(int n, int samples, Sampler& rng);
CheckRecord reciprocity(int n, int samples, Sampler& rng);
CheckRecord antiderivative(int n, int samples, Sampler& rng);
CheckRecord representation(int n);

} // namespace checks

/// Seed of the sampler for a named check: independent of execution order.
std::uint64_t check_seed(std::uint64_t suite_seed, const std::string& name);

/// Runs every check for the given dimensions (subset of 1..10).
SuiteReport run_suite(std::uint64_t seed, const std::vector<int>& dims, const QuadratureConfig& cfg = {});

/// Report as JSON; numbers carry 17 significant digits.
std::string to_json(const SuiteReport& report);

/// "%.17g" rendering of a double as a JSON token (null when not finite).
std::string json_number(double v);

} // namespace ballgreen
