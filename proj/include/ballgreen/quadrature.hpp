#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <stdexcept>
#include <vector>

namespace ballgreen {

struct QuadratureConfig {
    double abs_tol = 1e-13;
    double rel_tol = 1e-12;
    int max_subdivisions = 20000;

    void validate() const {
        if (!(abs_tol > 0.0) || !std::isfinite(abs_tol)) throw std::invalid_argument("QuadratureConfig: abs_tol must be positive");
        if (!(rel_tol > 0.0) || !std::isfinite(rel_tol)) throw std::invalid_argument("QuadratureConfig: rel_tol must be positive");
        if (max_subdivisions < 1) throw std::invalid_argument("QuadratureConfig: max_subdivisions must be >= 1");
    }
};

class quadrature_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace gauss_kronrod {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
// Abscissae x[0..7] (x[7] = 0); Gauss nodes are x[1], x[3], x[5], x[7].
inline constexpr std::array<double, 8> nodes = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};

inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};

inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Panel {
    double lo;
    double hi;
    double value;
    double error;
};

template <typename F>
Panel apply(F& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(center);
    double kronrod = kronrod_weights[7] * fc;
    double gauss = gauss_weights[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * nodes[i];
        const double sum = f(center - dx) + f(center + dx);
        kronrod += kronrod_weights[i] * sum;
        if (i % 2 == 1) gauss += gauss_weights[i / 2] * sum;
    }
    return {lo, hi, kronrod * half, std::abs((kronrod - gauss) * half)};
}

struct LargerError {
    bool operator()(const Panel& a, const Panel& b) const {
        if (a.error != b.error) return a.error < b.error;
        return a.lo > b.lo;
    }
};

} // namespace gauss_kronrod

/// Adaptive Gauss-Kronrod (7/15) integration of f over [lo, hi].
///
/// The panel with the largest |K15 - G7| is bisected until the summed
/// estimate drops below max(abs_tol, rel_tol |value|). Deterministic.
template <typename F>
double quad_integral(F&& f, double lo, double hi, const QuadratureConfig& cfg = {}) {
    using gauss_kronrod::Panel;
    cfg.validate();
    if (!(lo <= hi)) throw std::invalid_argument("quad_integral: requires lo <= hi");
    if (lo == hi) return 0.0;

    std::priority_queue<Panel, std::vector<Panel>, gauss_kronrod::LargerError> panels;
    Panel first = gauss_kronrod::apply(f, lo, hi);
    double value = first.value;
    double error = first.error;
    panels.push(first);

    for (int split = 0; split < cfg.max_subdivisions; ++split) {
        if (!std::isfinite(value)) throw quadrature_error("quad_integral: integrand is not finite");
        if (error <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value))) return value;
        const Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        const Panel left = gauss_kronrod::apply(f, worst.lo, mid);
        const Panel right = gauss_kronrod::apply(f, mid, worst.hi);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
    }
    // Re-sum to shed drift from the running updates before the final check.
    value = 0.0;
    error = 0.0;
    std::vector<Panel> all;
    while (!panels.empty()) {
        all.push_back(panels.top());
        panels.pop();
    }
    for (const auto& p : all) {
        value += p.value;
        error += p.error;
    }
    if (error <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value))) return value;
    throw quadrature_error("quad_integral: subdivision limit reached before the tolerance was met");
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit GaussLegendre(int n);
};

} // namespace ballgreen
