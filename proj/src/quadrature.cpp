#include "ballgreen/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace ballgreen {

GaussLegendre::GaussLegendre(int n) {
    if (n < 1) throw std::invalid_argument("GaussLegendre: order must be >= 1");
    nodes.resize(n);
    weights.resize(n);
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Tricomi's initial guess, then Newton on P_n.
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            const double pn = n == 1 ? x : p1;
            const double pn_minus = n == 1 ? 1.0 : p0;
            dp = n * (x * pn - pn_minus) / (x * x - 1.0);
            const double dx = pn / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
}

} // namespace ballgreen
