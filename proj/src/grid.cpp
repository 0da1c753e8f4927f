#include "spinorsurf/grid.hpp"

#include <cmath>
#include <numbers>

namespace spinorsurf {

double Axis::weight(int i) const {
    const double h = spacing();
    if (sampling == Sampling::Endpoints && (i == 0 || i == n - 1)) return 0.5 * h;
    if (sampling != Sampling::Polar) return h;
    // Fejer's first rule for int_0^pi F(t) sin t dt on the nodes t_i = (i + 1/2) pi / n
    const double pi = std::numbers::pi;
    const double t = (i + 0.5) * pi / n;
    double s = 0.0;
    for (int j = 1; j <= n / 2; ++j) s += std::cos(2.0 * j * t) / (4.0 * j * j - 1.0);
    const double w = 2.0 / n * (1.0 - 2.0 * s);
    return w / std::sin(t) * (hi - lo) / pi;
}

double measured_order(const std::vector<double>& residuals) {
    if (residuals.size() < 2) return std::nan("");
    double order = 1e300;
    for (std::size_t k = 1; k < residuals.size(); ++k)
        order = std::min(order, std::log2(residuals[k - 1] / residuals[k]));
    return order;
}

}  // namespace spinorsurf
