#pragma once
// Convergence-controlled verification of the surface identities, per preset.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "spinorsurf/charts.hpp"
#include "spinorsurf/report.hpp"
#include "spinorsurf/spinalgebra.hpp"

namespace spinorsurf {

struct VerifyOptions {
    // algebra, plane, flat_torus, sphere, enneper, catenoid, helicoid, graph, weierstrass
    std::vector<std::string> surfaces;
    // Sweep of (n_u, n_v); residuals are reported on the last, orders over all.
    std::vector<std::pair<int, int>> grids = {{32, 32}, {64, 64}, {128, 128}};
    // Grid for the whole-sphere integral identities.
    std::pair<int, int> quadrature_grid = {256, 128};
    Spinord ambient = Spinord(1, 0);
    DerivativeMode mode = DerivativeMode::Analytic;
    std::uint64_t seed = 20240607;
    int random_samples = 1000;
    // Overrides keyed by check_id.
    std::map<std::string, double> tolerances;
};

std::vector<std::string> known_surfaces();

// Runs every check for the requested surfaces. Sequential and deterministic.
Report verify(const VerifyOptions& options);

}  // namespace spinorsurf
