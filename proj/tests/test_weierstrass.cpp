#include <doctest.h>

#include <numbers>

#include "spinorsurf/periods.hpp"
#include "spinorsurf/spinorfield.hpp"
#include "spinorsurf/weierstrass.hpp"
#include "support.hpp"

using namespace spinorsurf;
using Eigen::Vector3d;

namespace {

const Complex I(0, 1);

Vector3d enneper_closed(Complex z) {
    return Vector3d((z - z * z * z / 3.0).real(), (I * (z + z * z * z / 3.0)).real(), (z * z).real());
}

Vector3d catenoid_closed(Complex z) { return Vector3d((-std::cosh(z)).real(), (I * std::sinh(z)).real(), z.real()); }

Field<Vector3d> nodes(const ChartSpec& c) {
    Field<Vector3d> x(c.grid.size());
    for (int k = 0; k < c.grid.size(); ++k)
        x[k] = c.position(c.grid.u.coord(c.grid.iu(k)), c.grid.v.coord(c.grid.jv(k)));
    return x;
}

}  // namespace

TEST_CASE("Enneper against its closed form") {
    const HoloData d = enneper_data();
    const Vector3d p = weierstrass_point(d, 0.0, 1.0, 0.01);
    CHECK((p - Vector3d(2.0 / 3.0, 0, 1)).norm() < 1e-12);
    CHECK(weierstrass_point(d, Complex(0.3, -0.2), Complex(0.3, -0.2), 0.01).norm() == 0.0);
    for (Complex z : {Complex(0.5, 0.5), Complex(-0.7, 0.2), Complex(0.1, -0.9)}) {
        const Complex z0(-0.4, 0.3);
        CHECK((weierstrass_point(d, z0, z, 0.02) - (enneper_closed(z) - enneper_closed(z0))).norm() < 1e-10);
    }
}

TEST_CASE("catenoid data reproduce the catenoid") {
    const HoloData d = catenoid_data();
    const Complex z0(-1, 0);
    const ChartSpec patch = weierstrass_immersion(d, 33, 33, z0);
    const Field<Vector3d> x = nodes(patch);
    double sq = 0;
    for (int k = 0; k < patch.grid.size(); ++k) {
        const Complex z(patch.grid.u.coord(patch.grid.iu(k)), patch.grid.v.coord(patch.grid.jv(k)));
        sq += (x[k] - (catenoid_closed(z) - catenoid_closed(z0))).squaredNorm();
    }
    CHECK(std::sqrt(sq / patch.grid.size()) < 1e-6);
}

TEST_CASE("Cauchy-Riemann check") {
    const Grid grid{{-1, 1, 32, Sampling::Endpoints}, {-1, 1, 32, Sampling::Endpoints}};
    const HolomorphyReport lin = holomorphy_check(polynomial_data({0.5, Complex(1, 2)}, {1.0}), grid);
    CHECK(lin.cauchy_riemann_g < 1e-12);
    CHECK(lin.cauchy_riemann_mu < 1e-12);
    HoloData bad = enneper_data();
    bad.g = [](Complex z) { return std::conj(z); };
    CHECK(holomorphy_check(bad, grid).cauchy_riemann_g == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("cell loop integrals vanish at second order") {
    const auto r = testing::sweep([](int n) {
        return holomorphy_check(catenoid_data(), Grid{{-1, 1, n, Sampling::Endpoints}, {0, 3, n, Sampling::Endpoints}})
            .loop;
    });
    CHECK(r.back() < 1e-3);
    CHECK(testing::order(r) >= 1.8);
}

TEST_CASE("Weierstrass patches are minimal and conformal") {
    SUBCASE("Enneper") {
        const MinimalityReport m = minimality_check(weierstrass_immersion(enneper_data(0.8), 128, 128, 0.0));
        CHECK(m.mean_curvature < 1e-3);
        CHECK(m.conformality < 1e-3);
    }
    SUBCASE("helicoid, finite differences of node positions") {
        const auto r = testing::sweep([](int n) {
            return minimality_check(weierstrass_immersion(helicoid_data(), n, n, Complex(0, 0))).mean_curvature;
        });
        CHECK(r.back() < 1e-3);
        CHECK(testing::order(r) >= 1.8);
    }
    SUBCASE("plane data give a flat patch") {
        const ChartSpec p = weierstrass_immersion(plane_data(), 16, 16, Complex(-1, -1));
        const GeometryField g = compute_geometry(p);
        CHECK(sup_norm(g.mean_curvature, g.grid, 0) == 0.0);
        CHECK(sup_norm(g.gauss_curvature, g.grid, 0) == 0.0);
        CHECK(minimality_check(p).mean_curvature < 1e-10);
    }
}

TEST_CASE("analytic jets agree with the positions") {
    const ChartSpec p = weierstrass_immersion(enneper_data(0.8), 64, 64, 0.0);
    const GeometryField a = compute_geometry(p), f = compute_geometry(p, DerivativeMode::FiniteDifference);
    double e = 0;
    for (int k = 0; k < a.size(); ++k)
        if (a.grid.boundary_depth(k) >= 1) e = std::max(e, std::abs(a.mean_curvature[k] - f.mean_curvature[k]));
    CHECK(e < 1e-2);
}

TEST_CASE("changing the basepoint translates the patch") {
    const HoloData d = enneper_data(0.8);
    const Field<Vector3d> a = nodes(weierstrass_immersion(d, 20, 20, 0.0));
    const Field<Vector3d> b = nodes(weierstrass_immersion(d, 20, 20, Complex(-0.8, 0.4)));
    const Vector3d shift = a[0] - b[0];
    double e = 0;
    for (std::size_t k = 0; k < a.size(); ++k) e = std::max(e, (a[k] - b[k] - shift).norm());
    CHECK(e < 1e-12);
    CHECK_THROWS_AS(weierstrass_immersion(d, 20, 20, Complex(2, 0)), InvalidArgument);
}

TEST_CASE("paths through a pole are refused") {
    const HoloData d = rational_data(Complex(0, 0), 0.2, 1.0, -1.0, 1.0);
    CHECK_NOTHROW(weierstrass_point(d, Complex(0.5, -0.5), Complex(0.8, 0.5), 0.01));
    // the L-path leaves the rectangle and crosses the pole at the origin
    CHECK_THROWS_AS(weierstrass_point(d, Complex(-0.5, 0), Complex(0.5, 0.5), 0.01), SingularPath);
}

TEST_CASE("restricted parallel spinors are harmonic on Weierstrass patches") {
    const Spinord amb = Spinord(Complex(0.2, 0.9), Complex(0.4, -0.1)).normalized();
    const auto r = testing::sweep([&](int n) {
        const GeometryField g = compute_geometry(weierstrass_immersion(enneper_data(0.8), n, n, 0.0));
        return sup_norm(pointwise_norm(dirac(restrict_parallel(amb, g), g)), g.grid, 1);
    });
    CHECK(r.back() < 1e-3);
    CHECK(testing::order(r) >= 1.8);
}

TEST_CASE("unknown presets") {
    CHECK(holo_preset("catenoid").name == "catenoid");
    CHECK_THROWS_AS(holo_preset("costa"), InvalidArgument);
}
