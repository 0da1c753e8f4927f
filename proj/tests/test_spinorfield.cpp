#include <doctest.h>

#include "spinorsurf/spinorfield.hpp"
#include "support.hpp"

using namespace spinorsurf;
using Eigen::Matrix2d;
using Eigen::Matrix3d;
using Eigen::Vector3d;
using testing::C;

namespace {

const C I(0, 1);
const Spinord kAmbient = Spinord(C(0.6, 0.2), C(-0.3, 0.7)).normalized();

GeometryField sphere(int n) { return compute_geometry(capped_sphere_chart(n, n)); }
GeometryField catenoid(int n) { return compute_geometry(catenoid_chart(n, n)); }
GeometryField enneper(int n) { return compute_geometry(enneper_chart(n, n)); }

// sup over the capped sphere including the cap rows, which are a cut rather than an edge
double sup_sphere(const ScalarField& f, const GeometryField& g) { return sup_norm(f, g.grid, 0); }

}  // namespace

TEST_CASE("restriction to the plane is the identity gauge") {
    const GeometryField g = compute_geometry(plane_chart(12, 12));
    const SpinorFieldGrid phi = restrict_parallel(kAmbient, g);
    for (const auto& p : phi.values) CHECK((p - kAmbient).norm() < 1e-15);
    CHECK(phi.provenance == Provenance::Restricted);
    CHECK(phi.gauge == g.id);
}

TEST_CASE("restriction preserves length on every preset") {
    for (const GeometryField& g : {sphere(24), catenoid(24), enneper(24), compute_geometry(helicoid_chart(24, 24)),
                                   compute_geometry(graph_chart(24, 24, GraphKind::Wave))}) {
        const SpinorFieldGrid phi = restrict_parallel(Spinord(2.0, 0.0), g);
        double e = 0;
        for (const auto& p : phi.values) e = std::max(e, std::abs(p.norm() - 2.0));
        CHECK(e < 1e-14);
    }
    CHECK_THROWS_AS(restrict_parallel(Spinord(0, 0), sphere(16)), InvalidArgument);
}

TEST_CASE("sphere: |phi+|^2 = (1 + <N, a3>) |Phi|^2 / 2") {
    const GeometryField g = sphere(32);
    const SpinorFieldGrid phi = restrict_parallel(kAmbient, g);
    // a3 from the ambient spinor alone: <i x . Phi, Phi> = <x, a3> |Phi|^2 for every x
    Vector3d a3;
    for (int j = 0; j < 3; ++j)
        a3(j) = inner<double>(Spinord(I * clifford_mul(Vector3d::Unit(j), kAmbient)), kAmbient).real();
    double e = 0;
    for (int k = 0; k < g.size(); ++k) {
        // surface gauge: phi+ is the first component
        e = std::max(e, std::abs(std::norm(phi.values[k](0)) - 0.5 * (1 + g.normal[k].dot(a3))));
    }
    CHECK(e < 1e-12);
    // the same number from the spinor field itself
    const ScalarField np = normal_projection(phi);
    for (int k = 0; k < g.size(); ++k) CHECK(np[k] == doctest::Approx(g.normal[k].dot(a3)).epsilon(1e-12));
}

TEST_CASE("gauge covariance of the restriction") {
    const Matrix3d rot(Eigen::AngleAxisd(1.1, Vector3d(-1, 2, 0.5).normalized()));
    const ChartSpec chart = enneper_chart(20, 20);
    const GeometryField g = compute_geometry(chart),
                        gr = compute_geometry(transformed_chart(chart, rot, Vector3d(1, 2, 3)));
    const SpinorFieldGrid a = restrict_parallel(kAmbient, g), b = restrict_parallel(spin_lift(rot) * kAmbient, gr);
    double dp = 0, dm = 0;
    for (int k = 0; k < g.size(); ++k)
        dp = std::max(dp, (a.values[k] - b.values[k]).norm()), dm = std::max(dm, (a.values[k] + b.values[k]).norm());
    CHECK(std::min(dp, dm) < 1e-12);
}

TEST_CASE("injectivity of Phi -> phi*") {
    const GeometryField g = catenoid(16);
    SpinMatrixd m;
    m << star(restrict_parallel(Spinord(1, 0), g)).values[0], star(restrict_parallel(Spinord(0, 1), g)).values[0];
    CHECK(std::abs(std::abs(m.determinant()) - 1.0) < 1e-12);
}

TEST_CASE("flat chart, constant spinor") {
    const GeometryField g = compute_geometry(plane_chart(12, 12));
    const SpinorFieldGrid phi = restrict_parallel(kAmbient, g);
    for (int j = 0; j < 2; ++j)
        for (const auto& p : covariant_derivative(phi, g, j).values) CHECK(p.norm() < 1e-13);
    for (const auto& p : dirac(phi, g).values) CHECK(p.norm() < 1e-13);
    const EndoExtraction ex = extract_E(phi, g);
    for (const auto& e : ex.endo) CHECK(e.norm() < 1e-13);
    const FormsF f = forms_F(phi, g);
    for (int k = 0; k < g.size(); ++k) CHECK(f.plus[k].norm() + f.minus[k].norm() < 1e-13);
    for (double x : codazzi_residual(ex.endo, g)) CHECK(x < 1e-12);
    const LaplacianIdentities li = laplacian_identities(star(phi), g);
    CHECK(sup_norm(li.u_residual, g.grid) + sup_norm(li.plus_residual, g.grid) + sup_norm(li.minus_residual, g.grid) +
              sup_norm(li.dirac_square, g.grid) <
          1e-12);
}

TEST_CASE("restriction formula nabla phi = 1/2 II(X) . N . phi") {
    for (auto make : {catenoid, enneper}) {
        const auto r = testing::sweep([&](int n) {
            const GeometryField g = make(n);
            return sup_norm(restriction_residual(restrict_parallel(kAmbient, g), g), g.grid, 1);
        });
        CHECK(r.back() < 1e-3);
        CHECK(testing::order(r) >= 1.8);
    }
    const auto r = testing::sweep([](int n) {
        const GeometryField g = sphere(n);
        return sup_sphere(restriction_residual(restrict_parallel(kAmbient, g), g), g);
    });
    CHECK(testing::order(r) >= 1.8);
}

TEST_CASE("Dirac operator") {
    SUBCASE("minimal surfaces carry harmonic spinors") {
        for (auto make : {catenoid, enneper}) {
            const auto r = testing::sweep([&](int n) {
                const GeometryField g = make(n);
                return sup_norm(pointwise_norm(dirac(restrict_parallel(kAmbient, g), g)), g.grid, 1);
            });
            CHECK(r.back() < 1e-3);
            CHECK(testing::order(r) >= 1.8);
        }
    }
    SUBCASE("sphere: D phi* = H phi*") {
        const auto r = testing::sweep([](int n) {
            const GeometryField g = sphere(n);
            return sup_sphere(dirac_eigen_residual(star(restrict_parallel(kAmbient, g)), g.mean_curvature, g), g);
        });
        CHECK(r.back() < 1e-3);
        CHECK(testing::order(r) >= 1.8);
    }
    SUBCASE("D^2 = Delta + G/2") {
        const auto r = testing::sweep([](int n) {
            const GeometryField g = compute_geometry(graph_chart(n, n, GraphKind::Bump));
            return sup_norm(laplacian_identities(star(restrict_parallel(kAmbient, g)), g).dirac_square, g.grid, 2);
        });
        CHECK(r.back() < 1e-3);
        CHECK(testing::order(r) >= 1.5);
    }
    SUBCASE("fields from another geometry are refused") {
        const GeometryField a = sphere(16), b = sphere(16);
        CHECK_THROWS_AS(dirac(restrict_parallel(kAmbient, a), b), GaugeMismatch);
    }
}

TEST_CASE("sphere: E = -Id/2, trace and determinant") {
    const auto r = testing::sweep([](int n) {
        const GeometryField g = sphere(n);
        const EndoExtraction ex = extract_E(star(restrict_parallel(kAmbient, g)), g);
        ScalarField e(g.size());
        for (int k = 0; k < g.size(); ++k) e[k] = (ex.endo[k] + 0.5 * Matrix2d::Identity()).norm();
        return std::max({sup_sphere(e, g), sup_sphere(ex.trace_residual, g), sup_sphere(ex.det_residual, g),
                         sup_sphere(ex.twistor_residual, g)});
    });
    CHECK(r.back() < 1e-3);
    CHECK(testing::order(r) >= 1.8);
}

TEST_CASE("2E = -II with one sign on every preset") {
    std::vector<double> signs;
    for (const GeometryField& g : {sphere(48), catenoid(48), enneper(48), compute_geometry(helicoid_chart(48, 48)),
                                   compute_geometry(graph_chart(48, 48, GraphKind::Saddle))}) {
        const SecondFormMatch m = match_second_form(extract_E(star(restrict_parallel(kAmbient, g)), g).endo, g);
        CHECK(sup_norm(m.residual, g.grid, 1) < 1e-2);
        signs.push_back(m.sign);
    }
    for (double s : signs) CHECK(s == -1.0);
}

TEST_CASE("alpha preserves the solution space") {
    const GeometryField g = enneper(64);
    const SpinorFieldGrid ps = star(restrict_parallel(kAmbient, g));
    const EndoExtraction ex = extract_E(ps, g);
    const double base = sup_norm(ex.twistor_residual, g.grid, 1);
    const double alpha_res = sup_norm(twistor_residual(apply_alpha(ps), ex.endo, g), g.grid, 1);
    CHECK(base < 1e-3);
    CHECK(alpha_res < 1e-3);
}

TEST_CASE("F+- symmetry, traces and relation") {
    for (auto make : {sphere, enneper}) {
        const auto r = testing::sweep([&](int n) {
            const GeometryField g = make(n);
            const FormsF f = forms_F(star(restrict_parallel(kAmbient, g)), g);
            const int m = make == sphere ? 0 : 1;
            return std::max({sup_norm(f.asymmetry_plus, g.grid, m), sup_norm(f.asymmetry_minus, g.grid, m),
                             sup_norm(f.trace_plus, g.grid, m), sup_norm(f.trace_minus, g.grid, m),
                             sup_norm(f.relation, g.grid, m)});
        });
        CHECK(r.back() < 1e-3);
        CHECK(testing::order(r) >= 1.8);
    }
}

TEST_CASE("Codazzi") {
    SUBCASE("constant umbilic field on the sphere") {
        const auto r = testing::sweep([](int n) {
            const GeometryField g = sphere(n);
            return sup_sphere(codazzi_residual(EndoField(g.size(), -0.5 * Matrix2d::Identity()), g), g);
        });
        CHECK(r.back() < 1e-3);
    }
    SUBCASE("extracted from phi* on Enneper") {
        const auto r = testing::sweep([](int n) {
            const GeometryField g = enneper(n);
            return sup_norm(codazzi_residual(extract_E(star(restrict_parallel(kAmbient, g)), g).endo, g), g.grid, 2);
        });
        CHECK(r.back() < 1e-3);
        CHECK(testing::order(r) >= 1.5);
    }
}

TEST_CASE("Laplacian identities") {
    SUBCASE("sphere: Delta u = 2 u") {
        const auto r = testing::sweep([](int n) {
            const GeometryField g = sphere(n);
            return sup_norm(laplacian_identities(star(restrict_parallel(kAmbient, g)), g).u_residual, g.grid, 1);
        });
        CHECK(r.back() < 1e-2);
        CHECK(testing::order(r) >= 1.5);
    }
    SUBCASE("catenoid: Delta L+- with H = 0") {
        const auto r = testing::sweep([](int n) {
            const GeometryField g = catenoid(n);
            const LaplacianIdentities li = laplacian_identities(star(restrict_parallel(kAmbient, g)), g);
            return std::max(sup_norm(li.plus_residual, g.grid, 2), sup_norm(li.minus_residual, g.grid, 2));
        });
        CHECK(r.back() < 1e-2);
        CHECK(testing::order(r) >= 1.5);
    }
    SUBCASE("graph with varying H needs the grad H term") {
        const auto r = testing::sweep([](int n) {
            const GeometryField g = compute_geometry(graph_chart(n, n, GraphKind::Bump));
            const LaplacianIdentities li = laplacian_identities(star(restrict_parallel(kAmbient, g)), g);
            return std::max(sup_norm(li.plus_residual, g.grid, 2), sup_norm(li.minus_residual, g.grid, 2));
        });
        CHECK(r.back() < 1e-2);
        CHECK(testing::order(r) >= 1.5);
    }
}

TEST_CASE("extract_E needs a nowhere vanishing field") {
    const GeometryField g = sphere(16);
    SpinorFieldGrid phi = restrict_parallel(kAmbient, g);
    phi.values[5] = Spinord::Zero();
    CHECK_THROWS_AS(extract_E(phi, g), ZeroLength);
}

TEST_CASE("star and splitting of fields") {
    const GeometryField g = enneper(16);
    const SpinorFieldGrid phi = restrict_parallel(kAmbient, g);
    const SpinorFieldGrid p = plus_part(phi), m = minus_part(phi), s = star(phi);
    for (int k = 0; k < g.size(); ++k) {
        CHECK((p.values[k] + m.values[k] - phi.values[k]).norm() < 1e-15);
        CHECK((s.values[k] - (p.values[k] - I * m.values[k])).norm() < 1e-15);
        // normal acts by E3 in the surface gauge
        const auto split = split_pm(phi.values[k], Vector3d(0, 0, 1));
        CHECK((split.plus - p.values[k]).norm() < 1e-15);
    }
}
