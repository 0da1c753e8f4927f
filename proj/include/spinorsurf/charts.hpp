#pragma once
// Parametrized surface charts and their classical surface geometry.
//
// Orientation: N = (x_u x x_v) / |x_u x x_v|, II(X) = d_X N, H = tr(II) / 2,
// G = det(II). With this choice the unit sphere parametrized outward has H = 1.

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "spinorsurf/grid.hpp"

namespace spinorsurf {

// Position and partial derivatives of an immersion at one parameter point.
struct Jet {
    Eigen::Vector3d x = Eigen::Vector3d::Zero();
    Eigen::Vector3d xu = Eigen::Vector3d::Zero();
    Eigen::Vector3d xv = Eigen::Vector3d::Zero();
    Eigen::Vector3d xuu = Eigen::Vector3d::Zero();
    Eigen::Vector3d xuv = Eigen::Vector3d::Zero();
    Eigen::Vector3d xvv = Eigen::Vector3d::Zero();
};

struct ChartSpec {
    std::string name;
    Grid grid;
    std::function<Eigen::Vector3d(double, double)> position;
    // Analytic first and second partials; empty if only positions are known.
    std::function<Jet(double, double)> jet;

    // Throws InvalidArgument unless both directions carry at least 8 nodes.
    void validate() const;
};

enum class DerivativeMode { Analytic, FiniteDifference };

struct GeometryField {
    Grid grid;
    // Distinct per computed geometry; spinor fields record the gauge they live in.
    std::uint64_t id = 0;

    Field<Eigen::Vector3d> x, xu, xv, xuu, xuv, xvv;
    Field<Eigen::Vector3d> normal, e1, e2;
    // frame(a, j): coefficient of d/d(param a) in e_j, i.e. e_j = frame(0,j) d_u + frame(1,j) d_v.
    Field<Eigen::Matrix2d> frame;
    // tangent(j, a) = <e_j, x_a>, the inverse of `frame`.
    Field<Eigen::Matrix2d> tangent;
    Field<Eigen::Matrix2d> metric;
    Field<Eigen::Matrix2d> metric_inverse;
    // christoffel[c](a, b) = Gamma^c_ab of the induced metric.
    Field<std::array<Eigen::Matrix2d, 2>> christoffel;
    // Second fundamental form in the (e1, e2) frame.
    Field<Eigen::Matrix2d> second_form;
    ScalarField mean_curvature;
    ScalarField gauss_curvature;
    // Connection form omega12(X) = <d_X e1, e2>, stored as (omega12(e1), omega12(e2)).
    Field<Eigen::Vector2d> connection;
    // sqrt(det g): area density against du dv.
    ScalarField area_element;

    int size() const { return grid.size(); }
    Eigen::Matrix3d rotation(int node) const;
    // Directional derivative d/de_j of a node field.
    template <typename T>
    Field<T> frame_derivative(const Field<T>& f, int j, double seam_u = 1.0, double seam_v = 1.0) const {
        const Field<T> fu = diff_u(f, grid, seam_u);
        const Field<T> fv = diff_v(f, grid, seam_v);
        Field<T> out(f.size());
        for (std::size_t k = 0; k < f.size(); ++k) out[k] = T(frame[k](0, j) * fu[k] + frame[k](1, j) * fv[k]);
        return out;
    }
};

GeometryField compute_geometry(const ChartSpec& chart, DerivativeMode mode = DerivativeMode::Analytic);

// Geometry from precomputed jets on a grid (used by the other constructors).
GeometryField geometry_from_jets(const Grid& grid, const Field<Jet>& jets);

// Positive (geometer's) Laplace-Beltrami operator, Delta = -div grad.
ScalarField laplace_beltrami(const ScalarField& f, const GeometryField& geom);

// 1-forms are stored by their values on (e1, e2).
using OneFormField = Field<Eigen::Vector2d>;
using ComplexOneFormField = Field<Eigen::Vector2cd>;

// Cell-centred exterior derivative: circulation around each grid cell divided
// by its area. Result has (nu-1 or nu) x (nv-1 or nv) cells, row-major.
struct CellField {
    int cu = 0;
    int cv = 0;
    ScalarField values;
};
struct ComplexCellField {
    int cu = 0;
    int cv = 0;
    ComplexField values;
};

CellField exterior_d_cells(const OneFormField& form, const GeometryField& geom);
ComplexCellField exterior_d_cells(const ComplexOneFormField& form, const GeometryField& geom);
// Cell averages of a node field, laid out like exterior_d_cells.
CellField cell_average(const ScalarField& f, const GeometryField& geom);

// Exterior derivative resampled to nodes (density against dA).
ScalarField exterior_d(const OneFormField& form, const GeometryField& geom);

// Integral of a density against dA with trapezoid / periodic / midpoint weights.
double quadrature(const ScalarField& density, const GeometryField& geom);

// Coordinate components (form(d_u), form(d_v)) of a frame-stored 1-form.
Eigen::Vector2d coordinate_components(const Eigen::Vector2d& form, const Eigen::Matrix2d& tangent);

// ---------------------------------------------------------------- presets ---

ChartSpec plane_chart(int nu, int nv, double half_width = 1.0);
// Plane (u, v, 0) on [0, 2pi)^2, periodic in both directions.
ChartSpec flat_torus_chart(int nu, int nv);
// Sphere of radius r, x = r (sin v cos u, -sin v sin u, cos v); outward normal.
// u in [u0, u1], v in [v0, v1]; periodic in u when the range is a full turn.
ChartSpec sphere_chart(int nu, int nv, double radius, double u0, double u1, double v0, double v1, bool periodic_u);
// Whole sphere: periodic azimuth, midpoint-sampled polar angle.
ChartSpec full_sphere_chart(int nu, int nv, double radius = 1.0);
// Pointwise-check sphere: full azimuth, polar caps of half-angle `cap` removed.
ChartSpec capped_sphere_chart(int nu, int nv, double radius = 1.0, double cap = 0.1);
// (cosh v cos u, cosh v sin u, v), periodic in u.
ChartSpec catenoid_chart(int nu, int nv, double v0 = -1.0, double v1 = 1.0);
// (v cos u, v sin u, u)
ChartSpec helicoid_chart(int nu, int nv, double u0 = -1.0, double u1 = 1.0, double v0 = -1.0, double v1 = 1.0);
// Closed form Enneper surface (x - x^3/3 + x y^2, -y - x^2 y + y^3/3, x^2 - y^2).
ChartSpec enneper_chart(int nu, int nv, double half_width = 0.8);

enum class GraphKind { Bump, Saddle, Wave };
// Graph z = f(u, v) over [-w, w]^2.
ChartSpec graph_chart(int nu, int nv, GraphKind kind, double amplitude = 0.5, double half_width = 1.0);

// Rigidly moved copy of a chart: x -> R x + t.
ChartSpec transformed_chart(const ChartSpec& chart, const Eigen::Matrix3d& rotation,
                            const Eigen::Vector3d& translation);

}  // namespace spinorsurf
