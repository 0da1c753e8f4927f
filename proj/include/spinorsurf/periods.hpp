#pragma once
// Period 1-forms of spinor fields and the surface they integrate to.
//
//   xi(X)    = 2 (X . phi+, phi-)          w  = Re xi,  mu = Im xi
//   xi+-(X)  = (X . phi+-, alpha(phi+-))   Omega = xi+ - xi-
//
// For phi* built from a unit parallel spinor, (w, Omega) integrate to the
// immersion seen through the isometry R^3 = R (+) C.

#include <Eigen/Dense>

#include "spinorsurf/charts.hpp"
#include "spinorsurf/spinorfield.hpp"

namespace spinorsurf {

struct PeriodForms {
    ComplexOneFormField xi;
    ComplexOneFormField xi_plus;
    ComplexOneFormField xi_minus;
    OneFormField w;
    OneFormField mu;
    ComplexOneFormField omega;
};

PeriodForms period_forms(const SpinorFieldGrid& phi, const GeometryField& geom);

// Per-node Hodge-type residuals: |*xi + i xi|, |*xi+ + i xi+|, |*xi- - i xi-|,
// with (*a)(e1) = -a(e2), (*a)(e2) = a(e1).
struct HodgeResiduals {
    ScalarField xi, xi_plus, xi_minus;
};
HodgeResiduals hodge_residuals(const PeriodForms& forms);

// Cell-wise exterior derivatives (densities against dA).
struct ClosednessReport {
    CellField dw;
    ComplexCellField domega;
    CellField dmu_residual;  // |d mu - 2 H (|phi-|^2 - |phi+|^2)|
    double max_dw = 0;
    double max_domega = 0;
    double max_dmu = 0;
};
ClosednessReport closedness_report(const PeriodForms& forms, const SpinorFieldGrid& phi, const GeometryField& geom);

// Point of R (+) C = R^3 per node: (f, Re g, Im g).
struct ImmersionGrid {
    Grid grid;
    ScalarField f;
    ComplexField g;
    int base = 0;
    double loop_residual = 0;   // max difference between the two L-path orders
    double discretization = 0;  // trapezoid-vs-fourth-order estimate of the quadrature error

    Field<Eigen::Vector3d> points() const;
};

// Integrates (w, Omega) from `base` along grid lines (u first, then v) with a
// fourth-order cumulative rule. Throws NotExact for periodic charts and when
// the two path orders disagree by more than 10x the discretization estimate.
ImmersionGrid reconstruct(const PeriodForms& forms, const GeometryField& geom, int base = 0);

struct RigidMotion {
    Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
    Eigen::Vector3d translation = Eigen::Vector3d::Zero();
    double rms = 0;
};
// Proper rigid motion minimising sum |R a + t - b|^2.
RigidMotion rigid_align(const Field<Eigen::Vector3d>& a, const Field<Eigen::Vector3d>& b);

// Length of the bounding-box diagonal.
double diameter(const Field<Eigen::Vector3d>& points);

// Frame gradient and Hessian of node functions,
// Hess(h)(e_i, e_j) with Hess_ab = d_a d_b h - Gamma^c_ab d_c h.
struct RealDerivatives {
    Field<Eigen::Vector2d> grad;
    Field<Eigen::Matrix2d> hess;
};
struct ComplexDerivatives {
    Field<Eigen::Vector2cd> grad;
    Field<Eigen::Matrix2cd> hess;
};
RealDerivatives function_derivatives(const ScalarField& h, const GeometryField& geom);
ComplexDerivatives function_derivatives(const ComplexField& h, const GeometryField& geom);

// Relative metric error of a reconstructed grid: max |g_rec - g| / |g| (interior).
double metric_error(const ImmersionGrid& rec, const GeometryField& geom);

struct HessianReport {
    ScalarField hess_f;       // |Hess f - 2 (|phi+|^2 - |phi-|^2) E|
    ScalarField grad_f;       // ||grad f|^2 - 4 |phi+|^2 |phi-|^2|
    ScalarField hess_g;       // |Hess g + 4 (phi-, alpha(phi+)) E|
    ScalarField grad_g;       // ||grad g|^2 - (|phi+|^2 - |phi-|^2)^2|, |grad g|^2 = sum_j |dg(e_j)|^2
    ScalarField grad_g_full;  // ||grad g|^2 - |phi|^4 - (|phi+|^2 - |phi-|^2)^2|
    ScalarField det_hess_f;   // |det Hess f - (|phi+|^2 - |phi-|^2)^2 G|
};
HessianReport hessian_report(const SpinorFieldGrid& phi, const GeometryField& geom, const ImmersionGrid& rec);

struct IntegralReport {
    double integral_gauss = 0;    // int G
    double integral_normal = 0;   // 3 int <N, a3>^2 G
    double integral_quartic = 0;  // int (|phi|^4 - 6 |phi+|^2 |phi-|^2) G
    double min_plus = 0;          // min |phi+|
    double min_minus = 0;         // min |phi-|
    double max_gauss = 0;
    double det_hess_at_max = 0;  // det Hess f at the grid argmax of the height f
};
// phi is phi* of a unit parallel spinor on a compact chart (full sphere).
IntegralReport integral_identities(const SpinorFieldGrid& phi, const GeometryField& geom);

// ------------------------------------------------- conformal change ---

// Dirac operator of sigma * g acting on phi, in the gauge shared with g
// (rescaled frame sigma^-1/2 e_j, recomputed connection form).
SpinorFieldGrid conformal_dirac(const SpinorFieldGrid& phi, const ScalarField& sigma, const GeometryField& geom);

// |D~ phi - sigma^-3/4 D(sigma^1/4 phi)| per node.
ScalarField conformal_covariance(const SpinorFieldGrid& phi, const ScalarField& sigma, const GeometryField& geom);

// For D phi = lambda phi without zeros: |D~ phi* - (lambda / |phi|^2) phi*| with
// sigma = |phi|^4 and phi* = phi / |phi|.
ScalarField conformal_eigen_residual(const SpinorFieldGrid& phi, double lambda, const GeometryField& geom);

}  // namespace spinorsurf
