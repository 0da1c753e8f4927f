#pragma once
// Classical Weierstrass representation of minimal surfaces:
//   f(z) = Re int_{z0}^{z} (1 - g^2, i (1 + g^2), 2 g) mu(zeta) d zeta.

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "spinorsurf/charts.hpp"

namespace spinorsurf {

using Complex = std::complex<double>;

struct HoloData {
    std::string name;
    std::function<Complex(Complex)> g, dg, mu, dmu;
    // Parameter rectangle: Re z in [re_lo, re_hi], Im z in [im_lo, im_hi].
    double re_lo = -1, re_hi = 1, im_lo = -1, im_hi = 1;
    // Excluded points (poles of g or mu).
    std::vector<Complex> singularities;
};

HoloData enneper_data(double half_width = 1.0);
HoloData catenoid_data();
HoloData helicoid_data();
HoloData plane_data();
// g and mu as polynomials with coefficients in increasing degree.
HoloData polynomial_data(std::vector<Complex> g_coeffs, std::vector<Complex> mu_coeffs, double half_width = 1.0);
// g(z) = 1 / (z - pole), mu(z) = (z - pole)^2: a rational pair whose integrand is
// polynomial, on a rectangle that excludes the pole.
HoloData rational_data(Complex pole, double re_lo, double re_hi, double im_lo, double im_hi);

HoloData holo_preset(const std::string& name);

// (1 - g^2, i (1 + g^2), 2 g) mu and its z-derivative.
Eigen::Vector3cd weierstrass_integrand(const HoloData& data, Complex z);
Eigen::Vector3cd weierstrass_integrand_derivative(const HoloData& data, Complex z);

// Re of the integral along the L-path z0 -> Re z + i Im z0 -> z with composite
// Simpson, step at most `step`. Throws SingularPath near excluded points.
Eigen::Vector3d weierstrass_point(const HoloData& data, Complex z0, Complex z, double step, double singular_tol = 1e-6);

// Immersed patch over the data's rectangle with nu x nv nodes (u = Re z, v = Im z).
// Positions come from path integration refined 4x relative to the grid;
// derivatives are supplied analytically from the holomorphic data.
ChartSpec weierstrass_immersion(const HoloData& data, int nu, int nv, Complex basepoint);

struct HolomorphyReport {
    double cauchy_riemann_g = 0;   // max |g_x + i g_y|
    double cauchy_riemann_mu = 0;  // max |mu_x + i mu_y|
    double loop = 0;               // max |cell loop integral| / cell area
};
HolomorphyReport holomorphy_check(const HoloData& data, const Grid& grid);

struct MinimalityReport {
    double mean_curvature = 0;  // max |H| over interior nodes
    double conformality = 0;    // max (|E - G| + |F|) / ((E + G) / 2)
};
// Differences node positions of the patch directly, independent of any analytic derivatives.
MinimalityReport minimality_check(const ChartSpec& patch);

}  // namespace spinorsurf
