#include "spinorsurf/weierstrass.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace spinorsurf {

using Eigen::Vector3cd;
using Eigen::Vector3d;

namespace {

const Complex I(0, 1);

Complex horner(const std::vector<Complex>& c, Complex z) {
    Complex r = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * z + *it;
    return r;
}

std::vector<Complex> derivative_coeffs(const std::vector<Complex>& c) {
    std::vector<Complex> d;
    for (std::size_t k = 1; k < c.size(); ++k) d.push_back(static_cast<double>(k) * c[k]);
    return d;
}

double segment_distance(Complex p, Complex a, Complex b) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    double t = len2 > 0 ? ((p - a) * std::conj(ab)).real() / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

Vector3cd simpson(const HoloData& data, Complex a, Complex b, double step) {
    const double len = std::abs(b - a);
    if (len == 0) return Vector3cd::Zero();
    int m = static_cast<int>(std::ceil(len / step));
    m += m % 2;
    m = std::max(m, 2);
    const Complex h = (b - a) / static_cast<double>(m);
    Vector3cd sum = weierstrass_integrand(data, a) + weierstrass_integrand(data, b);
    for (int k = 1; k < m; ++k)
        sum += (k % 2 ? 4.0 : 2.0) * weierstrass_integrand(data, a + static_cast<double>(k) * h);
    return sum * (h / 3.0);
}

}  // namespace

HoloData enneper_data(double w) {
    HoloData d;
    d.name = "enneper";
    d.g = [](Complex z) { return z; };
    d.dg = [](Complex) { return Complex(1); };
    d.mu = [](Complex) { return Complex(1); };
    d.dmu = [](Complex) { return Complex(0); };
    d.re_lo = d.im_lo = -w;
    d.re_hi = d.im_hi = w;
    return d;
}

HoloData catenoid_data() {
    HoloData d;
    d.name = "catenoid";
    d.g = [](Complex z) { return std::exp(z); };
    d.dg = [](Complex z) { return std::exp(z); };
    d.mu = [](Complex z) { return 0.5 * std::exp(-z); };
    d.dmu = [](Complex z) { return -0.5 * std::exp(-z); };
    d.re_lo = -1, d.re_hi = 1, d.im_lo = 0, d.im_hi = 3;
    return d;
}

HoloData helicoid_data() {
    HoloData d = catenoid_data();
    d.name = "helicoid";
    d.mu = [](Complex z) { return 0.5 * I * std::exp(-z); };
    d.dmu = [](Complex z) { return -0.5 * I * std::exp(-z); };
    return d;
}

HoloData plane_data() {
    HoloData d;
    d.name = "plane";
    d.g = [](Complex) { return Complex(0); };
    d.dg = [](Complex) { return Complex(0); };
    d.mu = [](Complex) { return Complex(1); };
    d.dmu = [](Complex) { return Complex(0); };
    return d;
}

HoloData polynomial_data(std::vector<Complex> gc, std::vector<Complex> mc, double w) {
    HoloData d;
    d.name = "polynomial";
    const auto dgc = derivative_coeffs(gc), dmc = derivative_coeffs(mc);
    d.g = [gc](Complex z) { return horner(gc, z); };
    d.dg = [dgc](Complex z) { return horner(dgc, z); };
    d.mu = [mc](Complex z) { return horner(mc, z); };
    d.dmu = [dmc](Complex z) { return horner(dmc, z); };
    d.re_lo = d.im_lo = -w;
    d.re_hi = d.im_hi = w;
    return d;
}

HoloData rational_data(Complex pole, double re_lo, double re_hi, double im_lo, double im_hi) {
    HoloData d;
    d.name = "rational";
    d.g = [pole](Complex z) { return 1.0 / (z - pole); };
    d.dg = [pole](Complex z) { return -1.0 / ((z - pole) * (z - pole)); };
    d.mu = [pole](Complex z) { return (z - pole) * (z - pole); };
    d.dmu = [pole](Complex z) { return 2.0 * (z - pole); };
    d.re_lo = re_lo, d.re_hi = re_hi, d.im_lo = im_lo, d.im_hi = im_hi;
    d.singularities = {pole};
    return d;
}

HoloData holo_preset(const std::string& name) {
    if (name == "enneper") return enneper_data();
    if (name == "catenoid") return catenoid_data();
    if (name == "helicoid") return helicoid_data();
    if (name == "plane") return plane_data();
    throw InvalidArgument("unknown Weierstrass preset '" + name + "'");
}

Vector3cd weierstrass_integrand(const HoloData& data, Complex z) {
    const Complex g = data.g(z), m = data.mu(z);
    return Vector3cd((1.0 - g * g) * m, I * (1.0 + g * g) * m, 2.0 * g * m);
}

Vector3cd weierstrass_integrand_derivative(const HoloData& data, Complex z) {
    const Complex g = data.g(z), dg = data.dg(z), m = data.mu(z), dm = data.dmu(z);
    return Vector3cd(-2.0 * g * dg * m + (1.0 - g * g) * dm, I * (2.0 * g * dg * m + (1.0 + g * g) * dm),
                     2.0 * dg * m + 2.0 * g * dm);
}

Vector3d weierstrass_point(const HoloData& data, Complex z0, Complex z, double step, double tol) {
    const Complex corner(z.real(), z0.imag());
    for (const Complex& s : data.singularities) {
        if (segment_distance(s, z0, corner) < tol || segment_distance(s, corner, z) < tol) {
            std::ostringstream os;
            os << "integration path from " << z0 << " to " << z << " passes the excluded point " << s;
            throw SingularPath(os.str());
        }
    }
    return (simpson(data, z0, corner, step) + simpson(data, corner, z, step)).real();
}

ChartSpec weierstrass_immersion(const HoloData& data, int nu, int nv, Complex z0) {
    if (z0.real() < data.re_lo || z0.real() > data.re_hi || z0.imag() < data.im_lo || z0.imag() > data.im_hi)
        throw InvalidArgument("weierstrass_immersion: basepoint outside the domain");
    ChartSpec c;
    c.name = "weierstrass_" + data.name;
    c.grid = Grid{{data.re_lo, data.re_hi, nu, Sampling::Endpoints}, {data.im_lo, data.im_hi, nv, Sampling::Endpoints}};
    const double step = 0.25 * std::min(c.grid.u.spacing(), c.grid.v.spacing());
    c.position = [data, z0, step](double u, double v) { return weierstrass_point(data, z0, Complex(u, v), step); };
    c.jet = [data, z0, step](double u, double v) {
        const Complex z(u, v);
        const Vector3cd phi = weierstrass_integrand(data, z);
        const Vector3cd dphi = weierstrass_integrand_derivative(data, z);
        Jet j;
        j.x = weierstrass_point(data, z0, z, step);
        j.xu = phi.real();
        j.xv = (I * phi).real();
        j.xuu = dphi.real();
        j.xuv = (I * dphi).real();
        j.xvv = -dphi.real();
        return j;
    };
    return c;
}

HolomorphyReport holomorphy_check(const HoloData& data, const Grid& grid) {
    HolomorphyReport r;
    const double hu = grid.u.spacing(), hv = grid.v.spacing();
    auto node = [&](int i, int j) { return Complex(grid.u.coord(i), grid.v.coord(j)); };
    for (int j = 1; j + 1 < grid.nv(); ++j)
        for (int i = 1; i + 1 < grid.nu(); ++i) {
            auto cr = [&](const std::function<Complex(Complex)>& f) {
                const Complex fx = (f(node(i + 1, j)) - f(node(i - 1, j))) / (2 * hu);
                const Complex fy = (f(node(i, j + 1)) - f(node(i, j - 1))) / (2 * hv);
                return std::abs(fx + I * fy);
            };
            r.cauchy_riemann_g = std::max(r.cauchy_riemann_g, cr(data.g));
            r.cauchy_riemann_mu = std::max(r.cauchy_riemann_mu, cr(data.mu));
        }
    for (int j = 0; j + 1 < grid.nv(); ++j)
        for (int i = 0; i + 1 < grid.nu(); ++i) {
            const Complex a = node(i, j), b = node(i + 1, j), c = node(i + 1, j + 1), d = node(i, j + 1);
            const Vector3cd fa = weierstrass_integrand(data, a), fb = weierstrass_integrand(data, b);
            const Vector3cd fc = weierstrass_integrand(data, c), fd = weierstrass_integrand(data, d);
            const Vector3cd loop =
                0.5 * ((fa + fb) * (b - a) + (fb + fc) * (c - b) + (fc + fd) * (d - c) + (fd + fa) * (a - d));
            r.loop = std::max(r.loop, loop.norm() / (hu * hv));
        }
    return r;
}

MinimalityReport minimality_check(const ChartSpec& patch) {
    patch.validate();
    const Grid& grid = patch.grid;
    Field<Vector3d> x(grid.size());
    for (int k = 0; k < grid.size(); ++k) x[k] = patch.position(grid.u.coord(grid.iu(k)), grid.v.coord(grid.jv(k)));
    const auto xu = diff_u(x, grid), xv = diff_v(x, grid);
    const auto xuu = diff_uu(x, grid), xvv = diff_vv(x, grid), xuv = diff_uv(x, grid);
    MinimalityReport r;
    for (int k = 0; k < grid.size(); ++k) {
        if (grid.boundary_depth(k) < 1) continue;
        const Vector3d n = xu[k].cross(xv[k]).normalized();
        const double e = xu[k].squaredNorm(), f = xu[k].dot(xv[k]), g = xv[k].squaredNorm();
        const double l = -n.dot(xuu[k]), m = -n.dot(xuv[k]), nn = -n.dot(xvv[k]);
        const double h = 0.5 * (e * nn - 2 * f * m + g * l) / (e * g - f * f);
        r.mean_curvature = std::max(r.mean_curvature, std::abs(h));
        r.conformality = std::max(r.conformality, (std::abs(e - g) + std::abs(f)) / (0.5 * (e + g)));
    }
    return r;
}

}  // namespace spinorsurf
