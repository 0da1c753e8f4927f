#pragma once
// Rectangular parameter grids, node fields and second-order difference stencils.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "spinorsurf/errors.hpp"

namespace spinorsurf {

// Node placement along one parameter direction.
//   Endpoints: n nodes including both ends, spacing (hi - lo) / (n - 1).
//   Periodic:  n nodes on [lo, hi), hi identified with lo.
//   Polar:     n cell centres of [lo, hi), meant for the polar angle [0, pi]
//              so no node sits on a coordinate singularity. Quadrature uses
//              Fejer weights in cos(v), divided by sin(v) because the area
//              element already carries that factor.
enum class Sampling { Endpoints, Periodic, Polar };

struct Axis {
    double lo = 0.0;
    double hi = 1.0;
    int n = 32;
    Sampling sampling = Sampling::Endpoints;

    bool periodic() const { return sampling == Sampling::Periodic; }
    double spacing() const { return sampling == Sampling::Endpoints ? (hi - lo) / (n - 1) : (hi - lo) / n; }
    double coord(int i) const {
        const double h = spacing();
        return sampling == Sampling::Polar ? lo + (i + 0.5) * h : lo + i * h;
    }
    // Quadrature weight of node i (trapezoid, periodic trapezoid or polar).
    double weight(int i) const;
};

// Nodes are stored row-major: index = j * nu + i, u varies fastest.
struct Grid {
    Axis u;
    Axis v;

    int nu() const { return u.n; }
    int nv() const { return v.n; }
    int size() const { return u.n * v.n; }
    int index(int i, int j) const { return j * u.n + i; }
    int iu(int node) const { return node % u.n; }
    int jv(int node) const { return node / u.n; }

    // Distance (in layers) of a node from the nearest non-periodic edge.
    int boundary_depth(int node) const {
        int d = 1 << 20;
        const int i = iu(node), j = jv(node);
        if (!u.periodic()) d = std::min({d, i, u.n - 1 - i});
        if (!v.periodic()) d = std::min({d, j, v.n - 1 - j});
        return d;
    }
};

template <typename T>
using Field = std::vector<T>;

using ScalarField = Field<double>;
using ComplexField = Field<std::complex<double>>;

namespace detail {

template <typename T>
T zero_like(const T& sample) {
    return T(sample * 0.0);
}

// First derivative along a line of `n` samples accessed through `at(k)`.
template <typename T, typename At>
T line_d1(At at, int k, int n, double h, bool periodic, double seam) {
    if (periodic) {
        const T prev = k == 0 ? T(at(n - 1) * seam) : T(at(k - 1));
        const T next = k == n - 1 ? T(at(0) * seam) : T(at(k + 1));
        return T((next - prev) / (2 * h));
    }
    if (k == 0) return T((-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2 * h));
    if (k == n - 1) return T((3.0 * at(n - 1) - 4.0 * at(n - 2) + at(n - 3)) / (2 * h));
    return T((at(k + 1) - at(k - 1)) / (2 * h));
}

template <typename T, typename At>
T line_d2(At at, int k, int n, double h, bool periodic, double seam) {
    const double h2 = h * h;
    if (periodic) {
        const T prev = k == 0 ? T(at(n - 1) * seam) : T(at(k - 1));
        const T next = k == n - 1 ? T(at(0) * seam) : T(at(k + 1));
        return T((next - 2.0 * at(k) + prev) / h2);
    }
    if (k == 0) return T((2.0 * at(0) - 5.0 * at(1) + 4.0 * at(2) - at(3)) / h2);
    if (k == n - 1) return T((2.0 * at(n - 1) - 5.0 * at(n - 2) + 4.0 * at(n - 3) - at(n - 4)) / h2);
    return T((at(k + 1) - 2.0 * at(k) + at(k - 1)) / h2);
}

}  // namespace detail

// d/du of a node field. `seam` multiplies values wrapped across a periodic edge
// (spinor fields may change sign there).
template <typename T>
Field<T> diff_u(const Field<T>& f, const Grid& g, double seam = 1.0) {
    Field<T> out(f.size());
    const int nu = g.nu();
    for (int j = 0; j < g.nv(); ++j) {
        const T* row = f.data() + static_cast<std::size_t>(j) * nu;
        auto at = [row](int k) -> const T& { return row[k]; };
        for (int i = 0; i < nu; ++i)
            out[g.index(i, j)] = detail::line_d1<T>(at, i, nu, g.u.spacing(), g.u.periodic(), seam);
    }
    return out;
}

template <typename T>
Field<T> diff_v(const Field<T>& f, const Grid& g, double seam = 1.0) {
    Field<T> out(f.size());
    const int nu = g.nu(), nv = g.nv();
    for (int i = 0; i < nu; ++i) {
        auto at = [&f, nu, i](int k) -> const T& { return f[static_cast<std::size_t>(k) * nu + i]; };
        for (int j = 0; j < nv; ++j)
            out[g.index(i, j)] = detail::line_d1<T>(at, j, nv, g.v.spacing(), g.v.periodic(), seam);
    }
    return out;
}

template <typename T>
Field<T> diff_uu(const Field<T>& f, const Grid& g, double seam = 1.0) {
    Field<T> out(f.size());
    const int nu = g.nu();
    for (int j = 0; j < g.nv(); ++j) {
        const T* row = f.data() + static_cast<std::size_t>(j) * nu;
        auto at = [row](int k) -> const T& { return row[k]; };
        for (int i = 0; i < nu; ++i)
            out[g.index(i, j)] = detail::line_d2<T>(at, i, nu, g.u.spacing(), g.u.periodic(), seam);
    }
    return out;
}

template <typename T>
Field<T> diff_vv(const Field<T>& f, const Grid& g, double seam = 1.0) {
    Field<T> out(f.size());
    const int nu = g.nu(), nv = g.nv();
    for (int i = 0; i < nu; ++i) {
        auto at = [&f, nu, i](int k) -> const T& { return f[static_cast<std::size_t>(k) * nu + i]; };
        for (int j = 0; j < nv; ++j)
            out[g.index(i, j)] = detail::line_d2<T>(at, j, nv, g.v.spacing(), g.v.periodic(), seam);
    }
    return out;
}

// Mixed derivative; in the interior this is the four-point cross stencil.
template <typename T>
Field<T> diff_uv(const Field<T>& f, const Grid& g, double seam_u = 1.0, double seam_v = 1.0) {
    return diff_u(diff_v(f, g, seam_v), g, seam_u);
}

// Pointwise combination a * fu + b * fv with per-node coefficient fields.
template <typename T>
Field<T> combine(const ScalarField& a, const Field<T>& fu, const ScalarField& b, const Field<T>& fv) {
    Field<T> out(fu.size());
    for (std::size_t k = 0; k < fu.size(); ++k) out[k] = T(a[k] * fu[k] + b[k] * fv[k]);
    return out;
}

// Magnitude used by residual norms.
inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const std::complex<double>& x) { return std::abs(x); }
template <typename Derived>
double magnitude(const Eigen::MatrixBase<Derived>& m) {
    return m.norm();
}

// Max over nodes at least `margin` layers away from every non-periodic edge.
template <typename T>
double sup_norm(const Field<T>& f, const Grid& g, int margin = 0) {
    double m = 0.0;
    for (int k = 0; k < g.size(); ++k) {
        if (g.boundary_depth(k) < margin) continue;
        m = std::max(m, magnitude(f[k]));
    }
    return m;
}

// log2 of successive residual ratios; returns the smallest.
double measured_order(const std::vector<double>& residuals);

}  // namespace spinorsurf
