#include "spinorsurf/periods.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace spinorsurf {

using Eigen::Matrix2cd;
using Eigen::Matrix2d;
using Eigen::Matrix3d;
using Eigen::Vector2cd;
using Eigen::Vector2d;
using Eigen::Vector3d;
using C = std::complex<double>;

namespace {

const C I(0, 1);

const SpinMatrixd& generator(int j) {
    static const SpinMatrixd e[3] = {clifford_generator<double>(0), clifford_generator<double>(1),
                                     clifford_generator<double>(2)};
    return e[j];
}

void require_gauge(const SpinorFieldGrid& phi, const GeometryField& geom) {
    if (phi.gauge != geom.id || phi.size() != geom.size())
        throw GaugeMismatch("spinor field is not expressed in the frame of this geometry");
}

Spinord plus_of(const Spinord& s) { return Spinord(s(0), C(0)); }
Spinord minus_of(const Spinord& s) { return Spinord(C(0), s(1)); }

// Cumulative integral along a line of samples f[0..n-1] with spacing h.
// Fourth order: cubic through four neighbouring nodes on every interval.
template <typename T>
std::vector<T> cumulative4(const std::vector<T>& f, double h) {
    const int n = static_cast<int>(f.size());
    std::vector<T> out(n, T(f[0] * 0.0));
    for (int k = 0; k + 1 < n; ++k) {
        T piece;
        if (k == 0)
            piece = T(h / 24.0 * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]));
        else if (k == n - 2)
            piece = T(h / 24.0 * (9.0 * f[n - 1] + 19.0 * f[n - 2] - 5.0 * f[n - 3] + f[n - 4]));
        else
            piece = T(h / 24.0 * (-f[k - 1] + 13.0 * f[k] + 13.0 * f[k + 1] - f[k + 2]));
        out[k + 1] = T(out[k] + piece);
    }
    return out;
}

template <typename T>
std::vector<T> cumulative_trapezoid(const std::vector<T>& f, double h) {
    std::vector<T> out(f.size(), T(f[0] * 0.0));
    for (std::size_t k = 0; k + 1 < f.size(); ++k) out[k + 1] = T(out[k] + 0.5 * h * (f[k] + f[k + 1]));
    return out;
}

// Integrates coordinate components (au, av) from node (i0, j0) to every node along
// the L-path that moves in u first (u_first) or in v first.
template <typename T, typename Rule>
Field<T> integrate_paths(const Grid& g, const Field<T>& au, const Field<T>& av, int i0, int j0, bool u_first,
                         Rule rule) {
    const int nu = g.nu(), nv = g.nv();
    const double hu = g.u.spacing(), hv = g.v.spacing();
    auto row = [&](int j) {
        std::vector<T> f(nu);
        for (int i = 0; i < nu; ++i) f[i] = au[g.index(i, j)];
        return rule(f, hu);
    };
    auto col = [&](int i) {
        std::vector<T> f(nv);
        for (int j = 0; j < nv; ++j) f[j] = av[g.index(i, j)];
        return rule(f, hv);
    };
    Field<T> out(g.size());
    if (u_first) {
        const auto r0 = row(j0);
        for (int i = 0; i < nu; ++i) {
            const auto c = col(i);
            for (int j = 0; j < nv; ++j) out[g.index(i, j)] = T((r0[i] - r0[i0]) + (c[j] - c[j0]));
        }
    } else {
        const auto c0 = col(i0);
        for (int j = 0; j < nv; ++j) {
            const auto r = row(j);
            for (int i = 0; i < nu; ++i) out[g.index(i, j)] = T((c0[j] - c0[j0]) + (r[i] - r[i0]));
        }
    }
    return out;
}

template <typename T>
void coordinate_hessian(const Field<T>& h, const GeometryField& geom, Field<Eigen::Matrix<T, 2, 1>>& grad,
                        Field<Eigen::Matrix<T, 2, 2>>& hess) {
    const Grid& g = geom.grid;
    const Field<T> hu = diff_u(h, g), hv = diff_v(h, g);
    const Field<T> huu = diff_uu(h, g), hvv = diff_vv(h, g), huv = diff_uv(h, g);
    grad.resize(h.size());
    hess.resize(h.size());
    for (int k = 0; k < g.size(); ++k) {
        const Eigen::Matrix<T, 2, 1> d(hu[k], hv[k]);
        Eigen::Matrix<T, 2, 2> H;
        H << huu[k], huv[k], huv[k], hvv[k];
        const auto& gam = geom.christoffel[k];
        H -= gam[0].cast<T>() * d(0) + gam[1].cast<T>() * d(1);
        const Eigen::Matrix<T, 2, 2> F = geom.frame[k].cast<T>();
        grad[k] = F.transpose() * d;
        hess[k] = F.transpose() * H * F;
    }
}

}  // namespace

PeriodForms period_forms(const SpinorFieldGrid& phi, const GeometryField& geom) {
    require_gauge(phi, geom);
    const int n = phi.size();
    PeriodForms out;
    out.xi.resize(n), out.xi_plus.resize(n), out.xi_minus.resize(n);
    out.w.resize(n), out.mu.resize(n), out.omega.resize(n);
    for (int k = 0; k < n; ++k) {
        const Spinord pp = plus_of(phi.values[k]), pm = minus_of(phi.values[k]);
        const Spinord app = alpha(pp), apm = alpha(pm);
        for (int j = 0; j < 2; ++j) {
            const SpinMatrixd& e = generator(j);
            const C x = 2.0 * inner<double>(e * pp, pm);
            out.xi[k](j) = x;
            out.xi_plus[k](j) = inner<double>(e * pp, app);
            out.xi_minus[k](j) = inner<double>(e * pm, apm);
            out.w[k](j) = x.real();
            out.mu[k](j) = x.imag();
        }
        out.omega[k] = out.xi_plus[k] - out.xi_minus[k];
    }
    return out;
}

HodgeResiduals hodge_residuals(const PeriodForms& forms) {
    const std::size_t n = forms.xi.size();
    HodgeResiduals out;
    out.xi.resize(n), out.xi_plus.resize(n), out.xi_minus.resize(n);
    // (*a) = c a  <=>  -a(e2) = c a(e1) and a(e1) = c a(e2)
    auto res = [](const Vector2cd& a, C c) {
        return std::hypot(std::abs(-a(1) - c * a(0)), std::abs(a(0) - c * a(1)));
    };
    for (std::size_t k = 0; k < n; ++k) {
        out.xi[k] = res(forms.xi[k], -I);
        out.xi_plus[k] = res(forms.xi_plus[k], -I);
        out.xi_minus[k] = res(forms.xi_minus[k], I);
    }
    return out;
}

ClosednessReport closedness_report(const PeriodForms& forms, const SpinorFieldGrid& phi, const GeometryField& geom) {
    require_gauge(phi, geom);
    ClosednessReport r;
    r.dw = exterior_d_cells(forms.w, geom);
    r.domega = exterior_d_cells(forms.omega, geom);
    const CellField dmu = exterior_d_cells(forms.mu, geom);
    ScalarField source(geom.size());
    for (int k = 0; k < geom.size(); ++k)
        source[k] = 2.0 * geom.mean_curvature[k] * (std::norm(phi.values[k](1)) - std::norm(phi.values[k](0)));
    const CellField avg = cell_average(source, geom);
    r.dmu_residual = dmu;
    for (std::size_t c = 0; c < dmu.values.size(); ++c)
        r.dmu_residual.values[c] = std::abs(dmu.values[c] - avg.values[c]);
    for (double x : r.dw.values) r.max_dw = std::max(r.max_dw, std::abs(x));
    for (const C& x : r.domega.values) r.max_domega = std::max(r.max_domega, std::abs(x));
    for (double x : r.dmu_residual.values) r.max_dmu = std::max(r.max_dmu, x);
    return r;
}

Field<Vector3d> ImmersionGrid::points() const {
    Field<Vector3d> p(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) p[k] = Vector3d(f[k], g[k].real(), g[k].imag());
    return p;
}

ImmersionGrid reconstruct(const PeriodForms& forms, const GeometryField& geom, int base) {
    const Grid& grid = geom.grid;
    if (grid.u.periodic() || grid.v.periodic())
        throw NotExact("reconstruct: periodic chart; integrate over a simply connected patch instead");
    if (base < 0 || base >= grid.size()) throw InvalidArgument("reconstruct: basepoint out of range");

    const int n = grid.size();
    Field<Vector3d> au(n), av(n);
    for (int k = 0; k < n; ++k) {
        const Vector2d w = coordinate_components(forms.w[k], geom.tangent[k]);
        const Vector2cd o = geom.tangent[k].transpose().cast<C>() * forms.omega[k];
        au[k] = Vector3d(w(0), o(0).real(), o(0).imag());
        av[k] = Vector3d(w(1), o(1).real(), o(1).imag());
    }
    const int i0 = grid.iu(base), j0 = grid.jv(base);
    auto fourth = [](const std::vector<Vector3d>& f, double h) { return cumulative4(f, h); };
    auto trap = [](const std::vector<Vector3d>& f, double h) { return cumulative_trapezoid(f, h); };
    const Field<Vector3d> p1 = integrate_paths(grid, au, av, i0, j0, true, fourth);
    const Field<Vector3d> p2 = integrate_paths(grid, au, av, i0, j0, false, fourth);
    const Field<Vector3d> pt = integrate_paths(grid, au, av, i0, j0, true, trap);

    ImmersionGrid out;
    out.grid = grid;
    out.base = base;
    out.f.resize(n), out.g.resize(n);
    double scale = 0;
    for (int k = 0; k < n; ++k) {
        out.f[k] = p1[k](0);
        out.g[k] = C(p1[k](1), p1[k](2));
        out.loop_residual = std::max(out.loop_residual, (p1[k] - p2[k]).norm());
        out.discretization = std::max(out.discretization, (p1[k] - pt[k]).norm());
        scale = std::max(scale, p1[k].norm());
    }
    const double allowed = 10.0 * std::max(out.discretization, 1e-10 * (1.0 + scale));
    if (out.loop_residual > allowed) {
        std::ostringstream os;
        os << "reconstruct: forms are not exact (loop residual " << out.loop_residual << " exceeds " << allowed << ")";
        throw NotExact(os.str());
    }
    return out;
}

RigidMotion rigid_align(const Field<Vector3d>& a, const Field<Vector3d>& b) {
    if (a.size() != b.size() || a.empty()) throw InvalidArgument("rigid_align: point sets must match and be non-empty");
    const double n = static_cast<double>(a.size());
    Vector3d ca = Vector3d::Zero(), cb = Vector3d::Zero();
    for (std::size_t k = 0; k < a.size(); ++k) ca += a[k], cb += b[k];
    ca /= n, cb /= n;
    Matrix3d cov = Matrix3d::Zero();
    for (std::size_t k = 0; k < a.size(); ++k) cov += (b[k] - cb) * (a[k] - ca).transpose();
    Eigen::JacobiSVD<Matrix3d> svd(cov, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Matrix3d d = Matrix3d::Identity();
    if ((svd.matrixU() * svd.matrixV().transpose()).determinant() < 0) d(2, 2) = -1;
    RigidMotion m;
    m.rotation = svd.matrixU() * d * svd.matrixV().transpose();
    m.translation = cb - m.rotation * ca;
    double s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s += (m.rotation * a[k] + m.translation - b[k]).squaredNorm();
    m.rms = std::sqrt(s / n);
    return m;
}

double diameter(const Field<Vector3d>& points) {
    if (points.empty()) return 0;
    Vector3d lo = points[0], hi = points[0];
    for (const auto& p : points) lo = lo.cwiseMin(p), hi = hi.cwiseMax(p);
    return (hi - lo).norm();
}

RealDerivatives function_derivatives(const ScalarField& h, const GeometryField& geom) {
    RealDerivatives d;
    coordinate_hessian<double>(h, geom, d.grad, d.hess);
    return d;
}

ComplexDerivatives function_derivatives(const ComplexField& h, const GeometryField& geom) {
    ComplexDerivatives d;
    coordinate_hessian<C>(h, geom, d.grad, d.hess);
    return d;
}

double metric_error(const ImmersionGrid& rec, const GeometryField& geom) {
    const Field<Vector3d> p = rec.points();
    const auto pu = diff_u(p, rec.grid), pv = diff_v(p, rec.grid);
    double err = 0;
    for (int k = 0; k < rec.grid.size(); ++k) {
        if (rec.grid.boundary_depth(k) < 1) continue;
        Matrix2d m;
        m << pu[k].dot(pu[k]), pu[k].dot(pv[k]), pu[k].dot(pv[k]), pv[k].dot(pv[k]);
        err = std::max(err, (m - geom.metric[k]).norm() / geom.metric[k].norm());
    }
    return err;
}

HessianReport hessian_report(const SpinorFieldGrid& phi, const GeometryField& geom, const ImmersionGrid& rec) {
    require_gauge(phi, geom);
    const EndoField endo = extract_E(phi, geom).endo;
    const RealDerivatives df = function_derivatives(rec.f, geom);
    const ComplexDerivatives dg = function_derivatives(rec.g, geom);
    const int n = geom.size();
    HessianReport r;
    r.hess_f.resize(n), r.grad_f.resize(n), r.hess_g.resize(n);
    r.grad_g.resize(n), r.grad_g_full.resize(n), r.det_hess_f.resize(n);
    for (int k = 0; k < n; ++k) {
        const Spinord pp = plus_of(phi.values[k]), pm = minus_of(phi.values[k]);
        const double p = pp.squaredNorm(), q = pm.squaredNorm();
        const Matrix2d& e = endo[k];
        r.hess_f[k] = (df.hess[k] - 2.0 * (p - q) * e).norm();
        r.grad_f[k] = std::abs(df.grad[k].squaredNorm() - 4.0 * p * q);
        const C c = -4.0 * inner<double>(pm, alpha(pp));
        r.hess_g[k] = (dg.hess[k] - c * e.cast<C>()).norm();
        const double gg = dg.grad[k].squaredNorm();
        r.grad_g[k] = std::abs(gg - (p - q) * (p - q));
        r.grad_g_full[k] = std::abs(gg - (p + q) * (p + q) - (p - q) * (p - q));
        r.det_hess_f[k] = std::abs(df.hess[k].determinant() - (p - q) * (p - q) * geom.gauss_curvature[k]);
    }
    return r;
}

IntegralReport integral_identities(const SpinorFieldGrid& phi, const GeometryField& geom) {
    require_gauge(phi, geom);
    const int n = geom.size();
    const ScalarField a3 = normal_projection(phi);
    ScalarField gauss(n), normal(n), quartic(n), height(n);
    IntegralReport r;
    r.min_plus = r.min_minus = 1e300;
    r.max_gauss = -1e300;
    for (int k = 0; k < n; ++k) {
        const Spinord& s = phi.values[k];
        const double p = std::norm(s(0)), q = std::norm(s(1)), g = geom.gauss_curvature[k];
        gauss[k] = g;
        normal[k] = 3.0 * a3[k] * a3[k] * g;
        quartic[k] = ((p + q) * (p + q) - 6.0 * p * q) * g;
        r.min_plus = std::min(r.min_plus, std::sqrt(p));
        r.min_minus = std::min(r.min_minus, std::sqrt(q));
        r.max_gauss = std::max(r.max_gauss, g);
        // height f(x) = -Im(x . psi, psi) of the restricted spinor psi = phi+ + i phi-
        const Spinord psi(s(0), I * s(1));
        const Vector3d xf = geom.rotation(k).transpose() * geom.x[k];
        height[k] = -inner<double>(clifford_matrix(xf) * psi, psi).imag();
    }
    r.integral_gauss = quadrature(gauss, geom);
    r.integral_normal = quadrature(normal, geom);
    r.integral_quartic = quadrature(quartic, geom);

    int best = -1;
    for (int k = 0; k < n; ++k)
        if (geom.grid.boundary_depth(k) >= 2 && (best < 0 || height[k] > height[best])) best = k;
    if (best >= 0) r.det_hess_at_max = function_derivatives(height, geom).hess[best].determinant();
    return r;
}

// ------------------------------------------------------------ conformal ---

SpinorFieldGrid conformal_dirac(const SpinorFieldGrid& phi, const ScalarField& sigma, const GeometryField& geom) {
    require_gauge(phi, geom);
    const int n = geom.size();
    if (static_cast<int>(sigma.size()) != n) throw InvalidArgument("conformal_dirac: factor size mismatch");
    ScalarField s(n);
    for (int k = 0; k < n; ++k) {
        if (!(sigma[k] > 0)) throw NonPositiveFactor("conformal factor must be strictly positive");
        s[k] = 1.0 / std::sqrt(sigma[k]);
    }
    const ScalarField s1 = geom.frame_derivative(s, 0), s2 = geom.frame_derivative(s, 1);
    const Field<Spinord> d1 = geom.frame_derivative(phi.values, 0, phi.seam_u, phi.seam_v);
    const Field<Spinord> d2 = geom.frame_derivative(phi.values, 1, phi.seam_u, phi.seam_v);
    SpinorFieldGrid out = phi;
    out.provenance = Provenance::Derived;
    for (int k = 0; k < n; ++k) {
        // frame s e_j; connection form of the rescaled metric on that frame
        const double w1 = s[k] * geom.connection[k](0) + s2[k];
        const double w2 = s[k] * geom.connection[k](1) - s1[k];
        const Spinord e3p = generator(2) * phi.values[k];
        const Spinord n1 = s[k] * d1[k] + 0.5 * w1 * e3p;
        const Spinord n2 = s[k] * d2[k] + 0.5 * w2 * e3p;
        out.values[k] = generator(0) * n1 + generator(1) * n2;
    }
    return out;
}

ScalarField conformal_covariance(const SpinorFieldGrid& phi, const ScalarField& sigma, const GeometryField& geom) {
    const SpinorFieldGrid lhs = conformal_dirac(phi, sigma, geom);
    SpinorFieldGrid scaled = phi;
    for (int k = 0; k < geom.size(); ++k) scaled.values[k] *= std::pow(sigma[k], 0.25);
    const SpinorFieldGrid d = dirac(scaled, geom);
    ScalarField out(geom.size());
    for (int k = 0; k < geom.size(); ++k) out[k] = (lhs.values[k] - std::pow(sigma[k], -0.75) * d.values[k]).norm();
    return out;
}

ScalarField conformal_eigen_residual(const SpinorFieldGrid& phi, double lambda, const GeometryField& geom) {
    require_gauge(phi, geom);
    const int n = geom.size();
    ScalarField sigma(n), len(n);
    SpinorFieldGrid unit = phi;
    for (int k = 0; k < n; ++k) {
        len[k] = phi.values[k].norm();
        if (!(len[k] > 0)) throw ZeroLength("conformal_eigen_residual: eigenspinor vanishes");
        sigma[k] = std::pow(len[k], 4);
        unit.values[k] /= len[k];
    }
    const SpinorFieldGrid d = conformal_dirac(unit, sigma, geom);
    ScalarField out(n);
    for (int k = 0; k < n; ++k) out[k] = (d.values[k] - (lambda / (len[k] * len[k])) * unit.values[k]).norm();
    return out;
}

}  // namespace spinorsurf
