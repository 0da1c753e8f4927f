#include "spinorsurf/spinorfield.hpp"

#include <algorithm>
#include <cmath>

namespace spinorsurf {

using Eigen::Matrix2d;
using Eigen::Vector2d;
using C = std::complex<double>;

namespace {

const SpinMatrixd& generator(int j) {
    static const SpinMatrixd e[3] = {clifford_generator<double>(0), clifford_generator<double>(1),
                                     clifford_generator<double>(2)};
    return e[j];
}

void require_gauge(const SpinorFieldGrid& phi, const GeometryField& geom) {
    if (phi.gauge != geom.id || phi.size() != geom.size())
        throw GaugeMismatch("spinor field is not expressed in the frame of this geometry");
}

SpinorFieldGrid like(const SpinorFieldGrid& phi, Provenance p = Provenance::Derived) {
    SpinorFieldGrid out;
    out.gauge = phi.gauge;
    out.seam_u = phi.seam_u;
    out.seam_v = phi.seam_v;
    out.provenance = p;
    out.values.resize(phi.values.size());
    return out;
}

// Tangent vector with frame coefficients x acting on a spinor.
SpinMatrixd tangent_matrix(double x1, double x2) { return x1 * generator(0) + x2 * generator(1); }

Spinord project_plus(const Spinord& s) { return Spinord(s(0), C(0)); }
Spinord project_minus(const Spinord& s) { return Spinord(C(0), s(1)); }

}  // namespace

SpinorFieldGrid restrict_parallel(const Spinord& ambient, const GeometryField& geom, int base) {
    if (!(ambient.norm() > 0)) throw InvalidArgument("restrict_parallel: ambient spinor must be non-zero");
    std::vector<Eigen::Matrix3d> rotations(geom.size());
    for (int k = 0; k < geom.size(); ++k) rotations[k] = geom.rotation(k);
    const Grid& g = geom.grid;
    const SpinLiftField lift = su2_lift_grid(rotations, g.nu(), g.nv(), g.u.periodic(), g.v.periodic(), base);

    SpinorFieldGrid out;
    out.gauge = geom.id;
    out.seam_u = lift.seam_u;
    out.seam_v = lift.seam_v;
    out.provenance = Provenance::Restricted;
    out.values.resize(geom.size());
    for (int k = 0; k < geom.size(); ++k) out.values[k] = lift.lifts[k].adjoint() * ambient;
    return out;
}

SpinorFieldGrid manufactured_field(const GeometryField& geom,
                                   const std::function<Spinord(double, double)>& components) {
    SpinorFieldGrid out;
    out.gauge = geom.id;
    out.provenance = Provenance::Manufactured;
    out.values.resize(geom.size());
    const Grid& g = geom.grid;
    for (int k = 0; k < g.size(); ++k) out.values[k] = components(g.u.coord(g.iu(k)), g.v.coord(g.jv(k)));
    return out;
}

SpinorFieldGrid star(const SpinorFieldGrid& phi) {
    SpinorFieldGrid out = like(phi, Provenance::Star);
    const Eigen::Vector3d n(0, 0, 1);
    for (int k = 0; k < phi.size(); ++k) out.values[k] = star_spinor(phi.values[k], n);
    return out;
}

SpinorFieldGrid apply_alpha(const SpinorFieldGrid& phi) {
    SpinorFieldGrid out = like(phi);
    for (int k = 0; k < phi.size(); ++k) out.values[k] = alpha(phi.values[k]);
    return out;
}

SpinorFieldGrid plus_part(const SpinorFieldGrid& phi) {
    SpinorFieldGrid out = like(phi);
    for (int k = 0; k < phi.size(); ++k) out.values[k] = project_plus(phi.values[k]);
    return out;
}

SpinorFieldGrid minus_part(const SpinorFieldGrid& phi) {
    SpinorFieldGrid out = like(phi);
    for (int k = 0; k < phi.size(); ++k) out.values[k] = project_minus(phi.values[k]);
    return out;
}

SpinorFieldGrid covariant_derivative(const SpinorFieldGrid& phi, const GeometryField& geom, int j) {
    require_gauge(phi, geom);
    if (j != 0 && j != 1) throw InvalidArgument("covariant_derivative: frame index must be 0 or 1");
    SpinorFieldGrid out = like(phi);
    out.values = geom.frame_derivative(phi.values, j, phi.seam_u, phi.seam_v);
    // + (1/2) omega12(e_j) e1 e2 phi, and e1 e2 = E3
    for (int k = 0; k < phi.size(); ++k) out.values[k] += 0.5 * geom.connection[k](j) * (generator(2) * phi.values[k]);
    return out;
}

SpinorFieldGrid dirac(const SpinorFieldGrid& phi, const GeometryField& geom) {
    const SpinorFieldGrid d1 = covariant_derivative(phi, geom, 0);
    const SpinorFieldGrid d2 = covariant_derivative(phi, geom, 1);
    SpinorFieldGrid out = like(phi);
    for (int k = 0; k < phi.size(); ++k) out.values[k] = generator(0) * d1.values[k] + generator(1) * d2.values[k];
    return out;
}

SpinorFieldGrid spinor_laplacian(const SpinorFieldGrid& phi, const GeometryField& geom) {
    const SpinorFieldGrid d1 = covariant_derivative(phi, geom, 0);
    const SpinorFieldGrid d2 = covariant_derivative(phi, geom, 1);
    const SpinorFieldGrid d11 = covariant_derivative(d1, geom, 0);
    const SpinorFieldGrid d22 = covariant_derivative(d2, geom, 1);
    SpinorFieldGrid out = like(phi);
    // nabla_{e1} e1 = omega(e1) e2, nabla_{e2} e2 = -omega(e2) e1
    for (int k = 0; k < phi.size(); ++k) {
        const Vector2d& w = geom.connection[k];
        out.values[k] = -(d11.values[k] + d22.values[k] - w(0) * d2.values[k] + w(1) * d1.values[k]);
    }
    return out;
}

ScalarField restriction_residual(const SpinorFieldGrid& phi, const GeometryField& geom) {
    ScalarField out(phi.size(), 0.0);
    for (int j = 0; j < 2; ++j) {
        const SpinorFieldGrid d = covariant_derivative(phi, geom, j);
        for (int k = 0; k < phi.size(); ++k) {
            const Matrix2d& ii = geom.second_form[k];
            const Spinord rhs = 0.5 * (tangent_matrix(ii(j, 0), ii(j, 1)) * (generator(2) * phi.values[k]));
            out[k] = std::max(out[k], (d.values[k] - rhs).norm());
        }
    }
    return out;
}

ScalarField pointwise_norm(const SpinorFieldGrid& phi) {
    ScalarField out(phi.size());
    for (int k = 0; k < phi.size(); ++k) out[k] = phi.values[k].norm();
    return out;
}

ScalarField difference_norm(const SpinorFieldGrid& a, const SpinorFieldGrid& b) {
    if (a.size() != b.size()) throw InvalidArgument("difference_norm: size mismatch");
    ScalarField out(a.size());
    for (int k = 0; k < a.size(); ++k) out[k] = (a.values[k] - b.values[k]).norm();
    return out;
}

ScalarField dirac_eigen_residual(const SpinorFieldGrid& phi, const ScalarField& eigenvalue, const GeometryField& geom) {
    const SpinorFieldGrid d = dirac(phi, geom);
    ScalarField out(phi.size());
    for (int k = 0; k < phi.size(); ++k) out[k] = (d.values[k] - eigenvalue[k] * phi.values[k]).norm();
    return out;
}

EndoExtraction extract_E(const SpinorFieldGrid& phi, const GeometryField& geom) {
    require_gauge(phi, geom);
    double lo = 1e300, hi = 0;
    for (const auto& s : phi.values) lo = std::min(lo, s.norm()), hi = std::max(hi, s.norm());
    if (!(lo >= 1e-8 * hi) || hi == 0) throw ZeroLength("extract_E: spinor field has (nearly) vanishing length");

    const SpinorFieldGrid d[2] = {covariant_derivative(phi, geom, 0), covariant_derivative(phi, geom, 1)};
    EndoExtraction out;
    const int n = phi.size();
    out.endo.resize(n), out.asymmetry.resize(n), out.trace_residual.resize(n), out.det_residual.resize(n);
    for (int k = 0; k < n; ++k) {
        const Spinord& p = phi.values[k];
        const double len2 = p.squaredNorm();
        Matrix2d e;
        for (int j = 0; j < 2; ++j)
            for (int m = 0; m < 2; ++m) e(j, m) = inner<double>(d[j].values[k], generator(m) * p).real() / len2;
        out.endo[k] = e;
        out.asymmetry[k] = std::abs(e(0, 1) - e(1, 0));
        out.trace_residual[k] = std::abs(e.trace() + geom.mean_curvature[k]);
        out.det_residual[k] = std::abs(e.determinant() - 0.25 * geom.gauss_curvature[k]);
    }
    out.twistor_residual = twistor_residual(phi, out.endo, geom);
    return out;
}

ScalarField twistor_residual(const SpinorFieldGrid& phi, const EndoField& endo, const GeometryField& geom) {
    ScalarField out(phi.size(), 0.0);
    for (int j = 0; j < 2; ++j) {
        const SpinorFieldGrid d = covariant_derivative(phi, geom, j);
        for (int k = 0; k < phi.size(); ++k) {
            const Spinord rhs = tangent_matrix(endo[k](j, 0), endo[k](j, 1)) * phi.values[k];
            out[k] = std::max(out[k], (d.values[k] - rhs).norm());
        }
    }
    return out;
}

FormsF forms_F(const SpinorFieldGrid& phi, const GeometryField& geom) {
    require_gauge(phi, geom);
    const SpinorFieldGrid d[2] = {covariant_derivative(phi, geom, 0), covariant_derivative(phi, geom, 1)};
    const int n = phi.size();
    FormsF out;
    out.plus.resize(n), out.minus.resize(n);
    out.asymmetry_plus.resize(n), out.asymmetry_minus.resize(n);
    out.trace_plus.resize(n), out.trace_minus.resize(n), out.relation.resize(n);
    for (int k = 0; k < n; ++k) {
        const Spinord pp = project_plus(phi.values[k]), pm = project_minus(phi.values[k]);
        Matrix2d fp, fm;
        for (int j = 0; j < 2; ++j) {
            // the +/- projections are parallel, so nabla(phi+-) = (nabla phi)+-
            const Spinord dp = project_plus(d[j].values[k]), dm = project_minus(d[j].values[k]);
            for (int m = 0; m < 2; ++m) {
                fp(j, m) = inner<double>(dp, generator(m) * pm).real();
                fm(j, m) = inner<double>(dm, generator(m) * pp).real();
            }
        }
        out.plus[k] = fp, out.minus[k] = fm;
        const double lp = pp.squaredNorm(), lm = pm.squaredNorm(), h = geom.mean_curvature[k];
        out.asymmetry_plus[k] = std::abs(fp(0, 1) - fp(1, 0));
        out.asymmetry_minus[k] = std::abs(fm(0, 1) - fm(1, 0));
        out.trace_plus[k] = std::abs(fp.trace() + h * lm);
        out.trace_minus[k] = std::abs(fm.trace() + h * lp);
        out.relation[k] = (lp * fp - lm * fm).norm();
    }
    return out;
}

ScalarField codazzi_residual(const EndoField& endo, const GeometryField& geom) {
    const int n = geom.size();
    if (static_cast<int>(endo.size()) != n) throw InvalidArgument("codazzi_residual: size mismatch");
    const EndoField d1 = geom.frame_derivative(endo, 0);
    const EndoField d2 = geom.frame_derivative(endo, 1);
    ScalarField out(n);
    for (int k = 0; k < n; ++k) {
        const Matrix2d& e = endo[k];
        const double w1 = geom.connection[k](0), w2 = geom.connection[k](1);
        const double a1 = d1[k](1, 0) - e(1, 1) * w1 - d2[k](0, 0) + e(0, 1) * w2 + w1 * e(0, 0) + w2 * e(1, 0);
        const double a2 = d1[k](1, 1) + e(1, 0) * w1 - d2[k](0, 1) - e(0, 0) * w2 + w1 * e(0, 1) + w2 * e(1, 1);
        out[k] = std::hypot(a1, a2);
    }
    return out;
}

SecondFormMatch match_second_form(const EndoField& endo, const GeometryField& geom) {
    SecondFormMatch best;
    double best_max = 1e300;
    for (double s : {1.0, -1.0}) {
        ScalarField r(geom.size());
        double m = 0;
        for (int k = 0; k < geom.size(); ++k) {
            r[k] = (2.0 * endo[k] - s * geom.second_form[k]).norm();
            if (geom.grid.boundary_depth(k) >= 1) m = std::max(m, r[k]);
        }
        if (m < best_max) best_max = m, best.sign = s, best.residual = std::move(r);
    }
    return best;
}

LaplacianIdentities laplacian_identities(const SpinorFieldGrid& phi, const GeometryField& geom) {
    require_gauge(phi, geom);
    const int n = phi.size();
    ScalarField lp(n), lm(n);
    for (int k = 0; k < n; ++k) lp[k] = std::norm(phi.values[k](0)), lm[k] = std::norm(phi.values[k](1));
    LaplacianIdentities out;
    out.u.resize(n);
    for (int k = 0; k < n; ++k) out.u[k] = lp[k] - lm[k];

    const ScalarField du = laplace_beltrami(out.u, geom);
    const ScalarField dlp = laplace_beltrami(lp, geom);
    const ScalarField dlm = laplace_beltrami(lm, geom);
    const ScalarField dh1 = geom.frame_derivative(geom.mean_curvature, 0);
    const ScalarField dh2 = geom.frame_derivative(geom.mean_curvature, 1);

    out.u_residual.resize(n), out.plus_residual.resize(n), out.minus_residual.resize(n);
    for (int k = 0; k < n; ++k) {
        const double h = geom.mean_curvature[k], g = geom.gauss_curvature[k];
        const double c = h * h - 0.5 * g;
        out.u_residual[k] = std::abs(du[k] - 4 * c * out.u[k]);
        const SpinMatrixd grad_h = tangent_matrix(dh1[k], dh2[k]);
        const Spinord pp = project_plus(phi.values[k]), pm = project_minus(phi.values[k]);
        const double tp = 2 * inner<double>(grad_h * pm, pp).real();
        const double tm = 2 * inner<double>(grad_h * pp, pm).real();
        out.plus_residual[k] = std::abs(dlp[k] - (2 * c * (lp[k] - lm[k]) + tp));
        out.minus_residual[k] = std::abs(dlm[k] - (2 * c * (lm[k] - lp[k]) + tm));
    }

    const SpinorFieldGrid dd = dirac(dirac(phi, geom), geom);
    const SpinorFieldGrid lap = spinor_laplacian(phi, geom);
    out.dirac_square.resize(n);
    for (int k = 0; k < n; ++k)
        out.dirac_square[k] = (dd.values[k] - lap.values[k] - 0.5 * geom.gauss_curvature[k] * phi.values[k]).norm();
    return out;
}

ScalarField normal_projection(const SpinorFieldGrid& phi) {
    ScalarField out(phi.size());
    const C i(0, 1);
    for (int k = 0; k < phi.size(); ++k) {
        const Spinord& p = phi.values[k];
        out[k] = inner<double>(i * (generator(2) * p), p).real() / p.squaredNorm();
    }
    return out;
}

}  // namespace spinorsurf
