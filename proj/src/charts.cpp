#include "spinorsurf/charts.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>

namespace spinorsurf {

using Eigen::Matrix2d;
using Eigen::Matrix3d;
using Eigen::Vector2d;
using Eigen::Vector3d;

void ChartSpec::validate() const {
    if (grid.nu() < 8 || grid.nv() < 8) {
        std::ostringstream os;
        os << "chart '" << name << "' needs at least 8 nodes per direction (got " << grid.nu() << " x " << grid.nv()
           << ")";
        throw InvalidArgument(os.str());
    }
    if (!(grid.u.hi > grid.u.lo) || !(grid.v.hi > grid.v.lo))
        throw InvalidArgument("chart '" + name + "' has an empty parameter domain");
    if (!position) throw InvalidArgument("chart '" + name + "' has no immersion");
}

Matrix3d GeometryField::rotation(int node) const {
    Matrix3d r;
    r.col(0) = e1[node];
    r.col(1) = e2[node];
    r.col(2) = normal[node];
    return r;
}

namespace {

std::uint64_t next_geometry_id() {
    static std::atomic<std::uint64_t> counter{1};
    return counter++;
}

Jet finite_difference_jet(const ChartSpec& chart, double u, double v) {
    const double hu = chart.grid.u.spacing();
    const double hv = chart.grid.v.spacing();
    const auto& x = chart.position;
    Jet j;
    j.x = x(u, v);
    const Vector3d pu = x(u + hu, v), mu = x(u - hu, v);
    const Vector3d pv = x(u, v + hv), mv = x(u, v - hv);
    j.xu = (pu - mu) / (2 * hu);
    j.xv = (pv - mv) / (2 * hv);
    j.xuu = (pu - 2 * j.x + mu) / (hu * hu);
    j.xvv = (pv - 2 * j.x + mv) / (hv * hv);
    j.xuv = (x(u + hu, v + hv) - x(u + hu, v - hv) - x(u - hu, v + hv) + x(u - hu, v - hv)) / (4 * hu * hv);
    return j;
}

}  // namespace

GeometryField geometry_from_jets(const Grid& grid, const Field<Jet>& jets) {
    const int n = grid.size();
    if (static_cast<int>(jets.size()) != n) throw InvalidArgument("geometry_from_jets: size mismatch");
    GeometryField g;
    g.grid = grid;
    g.id = next_geometry_id();
    g.x.resize(n), g.xu.resize(n), g.xv.resize(n), g.xuu.resize(n), g.xuv.resize(n), g.xvv.resize(n);
    g.normal.resize(n), g.e1.resize(n), g.e2.resize(n);
    g.frame.resize(n), g.tangent.resize(n), g.metric.resize(n), g.metric_inverse.resize(n);
    g.christoffel.resize(n), g.second_form.resize(n);
    g.mean_curvature.resize(n), g.gauss_curvature.resize(n), g.connection.resize(n), g.area_element.resize(n);

    for (int k = 0; k < n; ++k) {
        const Jet& jt = jets[k];
        g.x[k] = jt.x, g.xu[k] = jt.xu, g.xv[k] = jt.xv;
        g.xuu[k] = jt.xuu, g.xuv[k] = jt.xuv, g.xvv[k] = jt.xvv;

        const double lu = jt.xu.norm();
        const Vector3d cross = jt.xu.cross(jt.xv);
        if (!(cross.norm() > 1e-12 * std::max(1.0, lu * jt.xv.norm()))) {
            std::ostringstream os;
            os << "immersion degenerates at node " << k << " (u=" << grid.u.coord(grid.iu(k))
               << ", v=" << grid.v.coord(grid.jv(k)) << ")";
            throw DegenerateImmersion(os.str());
        }
        const Vector3d e1 = jt.xu / lu;
        const Vector3d e2p = jt.xv - jt.xv.dot(e1) * e1;
        const double l2 = e2p.norm();
        const Vector3d e2 = e2p / l2;
        const Vector3d nrm = e1.cross(e2);
        g.e1[k] = e1, g.e2[k] = e2, g.normal[k] = nrm;

        Matrix2d t;
        t << lu, jt.xv.dot(e1), 0.0, l2;
        g.tangent[k] = t;
        g.frame[k] = t.inverse();

        Matrix2d m;
        m << jt.xu.dot(jt.xu), jt.xu.dot(jt.xv), jt.xu.dot(jt.xv), jt.xv.dot(jt.xv);
        g.metric[k] = m;
        g.metric_inverse[k] = m.inverse();
        g.area_element[k] = std::sqrt(m.determinant());

        const Vector3d second[2][2] = {{jt.xuu, jt.xuv}, {jt.xuv, jt.xvv}};
        const Vector3d tangents[2] = {jt.xu, jt.xv};
        for (int c = 0; c < 2; ++c) {
            Matrix2d gamma;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    double s = 0;
                    for (int d = 0; d < 2; ++d) s += g.metric_inverse[k](c, d) * second[a][b].dot(tangents[d]);
                    gamma(a, b) = s;
                }
            g.christoffel[k][c] = gamma;
        }

        Matrix2d b;
        b << -nrm.dot(jt.xuu), -nrm.dot(jt.xuv), -nrm.dot(jt.xuv), -nrm.dot(jt.xvv);
        const Matrix2d& f = g.frame[k];
        const Matrix2d ii = f.transpose() * b * f;
        g.second_form[k] = ii;
        g.mean_curvature[k] = 0.5 * ii.trace();
        g.gauss_curvature[k] = ii.determinant();

        const Vector2d omega_coord(jt.xuu.dot(e2) / lu, jt.xuv.dot(e2) / lu);
        g.connection[k] = f.transpose() * omega_coord;
    }
    return g;
}

GeometryField compute_geometry(const ChartSpec& chart, DerivativeMode mode) {
    chart.validate();
    const Grid& grid = chart.grid;
    Field<Jet> jets(grid.size());
    if (mode == DerivativeMode::Analytic && !chart.jet)
        throw InvalidArgument("chart '" + chart.name + "' has no analytic derivatives");
    for (int j = 0; j < grid.nv(); ++j)
        for (int i = 0; i < grid.nu(); ++i) {
            const double u = grid.u.coord(i), v = grid.v.coord(j);
            jets[grid.index(i, j)] =
                mode == DerivativeMode::Analytic ? chart.jet(u, v) : finite_difference_jet(chart, u, v);
        }
    return geometry_from_jets(grid, jets);
}

ScalarField laplace_beltrami(const ScalarField& f, const GeometryField& geom) {
    const Grid& grid = geom.grid;
    const ScalarField fu = diff_u(f, grid), fv = diff_v(f, grid);
    const ScalarField fuu = diff_uu(f, grid), fvv = diff_vv(f, grid), fuv = diff_uv(f, grid);
    ScalarField out(f.size());
    for (int k = 0; k < grid.size(); ++k) {
        Matrix2d hess;
        hess << fuu[k], fuv[k], fuv[k], fvv[k];
        const auto& gam = geom.christoffel[k];
        hess -= gam[0] * fu[k] + gam[1] * fv[k];
        out[k] = -(geom.metric_inverse[k].cwiseProduct(hess)).sum();
    }
    return out;
}

Vector2d coordinate_components(const Vector2d& form, const Matrix2d& tangent) { return tangent.transpose() * form; }

namespace {

template <typename Scalar, typename FormValue>
Field<Scalar> cells_of(const Field<FormValue>& form, const GeometryField& geom, int& cu, int& cv) {
    const Grid& grid = geom.grid;
    const int nu = grid.nu(), nv = grid.nv();
    cu = grid.u.periodic() ? nu : nu - 1;
    cv = grid.v.periodic() ? nv : nv - 1;
    const double hu = grid.u.spacing(), hv = grid.v.spacing();

    Field<Scalar> au(grid.size()), av(grid.size());
    for (int k = 0; k < grid.size(); ++k) {
        const Eigen::Matrix<Scalar, 2, 1> c = geom.tangent[k].transpose().template cast<Scalar>() * form[k];
        au[k] = c(0), av[k] = c(1);
    }
    Field<Scalar> out(static_cast<std::size_t>(cu) * cv);
    for (int j = 0; j < cv; ++j)
        for (int i = 0; i < cu; ++i) {
            const int i1 = (i + 1) % nu, j1 = (j + 1) % nv;
            const int a = grid.index(i, j), b = grid.index(i1, j), c = grid.index(i1, j1), d = grid.index(i, j1);
            const Scalar circ = 0.5 * hu * (au[a] + au[b]) + 0.5 * hv * (av[b] + av[c]) - 0.5 * hu * (au[d] + au[c]) -
                                0.5 * hv * (av[a] + av[d]);
            const double area =
                hu * hv * 0.25 *
                (geom.area_element[a] + geom.area_element[b] + geom.area_element[c] + geom.area_element[d]);
            out[static_cast<std::size_t>(j) * cu + i] = circ / area;
        }
    return out;
}

}  // namespace

CellField exterior_d_cells(const OneFormField& form, const GeometryField& geom) {
    CellField out;
    out.values = cells_of<double>(form, geom, out.cu, out.cv);
    return out;
}

ComplexCellField exterior_d_cells(const ComplexOneFormField& form, const GeometryField& geom) {
    ComplexCellField out;
    out.values = cells_of<std::complex<double>>(form, geom, out.cu, out.cv);
    return out;
}

CellField cell_average(const ScalarField& f, const GeometryField& geom) {
    const Grid& grid = geom.grid;
    CellField out;
    const int nu = grid.nu(), nv = grid.nv();
    out.cu = grid.u.periodic() ? nu : nu - 1;
    out.cv = grid.v.periodic() ? nv : nv - 1;
    out.values.resize(static_cast<std::size_t>(out.cu) * out.cv);
    for (int j = 0; j < out.cv; ++j)
        for (int i = 0; i < out.cu; ++i) {
            const int i1 = (i + 1) % nu, j1 = (j + 1) % nv;
            out.values[static_cast<std::size_t>(j) * out.cu + i] =
                0.25 * (f[grid.index(i, j)] + f[grid.index(i1, j)] + f[grid.index(i1, j1)] + f[grid.index(i, j1)]);
        }
    return out;
}

ScalarField exterior_d(const OneFormField& form, const GeometryField& geom) {
    const CellField cells = exterior_d_cells(form, geom);
    const Grid& grid = geom.grid;
    const int nu = grid.nu(), nv = grid.nv();
    ScalarField out(grid.size(), 0.0);
    std::vector<int> count(grid.size(), 0);
    for (int j = 0; j < cells.cv; ++j)
        for (int i = 0; i < cells.cu; ++i) {
            const double val = cells.values[static_cast<std::size_t>(j) * cells.cu + i];
            const int corners[4] = {grid.index(i, j), grid.index((i + 1) % nu, j),
                                    grid.index((i + 1) % nu, (j + 1) % nv), grid.index(i, (j + 1) % nv)};
            for (int c : corners) out[c] += val, ++count[c];
        }
    for (int k = 0; k < grid.size(); ++k) out[k] /= count[k];
    return out;
}

double quadrature(const ScalarField& density, const GeometryField& geom) {
    const Grid& grid = geom.grid;
    double sum = 0.0;
    for (int j = 0; j < grid.nv(); ++j) {
        double row = 0.0;
        for (int i = 0; i < grid.nu(); ++i) {
            const int k = grid.index(i, j);
            row += density[k] * geom.area_element[k] * grid.u.weight(i);
        }
        sum += row * grid.v.weight(j);
    }
    return sum;
}

// ---------------------------------------------------------------- presets ---

namespace {

ChartSpec make_chart(std::string name, Axis u, Axis v, std::function<Jet(double, double)> jet) {
    ChartSpec c;
    c.name = std::move(name);
    c.grid = Grid{u, v};
    c.jet = jet;
    c.position = [jet](double a, double b) { return jet(a, b).x; };
    return c;
}

}  // namespace

ChartSpec plane_chart(int nu, int nv, double half_width) {
    return make_chart("plane", {-half_width, half_width, nu, Sampling::Endpoints},
                      {-half_width, half_width, nv, Sampling::Endpoints}, [](double u, double v) {
                          Jet j;
                          j.x = {u, v, 0}, j.xu = {1, 0, 0}, j.xv = {0, 1, 0};
                          return j;
                      });
}

ChartSpec flat_torus_chart(int nu, int nv) {
    const double tau = 2 * std::numbers::pi;
    ChartSpec c = plane_chart(nu, nv);
    c.name = "flat_torus";
    c.grid = Grid{{0, tau, nu, Sampling::Periodic}, {0, tau, nv, Sampling::Periodic}};
    return c;
}

ChartSpec sphere_chart(int nu, int nv, double r, double u0, double u1, double v0, double v1, bool periodic_u) {
    if (!(r > 0)) throw InvalidArgument("sphere radius must be positive");
    return make_chart("sphere", {u0, u1, nu, periodic_u ? Sampling::Periodic : Sampling::Endpoints},
                      {v0, v1, nv, Sampling::Endpoints}, [r](double u, double v) {
                          const double su = std::sin(u), cu = std::cos(u), sv = std::sin(v), cv = std::cos(v);
                          Jet j;
                          j.x = r * Vector3d(sv * cu, -sv * su, cv);
                          j.xu = r * Vector3d(-sv * su, -sv * cu, 0);
                          j.xv = r * Vector3d(cv * cu, -cv * su, -sv);
                          j.xuu = r * Vector3d(-sv * cu, sv * su, 0);
                          j.xuv = r * Vector3d(-cv * su, -cv * cu, 0);
                          j.xvv = r * Vector3d(-sv * cu, sv * su, -cv);
                          return j;
                      });
}

ChartSpec full_sphere_chart(int nu, int nv, double radius) {
    ChartSpec c = sphere_chart(nu, nv, radius, 0, 2 * std::numbers::pi, 0, std::numbers::pi, true);
    c.grid.v.sampling = Sampling::Polar;
    c.name = "sphere_full";
    return c;
}

ChartSpec capped_sphere_chart(int nu, int nv, double radius, double cap) {
    ChartSpec c = sphere_chart(nu, nv, radius, 0, 2 * std::numbers::pi, cap, std::numbers::pi - cap, true);
    return c;
}

ChartSpec catenoid_chart(int nu, int nv, double v0, double v1) {
    return make_chart("catenoid", {0, 2 * std::numbers::pi, nu, Sampling::Periodic}, {v0, v1, nv, Sampling::Endpoints},
                      [](double u, double v) {
                          const double su = std::sin(u), cu = std::cos(u), ch = std::cosh(v), sh = std::sinh(v);
                          Jet j;
                          j.x = {ch * cu, ch * su, v};
                          j.xu = {-ch * su, ch * cu, 0};
                          j.xv = {sh * cu, sh * su, 1};
                          j.xuu = {-ch * cu, -ch * su, 0};
                          j.xuv = {-sh * su, sh * cu, 0};
                          j.xvv = {ch * cu, ch * su, 0};
                          return j;
                      });
}

ChartSpec helicoid_chart(int nu, int nv, double u0, double u1, double v0, double v1) {
    return make_chart("helicoid", {u0, u1, nu, Sampling::Endpoints}, {v0, v1, nv, Sampling::Endpoints},
                      [](double u, double v) {
                          const double su = std::sin(u), cu = std::cos(u);
                          Jet j;
                          j.x = {v * cu, v * su, u};
                          j.xu = {-v * su, v * cu, 1};
                          j.xv = {cu, su, 0};
                          j.xuu = {-v * cu, -v * su, 0};
                          j.xuv = {-su, cu, 0};
                          return j;
                      });
}

ChartSpec enneper_chart(int nu, int nv, double w) {
    return make_chart("enneper", {-w, w, nu, Sampling::Endpoints}, {-w, w, nv, Sampling::Endpoints},
                      [](double a, double b) {
                          Jet j;
                          j.x = {a - a * a * a / 3 + a * b * b, -b - a * a * b + b * b * b / 3, a * a - b * b};
                          j.xu = {1 - a * a + b * b, -2 * a * b, 2 * a};
                          j.xv = {2 * a * b, -1 - a * a + b * b, -2 * b};
                          j.xuu = {-2 * a, -2 * b, 2};
                          j.xuv = {2 * b, -2 * a, 0};
                          j.xvv = {2 * a, 2 * b, -2};
                          return j;
                      });
}

ChartSpec graph_chart(int nu, int nv, GraphKind kind, double amp, double w) {
    std::string name = kind == GraphKind::Bump     ? "graph_bump"
                       : kind == GraphKind::Saddle ? "graph_saddle"
                                                   : "graph_wave";
    return make_chart(std::move(name), {-w, w, nu, Sampling::Endpoints}, {-w, w, nv, Sampling::Endpoints},
                      [kind, amp](double u, double v) {
                          double f = 0, fu = 0, fv = 0, fuu = 0, fuv = 0, fvv = 0;
                          switch (kind) {
                              case GraphKind::Bump:
                                  f = amp * std::exp(-(u * u + v * v));
                                  fu = -2 * u * f, fv = -2 * v * f;
                                  fuu = (4 * u * u - 2) * f, fuv = 4 * u * v * f, fvv = (4 * v * v - 2) * f;
                                  break;
                              case GraphKind::Saddle:
                                  f = amp * (u * u - v * v);
                                  fu = 2 * amp * u, fv = -2 * amp * v;
                                  fuu = 2 * amp, fvv = -2 * amp;
                                  break;
                              case GraphKind::Wave:
                                  f = amp * std::sin(u) * std::cos(v);
                                  fu = amp * std::cos(u) * std::cos(v), fv = -amp * std::sin(u) * std::sin(v);
                                  fuu = -f, fuv = -amp * std::cos(u) * std::sin(v), fvv = -f;
                                  break;
                          }
                          Jet j;
                          j.x = {u, v, f};
                          j.xu = {1, 0, fu}, j.xv = {0, 1, fv};
                          j.xuu = {0, 0, fuu}, j.xuv = {0, 0, fuv}, j.xvv = {0, 0, fvv};
                          return j;
                      });
}

ChartSpec transformed_chart(const ChartSpec& chart, const Matrix3d& rot, const Vector3d& t) {
    ChartSpec c = chart;
    auto pos = chart.position;
    c.position = [pos, rot, t](double u, double v) -> Vector3d { return rot * pos(u, v) + t; };
    if (chart.jet) {
        auto jet = chart.jet;
        c.jet = [jet, rot, t](double u, double v) {
            Jet j = jet(u, v);
            j.x = rot * j.x + t;
            j.xu = rot * j.xu, j.xv = rot * j.xv;
            j.xuu = rot * j.xuu, j.xuv = rot * j.xuv, j.xvv = rot * j.xvv;
            return j;
        };
    }
    return c;
}

}  // namespace spinorsurf
