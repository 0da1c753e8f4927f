#include "spinorsurf/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>

#include "spinorsurf/errors.hpp"
#include "spinorsurf/periods.hpp"
#include "spinorsurf/report.hpp"
#include "spinorsurf/verify.hpp"
#include "spinorsurf/weierstrass.hpp"

namespace spinorsurf {

using json = nlohmann::json;
using Eigen::Vector3d;
namespace fs = std::filesystem;

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// ---------------------------------------------------------------- schema ---

std::pair<int, int> parse_grid(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
        throw ConfigError(what + ": expected [n_u, n_v]");
    const int nu = j[0].get<int>(), nv = j[1].get<int>();
    if (nu < 8 || nv < 8)
        throw ConfigError(what + ": each direction needs at least 8 nodes, got " + std::to_string(nu) + "x" +
                          std::to_string(nv));
    return {nu, nv};
}

std::complex<double> parse_complex(const json& j, const std::string& what) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw ConfigError(what + ": expected a number or [re, im]");
}

double number(const json& params, const char* key, double fallback) {
    if (!params.contains(key)) return fallback;
    const json& v = params.at(key);
    if (!v.is_number()) throw ConfigError(std::string("surface.params.") + key + ": expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(std::string("surface.params.") + key + ": not finite");
    return x;
}

void only_keys(const json& params, std::initializer_list<const char*> allowed, const std::string& preset) {
    for (const auto& [k, v] : params.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || k == a;
        if (!ok) throw ConfigError("surface.params: '" + k + "' is not a parameter of preset '" + preset + "'");
    }
}

const std::set<std::string> kTopLevel = {"surfaces",       "surface",         "grid",       "quadrature_grid",
                                         "ambient_spinor", "derivative_mode", "tolerances", "seed",
                                         "random_samples", "reports",         "out"};

Entry single_entry(const std::string& id, const std::string& anchor, const std::string& surface,
                   const std::string& grid, double residual, double tol) {
    Entry e;
    e.check_id = id;
    e.anchor = anchor;
    e.surface = surface;
    e.grid = grid;
    e.residual = residual;
    e.tolerance = tol;
    e.pass = residual <= tol;
    return e;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
    f << text;
    if (!f.flush()) throw IoError("write failed for '" + path.string() + "'");
}

std::string read_file(const fs::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
}

const SurfaceConfig& need_surface(const RunConfig& c) {
    if (!c.surface) throw ConfigError(command_name(c.command) + ": config needs a 'surface' block");
    return *c.surface;
}

// ------------------------------------------------------------- commands ---

int do_generate(const RunConfig& c, std::ostream& log) {
    const SurfaceConfig& s = need_surface(c);
    const auto [nu, nv] = c.grids.back();
    const ChartSpec chart = preset_chart(s, nu, nv);
    Field<Vector3d> pts(chart.grid.size());
    for (int k = 0; k < chart.grid.size(); ++k)
        pts[k] = chart.position(chart.grid.u.coord(chart.grid.iu(k)), chart.grid.v.coord(chart.grid.jv(k)));
    std::ostringstream os;
    write_obj(os, pts, chart.grid, chart.name);
    ensure_dir(c.out);
    const fs::path path = c.out / (s.preset + ".obj");
    write_file(path, os.str());
    log << "wrote " << path.string() << " (" << pts.size() << " vertices)\n";
    return 0;
}

int do_restrict(const RunConfig& c, std::ostream& log) {
    const SurfaceConfig& s = need_surface(c);
    const auto [nu, nv] = c.grids.back();
    const GeometryField g = compute_geometry(preset_chart(s, nu, nv), c.mode);
    const SpinorFieldGrid phi = restrict_parallel(c.ambient / c.ambient.norm(), g);
    std::ostringstream os;
    write_spinor_csv(os, g, phi, star(phi));
    ensure_dir(c.out);
    const fs::path path = c.out / (s.preset + "_spinor.csv");
    write_file(path, os.str());
    log << "wrote " << path.string() << " (" << g.size() << " nodes)\n";
    return 0;
}

void print_entries(const Report& r, std::ostream& log) {
    for (const auto& e : r.entries) {
        log << (e.pass ? "PASS " : "FAIL ") << e.check_id << "  residual=" << e.residual;
        if (e.measured_order) log << "  order=" << *e.measured_order;
        log << "  tol=" << e.tolerance << "\n";
    }
}

int do_verify(const RunConfig& c, std::ostream& log) {
    if (c.surfaces.empty()) throw ConfigError("verify: config needs a non-empty 'surfaces' list");
    VerifyOptions o;
    o.surfaces = c.surfaces;
    o.grids = c.grids;
    o.quadrature_grid = c.quadrature_grid;
    o.ambient = c.ambient;
    o.mode = c.mode;
    o.seed = c.seed;
    o.random_samples = c.random_samples;
    o.tolerances = c.tolerances;
    const Report r = verify(o);
    ensure_dir(c.out);
    const fs::path path = c.out / "report.json";
    write_file(path, r.to_json());
    print_entries(r, log);
    log << "wrote " << path.string() << "\n";
    return r.all_pass() ? 0 : 1;
}

int do_reconstruct(const RunConfig& c, std::ostream& log) {
    const SurfaceConfig& s = need_surface(c);
    const auto [nu, nv] = c.grids.back();
    const GeometryField g = compute_geometry(preset_chart(s, nu, nv), c.mode);
    const Spinord ambient = c.ambient / c.ambient.norm();
    const SpinorFieldGrid ps = star(restrict_parallel(ambient, g));
    const ImmersionGrid rec = reconstruct(period_forms(ps, g), g);
    const Field<Vector3d> pts = rec.points();
    const RigidMotion m = rigid_align(pts, g.x);
    const double diam = diameter(g.x);

    const std::string id = "reconstruct/" + s.preset;
    const auto it = c.tolerances.find(id);
    const double tol = it != c.tolerances.end() ? it->second : 1e-3;
    const Entry e = single_entry(id, "integral of (w, Omega) = immersion up to rigid motion", s.preset,
                                 std::to_string(nu) + "x" + std::to_string(nv), m.rms / diam, tol);

    ensure_dir(c.out);
    std::ostringstream os;
    write_obj(os, pts, rec.grid, "reconstructed " + s.preset);
    const fs::path obj = c.out / (s.preset + "_reconstructed.obj");
    write_file(obj, os.str());

    json j;
    j["surface"] = s.preset;
    j["grid"] = {nu, nv};
    j["rotation"] = json::array();
    for (int r = 0; r < 3; ++r) j["rotation"].push_back({m.rotation(r, 0), m.rotation(r, 1), m.rotation(r, 2)});
    j["translation"] = {m.translation(0), m.translation(1), m.translation(2)};
    j["rms"] = m.rms;
    j["diameter"] = diam;
    j["relative_rms"] = e.residual;
    j["loop_residual"] = rec.loop_residual;
    j["tolerance"] = tol;
    j["pass"] = e.pass;
    const fs::path align = c.out / (s.preset + "_alignment.json");
    write_file(align, j.dump(2) + "\n");
    log << (e.pass ? "PASS " : "FAIL ") << id << "  relative_rms=" << e.residual << "  tol=" << tol << "\n";
    log << "wrote " << obj.string() << ", " << align.string() << "\n";
    return e.pass ? 0 : 1;
}

int do_report(const RunConfig& c, std::ostream& log) {
    if (c.reports.empty()) throw ConfigError("report: config needs a non-empty 'reports' list");
    std::vector<Report> parts;
    for (const auto& p : c.reports) {
        try {
            parts.push_back(report_from_json(read_file(p)));
        } catch (const ConfigError& e) {
            throw ConfigError(p.string() + ": " + e.what());
        }
    }
    const Report merged = merge_reports(parts);
    ensure_dir(c.out);
    const fs::path path = c.out / "report.json";
    write_file(path, merged.to_json());
    print_entries(merged, log);
    log << "wrote " << path.string() << " (" << merged.entries.size() << " entries)\n";
    return merged.all_pass() ? 0 : 1;
}

}  // namespace

Command parse_command(const std::string& name) {
    if (name == "generate") return Command::Generate;
    if (name == "restrict") return Command::Restrict;
    if (name == "verify") return Command::Verify;
    if (name == "reconstruct") return Command::Reconstruct;
    if (name == "report") return Command::Report;
    throw ConfigError("unknown command '" + name + "'");
}

std::string command_name(Command c) {
    switch (c) {
        case Command::Generate:
            return "generate";
        case Command::Restrict:
            return "restrict";
        case Command::Verify:
            return "verify";
        case Command::Reconstruct:
            return "reconstruct";
        case Command::Report:
            return "report";
    }
    return "?";
}

RunConfig parse_config(const std::string& text, Command command, const fs::path& base_dir) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [k, v] : j.items())
        if (!kTopLevel.count(k)) throw ConfigError("unknown config key '" + k + "'");

    RunConfig c;
    c.command = command;
    try {
        if (j.contains("surfaces")) {
            const auto known = known_surfaces();
            for (const auto& s : j.at("surfaces")) {
                const std::string name = s.get<std::string>();
                if (std::find(known.begin(), known.end(), name) == known.end())
                    throw ConfigError("surfaces: unknown surface '" + name + "'");
                c.surfaces.push_back(name);
            }
        }
        if (j.contains("surface")) {
            const json& s = j.at("surface");
            if (!s.is_object() || !s.contains("preset"))
                throw ConfigError("surface: expected {\"preset\": ..., \"params\": {...}}");
            for (const auto& [k, v] : s.items())
                if (k != "preset" && k != "params") throw ConfigError("surface: unknown key '" + k + "'");
            SurfaceConfig sc;
            sc.preset = s.at("preset").get<std::string>();
            if (s.contains("params")) {
                if (!s.at("params").is_object()) throw ConfigError("surface.params must be an object");
                sc.params = s.at("params");
            }
            preset_chart(sc, 8, 8);  // validates name and parameters
            c.surface = sc;
        }
        if (j.contains("grid")) {
            const json& g = j.at("grid");
            if (!g.is_array() || g.empty()) throw ConfigError("grid: expected a non-empty list of [n_u, n_v]");
            c.grids.clear();
            for (const auto& x : g) c.grids.push_back(parse_grid(x, "grid"));
            for (std::size_t i = 1; i < c.grids.size(); ++i)
                if (c.grids[i].first <= c.grids[i - 1].first || c.grids[i].second <= c.grids[i - 1].second)
                    throw ConfigError("grid: sweep must be strictly increasing in both directions");
        }
        if (j.contains("quadrature_grid")) c.quadrature_grid = parse_grid(j.at("quadrature_grid"), "quadrature_grid");
        if (j.contains("ambient_spinor")) {
            const json& a = j.at("ambient_spinor");
            if (!a.is_array() || a.size() != 2) throw ConfigError("ambient_spinor: expected two complex numbers");
            c.ambient = Spinord(parse_complex(a[0], "ambient_spinor[0]"), parse_complex(a[1], "ambient_spinor[1]"));
            if (!(c.ambient.norm() > 0) || !std::isfinite(c.ambient.norm()))
                throw ConfigError("ambient_spinor must be finite and non-zero");
            c.ambient.normalize();
        }
        if (j.contains("derivative_mode")) {
            const std::string m = j.at("derivative_mode").get<std::string>();
            if (m == "analytic")
                c.mode = DerivativeMode::Analytic;
            else if (m == "finite-difference" || m == "finite_difference")
                c.mode = DerivativeMode::FiniteDifference;
            else
                throw ConfigError("derivative_mode: expected 'analytic' or 'finite-difference'");
        }
        if (j.contains("tolerances")) {
            for (const auto& [k, v] : j.at("tolerances").items()) {
                const double t = v.get<double>();
                if (!(t > 0) || !std::isfinite(t)) throw ConfigError("tolerances." + k + ": must be > 0");
                c.tolerances[k] = t;
            }
        }
        if (j.contains("seed")) {
            if (!j.at("seed").is_number_unsigned()) throw ConfigError("seed: expected a non-negative integer");
            c.seed = j.at("seed").get<std::uint64_t>();
        }
        if (j.contains("random_samples")) {
            c.random_samples = j.at("random_samples").get<int>();
            if (c.random_samples < 1) throw ConfigError("random_samples: must be positive");
        }
        if (j.contains("reports"))
            for (const auto& p : j.at("reports")) {
                fs::path path = p.get<std::string>();
                c.reports.push_back(path.is_relative() ? base_dir / path : path);
            }
        if (j.contains("out")) c.out = j.at("out").get<std::string>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
    switch (command) {
        case Command::Verify:
            if (c.surfaces.empty()) throw ConfigError("verify: config needs a non-empty 'surfaces' list");
            break;
        case Command::Report:
            if (c.reports.empty()) throw ConfigError("report: config needs a non-empty 'reports' list");
            break;
        default:
            if (!c.surface) throw ConfigError(command_name(command) + ": config needs a 'surface' block");
    }
    return c;
}

RunConfig load_config(const fs::path& path, Command command) {
    return parse_config(read_file(path), command, path.parent_path());
}

ChartSpec preset_chart(const SurfaceConfig& s, int nu, int nv) {
    const json& p = s.params;
    const std::string& name = s.preset;
    constexpr double pi = std::numbers::pi;
    try {
        if (name == "plane") {
            only_keys(p, {"half_width"}, name);
            return plane_chart(nu, nv, number(p, "half_width", 1.0));
        }
        if (name == "flat_torus") {
            only_keys(p, {}, name);
            return flat_torus_chart(nu, nv);
        }
        if (name == "sphere") {
            // whole sphere unless a patch is given
            only_keys(p, {"radius", "u0", "u1", "v0", "v1"}, name);
            const double r = number(p, "radius", 1.0);
            if (!(r > 0)) throw ConfigError("sphere: radius must be positive");
            if (p.contains("u0") || p.contains("u1") || p.contains("v0") || p.contains("v1")) {
                const double u0 = number(p, "u0", 0.0), u1 = number(p, "u1", 1.5);
                const double v0 = number(p, "v0", 0.6), v1 = number(p, "v1", 2.2);
                if (!(u1 > u0) || !(v1 > v0) || v0 <= 0 || v1 >= pi)
                    throw ConfigError("sphere: patch needs u0 < u1 and 0 < v0 < v1 < pi");
                return sphere_chart(nu, nv, r, u0, u1, v0, v1, false);
            }
            return full_sphere_chart(nu, nv, r);
        }
        if (name == "capped_sphere") {
            only_keys(p, {"radius", "cap"}, name);
            const double cap = number(p, "cap", 0.1);
            if (!(cap > 0) || cap >= pi / 2) throw ConfigError("capped_sphere: cap must lie in (0, pi/2)");
            return capped_sphere_chart(nu, nv, number(p, "radius", 1.0), cap);
        }
        if (name == "catenoid") {
            only_keys(p, {"v0", "v1"}, name);
            return catenoid_chart(nu, nv, number(p, "v0", -1.0), number(p, "v1", 1.0));
        }
        if (name == "helicoid") {
            only_keys(p, {"u0", "u1", "v0", "v1"}, name);
            return helicoid_chart(nu, nv, number(p, "u0", -1.0), number(p, "u1", 1.0), number(p, "v0", -1.0),
                                  number(p, "v1", 1.0));
        }
        if (name == "enneper") {
            only_keys(p, {"half_width"}, name);
            return enneper_chart(nu, nv, number(p, "half_width", 0.8));
        }
        if (name == "graph") {
            only_keys(p, {"kind", "amplitude", "half_width"}, name);
            GraphKind kind = GraphKind::Bump;
            if (p.contains("kind")) {
                const std::string k = p.at("kind").get<std::string>();
                if (k == "bump")
                    kind = GraphKind::Bump;
                else if (k == "saddle")
                    kind = GraphKind::Saddle;
                else if (k == "wave")
                    kind = GraphKind::Wave;
                else
                    throw ConfigError("graph: kind must be bump, saddle or wave");
            }
            return graph_chart(nu, nv, kind, number(p, "amplitude", 0.5), number(p, "half_width", 1.0));
        }
        if (name == "weierstrass") {
            only_keys(p, {"data", "basepoint"}, name);
            const std::string data = p.contains("data") ? p.at("data").get<std::string>() : "enneper";
            const HoloData d = holo_preset(data);
            const Complex z0 = p.contains("basepoint") ? parse_complex(p.at("basepoint"), "weierstrass.basepoint")
                                                       : Complex(d.re_lo, d.im_lo);
            return weierstrass_immersion(d, nu, nv, z0);
        }
    } catch (const json::exception& e) {
        throw ConfigError("surface.params: " + std::string(e.what()));
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
    throw ConfigError("unknown surface preset '" + name + "'");
}

void write_obj(std::ostream& os, const Field<Vector3d>& points, const Grid& grid, const std::string& title) {
    if (static_cast<int>(points.size()) != grid.size())
        throw InvalidArgument("write_obj: point count does not match grid");
    const int nu = grid.nu(), nv = grid.nv();
    const int cu = grid.u.periodic() ? nu : nu - 1;
    const int cv = grid.v.periodic() ? nv : nv - 1;
    if (!title.empty()) os << "# " << title << "\n";
    os << "# " << nu << "x" << nv << " nodes, u fastest; periodic directions wrap without duplicated seam vertices\n";
    for (const auto& x : points) os << "v " << fmt(x(0)) << " " << fmt(x(1)) << " " << fmt(x(2)) << "\n";
    for (int j = 0; j < cv; ++j)
        for (int i = 0; i < cu; ++i) {
            const int a = grid.index(i, j) + 1;
            const int b = grid.index((i + 1) % nu, j) + 1;
            const int c = grid.index((i + 1) % nu, (j + 1) % nv) + 1;
            const int d = grid.index(i, (j + 1) % nv) + 1;
            os << "f " << a << " " << b << " " << c << "\n";
            os << "f " << a << " " << c << " " << d << "\n";
        }
}

void write_spinor_csv(std::ostream& os, const GeometryField& geom, const SpinorFieldGrid& phi,
                      const SpinorFieldGrid& phi_star) {
    if (phi.gauge != geom.id || phi_star.gauge != geom.id)
        throw GaugeMismatch("write_spinor_csv: spinor fields belong to another geometry");
    os << "node,u,v,phi1_re,phi1_im,phi2_re,phi2_im,star1_re,star1_im,star2_re,star2_im,plus_sq,minus_sq\n";
    for (int k = 0; k < geom.size(); ++k) {
        const Spinord& a = phi.values[k];
        const Spinord& b = phi_star.values[k];
        os << k << "," << fmt(geom.grid.u.coord(geom.grid.iu(k))) << "," << fmt(geom.grid.v.coord(geom.grid.jv(k)));
        for (const auto& z : {a(0), a(1), b(0), b(1)}) os << "," << fmt(z.real()) << "," << fmt(z.imag());
        // in the surface gauge phi+ and phi- are the two components
        os << "," << fmt(std::norm(a(0))) << "," << fmt(std::norm(a(1))) << "\n";
    }
}

int run(const RunConfig& config, std::ostream& log) {
    try {
        switch (config.command) {
            case Command::Generate:
                return do_generate(config, log);
            case Command::Restrict:
                return do_restrict(config, log);
            case Command::Verify:
                return do_verify(config, log);
            case Command::Reconstruct:
                return do_reconstruct(config, log);
            case Command::Report:
                return do_report(config, log);
        }
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        log << "io error: " << e.what() << "\n";
        return 2;
    } catch (const NotExact& e) {
        log << "not exact: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

int cli_main(int argc, char** argv) {
    CLI::App app{"Spinor description of surfaces in R^3: generate, restrict, verify, reconstruct, report"};
    std::string command, config_path, out;
    app.add_option("command", command, "generate | restrict | verify | reconstruct | report")
        ->required()
        ->check(CLI::IsMember({"generate", "restrict", "verify", "reconstruct", "report"}));
    app.add_option("--config", config_path, "JSON run configuration")->required();
    app.add_option("--out", out, "output directory (overrides the config's 'out')");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    RunConfig config;
    try {
        config = load_config(config_path, parse_command(command));
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    }
    if (!out.empty()) config.out = out;
    return run(config, std::cout);
}

}  // namespace spinorsurf
