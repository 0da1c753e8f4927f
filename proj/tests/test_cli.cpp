#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "spinorsurf/cli.hpp"
#include "spinorsurf/errors.hpp"
#include "spinorsurf/periods.hpp"
#include "spinorsurf/report.hpp"

using namespace spinorsurf;
using Eigen::Vector3d;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("spinorsurf_test_cli_" + std::to_string(::getpid())) / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

struct Obj {
    std::vector<Vector3d> v;
    std::vector<std::array<int, 3>> f;
};

Obj parse_obj(const std::string& text) {
    Obj o;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "v") {
            Vector3d x;
            ls >> x(0) >> x(1) >> x(2);
            o.v.push_back(x);
        } else if (tag == "f") {
            std::array<int, 3> t;
            ls >> t[0] >> t[1] >> t[2];
            o.f.push_back(t);
        }
    }
    return o;
}

int shell(const std::string& args) {
    const int s = std::system((std::string(SPINORSURF_CLI) + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
}

void check_rejected(const std::string& text, Command c = Command::Verify) {
    CAPTURE(text);
    CHECK_THROWS_AS(parse_config(text, c), ConfigError);
}

}  // namespace

TEST_CASE("config parsing") {
    const RunConfig c = parse_config(R"({"surfaces": ["sphere", "plane"], "grid": [[16, 16], [32, 24]],
        "ambient_spinor": [[3, 0], [0, 4]], "derivative_mode": "finite-difference", "seed": 5,
        "tolerances": {"sphere/dirac_eigen": 2e-3}, "reports": ["a/r.json"], "out": "o"})",
                                     Command::Verify, "/base");
    CHECK(c.surfaces == std::vector<std::string>{"sphere", "plane"});
    CHECK(c.grids.back() == std::pair(32, 24));
    CHECK(std::abs(c.ambient.norm() - 1.0) < 1e-15);
    CHECK(std::abs(c.ambient(1) - std::complex<double>(0, 0.8)) < 1e-15);
    CHECK(c.mode == DerivativeMode::FiniteDifference);
    CHECK(c.seed == 5);
    CHECK(c.tolerances.at("sphere/dirac_eigen") == 2e-3);
    CHECK(c.reports.front() == fs::path("/base/a/r.json"));
    CHECK(c.out == fs::path("o"));

    const RunConfig d = parse_config(R"({"surfaces": ["plane"]})", Command::Verify);
    CHECK(d.grids.size() == 3);
    CHECK(d.seed == 20240607);
    CHECK(d.mode == DerivativeMode::Analytic);
}

TEST_CASE("schema violations") {
    check_rejected(R"({"surfaces": ["plane"], "grid": [[4, 32]]})");
    check_rejected(R"({"surfaces": ["plane"], "grid": [[32, 32], [32, 64]]})");
    check_rejected(R"({"surfaces": ["plane"], "grid": [[32.5, 32]]})");
    check_rejected(R"({"surfaces": ["plane"], "colour": "red"})");
    check_rejected(R"({"surfaces": ["plane"], "tolerances": {"plane/x": 0}})");
    check_rejected(R"({"surfaces": ["plane"], "ambient_spinor": [0, 0]})");
    check_rejected(R"({"surfaces": ["plane"], "derivative_mode": "spectral"})");
    check_rejected(R"({"surfaces": ["plane"], "seed": -1})");
    check_rejected(R"({"surfaces": ["klein_bottle"]})");
    check_rejected(R"({"grid": [[32, 32]]})");
    check_rejected(R"([1, 2])");
    check_rejected(R"({"surfaces": )");
    check_rejected(R"({"grid": [[32, 32]]})", Command::Generate);
    check_rejected(R"({})", Command::Report);

    check_rejected(R"({"surface": {"preset": "sphere", "params": {"radius": 1, "colour": 2}}})", Command::Generate);
    check_rejected(R"({"surface": {"preset": "graph", "params": {"kind": "ridge"}}})", Command::Restrict);
    CHECK_THROWS_AS(preset_chart(SurfaceConfig{"torus_knot"}, 16, 16), ConfigError);
}

TEST_CASE("OBJ export") {
    SUBCASE("2 x 2 grid") {
        const Grid g{{0, 1, 2, Sampling::Endpoints}, {0, 1, 2, Sampling::Endpoints}};
        std::ostringstream os;
        write_obj(os, {Vector3d(0, 0, 0), Vector3d(1, 0, 0), Vector3d(0, 1, 0), Vector3d(1, 1, 0)}, g);
        const Obj o = parse_obj(os.str());
        CHECK(o.v.size() == 4);
        REQUIRE(o.f.size() == 2);
        CHECK(o.f[0] == std::array{1, 2, 4});
        CHECK(o.f[1] == std::array{1, 4, 3});
        CHECK(os.str().find("v 1 1 0\n") != std::string::npos);
    }
    SUBCASE("whole sphere 64 x 32") {
        const GeometryField g = compute_geometry(preset_chart(SurfaceConfig{"sphere"}, 64, 32));
        std::ostringstream os;
        write_obj(os, g.x, g.grid);
        const Obj o = parse_obj(os.str());
        CHECK(o.v.size() == 2048);
        // azimuth wraps, polar rows stay open
        CHECK(o.f.size() == 2 * 64 * 31);
    }
    SUBCASE("faces are counter-clockwise about N") {
        for (const char* name : {"catenoid", "enneper", "sphere"}) {
            const GeometryField g = compute_geometry(preset_chart(SurfaceConfig{name}, 24, 20));
            std::ostringstream os;
            write_obj(os, g.x, g.grid);
            const Obj o = parse_obj(os.str());
            int bad = 0;
            for (const auto& t : o.f) {
                const Vector3d a = o.v[t[0] - 1], b = o.v[t[1] - 1], c = o.v[t[2] - 1];
                if ((b - a).cross(c - a).dot(g.normal[t[0] - 1]) <= 0) ++bad;
            }
            CAPTURE(name);
            CHECK(bad == 0);
        }
    }
    SUBCASE("byte determinism") {
        auto text = [] {
            const GeometryField g = compute_geometry(preset_chart(SurfaceConfig{"helicoid"}, 16, 16));
            std::ostringstream os;
            write_obj(os, g.x, g.grid, "helicoid");
            return os.str();
        };
        CHECK(text() == text());
    }
}

TEST_CASE("spinor CSV") {
    const GeometryField g = compute_geometry(preset_chart(SurfaceConfig{"enneper"}, 10, 12));
    const SpinorFieldGrid phi = restrict_parallel(Spinord(1, 0), g);
    std::ostringstream os;
    write_spinor_csv(os, g, phi, star(phi));
    std::istringstream in(os.str());
    std::string header, line;
    std::getline(in, header);
    CHECK(header == "node,u,v,phi1_re,phi1_im,phi2_re,phi2_im,star1_re,star1_im,star2_re,star2_im,plus_sq,minus_sq");
    int rows = 0;
    while (std::getline(in, line)) {
        CHECK(std::count(line.begin(), line.end(), ',') == 12);
        ++rows;
    }
    CHECK(rows == 120);
    const GeometryField other = compute_geometry(preset_chart(SurfaceConfig{"enneper"}, 10, 12));
    CHECK_THROWS_AS(write_spinor_csv(os, other, phi, star(phi)), GaugeMismatch);
}

TEST_CASE("reconstructed Enneper matches the generated mesh") {
    const fs::path dir = scratch("round_trip");
    RunConfig c = parse_config(R"({"surface": {"preset": "enneper"}, "grid": [[128, 128]]})", Command::Generate);
    c.out = dir;
    std::ostringstream log;
    REQUIRE(run(c, log) == 0);
    c.command = Command::Reconstruct;
    REQUIRE(run(c, log) == 0);
    const Obj gen = parse_obj(slurp(dir / "enneper.obj"));
    const Obj rec = parse_obj(slurp(dir / "enneper_reconstructed.obj"));
    REQUIRE(gen.v.size() == rec.v.size());
    CHECK(gen.f == rec.f);
    const RigidMotion m =
        rigid_align(Field<Vector3d>(rec.v.begin(), rec.v.end()), Field<Vector3d>(gen.v.begin(), gen.v.end()));
    double worst = 0;
    for (std::size_t k = 0; k < gen.v.size(); ++k)
        worst = std::max(worst, (m.rotation * rec.v[k] + m.translation - gen.v[k]).norm());
    CHECK(worst < 1e-3);
    const auto align = nlohmann::json::parse(slurp(dir / "enneper_alignment.json"));
    CHECK(align.at("pass").get<bool>());
    CHECK(align.at("relative_rms").get<double>() < 1e-3);
}

TEST_CASE("reconstruction of a periodic chart exits 1") {
    RunConfig c = parse_config(R"({"surface": {"preset": "catenoid"}, "grid": [[32, 32]]})", Command::Reconstruct);
    c.out = scratch("periodic");
    std::ostringstream log;
    CHECK(run(c, log) == 1);
}

TEST_CASE("IO failures name the path and exit 2") {
    const fs::path dir = scratch("io");
    spit(dir / "blocker", "x");
    RunConfig c = parse_config(R"({"surface": {"preset": "plane"}, "grid": [[8, 8]]})", Command::Generate);
    c.out = dir / "blocker" / "sub";
    std::ostringstream log;
    CHECK(run(c, log) == 2);
    CHECK(log.str().find((dir / "blocker" / "sub").string()) != std::string::npos);

    c = parse_config(R"({"reports": ["missing.json"]})", Command::Report, dir);
    c.out = dir;
    log.str("");
    CHECK(run(c, log) == 2);
    CHECK(log.str().find("missing.json") != std::string::npos);
}

TEST_CASE("report command merges") {
    const fs::path dir = scratch("merge");
    Report a, b;
    Entry e;
    e.check_id = "z/one", e.tolerance = 1, e.pass = true;
    a.entries.push_back(e);
    e.check_id = "a/two";
    b.entries.push_back(e);
    spit(dir / "a.json", a.to_json());
    spit(dir / "b.json", b.to_json());
    spit(dir / "run.json", R"({"reports": ["a.json", "b.json"]})");
    RunConfig c = load_config(dir / "run.json", Command::Report);
    c.out = dir / "out";
    std::ostringstream log;
    REQUIRE(run(c, log) == 0);
    const Report m = report_from_json(slurp(dir / "out" / "report.json"));
    REQUIRE(m.entries.size() == 2);
    CHECK(m.entries[0].check_id == "a/two");
}

TEST_CASE("executable") {
    const fs::path dir = scratch("exe");
    SUBCASE("argument and schema errors exit 2") {
        spit(dir / "small.json", R"({"surfaces": ["plane"], "grid": [[4, 32]]})");
        CHECK(shell("verify --config " + (dir / "small.json").string()) == 2);
        CHECK(shell("verify") == 2);
        CHECK(shell("transmogrify --config " + (dir / "small.json").string()) == 2);
        CHECK(shell("verify --config " + (dir / "absent.json").string()) == 2);
    }
    SUBCASE("plane at 32 x 32") {
        spit(dir / "plane.json", R"({"surfaces": ["plane"], "grid": [[32, 32]]})");
        const int code =
            shell("verify --config " + (dir / "plane.json").string() + " --out " + (dir / "plane").string());
        const Report r = report_from_json(slurp(dir / "plane" / "report.json"));
        REQUIRE(!r.entries.empty());
        for (const auto& e : r.entries) {
            CAPTURE(e.check_id);
            // the stated |grad g|^2 = (|phi+|^2 - |phi-|^2)^2 misses the |phi|^4 term
            if (e.check_id == "plane/grad_g")
                CHECK(e.residual == doctest::Approx(1.0));
            else
                CHECK(e.residual < 1e-10);
        }
        CHECK(code == (r.all_pass() ? 0 : 1));
        CHECK(code == 1);
    }
    SUBCASE("byte-identical reports") {
        spit(dir / "det.json", R"({"surfaces": ["algebra", "plane", "flat_torus"], "grid": [[16, 16], [32, 32]],
            "random_samples": 100, "seed": 99})");
        shell("verify --config " + (dir / "det.json").string() + " --out " + (dir / "r1").string());
        shell("verify --config " + (dir / "det.json").string() + " --out " + (dir / "r2").string());
        const std::string a = slurp(dir / "r1" / "report.json");
        CHECK(!a.empty());
        CHECK(a == slurp(dir / "r2" / "report.json"));
    }
    SUBCASE("generate and restrict write their files") {
        spit(dir / "w.json",
             R"({"surface": {"preset": "weierstrass", "params": {"data": "catenoid"}}, "grid": [[16, 12]]})");
        CHECK(shell("generate --config " + (dir / "w.json").string() + " --out " + dir.string()) == 0);
        CHECK(shell("restrict --config " + (dir / "w.json").string() + " --out " + dir.string()) == 0);
        CHECK(parse_obj(slurp(dir / "weierstrass.obj")).v.size() == 16 * 12);
        CHECK(fs::exists(dir / "weierstrass_spinor.csv"));
    }
}
