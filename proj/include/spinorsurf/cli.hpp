#pragma once
// Batch front end: JSON run configs, preset charts, OBJ / CSV export and the
// five commands (generate, restrict, verify, reconstruct, report).
//
// Exit codes: 0 all checks passed, 1 some check failed, 2 config or IO error.

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <json.hpp>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spinorsurf/charts.hpp"
#include "spinorsurf/spinalgebra.hpp"
#include "spinorsurf/spinorfield.hpp"

namespace spinorsurf {

enum class Command { Generate, Restrict, Verify, Reconstruct, Report };

Command parse_command(const std::string& name);
std::string command_name(Command c);

struct SurfaceConfig {
    std::string preset;
    nlohmann::json params = nlohmann::json::object();
};

struct RunConfig {
    Command command = Command::Verify;
    std::vector<std::string> surfaces;     // verify
    std::optional<SurfaceConfig> surface;  // generate, restrict, reconstruct
    std::vector<std::pair<int, int>> grids = {{32, 32}, {64, 64}, {128, 128}};
    std::pair<int, int> quadrature_grid = {256, 128};
    Spinord ambient = Spinord(1, 0);
    DerivativeMode mode = DerivativeMode::Analytic;
    std::map<std::string, double> tolerances;
    std::uint64_t seed = 20240607;
    int random_samples = 1000;
    std::vector<std::filesystem::path> reports;  // report; relative paths resolve against the config file
    std::filesystem::path out = ".";
};

// Throws ConfigError on any schema violation. `base_dir` anchors relative report paths.
RunConfig parse_config(const std::string& text, Command command, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path, Command command);

// Preset names: plane, flat_torus, sphere, capped_sphere, catenoid, helicoid,
// enneper, graph, weierstrass. Throws ConfigError for unknown names or params.
ChartSpec preset_chart(const SurfaceConfig& surface, int nu, int nv);

// Wavefront OBJ. Vertices in node order (u fastest), each grid cell split into
// (a, b, c) and (a, c, d) with a = (i, j), b = (i+1, j), c = (i+1, j+1), d = (i, j+1),
// which is counter-clockwise about N = x_u x x_v. Periodic directions wrap
// onto the first row / column, so seam vertices are never duplicated; edges of
// non-periodic directions (including the sphere's polar rows) stay open.
void write_obj(std::ostream& os, const Field<Eigen::Vector3d>& points, const Grid& grid, const std::string& title = "");

// CSV: node, u, v, then the restricted spinor, phi* and the splitting lengths.
void write_spinor_csv(std::ostream& os, const GeometryField& geom, const SpinorFieldGrid& phi,
                      const SpinorFieldGrid& phi_star);

// Executes one configured run; artifacts go to config.out. Never throws.
int run(const RunConfig& config, std::ostream& log);

// argv front end used by the spinorsurf executable.
int cli_main(int argc, char** argv);

}  // namespace spinorsurf
