#include "spinorsurf/report.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "spinorsurf/errors.hpp"

namespace spinorsurf {

using json = nlohmann::ordered_json;

namespace {

json number_or_null(std::optional<double> x) {
    if (!x || !std::isfinite(*x)) return nullptr;
    return *x;
}

json number(double x) {
    if (!std::isfinite(x)) return nullptr;
    return x;
}

}  // namespace

void Report::finalize() {
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& a, const Entry& b) { return a.check_id < b.check_id; });
}

bool Report::all_pass() const {
    return std::all_of(entries.begin(), entries.end(), [](const Entry& e) { return e.pass; });
}

const Entry* Report::find(const std::string& check_id) const {
    for (const auto& e : entries)
        if (e.check_id == check_id) return &e;
    return nullptr;
}

std::string Report::to_json() const {
    json j;
    j["seed"] = seed;
    json conv = json::object();
    for (const auto& [k, v] : conventions) conv[k] = v;
    j["conventions"] = conv;
    json arr = json::array();
    for (const auto& e : entries) {
        json o;
        o["check_id"] = e.check_id;
        o["paper_anchor"] = e.anchor;
        o["surface"] = e.surface;
        o["grid"] = e.grid;
        o["residual"] = number(e.residual);
        o["measured_order"] = number_or_null(e.measured_order);
        o["min_order"] = number_or_null(e.min_order);
        o["tolerance"] = e.tolerance;
        o["pass"] = e.pass;
        arr.push_back(std::move(o));
    }
    j["entries"] = std::move(arr);
    j["all_pass"] = all_pass();
    return j.dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
    Report r;
    try {
        const json j = json::parse(text);
        r.seed = j.value("seed", std::uint64_t{0});
        if (j.contains("conventions"))
            for (const auto& [k, v] : j["conventions"].items()) r.conventions[k] = v.get<std::string>();
        for (const auto& o : j.at("entries")) {
            Entry e;
            e.check_id = o.at("check_id").get<std::string>();
            e.anchor = o.value("paper_anchor", "");
            e.surface = o.value("surface", "");
            e.grid = o.value("grid", "");
            e.residual = o.at("residual").is_null() ? std::nan("") : o.at("residual").get<double>();
            if (o.contains("measured_order") && !o["measured_order"].is_null())
                e.measured_order = o["measured_order"].get<double>();
            if (o.contains("min_order") && !o["min_order"].is_null()) e.min_order = o["min_order"].get<double>();
            e.tolerance = o.at("tolerance").get<double>();
            e.pass = o.at("pass").get<bool>();
            r.entries.push_back(std::move(e));
        }
    } catch (const json::exception& ex) {
        throw ConfigError(std::string("malformed report: ") + ex.what());
    }
    return r;
}

Report merge_reports(const std::vector<Report>& reports) {
    Report out;
    if (!reports.empty()) out.seed = reports.front().seed, out.conventions = reports.front().conventions;
    for (const auto& r : reports) out.entries.insert(out.entries.end(), r.entries.begin(), r.entries.end());
    out.finalize();
    return out;
}

std::map<std::string, std::string> default_conventions() {
    return {
        {"representation", "E_j = -i sigma_j (E1 E2 = E3), hermitian product linear in the first slot"},
        {"alpha", "alpha(c1, c2) = (-conj c2, conj c1)"},
        {"orientation", "N = x_u x x_v / |x_u x x_v|, II(X) = d_X N, H = tr(II)/2, G = det(II)"},
        {"laplacian", "positive: Delta f = -div grad f, so D^2 = Delta + G/2"},
        {"splitting", "S+- = {i N . phi = +-phi}, phi* = phi+ - i phi-"},
        {"second_form_sign", "2E = -II for phi* of a restricted parallel spinor"},
        {"ambient_spinor", "normalized to |Phi| = 1"},
    };
}

}  // namespace spinorsurf
