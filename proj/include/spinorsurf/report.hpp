#pragma once
// Machine-readable residual table.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace spinorsurf {

struct Entry {
    std::string check_id;  // "<surface>/<check>"
    std::string anchor;    // the identity being checked, as a formula
    std::string surface;
    std::string grid;  // "128x128" or a sweep "32x32/64x64/128x128"
    double residual = 0;
    std::optional<double> measured_order;
    std::optional<double> min_order;
    double tolerance = 0;
    bool pass = false;
};

struct Report {
    std::vector<Entry> entries;
    std::uint64_t seed = 0;
    std::map<std::string, std::string> conventions;

    // Sorts by check_id; stable, so later duplicates keep their order.
    void finalize();
    bool all_pass() const;
    const Entry* find(const std::string& check_id) const;

    // Deterministic JSON text (fixed key order, no timestamps).
    std::string to_json() const;
};

Report report_from_json(const std::string& text);

// Combined report: union of entries, re-sorted. Conventions from the first input.
Report merge_reports(const std::vector<Report>& reports);

// Conventions every report carries.
std::map<std::string, std::string> default_conventions();

}  // namespace spinorsurf
