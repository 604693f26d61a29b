#pragma once

#include <json.hpp>

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nilmoore/orbits.hpp"

namespace nilmoore {

/// One functional's results. Absent optionals mean the quantity does not
/// exist for this row (flat orbit, or functional outside the spectrum).
struct FunctionalReport {
    std::string name;
    Vec functional;
    bool in_dual = false;
    bool in_spectrum = false;
    bool full_stabilizer = false;
    Rat mult = 0;
    std::optional<Int> count;
    std::optional<Int> det_a;
    std::optional<Int> pfaffian_abs;
    std::optional<Rat> c_omega;
    std::optional<bool> moore_holds;
    std::optional<bool> moore_inequality;
    std::string note;

    bool operator==(const FunctionalReport&) const = default;
};

struct Report {
    int format_version = 1;
    std::string command;
    std::string problem;
    std::size_t dimension = 0;
    std::size_t step = 0;
    std::vector<FunctionalReport> rows;

    bool operator==(const Report&) const = default;
};

// -- JSON (exact: every rational is a canonical "p/q" string) -----------------

namespace detail {

inline nlohmann::json rat_json(const Rat& r) { return rat_str(r); }
inline nlohmann::json int_json(const Int& i) { return i.str(); }
inline nlohmann::json vec_json(const Vec& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const Rat& c : v) a.push_back(rat_str(c));
    return a;
}
inline Rat rat_from_json(const nlohmann::json& j) { return parse_rat(j.get<std::string>()); }
inline Int int_from_json(const nlohmann::json& j) { return Int(j.get<std::string>()); }
inline Vec vec_from_json(const nlohmann::json& j) {
    Vec v;
    for (const auto& c : j) v.push_back(parse_rat(c.get<std::string>()));
    return v;
}

template <typename T, typename F>
void put_opt(nlohmann::json& j, const char* key, const std::optional<T>& v, F&& f) {
    if (v) j[key] = f(*v);
}

}  // namespace detail

inline nlohmann::json to_json(const FunctionalReport& r) {
    nlohmann::json j{
        {"name", r.name},
        {"functional", detail::vec_json(r.functional)},
        {"inDualLattice", r.in_dual},
        {"inSpectrum", r.in_spectrum},
        {"fullStabilizer", r.full_stabilizer},
        {"mult", detail::rat_json(r.mult)},
    };
    detail::put_opt(j, "count", r.count, detail::int_json);
    detail::put_opt(j, "detA", r.det_a, detail::int_json);
    detail::put_opt(j, "pfaffianAbs", r.pfaffian_abs, detail::int_json);
    detail::put_opt(j, "cOmega", r.c_omega, detail::rat_json);
    if (r.moore_holds) j["mooreHolds"] = *r.moore_holds;
    if (r.moore_inequality) j["mooreInequality"] = *r.moore_inequality;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline FunctionalReport functional_report_from_json(const nlohmann::json& j) {
    FunctionalReport r;
    r.name = j.at("name").get<std::string>();
    r.functional = detail::vec_from_json(j.at("functional"));
    r.in_dual = j.at("inDualLattice").get<bool>();
    r.in_spectrum = j.at("inSpectrum").get<bool>();
    r.full_stabilizer = j.at("fullStabilizer").get<bool>();
    r.mult = detail::rat_from_json(j.at("mult"));
    if (j.contains("count")) r.count = detail::int_from_json(j["count"]);
    if (j.contains("detA")) r.det_a = detail::int_from_json(j["detA"]);
    if (j.contains("pfaffianAbs")) r.pfaffian_abs = detail::int_from_json(j["pfaffianAbs"]);
    if (j.contains("cOmega")) r.c_omega = detail::rat_from_json(j["cOmega"]);
    if (j.contains("mooreHolds")) r.moore_holds = j["mooreHolds"].get<bool>();
    if (j.contains("mooreInequality")) r.moore_inequality = j["mooreInequality"].get<bool>();
    if (j.contains("note")) r.note = j["note"].get<std::string>();
    return r;
}

inline nlohmann::json to_json(const Report& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows) rows.push_back(to_json(row));
    return nlohmann::json{
        {"formatVersion", r.format_version}, {"command", r.command},  {"problem", r.problem},
        {"dimension", r.dimension},          {"step", r.step},        {"functionals", rows},
    };
}

inline Report report_from_json(const nlohmann::json& j) {
    Report r;
    r.format_version = j.at("formatVersion").get<int>();
    r.command = j.at("command").get<std::string>();
    r.problem = j.at("problem").get<std::string>();
    r.dimension = j.at("dimension").get<std::size_t>();
    r.step = j.at("step").get<std::size_t>();
    for (const auto& row : j.at("functionals")) r.rows.push_back(functional_report_from_json(row));
    return r;
}

// -- counterexample report -----------------------------------------------------

struct CounterexampleReport {
    int format_version = 1;
    Int count;
    Rat mult;
    Rat mult_squared;
    bool moore_holds = false;
    bool moore_inequality = true;
    Int det_a;
    Int pfaffian_abs;
    std::vector<Vec> representatives;
    std::vector<Rat> class_weights;
    std::size_t action_checks = 0;

    bool operator==(const CounterexampleReport&) const = default;
};

inline CounterexampleReport summarize(const FiliformCounterexample& c) {
    CounterexampleReport r;
    r.count = c.classes.count;
    r.mult = c.verdict.mult;
    r.mult_squared = c.verdict.mult_squared;
    r.moore_holds = c.verdict.holds;
    r.moore_inequality = c.verdict.inequality_holds;
    r.det_a = c.det_a;
    r.pfaffian_abs = c.pfaffian_a;
    for (const auto& p : c.classes.representatives) r.representatives.push_back(p.coords);
    r.class_weights = c.class_weights;
    r.action_checks = c.action_checks;
    return r;
}

inline nlohmann::json to_json(const CounterexampleReport& r) {
    nlohmann::json reps = nlohmann::json::array();
    for (const Vec& v : r.representatives) reps.push_back(detail::vec_json(v));
    nlohmann::json weights = nlohmann::json::array();
    for (const Rat& w : r.class_weights) weights.push_back(rat_str(w));
    return nlohmann::json{
        {"formatVersion", r.format_version},
        {"count", detail::int_json(r.count)},
        {"mult", detail::rat_json(r.mult)},
        {"multSquared", detail::rat_json(r.mult_squared)},
        {"mooreHolds", r.moore_holds},
        {"mooreInequality", r.moore_inequality},
        {"detA", detail::int_json(r.det_a)},
        {"pfaffianAbs", detail::int_json(r.pfaffian_abs)},
        {"representatives", reps},
        {"classWeights", weights},
        {"actionChecks", r.action_checks},
    };
}

inline CounterexampleReport counterexample_from_json(const nlohmann::json& j) {
    CounterexampleReport r;
    r.format_version = j.at("formatVersion").get<int>();
    r.count = detail::int_from_json(j.at("count"));
    r.mult = detail::rat_from_json(j.at("mult"));
    r.mult_squared = detail::rat_from_json(j.at("multSquared"));
    r.moore_holds = j.at("mooreHolds").get<bool>();
    r.moore_inequality = j.at("mooreInequality").get<bool>();
    r.det_a = detail::int_from_json(j.at("detA"));
    r.pfaffian_abs = detail::int_from_json(j.at("pfaffianAbs"));
    for (const auto& p : j.at("representatives")) r.representatives.push_back(detail::vec_from_json(p));
    for (const auto& w : j.at("classWeights")) r.class_weights.push_back(parse_rat(w.get<std::string>()));
    r.action_checks = j.at("actionChecks").get<std::size_t>();
    return r;
}

// -- plain-text table ----------------------------------------------------------

inline std::string render_table(const Report& r) {
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"functional", "coordinates", "mult", "count", "mult^2", "moore", "note"});
    for (const auto& row : r.rows) {
        std::string verdict = row.moore_holds ? (*row.moore_holds ? "holds" : "FAILS") : "-";
        cells.push_back({row.name, vec_str(row.functional), rat_str(row.mult),
                         row.count ? row.count->str() : "-", rat_str(row.mult * row.mult), verdict, row.note});
    }
    std::vector<std::size_t> width(cells[0].size(), 0);
    for (const auto& line : cells)
        for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
    std::ostringstream out;
    out << "# " << r.command << " on " << r.problem << " (dimension " << r.dimension << ", step " << r.step << ")\n";
    for (const auto& line : cells) {
        for (std::size_t c = 0; c < line.size(); ++c) {
            out << line[c];
            if (c + 1 < line.size()) out << std::string(width[c] - line[c].size() + 2, ' ');
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace nilmoore
