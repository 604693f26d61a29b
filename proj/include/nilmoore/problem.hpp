#pragma once

#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nilmoore/lattice_subgroup.hpp"

namespace nilmoore {

/// A parsed problem file: one algebra, one lattice, a list of functionals and
/// optional Gamma-orbit class representatives per functional. See the grammar
/// in the README; the format is line-based key/value with 1-based indices.
struct ProblemFile {
    std::string source;
    std::size_t dimension = 0;
    std::vector<std::string> names;
    std::vector<BracketTerm> brackets;
    RatMatrix lattice;  // columns = Z-basis of log(Gamma)
    std::vector<std::pair<std::string, DualElement>> functionals;
    std::map<std::string, std::vector<DualElement>> orbit_classes;

    const DualElement* find_functional(const std::string& name) const {
        for (const auto& [n, l] : functionals)
            if (n == name) return &l;
        return nullptr;
    }
};

inline ProblemFile parse_problem(std::istream& in, const std::string& source) {
    ProblemFile pf;
    pf.source = source;
    std::vector<Vec> lattice_cols;
    bool saw_dimension = false;
    int lineno = 0;
    std::string line;

    auto fail = [&](const std::string& msg) -> ParseError { return ParseError(source, lineno, msg); };
    auto need_dimension = [&]() {
        if (!saw_dimension) throw fail("'dimension' must come first");
    };
    auto parse_coords = [&](std::istringstream& ss, const std::string& what) {
        Vec v;
        std::string tok;
        while (ss >> tok) v.push_back([&] {
            try {
                return parse_rat(tok);
            } catch (const Error&) {
                throw fail("bad rational '" + tok + "' in " + what);
            }
        }());
        if (v.size() != pf.dimension)
            throw fail(what + " needs " + std::to_string(pf.dimension) + " rational coordinates, got " +
                       std::to_string(v.size()));
        return v;
    };
    auto parse_index = [&](const std::string& tok) {
        try {
            std::size_t pos = 0;
            long v = std::stol(tok, &pos);
            if (pos != tok.size() || v < 1 || static_cast<std::size_t>(v) > pf.dimension)
                throw fail("index '" + tok + "' out of range 1.." + std::to_string(pf.dimension));
            return static_cast<std::size_t>(v - 1);
        } catch (const std::logic_error&) {
            throw fail("bad index '" + tok + "'");
        }
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string key;
        if (!(ss >> key)) continue;

        if (key == "format") {
            int v = 0;
            if (!(ss >> v) || v != 1) throw fail("unsupported format version (expected 1)");
        } else if (key == "dimension") {
            long n = 0;
            if (!(ss >> n) || n < 1) throw fail("dimension must be a positive integer");
            if (saw_dimension) throw fail("duplicate 'dimension'");
            pf.dimension = static_cast<std::size_t>(n);
            saw_dimension = true;
        } else if (key == "names") {
            need_dimension();
            std::string name;
            while (ss >> name) pf.names.push_back(name);
            if (pf.names.size() != pf.dimension) throw fail("expected one name per basis vector");
        } else if (key == "bracket") {
            need_dimension();
            std::string ti, tj, tk, tc;
            if (!(ss >> ti >> tj >> tk >> tc)) throw fail("bracket needs: i j k p/q  ([X_i,X_j] += (p/q) X_k)");
            std::string extra;
            if (ss >> extra) throw fail("trailing tokens after bracket");
            std::size_t i = parse_index(ti), j = parse_index(tj), k = parse_index(tk);
            Rat c;
            try {
                c = parse_rat(tc);
            } catch (const Error&) {
                throw fail("bad rational '" + tc + "' in bracket");
            }
            if (i == j) throw fail("bracket needs i != j");
            if (i > j) {
                std::swap(i, j);
                c = -c;
            }
            pf.brackets.push_back({i, j, k, c});
        } else if (key == "lattice-column") {
            need_dimension();
            if (lattice_cols.size() == pf.dimension) throw fail("too many lattice columns");
            lattice_cols.push_back(parse_coords(ss, "lattice-column"));
        } else if (key == "functional") {
            need_dimension();
            std::string name;
            if (!(ss >> name)) throw fail("functional needs a name");
            if (pf.find_functional(name)) throw fail("duplicate functional '" + name + "'");
            pf.functionals.emplace_back(name, DualElement{parse_coords(ss, "functional " + name)});
        } else if (key == "orbit-class") {
            need_dimension();
            std::string name;
            if (!(ss >> name)) throw fail("orbit-class needs a functional name");
            pf.orbit_classes[name].push_back(DualElement{parse_coords(ss, "orbit-class " + name)});
        } else {
            throw fail("unknown key '" + key + "'");
        }
    }

    ++lineno;
    if (!saw_dimension) throw fail("missing 'dimension'");
    if (lattice_cols.size() != pf.dimension)
        throw fail("expected " + std::to_string(pf.dimension) + " lattice columns, got " +
                   std::to_string(lattice_cols.size()));
    for (const auto& [name, classes] : pf.orbit_classes)
        if (!pf.find_functional(name)) throw fail("orbit-class refers to unknown functional '" + name + "'");
    pf.lattice = RatMatrix::from_cols(std::vector<std::vector<Rat>>(lattice_cols.begin(), lattice_cols.end()));
    return pf;
}

/// Validated algebra from the parsed constants.
inline LieAlgebra build_algebra(const ProblemFile& pf) {
    return LieAlgebra::validate(pf.dimension, pf.names, pf.brackets);
}

/// Certified lattice subgroup from the parsed basis.
inline LatticeSubgroup build_lattice_subgroup(const LieAlgebra& g, const ProblemFile& pf,
                                              const ClosureCheckOptions& opts = {}) {
    return verify_lattice_subgroup(g, ZLattice(pf.dimension, pf.lattice), opts);
}

}  // namespace nilmoore
