#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "braidhom/chain.hpp"

namespace braidhom {

/**
 * Finite abstract simplicial complex: labeled vertices and generating facets
 * (not required to be maximal); the simplex set is their downward closure.
 */
struct SimplicialComplex {
    std::vector<std::string> vertex_names;
    std::vector<std::vector<int>> facets;
    std::optional<int> basepoint;

    int vertex_count() const { return static_cast<int>(vertex_names.size()); }

    void validate() const {
        for (const auto& f : facets) {
            if (f.empty()) throw std::invalid_argument("empty facet");
            for (std::size_t i = 0; i < f.size(); ++i) {
                if (f[i] < 0 || f[i] >= vertex_count())
                    throw std::invalid_argument("facet vertex out of range");
                if (i > 0 && f[i] <= f[i - 1])
                    throw std::invalid_argument("facet vertices must be sorted and distinct");
            }
        }
        if (basepoint && (*basepoint < 0 || *basepoint >= vertex_count()))
            throw std::invalid_argument("basepoint out of range");
    }

    int dimension() const {
        int d = -1;
        for (const auto& f : facets) d = std::max(d, static_cast<int>(f.size()) - 1);
        return d;
    }

    /** Every vertex as a singleton generator, covering isolated vertices too. */
    std::vector<std::vector<int>> generators() const {
        std::vector<std::vector<int>> gen = facets;
        for (int v = 0; v < vertex_count(); ++v) gen.push_back({v});
        return gen;
    }

    /** The full simplex list, per dimension, each dimension sorted. */
    std::vector<std::vector<std::vector<int>>> all_simplices() const {
        validate();
        std::vector<std::set<std::vector<int>>> by_dim(std::max(dimension(), 0) + 1);
        for (const auto& f : generators()) {
            /* walk nonempty subsets */
            int m = static_cast<int>(f.size());
            for (unsigned mask = 1; mask < (1u << m); ++mask) {
                std::vector<int> s;
                for (int i = 0; i < m; ++i)
                    if (mask & (1u << i)) s.push_back(f[i]);
                by_dim[s.size() - 1].insert(std::move(s));
            }
        }
        std::vector<std::vector<std::vector<int>>> out(by_dim.size());
        for (std::size_t q = 0; q < by_dim.size(); ++q)
            out[q].assign(by_dim[q].begin(), by_dim[q].end());
        return out;
    }

    /** Simplicial chain complex with the ascending-vertex orientation. */
    ChainComplex chain_complex() const {
        auto simp = all_simplices();
        ChainComplexBuilder b;
        std::vector<std::map<std::vector<int>, int>> ids(simp.size());
        for (std::size_t q = 0; q < simp.size(); ++q)
            for (const auto& s : simp[q]) {
                std::string name;
                for (int v : s) name += (name.empty() ? "" : ".") + std::to_string(v);
                ids[q][s] = b.add_cell(static_cast<int>(q), name);
            }
        for (std::size_t q = 1; q < simp.size(); ++q)
            for (const auto& s : simp[q]) {
                int col = ids[q].at(s);
                for (std::size_t i = 0; i < s.size(); ++i) {
                    std::vector<int> face = s;
                    face.erase(face.begin() + i);
                    b.add_boundary_term(static_cast<int>(q), col, ids[q - 1].at(face),
                                        i % 2 == 0 ? 1 : -1);
                }
            }
        return b.build();
    }

    json to_json() const {
        json j{{"vertices", vertex_names}, {"facets", facets}};
        if (basepoint) j["basepoint"] = *basepoint;
        return j;
    }

    static SimplicialComplex from_json(const json& j) {
        SimplicialComplex sc;
        sc.facets = j.at("facets").get<std::vector<std::vector<int>>>();
        for (auto& f : sc.facets) std::sort(f.begin(), f.end());
        if (j.contains("vertices") && j["vertices"].is_array())
            sc.vertex_names = j["vertices"].get<std::vector<std::string>>();
        else {
            int n = 0;
            for (const auto& f : sc.facets)
                for (int v : f) n = std::max(n, v + 1);
            for (int v = 0; v < n; ++v) sc.vertex_names.push_back("v" + std::to_string(v));
        }
        if (j.contains("basepoint")) sc.basepoint = j["basepoint"].get<int>();
        sc.validate();
        return sc;
    }
};

inline GradedAbelianGroup simplicial_homology(const SimplicialComplex& sc,
                                              const Coefficients& coeff) {
    return homology(sc.chain_complex(), coeff);
}

/* --- small built-in library ------------------------------------------- */

inline SimplicialComplex sc_point() {
    SimplicialComplex sc;
    sc.vertex_names = {"p"};
    sc.facets = {{0}};
    sc.basepoint = 0;
    return sc;
}

inline SimplicialComplex sc_interval() {
    SimplicialComplex sc;
    sc.vertex_names = {"a", "b"};
    sc.facets = {{0, 1}};
    sc.basepoint = 0;
    return sc;
}

/** Cycle on m >= 3 vertices. */
inline SimplicialComplex sc_circle(int m = 3) {
    if (m < 3) throw std::invalid_argument("a triangulated circle needs at least 3 vertices");
    SimplicialComplex sc;
    for (int v = 0; v < m; ++v) sc.vertex_names.push_back("v" + std::to_string(v));
    for (int v = 0; v + 1 < m; ++v) sc.facets.push_back({v, v + 1});
    sc.facets.push_back({0, m - 1});
    sc.basepoint = 0;
    return sc;
}

/** Boundary of the 3-simplex, a 2-sphere. */
inline SimplicialComplex sc_sphere() {
    SimplicialComplex sc;
    sc.vertex_names = {"a", "b", "c", "d"};
    sc.facets = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    sc.basepoint = 0;
    return sc;
}

/** Wedge of w triangle circles joined at vertex 0. */
inline SimplicialComplex sc_wedge_of_circles(int w) {
    if (w < 1) throw std::invalid_argument("wedge needs at least one circle");
    SimplicialComplex sc;
    sc.vertex_names = {"o"};
    for (int j = 0; j < w; ++j) {
        int a = sc.vertex_count();
        sc.vertex_names.push_back("a" + std::to_string(j));
        sc.vertex_names.push_back("b" + std::to_string(j));
        sc.facets.push_back({0, a});
        sc.facets.push_back({a, a + 1});
        sc.facets.push_back({0, a + 1});
    }
    sc.basepoint = 0;
    return sc;
}

inline SimplicialComplex sc_figure_eight() { return sc_wedge_of_circles(2); }

/** Seven-vertex triangulated torus. */
inline SimplicialComplex sc_torus() {
    SimplicialComplex sc;
    for (int v = 0; v < 7; ++v) sc.vertex_names.push_back("v" + std::to_string(v));
    for (int i = 0; i < 7; ++i) {
        std::vector<int> f1 = {i, (i + 1) % 7, (i + 3) % 7};
        std::vector<int> f2 = {i, (i + 2) % 7, (i + 3) % 7};
        std::sort(f1.begin(), f1.end());
        std::sort(f2.begin(), f2.end());
        sc.facets.push_back(f1);
        sc.facets.push_back(f2);
    }
    sc.basepoint = 0;
    return sc;
}

/** Builtin lookup used by the command line and the verify harness. */
inline SimplicialComplex builtin_space(const std::string& name) {
    if (name == "point") return sc_point();
    if (name == "interval") return sc_interval();
    if (name == "circle") return sc_circle(3);
    if (name == "circle4") return sc_circle(4);
    if (name == "sphere") return sc_sphere();
    if (name == "torus") return sc_torus();
    if (name == "figure-eight") return sc_figure_eight();
    if (name.rfind("wedge-", 0) == 0) {
        int w = std::stoi(name.substr(6));
        return sc_wedge_of_circles(w);
    }
    throw std::invalid_argument(
        "unknown space '" + name +
        "'; builtins: point, interval, circle, circle4, sphere, torus, figure-eight, wedge-<w>");
}

}  // namespace braidhom
