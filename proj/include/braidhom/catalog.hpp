#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "braidhom/graded.hpp"

namespace braidhom {

/**
 * One entry of the reference table: a named space or formula, a prose
 * statement, a literature attribution, and, when the fact is small enough to
 * recompute, a machine-checkable payload consumed by the verify harness.
 */
struct CatalogEntry {
    std::string name;
    std::string statement;
    std::string attribution;
    bool checkable = false;
    json payload;

    json to_json() const {
        return json{{"name", name},
                    {"statement", statement},
                    {"attribution", attribution},
                    {"checkable", checkable},
                    {"payload", payload}};
    }

    static CatalogEntry from_json(const json& j) {
        CatalogEntry e;
        e.name = j.at("name").get<std::string>();
        e.statement = j.at("statement").get<std::string>();
        e.attribution = j.at("attribution").get<std::string>();
        e.checkable = j.value("checkable", false);
        e.payload = j.value("payload", json());
        return e;
    }
};

/** The catalog is data, not code: one embedded JSON document. */
inline const char* catalog_text() {
    return R"catalog({
  "schema_version": 1,
  "entries": [
    {
      "name": "B(S^d,2)",
      "statement": "Unordered pairs of distinct points on the d-sphere deformation retract onto the antipodal pairs, an open disc bundle over real projective d-space; mod-2 cohomology has rank one in every degree 0..d.",
      "attribution": "classical; configuration-space foundations in Fadell and Neuwirth 1962",
      "checkable": true,
      "payload": {"f2_dims": {"1": [1, 1], "2": [1, 1, 1]}}
    },
    {
      "name": "B(S^1,n)",
      "statement": "The space of n unordered points on a circle is an open cyclic bundle over the circle and is homotopy equivalent to the circle for every n >= 1; the bundle is trivial exactly when n is odd.",
      "attribution": "Morton 1967",
      "checkable": true,
      "payload": {"f2_dims": [1, 1], "k_min": 2, "k_max": 8}
    },
    {
      "name": "H_1(B(S_g,k)), k>=3",
      "statement": "For a closed orientable surface of genus g >= 1 and k >= 3 points, the first homology of the braid space is Z/2 + Z^2g; the Z/2 is generated by the class of a transposition.",
      "attribution": "Birman 1969",
      "checkable": false,
      "payload": null
    },
    {
      "name": "B(R^{n+1},2)",
      "statement": "Unordered pairs of distinct points in (n+1)-space deformation retract onto antipodal pairs of unit vectors, so the space is homotopy equivalent to real projective n-space.",
      "attribution": "Fadell and Neuwirth 1962",
      "checkable": true,
      "payload": {"n": 1, "f2_dims": [1, 1]}
    },
    {
      "name": "B(R^2,3)",
      "statement": "Identifying three unordered planar points with the monic cubic polynomial having those roots presents the space as the complement of the discriminant, which is the trefoil knot complement in the 3-sphere; mod-2 cohomology has rank one in degrees 0 and 1.",
      "attribution": "Arnold 1970",
      "checkable": true,
      "payload": {"f2_dims": [1, 1]}
    },
    {
      "name": "B(RP^2,2)",
      "statement": "The two-point braid group of the projective plane is the generalized quaternion group of order 16, a finite fundamental group that no surface braid group of the plane or of positive genus can contain.",
      "attribution": "Van Buskirk 1966",
      "checkable": false,
      "payload": null
    },
    {
      "name": "H^*(B(R^2,k); F_2)",
      "statement": "Mod-2 cohomology dimensions of the planar braid spaces, k = 0..8: a basis is given by monomials in generators of degree 2^i - 1 and weight 2^i with total weight at most k.",
      "attribution": "Fuks 1970",
      "checkable": true,
      "payload": {"tables": {
        "0": [1], "1": [1], "2": [1, 1], "3": [1, 1],
        "4": [1, 1, 1, 1], "5": [1, 1, 1, 1],
        "6": [1, 1, 1, 2, 1], "7": [1, 1, 1, 2, 1],
        "8": [1, 1, 1, 2, 2, 1, 1, 1]}}
    },
    {
      "name": "cohdim_2 B(R^d,k) = (k - alpha(k))(d - 1)",
      "statement": "The mod-2 cohomological dimension of the k-point braid space of d-space is (k - alpha(k))(d - 1), where alpha(k) counts the ones in the binary expansion of k.",
      "attribution": "Fuks 1970 for the plane; F. Cohen 1976 in general",
      "checkable": true,
      "payload": {"d": 2, "k_max": 8}
    },
    {
      "name": "SPbar^2(S^k)",
      "statement": "Collapsing the singleton sphere inside the two-fold symmetric product of the k-sphere yields the (k+1)-fold suspension of real projective (k-1)-space; for k = 2 this is the 4-sphere, the quotient of the complex projective plane by its line at infinity.",
      "attribution": "Hatcher, Algebraic Topology, section 4.K",
      "checkable": true,
      "payload": {"k": 2, "homology_z": {"0": {"free": 1, "torsion": []}, "4": {"free": 1, "torsion": []}}}
    },
    {
      "name": "scanning degree offset",
      "statement": "Scanning compares braid spaces with section spaces of a compactified tangent bundle; over even spheres and even-genus surfaces the comparison lands in the degree -1 component of the section space.",
      "attribution": "Segal 1979; McDuff 1975",
      "checkable": false,
      "payload": null
    },
    {
      "name": "vanishing above the point count",
      "statement": "Braid-space cohomology of a surface with punctures or boundary vanishes in degrees k+1 and above; for a closed surface it vanishes above k+1.",
      "attribution": "Arnold 1970 for the plane; Andreotti and Frankel 1959 for open surfaces",
      "checkable": true,
      "payload": {"punctured_top_max": "k", "closed_top_max": "k+1"}
    },
    {
      "name": "Stein vanishing for open surfaces",
      "statement": "The k-point braid space of an open Riemann surface is a Stein manifold of complex dimension k, so its homology vanishes in all degrees above k.",
      "attribution": "Andreotti and Frankel 1959",
      "checkable": true,
      "payload": {"top_at_most": "k"}
    }
  ]
})catalog";
}

inline const json& catalog_document() {
    static const json doc = json::parse(catalog_text());
    return doc;
}

inline std::vector<CatalogEntry> catalog_entries() {
    std::vector<CatalogEntry> out;
    for (const auto& j : catalog_document().at("entries")) out.push_back(CatalogEntry::from_json(j));
    return out;
}

inline CatalogEntry catalog_lookup(const std::string& name) {
    for (const auto& j : catalog_document().at("entries"))
        if (j.at("name").get<std::string>() == name) return CatalogEntry::from_json(j);
    throw std::out_of_range("unknown catalog key '" + name + "'");
}

/** Dimension table for the planar braid space of k points, from the catalog. */
inline GradedAbelianGroup planar_braid_f2(int k) {
    const json tables = catalog_lookup("H^*(B(R^2,k); F_2)").payload.at("tables");
    auto it = tables.find(std::to_string(k));
    if (it == tables.end())
        throw std::out_of_range("no tabulated planar braid table for k = " + std::to_string(k));
    GradedAbelianGroup g;
    int q = 0;
    for (const auto& dim : *it) g.set(q++, dim.get<long long>());
    return g;
}

}  // namespace braidhom
