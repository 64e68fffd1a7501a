#pragma once

#include <optional>
#include <string>
#include <vector>

#include "braidhom/graded.hpp"

namespace braidhom {

/**
 * Manifold bookkeeping for braid-space computations: dimension, orientability,
 * closedness, number of punctures, and the connectivity of the quotient of the
 * manifold by its punctures and boundary.
 */
struct SpaceDescriptor {
    int d = 1;
    bool orientable = true;
    bool closed = true;
    int punctures = 0;
    int conn_bar = 0;

    void validate() const {
        if (d < 1) throw hypothesis_error("manifold dimension must be >= 1");
        if (punctures < 0) throw hypothesis_error("puncture count must be >= 0");
        if (conn_bar < 0) throw hypothesis_error("connectivity must be finite and >= 0");
    }

    bool has_free_boundary() const { return punctures > 0 || !closed; }

    json to_json() const {
        return json{{"d", d},
                    {"orientable", orientable},
                    {"closed", closed},
                    {"punctures", punctures},
                    {"conn_bar", conn_bar}};
    }

    static SpaceDescriptor from_json(const json& j) {
        SpaceDescriptor s;
        s.d = j.at("d").get<int>();
        s.orientable = j.value("orientable", true);
        s.closed = j.value("closed", true);
        s.punctures = j.value("punctures", 0);
        s.conn_bar = j.value("conn_bar", 0);
        s.validate();
        return s;
    }
};

/** Number of ordered r-tuples of non-negative integers summing to s. */
inline std::uint64_t compositions(long long r, long long s) {
    if (r < 0 || s < 0) throw hypothesis_error("compositions need non-negative arguments");
    if (r == 0) {
        if (s == 0) return 1;  // the empty composition
        throw hypothesis_error("no compositions of a positive integer into zero parts");
    }
    return binomial_u64(s + r - 1, r - 1);
}

/** Orientability of the braid space of k points, for k >= 2 and d >= 2. */
inline bool braid_orientable(const SpaceDescriptor& space, int k) {
    space.validate();
    if (space.d < 2 || k < 2)
        throw hypothesis_error(
            "braid-space orientability out of lemma scope: needs dimension >= 2 and k >= 2");
    return space.orientable && space.d % 2 == 0;
}

/**
 * Central coefficient policy: mod 2 always computes; integral (or odd-prime)
 * coefficients only when the braid space is orientable, which for k >= 2 means
 * an orientable even-dimensional manifold; twisted integers never compute.
 */
inline void check_coefficient_policy(const SpaceDescriptor& space, int k,
                                     const Coefficients& coeff) {
    space.validate();
    if (coeff == Coefficients::F(2)) return;
    if (coeff.kind == Coefficients::Kind::twisted_integers)
        throw coefficient_error(
            "homology with twisted coefficients not computable; use f2, or z when the braid "
            "space is orientable");
    if (k == 1) {
        if (!space.orientable)
            throw coefficient_error("integral duality for one point needs an orientable manifold");
        return;
    }
    if (space.d < 2 || !space.orientable || space.d % 2 != 0)
        throw coefficient_error(
            "coefficients other than f2 need an orientable even-dimensional manifold (braid "
            "space orientability)");
}

/** Cohomology of a braid space of k points, tagged with its coefficient system. */
struct CohomologyTable {
    int k = 0;
    Coefficients coeff = Coefficients::F(2);
    GradedAbelianGroup groups;

    void validate(int d) const {
        if (k < 0) throw hypothesis_error("point count must be >= 0");
        auto top = groups.top_degree();
        if (top && *top > k * d)
            throw hypothesis_error("table has degrees above k*d, the ambient dimension");
        if (auto bottom = groups.bottom_degree(); bottom && *bottom < 0)
            throw hypothesis_error("cohomology degrees must be >= 0");
    }

    json to_json() const {
        return json{{"k", k}, {"coeff", coeff.name()}, {"groups", groups.to_json()}};
    }

    static CohomologyTable from_json(const json& j) {
        CohomologyTable t;
        t.k = j.at("k").get<int>();
        t.coeff = Coefficients::parse(j.value("coeff", std::string("f2")));
        t.groups = GradedAbelianGroup::from_json(j.at("groups"));
        return t;
    }
};

enum class DualityFlavor { punctured, closed };

inline DualityFlavor parse_flavor(const std::string& s) {
    if (s == "punctured") return DualityFlavor::punctured;
    if (s == "closed") return DualityFlavor::closed;
    throw std::invalid_argument("flavor must be 'punctured' or 'closed'");
}

/**
 * The duality transform: braid-space cohomology from the relative homology of
 * the truncated-product pair, H^i = rel_{kd-i}.  The punctured flavor takes
 * the pair with the previous stage, the closed flavor the pair two stages
 * down; the caller supplies the matching relative table.
 */
inline CohomologyTable dualize(const GradedAbelianGroup& rel, int k, const SpaceDescriptor& space,
                               DualityFlavor flavor, const Coefficients& coeff) {
    if (k < 1) throw hypothesis_error("duality needs k >= 1");
    if (flavor == DualityFlavor::punctured && !space.has_free_boundary())
        throw hypothesis_error("punctured duality needs punctures or boundary");
    if (flavor == DualityFlavor::closed && space.has_free_boundary())
        throw hypothesis_error("closed duality needs a closed manifold without punctures");
    check_coefficient_policy(space, k, coeff);
    const int top = k * space.d;
    if (auto t = rel.top_degree(); t && *t > top)
        throw hypothesis_error("relative table has degrees above k*d");
    if (auto b = rel.bottom_degree(); b && *b < 0)
        throw hypothesis_error("relative table has negative degrees");
    if (coeff.is_field())
        for (const auto& [q, e] : rel.entries())
            if (!e.torsion.empty())
                throw coefficient_error("field-coefficient table must be torsion-free");

    CohomologyTable out;
    out.k = k;
    out.coeff = coeff;
    for (const auto& [q, e] : rel.entries()) out.groups.set(top - q, e.free, e.torsion);
    out.validate(space.d);
    return out;
}

/**
 * Mod-2 splitting of a closed manifold's braid cohomology over the punctured
 * one: H^j(closed, n) = H^j(punctured, n) + H^{j-d}(punctured, n-1).
 */
inline CohomologyTable split_closed(const CohomologyTable& punctured_n,
                                    const CohomologyTable& punctured_n_minus_1, int d) {
    if (d < 1) throw hypothesis_error("manifold dimension must be >= 1");
    Coefficients f2 = Coefficients::F(2);
    if (!(punctured_n.coeff == f2) || !(punctured_n_minus_1.coeff == f2))
        throw coefficient_error(
            "the point-splitting holds with f2 coefficients only; other coefficients rejected");
    if (punctured_n_minus_1.k != punctured_n.k - 1)
        throw hypothesis_error("second table must have one point fewer than the first");
    CohomologyTable out;
    out.k = punctured_n.k;
    out.coeff = f2;
    out.groups = punctured_n.groups.direct_sum(punctured_n_minus_1.groups.shifted(d));
    out.validate(d);
    return out;
}

/**
 * Puncture splitting: the braid cohomology of M minus k points, assembled from
 * the tables of M minus one point with composition multiplicities,
 * H^j = sum over r of H^{j-(n-r)(d-1)}(base_r) repeated p(k-1, n-r) times.
 */
inline CohomologyTable split_punctures(const std::vector<CohomologyTable>& base, int k,
                                       const SpaceDescriptor& space, const Coefficients& coeff) {
    if (k < 1) throw hypothesis_error("puncture splitting needs k >= 1");
    if (base.empty()) throw hypothesis_error("need base tables for r = 0..n");
    space.validate();
    if (!(coeff == Coefficients::F(2))) {
        if (coeff.kind == Coefficients::Kind::twisted_integers)
            throw coefficient_error("homology with twisted coefficients not computable");
        if (!space.orientable || space.d % 2 != 0)
            throw coefficient_error(
                "puncture splitting beyond f2 needs an orientable even-dimensional manifold");
    }
    const int n = static_cast<int>(base.size()) - 1;
    for (int r = 0; r <= n; ++r) {
        if (!(base[r].coeff == coeff))
            throw coefficient_error("base table " + std::to_string(r) +
                                    " does not match the requested coefficients");
        if (base[r].k != r)
            throw hypothesis_error("base table at position " + std::to_string(r) +
                                   " must describe " + std::to_string(r) + " points");
    }

    CohomologyTable out;
    out.k = n;
    out.coeff = coeff;
    for (int r = 0; r <= n; ++r) {
        /* k = 1 adds no punctures: only the r = n term survives */
        std::uint64_t mult = k == 1 ? (r == n ? 1 : 0) : compositions(k - 1, n - r);
        if (mult == 0) continue;
        GradedAbelianGroup shifted = base[r].groups.shifted((n - r) * (space.d - 1));
        for (std::uint64_t i = 0; i < mult; ++i) out.groups = out.groups.direct_sum(shifted);
    }
    out.validate(space.d);
    return out;
}

/**
 * Necessary rank condition for the puncturing long exact sequence: the
 * alternating sum of dimensions around
 * ... -> H_{q-d+1}(B(N,n-1)) -> H_q(B(N,n)) -> H_q(B(M,n)) -> ...
 * must vanish.  Not sufficient for exactness.
 */
inline bool les_consistency(const GradedAbelianGroup& punctured_nm1,
                            const GradedAbelianGroup& punctured_n,
                            const GradedAbelianGroup& closed_n, int d) {
    for (const auto* g : {&punctured_nm1, &punctured_n, &closed_n})
        for (const auto& [q, e] : g->entries())
            if (!e.torsion.empty())
                throw coefficient_error("exactness check takes field dimension tables");
    int top = 0;
    for (const auto* g : {&punctured_nm1, &punctured_n, &closed_n})
        if (auto t = g->top_degree()) top = std::max(top, *t + d);
    long long sum = 0;
    for (int q = 0; q <= top; ++q) {
        long long term = punctured_nm1.free_rank(q - d + 1) - punctured_n.free_rank(q) +
                         closed_n.free_rank(q);
        sum += (q % 2 == 0 ? term : -term);
    }
    return sum == 0;
}

}  // namespace braidhom
