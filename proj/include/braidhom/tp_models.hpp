#pragma once

#include <string>
#include <vector>

#include "braidhom/chain.hpp"
#include "braidhom/graded.hpp"

namespace braidhom {

/**
 * Cell complex of the n-truncated symmetric product of a circle: one cell per
 * degree 0..n with boundary alternating 0, 2, so the homology is that of real
 * projective n-space.  The k-skeleton is the k-truncated product.
 */
inline ChainComplex tp_circle_complex(int n) {
    if (n < 0) throw hypothesis_error("truncated product stage must be >= 0");
    std::vector<std::vector<std::string>> cells(n + 1);
    std::map<int, SparseIntMatrix> bnd;
    for (int q = 0; q <= n; ++q) cells[q] = {"sigma" + std::to_string(q)};
    for (int q = 1; q <= n; ++q) {
        SparseIntMatrix m;
        m.rows = 1;
        m.cols = 1;
        if (q % 2 == 0) m.add(0, 0, 2);
        bnd[q] = m;
    }
    return ChainComplex(std::move(cells), std::move(bnd));
}

/** Subcomplex mask selecting the k-skeleton cells of tp_circle_complex. */
inline SubcomplexMask tp_circle_skeleton(const ChainComplex& c, int k) {
    SubcomplexMask mask(c.top_degree() + 1);
    for (int q = 0; q <= c.top_degree(); ++q) mask[q].assign(c.cell_count(q), q <= k);
    return mask;
}

/**
 * Reduced homology tables of the quotient stages of one wedge summand:
 * stages[s] = reduced homology of the s-th stage quotient, s = 0..n, with the
 * stage-0 convention of a two-point space (rank 1 in degree 0).
 */
struct ReducedTpTable {
    std::string summand;
    std::vector<GradedAbelianGroup> stages;

    void validate() const {
        if (stages.empty()) throw std::invalid_argument("stage table is empty");
        GradedAbelianGroup s0;
        s0.set(0, 1);
        if (!(stages[0] == s0))
            throw std::invalid_argument("stage 0 must be rank 1 in degree 0 (two-point space)");
    }

    json to_json() const {
        json tables = json::object();
        for (std::size_t s = 0; s < stages.size(); ++s)
            tables[std::to_string(s)] = stages[s].to_json();
        return json{{"summand", summand}, {"tables", tables}};
    }

    static ReducedTpTable from_json(const json& j) {
        ReducedTpTable t;
        t.summand = j.value("summand", std::string("unnamed"));
        std::map<int, GradedAbelianGroup> by_stage;
        int top = -1;
        for (auto it = j.at("tables").begin(); it != j.at("tables").end(); ++it) {
            int s = std::stoi(it.key());
            by_stage[s] = GradedAbelianGroup::from_json(it.value());
            top = std::max(top, s);
        }
        t.stages.resize(top + 1);
        for (auto& [s, g] : by_stage) t.stages[s] = std::move(g);
        t.validate();
        return t;
    }
};

/** Stage tables for a circle summand: stage s is a sphere of dimension s. */
inline ReducedTpTable circle_tp_table(int n) {
    ReducedTpTable t;
    t.summand = "circle";
    for (int s = 0; s <= n; ++s) {
        GradedAbelianGroup g;
        g.set(s, 1);
        t.stages.push_back(g);
    }
    return t;
}

/** Stage tables for a point summand: contractible stages above 0. */
inline ReducedTpTable point_tp_table(int n) {
    ReducedTpTable t;
    t.summand = "point";
    GradedAbelianGroup s0;
    s0.set(0, 1);
    t.stages.push_back(s0);
    for (int s = 1; s <= n; ++s) t.stages.emplace_back();
    return t;
}

/**
 * Reduced homology of the n-th truncated-product stage of a wedge: the direct
 * sum over compositions (s_1, ..., s_m) of n of the tensor product of the
 * summand stage tables.  Compositions are enumerated in lexicographic order.
 */
inline GradedAbelianGroup reduced_tp_wedge(const std::vector<ReducedTpTable>& summands, int n,
                                           const Coefficients& coeff) {
    if (n < 0) throw hypothesis_error("stage must be >= 0");
    if (summands.empty()) throw std::invalid_argument("wedge needs at least one summand");
    for (const auto& t : summands) {
        t.validate();
        if (static_cast<int>(t.stages.size()) <= n)
            throw std::invalid_argument("summand '" + t.summand + "' is missing stage tables up to " +
                                        std::to_string(n));
        if (!coeff.is_field())
            for (const auto& g : t.stages)
                for (const auto& [q, e] : g.entries())
                    if (!e.torsion.empty())
                        throw coefficient_error(
                            "integral wedge splitting requires torsion-free stage tables; use a field");
    }

    GradedAbelianGroup out;
    std::vector<int> comp(summands.size(), 0);
    /* lexicographic walk over weak compositions of n */
    auto rec = [&](auto&& self, std::size_t i, int remaining) -> void {
        if (i + 1 == comp.size()) {
            comp[i] = remaining;
            GradedAbelianGroup term;
            term.set(0, 1);
            for (std::size_t j = 0; j < comp.size(); ++j)
                term = graded_tensor(term, summands[j].stages[comp[j]], coeff);
            out = out.direct_sum(term);
            return;
        }
        for (int s = 0; s <= remaining; ++s) {
            comp[i] = s;
            self(self, i + 1, remaining - s);
        }
    };
    rec(rec, 0, n);
    return out;
}

/** Outcome of a degreewise dimension comparison; degree = first mismatch. */
struct SplitCheck {
    bool ok = true;
    int degree = 0;
    long long lhs = 0;
    long long rhs = 0;
};

/**
 * Checks the stage-splitting of truncated products on mod-2 dimensions:
 * dim H_q(stage n) = dim H_q(stage n-1) + dim (reduced stage-n quotient) in
 * every degree.  The first two tables are unreduced, the last reduced.
 */
inline SplitCheck lm_split_check(const GradedAbelianGroup& full, const GradedAbelianGroup& previous,
                                 const GradedAbelianGroup& reduced) {
    for (const auto* g : {&full, &previous, &reduced})
        for (const auto& [q, e] : g->entries())
            if (!e.torsion.empty())
                throw coefficient_error("splitting check takes mod-2 dimension tables, found torsion");
    int top = 0;
    for (const auto* g : {&full, &previous, &reduced})
        if (auto t = g->top_degree()) top = std::max(top, *t);
    for (int q = 0; q <= top; ++q) {
        long long lhs = full.free_rank(q);
        long long rhs = previous.free_rank(q) + reduced.free_rank(q);
        if (lhs != rhs) return {false, q, lhs, rhs};
    }
    return {};
}

/**
 * Connectivity of the first page of the stage spectral sequence for a
 * two-complex with w one-cells: the minimum of the case list
 * { i + k - min(w, i) - 1 : 1 <= i <= k-1 }, 2k - min(w, k) - 1, and k - 1.
 */
inline int bcm_e1_connectivity(int k, int w) {
    if (k < 1) throw hypothesis_error("page connectivity needs k >= 1");
    if (w < 0) throw hypothesis_error("page connectivity needs w >= 0");
    int best = k - 1;
    best = std::min(best, 2 * k - std::min(w, k) - 1);
    for (int i = 1; i <= k - 1; ++i) best = std::min(best, i + k - std::min(w, i) - 1);
    return best;
}

}  // namespace braidhom
