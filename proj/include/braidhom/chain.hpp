#pragma once

#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "braidhom/graded.hpp"
#include "braidhom/smith.hpp"

namespace braidhom {

/**
 * A finite chain complex of free abelian groups with named basis cells in
 * degrees 0..top.  Construction checks that every boundary lands one degree
 * down and that consecutive boundaries compose to zero.
 */
class ChainComplex {
  public:
    ChainComplex() = default;

    /** cells[q] lists basis names in degree q; boundaries[q] maps degree q to q-1. */
    ChainComplex(std::vector<std::vector<std::string>> cells,
                 std::map<int, SparseIntMatrix> boundaries)
        : cells_(std::move(cells)) {
        boundaries_.resize(cells_.size());
        for (std::size_t q = 0; q < cells_.size(); ++q) {
            auto it = boundaries.find(static_cast<int>(q));
            SparseIntMatrix m;
            m.rows = q == 0 ? 0 : static_cast<int>(cells_[q - 1].size());
            m.cols = static_cast<int>(cells_[q].size());
            if (it != boundaries.end()) {
                if (it->second.rows != m.rows || it->second.cols != m.cols)
                    throw std::invalid_argument("boundary matrix has wrong shape in degree " +
                                                std::to_string(q));
                m = it->second;
            }
            boundaries_[q] = std::move(m);
        }
        check_square_zero();
    }

    int top_degree() const { return static_cast<int>(cells_.size()) - 1; }
    long long cell_count(int q) const {
        return q < 0 || q > top_degree() ? 0 : static_cast<long long>(cells_[q].size());
    }
    long long total_cells() const {
        long long n = 0;
        for (const auto& c : cells_) n += static_cast<long long>(c.size());
        return n;
    }
    const std::vector<std::string>& cell_names(int q) const { return cells_[q]; }

    /** Boundary from degree q; the zero 0 x n_0 matrix for q = 0. */
    const SparseIntMatrix& boundary(int q) const {
        if (q < 0 || q > top_degree()) throw std::out_of_range("no boundary in degree " + std::to_string(q));
        return boundaries_[q];
    }

    long long euler_characteristic() const {
        long long chi = 0;
        for (int q = 0; q <= top_degree(); ++q) chi += (q % 2 == 0 ? 1 : -1) * cell_count(q);
        return chi;
    }

    json to_json() const {
        json cells = json::object();
        for (int q = 0; q <= top_degree(); ++q) cells[std::to_string(q)] = cells_[q];
        json bnd = json::object();
        for (int q = 1; q <= top_degree(); ++q) {
            json triples = json::array();
            for (const auto& [r, c, v] : boundaries_[q].entries)
                triples.push_back(json::array({r, c, v.str()}));
            bnd[std::to_string(q)] = triples;
        }
        return json{{"cells", cells}, {"boundaries", bnd}};
    }

    static ChainComplex from_json(const json& j) {
        std::map<int, std::vector<std::string>> by_degree;
        int top = -1;
        for (auto it = j.at("cells").begin(); it != j.at("cells").end(); ++it) {
            int q = std::stoi(it.key());
            by_degree[q] = it.value().get<std::vector<std::string>>();
            top = std::max(top, q);
        }
        std::vector<std::vector<std::string>> cells(top + 1);
        for (auto& [q, names] : by_degree) cells[q] = std::move(names);
        std::map<int, SparseIntMatrix> boundaries;
        if (j.contains("boundaries"))
            for (auto it = j.at("boundaries").begin(); it != j.at("boundaries").end(); ++it) {
                int q = std::stoi(it.key());
                SparseIntMatrix m;
                m.rows = q == 0 || q > top ? 0 : static_cast<int>(cells[q - 1].size());
                m.cols = q > top ? 0 : static_cast<int>(cells[q].size());
                for (const auto& t : it.value()) {
                    Integer v = t[2].is_string() ? Integer(t[2].get<std::string>())
                                                 : Integer(t[2].get<long long>());
                    m.add(t[0].get<int>(), t[1].get<int>(), v);
                }
                boundaries[q] = std::move(m);
            }
        return ChainComplex(std::move(cells), std::move(boundaries));
    }

  private:
    void check_square_zero() const {
        for (int q = 2; q <= top_degree(); ++q) {
            /* accumulate boundary(q-1) * boundary(q) sparsely */
            std::vector<std::vector<std::pair<int, Integer>>> lower(cell_count(q - 1));
            for (const auto& [r, c, v] : boundaries_[q - 1].entries) lower[c].emplace_back(r, v);
            std::map<std::pair<int, int>, Integer> prod;
            for (const auto& [mid, col, v] : boundaries_[q].entries)
                for (const auto& [r, w] : lower[mid]) prod[{r, col}] += v * w;
            for (const auto& [rc, v] : prod)
                if (v != 0)
                    throw std::invalid_argument("boundary does not square to zero in degree " +
                                                std::to_string(q));
        }
    }

    std::vector<std::vector<std::string>> cells_;
    std::vector<SparseIntMatrix> boundaries_;
};

/** Incremental builder used by the cell-model and oracle constructions. */
class ChainComplexBuilder {
  public:
    int add_cell(int degree, const std::string& name) {
        if (degree < 0) throw std::invalid_argument("cell degree must be >= 0");
        if (degree >= static_cast<int>(cells_.size())) cells_.resize(degree + 1);
        cells_[degree].push_back(name);
        return static_cast<int>(cells_[degree].size()) - 1;
    }

    void add_boundary_term(int degree, int col, int row, const Integer& coeff) {
        if (coeff != 0) terms_[degree].emplace_back(row, col, coeff);
    }

    ChainComplex build() {
        std::map<int, SparseIntMatrix> boundaries;
        for (auto& [q, triples] : terms_) {
            SparseIntMatrix m;
            m.rows = q == 0 || q > static_cast<int>(cells_.size()) - 1
                         ? 0
                         : static_cast<int>(cells_[q - 1].size());
            m.cols = q > static_cast<int>(cells_.size()) - 1 ? 0
                                                             : static_cast<int>(cells_[q].size());
            for (auto& [r, c, v] : triples) m.add(r, c, v);
            boundaries[q] = std::move(m);
        }
        return ChainComplex(std::move(cells_), std::move(boundaries));
    }

  private:
    std::vector<std::vector<std::string>> cells_;
    std::map<int, std::vector<std::tuple<int, int, Integer>>> terms_;
};

/** Homology of a chain complex with the given coefficients. */
inline GradedAbelianGroup homology(const ChainComplex& c, const Coefficients& coeff) {
    if (coeff.kind == Coefficients::Kind::twisted_integers)
        throw coefficient_error("homology with twisted coefficients not computable");
    GradedAbelianGroup h;
    int top = c.top_degree();
    if (coeff.is_field()) {
        std::vector<int> rank(top + 2, 0);
        for (int q = 1; q <= top; ++q) rank[q] = rank_mod_p(c.boundary(q), coeff.p);
        for (int q = 0; q <= top; ++q) h.set(q, c.cell_count(q) - rank[q] - rank[q + 1]);
        return h;
    }
    std::vector<SmithResult> snf(top + 2);
    for (int q = 1; q <= top; ++q) snf[q] = smith_normal_form(c.boundary(q));
    for (int q = 0; q <= top; ++q) {
        long long free = c.cell_count(q) - snf[q].rank - snf[q + 1].rank;
        std::vector<Integer> torsion;
        for (const Integer& f : snf[q + 1].invariant_factors)
            if (f > 1) torsion.push_back(f);
        h.set(q, free, std::move(torsion));
    }
    return h;
}

/**
 * Subcomplex membership given per degree as index masks.  Throws if the
 * selection is not closed under the boundary.
 */
using SubcomplexMask = std::vector<std::vector<bool>>;

inline SubcomplexMask subcomplex_by_name(const ChainComplex& c,
                                         const std::function<bool(int, const std::string&)>& pred) {
    SubcomplexMask mask(c.top_degree() + 1);
    for (int q = 0; q <= c.top_degree(); ++q) {
        mask[q].resize(c.cell_count(q), false);
        for (long long i = 0; i < c.cell_count(q); ++i)
            mask[q][i] = pred(q, c.cell_names(q)[i]);
    }
    return mask;
}

/** Quotient complex C/A for a subcomplex mask A; used for relative homology. */
inline ChainComplex quotient_complex(const ChainComplex& c, const SubcomplexMask& mask) {
    if (static_cast<int>(mask.size()) != c.top_degree() + 1)
        throw std::invalid_argument("subcomplex mask has wrong number of degrees");
    for (int q = 0; q <= c.top_degree(); ++q)
        if (static_cast<long long>(mask[q].size()) != c.cell_count(q))
            throw std::invalid_argument("subcomplex mask has wrong size in degree " + std::to_string(q));
    /* closure check: the boundary of a selected cell may only hit selected cells */
    for (int q = 1; q <= c.top_degree(); ++q)
        for (const auto& [r, col, v] : c.boundary(q).entries)
            if (mask[q][col] && !mask[q - 1][r])
                throw hypothesis_error("not a subcomplex: boundary of a selected cell leaves the selection");

    std::vector<std::vector<std::string>> cells(c.top_degree() + 1);
    std::vector<std::vector<int>> reindex(c.top_degree() + 1);
    for (int q = 0; q <= c.top_degree(); ++q) {
        reindex[q].assign(c.cell_count(q), -1);
        for (long long i = 0; i < c.cell_count(q); ++i)
            if (!mask[q][i]) {
                reindex[q][i] = static_cast<int>(cells[q].size());
                cells[q].push_back(c.cell_names(q)[i]);
            }
    }
    std::map<int, SparseIntMatrix> boundaries;
    for (int q = 1; q <= c.top_degree(); ++q) {
        SparseIntMatrix m;
        m.rows = static_cast<int>(cells[q - 1].size());
        m.cols = static_cast<int>(cells[q].size());
        for (const auto& [r, col, v] : c.boundary(q).entries)
            if (reindex[q][col] >= 0 && reindex[q - 1][r] >= 0)
                m.add(reindex[q - 1][r], reindex[q][col], v);
        boundaries[q] = std::move(m);
    }
    return ChainComplex(std::move(cells), std::move(boundaries));
}

/** Relative homology H(C, A) for a subcomplex mask A. */
inline GradedAbelianGroup relative_homology(const ChainComplex& c, const SubcomplexMask& mask,
                                            const Coefficients& coeff) {
    return homology(quotient_complex(c, mask), coeff);
}

inline GradedAbelianGroup relative_homology(const ChainComplex& c,
                                            const std::function<bool(int, const std::string&)>& pred,
                                            const Coefficients& coeff) {
    return relative_homology(c, subcomplex_by_name(c, pred), coeff);
}

}  // namespace braidhom
