#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "braidhom/simplicial.hpp"

namespace braidhom {

/** Cap on the total number of simplices an oracle construction may create. */
struct Budget {
    std::size_t max_simplices = 500000;

    static Budget for_coefficients(const Coefficients& coeff) {
        Budget b;
        b.max_simplices = coeff.is_field() ? 5000000 : 500000;
        if (const char* env = std::getenv("BRAIDHOM_MAX_SIMPLICES")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) b.max_simplices = static_cast<std::size_t>(v);
        }
        return b;
    }
};

enum class OracleMode { sp, tp, spbar, tpbar };

inline OracleMode oracle_mode_from_string(const std::string& s) {
    if (s == "sp" || s == "SP") return OracleMode::sp;
    if (s == "tp" || s == "TP") return OracleMode::tp;
    if (s == "spbar" || s == "SPbar") return OracleMode::spbar;
    if (s == "tpbar" || s == "TPbar") return OracleMode::tpbar;
    throw std::invalid_argument("unknown oracle mode '" + s + "'; use sp, tp, spbar or tpbar");
}

inline std::string to_string(OracleMode m) {
    switch (m) {
        case OracleMode::sp: return "sp";
        case OracleMode::tp: return "tp";
        case OracleMode::spbar: return "spbar";
        default: return "tpbar";
    }
}

/** True for a connected closed 1-manifold: every vertex on exactly two edges. */
inline bool is_circle_like(const SimplicialComplex& x) {
    auto simp = x.all_simplices();
    if (simp.size() != 2 || simp[1].empty()) return false;
    std::vector<int> deg(x.vertex_count(), 0);
    std::vector<int> root(x.vertex_count());
    std::iota(root.begin(), root.end(), 0);
    std::function<int(int)> find = [&](int v) {
        while (root[v] != v) v = root[v] = root[root[v]];
        return v;
    };
    for (const auto& e : simp[1]) {
        ++deg[e[0]];
        ++deg[e[1]];
        root[find(e[0])] = find(e[1]);
    }
    for (int v = 0; v < x.vertex_count(); ++v)
        if (deg[v] != 2 || find(v) != find(0)) return false;
    return true;
}

/**
 * Staircase triangulation of the n-fold product X^n with the coordinate
 * permutation action of the symmetric group recorded on vertices.
 *
 * Vertices are n-tuples of base vertices (mixed-radix ids); simplices are the
 * chains in the componentwise order inside each block of n facets.  Along a
 * chain the tuple entries increase componentwise, so no simplex contains two
 * vertices of one orbit and every setwise-invariant simplex is fixed
 * pointwise.  The orbit quotient therefore carries an honest cell structure
 * without any subdivision.
 */
class ProductComplex {
  public:
    ProductComplex(const SimplicialComplex& x, int n, const Budget& budget)
        : base_(x), n_(n), limit_(budget.max_simplices) {
        x.validate();
        if (n < 1) throw hypothesis_error("the product power must be at least 1");
        v_ = x.vertex_count();
        if (v_ == 0) throw hypothesis_error("the base complex has no vertices");

        total_ = 1;
        for (int i = 0; i < n; ++i) {
            total_ *= static_cast<std::size_t>(v_);
            if (total_ > limit_) throw budget_error(total_, limit_);
        }
        simp_.resize(1);
        ids_.resize(1);
        simp_[0].reserve(total_);
        for (std::size_t vid = 0; vid < total_; ++vid) {
            ids_[0][{static_cast<int>(vid)}] = static_cast<int>(vid);
            simp_[0].push_back({static_cast<int>(vid)});
        }

        std::vector<std::vector<int>> blocks = x.facets;
        std::vector<bool> covered(v_, false);
        for (const auto& f : x.facets)
            for (int w : f) covered[w] = true;
        for (int w = 0; w < v_; ++w)
            if (!covered[w]) blocks.push_back({w});

        enumerate_blocks(blocks);

        std::vector<int> idp(n_);
        std::iota(idp.begin(), idp.end(), 0);
        std::vector<int> p = idp;
        do {
            std::vector<int> vmap(total_);
            for (std::size_t vid = 0; vid < total_; ++vid) {
                std::vector<int> t = tuple_of(static_cast<int>(vid));
                std::vector<int> u(n_);
                for (int i = 0; i < n_; ++i) u[i] = t[p[i]];
                vmap[vid] = vid_of(u);
            }
            vertex_maps_.push_back(std::move(vmap));
        } while (std::next_permutation(p.begin(), p.end()));
    }

    const SimplicialComplex& base() const { return base_; }
    int power() const { return n_; }
    std::optional<int> base_basepoint() const { return base_.basepoint; }
    std::size_t total_simplices() const { return total_; }
    std::size_t budget_limit() const { return limit_; }
    int top_dimension() const { return static_cast<int>(simp_.size()) - 1; }
    int simplex_count(int q) const {
        return q < 0 || q > top_dimension() ? 0 : static_cast<int>(simp_[q].size());
    }
    const std::vector<int>& simplex(int q, int i) const { return simp_[q][i]; }
    int simplex_index(int q, const std::vector<int>& sorted_vids) const {
        return ids_[q].at(sorted_vids);
    }
    const std::vector<std::vector<int>>& vertex_maps() const { return vertex_maps_; }

    std::vector<int> tuple_of(int vid) const {
        std::vector<int> t(n_);
        for (int i = n_ - 1; i >= 0; --i) {
            t[i] = vid % v_;
            vid /= v_;
        }
        return t;
    }

    int vid_of(const std::vector<int>& t) const {
        long long vid = 0;
        for (int i = 0; i < n_; ++i) vid = vid * v_ + t[i];
        return static_cast<int>(vid);
    }

    std::vector<int> map_simplex_vids(const std::vector<int>& s, const std::vector<int>& vmap) const {
        std::vector<int> img(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) img[i] = vmap[s[i]];
        return img;
    }

    /** All tuples spanning simplex (q, i). */
    std::vector<std::vector<int>> tuples_of(int q, int i) const {
        std::vector<std::vector<int>> ts;
        for (int vid : simp_[q][i]) ts.push_back(tuple_of(vid));
        return ts;
    }

    SimplicialComplex as_complex() const {
        SimplicialComplex sc;
        for (std::size_t vid = 0; vid < simp_[0].size(); ++vid) {
            std::vector<int> t = tuple_of(static_cast<int>(vid));
            std::string name;
            for (int i = 0; i < n_; ++i)
                name += (i ? "|" : "") + base_.vertex_names[t[i]];
            sc.vertex_names.push_back(name);
        }
        for (int q = 1; q <= top_dimension(); ++q)
            for (const auto& s : simp_[q]) sc.facets.push_back(s);
        if (base_.basepoint)
            sc.basepoint = vid_of(std::vector<int>(n_, *base_.basepoint));
        sc.validate();
        return sc;
    }

  private:
    static bool tuple_leq(const std::vector<int>& a, const std::vector<int>& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] > b[i]) return false;
        return true;
    }

    void enumerate_blocks(const std::vector<std::vector<int>>& blocks) {
        std::vector<int> choice(n_, 0);
        const int m = static_cast<int>(blocks.size());
        if (m == 0) return;
        while (true) {
            enumerate_chains(blocks, choice);
            int i = n_ - 1;
            while (i >= 0 && choice[i] == m - 1) choice[i--] = 0;
            if (i < 0) break;
            ++choice[i];
        }
    }

    void enumerate_chains(const std::vector<std::vector<int>>& blocks,
                          const std::vector<int>& choice) {
        /* grid points of this block, in ascending vertex-id (= lex) order */
        std::vector<std::vector<int>> pts;
        std::vector<int> pick(n_, 0);
        while (true) {
            std::vector<int> t(n_);
            for (int i = 0; i < n_; ++i) t[i] = blocks[choice[i]][pick[i]];
            pts.push_back(std::move(t));
            int i = n_ - 1;
            while (i >= 0 && pick[i] == static_cast<int>(blocks[choice[i]].size()) - 1)
                pick[i--] = 0;
            if (i < 0) break;
            ++pick[i];
        }
        std::sort(pts.begin(), pts.end());

        std::vector<int> path;
        std::function<void(std::size_t)> grow = [&](std::size_t last) {
            if (path.size() >= 2) record(path);
            for (std::size_t nxt = last + 1; nxt < pts.size(); ++nxt)
                if (tuple_leq(pts[last], pts[nxt])) {
                    path.push_back(vid_of(pts[nxt]));
                    grow(nxt);
                    path.pop_back();
                }
        };
        for (std::size_t s = 0; s < pts.size(); ++s) {
            path.assign(1, vid_of(pts[s]));
            grow(s);
        }
    }

    void record(const std::vector<int>& chain) {
        int q = static_cast<int>(chain.size()) - 1;
        if (q >= static_cast<int>(simp_.size())) {
            simp_.resize(q + 1);
            ids_.resize(q + 1);
        }
        auto [it, fresh] = ids_[q].try_emplace(chain, static_cast<int>(simp_[q].size()));
        if (fresh) {
            simp_[q].push_back(chain);
            if (++total_ > limit_) throw budget_error(total_, limit_);
        }
    }

    SimplicialComplex base_;
    int n_;
    std::size_t limit_;
    int v_ = 0;
    std::size_t total_ = 0;
    std::vector<std::vector<std::vector<int>>> simp_;
    std::vector<std::map<std::vector<int>, int>> ids_;
    std::vector<std::vector<int>> vertex_maps_;
};

/**
 * Cellular chain complex of the orbit space X^n / symmetric group.  Cells are
 * simplex orbits, oriented through a chosen representative; identification
 * signs are the sort parities of the permuted vertex lists.
 */
class OrbitComplex {
  public:
    explicit OrbitComplex(const ProductComplex& p) : prod_(&p) {
        int top = p.top_dimension();
        orbit_of_.resize(top + 1);
        sign_of_.resize(top + 1);
        rep_of_.resize(top + 1);
        for (int q = 0; q <= top; ++q) {
            int m = p.simplex_count(q);
            orbit_of_[q].assign(m, -1);
            sign_of_[q].assign(m, 0);
            for (int i = 0; i < m; ++i) {
                if (orbit_of_[q][i] != -1) continue;
                int orb = static_cast<int>(rep_of_[q].size());
                rep_of_[q].push_back(i);
                const auto& s = p.simplex(q, i);
                for (const auto& vmap : p.vertex_maps()) {
                    std::vector<int> img = p.map_simplex_vids(s, vmap);
                    int sgn = sort_parity_is_odd(img) ? -1 : 1;
                    std::vector<int> key = img;
                    std::sort(key.begin(), key.end());
                    int j = p.simplex_index(q, key);
                    if (j == i && img != s)
                        throw hypothesis_error(
                            "a coordinate permutation fixes a product simplex without fixing "
                            "its vertices");
                    if (orbit_of_[q][j] == -1) {
                        orbit_of_[q][j] = orb;
                        sign_of_[q][j] = sgn;
                    } else if (sign_of_[q][j] != sgn) {
                        throw hypothesis_error(
                            "orbit orientation is ambiguous; the action is not regular on "
                            "the product");
                    }
                }
            }
        }
        build_complex();
    }

    const ChainComplex& complex() const { return cc_; }
    int orbit_count(int q) const {
        return q < 0 || q >= static_cast<int>(rep_of_.size()) ? 0
                                                              : static_cast<int>(rep_of_[q].size());
    }

    bool orbit_in_diagonal(int q, int orb) const {
        auto ts = rep_tuples(q, orb);
        int n = prod_->power();
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                bool all = true;
                for (const auto& t : ts)
                    if (t[i] != t[j]) {
                        all = false;
                        break;
                    }
                if (all) return true;
            }
        return false;
    }

    bool orbit_in_ideal(int q, int orb) const {
        int bp = required_basepoint();
        auto ts = rep_tuples(q, orb);
        for (int i = 0; i < prod_->power(); ++i) {
            bool all = true;
            for (const auto& t : ts)
                if (t[i] != bp) {
                    all = false;
                    break;
                }
            if (all) return true;
        }
        return false;
    }

    bool orbit_in_double_ideal(int q, int orb) const {
        int bp = required_basepoint();
        auto ts = rep_tuples(q, orb);
        int hits = 0;
        for (int i = 0; i < prod_->power(); ++i) {
            bool all = true;
            for (const auto& t : ts)
                if (t[i] != bp) {
                    all = false;
                    break;
                }
            if (all && ++hits == 2) return true;
        }
        return false;
    }

    SubcomplexMask ideal_mask() const {
        return mask_by([&](int q, int orb) { return orbit_in_ideal(q, orb); });
    }

    /** Basepoint ideal together with the fat diagonal. */
    SubcomplexMask truncation_mask() const {
        return mask_by(
            [&](int q, int orb) { return orbit_in_ideal(q, orb) || orbit_in_diagonal(q, orb); });
    }

    /**
     * Chain model of the truncated quotient: the orbit space with the fat
     * diagonal glued onto the doubled-basepoint subcomplex, assembled as the
     * double mapping cylinder of the inclusion and the doubling map.  The
     * doubling relation is single-valued on multisets only when n <= 3.
     */
    ChainComplex tp_cone() const {
        int n = prod_->power();
        if (n > 3)
            throw hypothesis_error(
                "the basepoint-doubling relation used for the truncated quotient is "
                "single-valued only for n <= 3");
        required_basepoint();
        int top = static_cast<int>(rep_of_.size()) - 1;
        ChainComplexBuilder b;
        std::vector<std::vector<int>> xid(top + 1), bid(top + 1), aid(top + 1);
        for (int q = 0; q <= top; ++q) {
            xid[q].resize(orbit_count(q), -1);
            bid[q].resize(orbit_count(q), -1);
            aid[q].resize(orbit_count(q), -1);
        }
        for (int q = 0; q <= top; ++q)
            for (int orb = 0; orb < orbit_count(q); ++orb)
                xid[q][orb] = b.add_cell(q, "x:" + cell_name(q, orb));
        for (int q = 0; q <= top; ++q)
            for (int orb = 0; orb < orbit_count(q); ++orb)
                if (orbit_in_double_ideal(q, orb))
                    bid[q][orb] = b.add_cell(q, "b:" + cell_name(q, orb));
        for (int q = 0; q <= top; ++q)
            for (int orb = 0; orb < orbit_count(q); ++orb)
                if (orbit_in_diagonal(q, orb)) aid[q][orb] = b.add_cell(q + 1, "a:" + cell_name(q, orb));

        /* cell ids are per-degree; x cells were added first, then b, then a */
        for (int q = 1; q <= top; ++q)
            for (int orb = 0; orb < orbit_count(q); ++orb) {
                for (const auto& [row, v] : boundary_terms(q, orb))
                    b.add_boundary_term(q, xid[q][orb], xid[q - 1][row], v);
                if (bid[q][orb] != -1)
                    for (const auto& [row, v] : boundary_terms(q, orb)) {
                        if (bid[q - 1][row] == -1)
                            throw hypothesis_error(
                                "doubled-basepoint cells do not form a subcomplex");
                        b.add_boundary_term(q, bid[q][orb], bid[q - 1][row], v);
                    }
            }
        for (int q = 0; q <= top; ++q)
            for (int orb = 0; orb < orbit_count(q); ++orb) {
                if (aid[q][orb] == -1) continue;
                b.add_boundary_term(q + 1, aid[q][orb], xid[q][orb], 1);
                auto [img_orb, img_sign] = doubled_image(q, orb);
                if (img_orb != -1) {
                    if (bid[q][img_orb] == -1)
                        throw hypothesis_error(
                            "the doubling map leaves the doubled-basepoint subcomplex");
                    b.add_boundary_term(q + 1, aid[q][orb], bid[q][img_orb], -Integer(img_sign));
                }
                if (q >= 1)
                    for (const auto& [row, v] : boundary_terms(q, orb)) {
                        if (aid[q - 1][row] == -1)
                            throw hypothesis_error("fat-diagonal cells do not form a subcomplex");
                        b.add_boundary_term(q + 1, aid[q][orb], aid[q - 1][row], -v);
                    }
            }
        return b.build();
    }

  private:
    std::string cell_name(int q, int orb) const {
        return "o" + std::to_string(q) + "." + std::to_string(orb);
    }

    int required_basepoint() const {
        if (!prod_->base_basepoint())
            throw hypothesis_error("this mode requires a basepoint vertex");
        return *prod_->base_basepoint();
    }

    std::vector<std::vector<int>> rep_tuples(int q, int orb) const {
        return prod_->tuples_of(q, rep_of_[q][orb]);
    }

    SubcomplexMask mask_by(const std::function<bool(int, int)>& pred) const {
        SubcomplexMask mask(rep_of_.size());
        for (int q = 0; q < static_cast<int>(rep_of_.size()); ++q) {
            mask[q].resize(orbit_count(q), false);
            for (int orb = 0; orb < orbit_count(q); ++orb) mask[q][orb] = pred(q, orb);
        }
        return mask;
    }

    /** Boundary of the orbit cell (q, orb) as accumulated (face orbit, coefficient) pairs. */
    std::map<int, Integer> boundary_terms(int q, int orb) const {
        std::map<int, Integer> acc;
        const auto& s = prod_->simplex(q, rep_of_[q][orb]);
        for (std::size_t i = 0; i < s.size(); ++i) {
            std::vector<int> face = s;
            face.erase(face.begin() + i);
            int fj = prod_->simplex_index(q - 1, face);
            Integer coeff = (i % 2 == 0 ? 1 : -1) * Integer(sign_of_[q - 1][fj]);
            acc[orbit_of_[q - 1][fj]] += coeff;
        }
        for (auto it = acc.begin(); it != acc.end();)
            it = it->second == 0 ? acc.erase(it) : std::next(it);
        return acc;
    }

    /**
     * Image of a fat-diagonal orbit cell under doubling at its representative's
     * lexicographically least constantly equal coordinate pair; (-1, 0) when
     * the image is degenerate.
     */
    std::pair<int, int> doubled_image(int q, int orb) const {
        int bp = required_basepoint();
        auto ts = rep_tuples(q, orb);
        int n = prod_->power();
        int pi = -1, pj = -1;
        for (int i = 0; i < n && pi == -1; ++i)
            for (int j = i + 1; j < n && pi == -1; ++j) {
                bool all = true;
                for (const auto& t : ts)
                    if (t[i] != t[j]) {
                        all = false;
                        break;
                    }
                if (all) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi == -1) throw hypothesis_error("doubling applied to a cell off the fat diagonal");
        std::vector<int> img;
        for (auto t : ts) {
            t[pi] = bp;
            t[pj] = bp;
            img.push_back(prod_->vid_of(t));
        }
        for (std::size_t i = 1; i < img.size(); ++i) {
            if (img[i] == img[i - 1]) return {-1, 0};
            if (img[i] < img[i - 1])
                throw hypothesis_error("doubling does not preserve the chain order");
        }
        int idx = prod_->simplex_index(q, img);
        return {orbit_of_[q][idx], sign_of_[q][idx]};
    }

    void build_complex() {
        ChainComplexBuilder b;
        for (int q = 0; q < static_cast<int>(rep_of_.size()); ++q)
            for (int orb = 0; orb < orbit_count(q); ++orb) b.add_cell(q, cell_name(q, orb));
        for (int q = 1; q < static_cast<int>(rep_of_.size()); ++q)
            for (int orb = 0; orb < orbit_count(q); ++orb)
                for (const auto& [row, v] : boundary_terms(q, orb))
                    b.add_boundary_term(q, orb, row, v);
        cc_ = b.build();
    }

    const ProductComplex* prod_;
    std::vector<std::vector<int>> orbit_of_;
    std::vector<std::vector<int>> sign_of_;
    std::vector<std::vector<int>> rep_of_;
    ChainComplex cc_;
};

struct OracleResult {
    GradedAbelianGroup homology;
    bool verified = true;
    std::size_t simplices_used = 0;

    json to_json() const {
        return json{{"homology", homology.to_json()},
                    {"verified", verified},
                    {"simplices_used", simplices_used}};
    }
};

/**
 * Homology of SP^n, TP^n, or their basepoint-collapsed quotients of a finite
 * complex, computed directly on the orbit cell structure of the product.
 */
inline OracleResult oracle_homology(const SimplicialComplex& x, OracleMode mode, int n,
                                    const Coefficients& coeff,
                                    std::optional<Budget> budget = std::nullopt) {
    if (mode != OracleMode::sp && !x.basepoint)
        throw hypothesis_error("this mode requires a basepoint vertex");
    if (mode == OracleMode::tp && n > 3)
        throw hypothesis_error(
            "the basepoint-doubling relation used for the truncated quotient is "
            "single-valued only for n <= 3");
    Budget bud = budget ? *budget : Budget::for_coefficients(coeff);
    ProductComplex prod(x, n, bud);
    OrbitComplex orb(prod);
    OracleResult out;
    out.simplices_used = prod.total_simplices();
    switch (mode) {
        case OracleMode::sp:
            out.homology = homology(orb.complex(), coeff);
            break;
        case OracleMode::spbar:
            out.homology = relative_homology(orb.complex(), orb.ideal_mask(), coeff);
            out.homology.add(0, 1);
            break;
        case OracleMode::tpbar:
            out.homology = relative_homology(orb.complex(), orb.truncation_mask(), coeff);
            out.homology.add(0, 1);
            break;
        case OracleMode::tp:
            out.homology = homology(orb.tp_cone(), coeff);
            out.verified = n <= 2 || is_circle_like(x);
            break;
    }
    return out;
}

/**
 * Literal pipeline: the product triangulation carried through two barycentric
 * subdivisions, and the quotient taken as an honest simplicial complex via a
 * vertex identification map.
 */
class SubdividedTower {
  public:
    SubdividedTower(const SimplicialComplex& x, int n, const Budget& budget)
        : prod_(x, n, budget), limit_(budget.max_simplices) {
        running_ = prod_.total_simplices();
        levels_.resize(3);
        levels_[0].simp.resize(prod_.top_dimension() + 1);
        levels_[0].ids.resize(prod_.top_dimension() + 1);
        for (int q = 0; q <= prod_.top_dimension(); ++q)
            for (int i = 0; i < prod_.simplex_count(q); ++i) {
                levels_[0].simp[q].push_back(prod_.simplex(q, i));
                levels_[0].ids[q][prod_.simplex(q, i)] = i;
            }
        finish_level(levels_[0]);
        subdivide(levels_[0], levels_[1]);
        subdivide(levels_[1], levels_[2]);
        build_vertex_maps();
        check_regularity();
    }

    const ProductComplex& product() const { return prod_; }

    std::vector<std::size_t> level_sizes() const {
        return {levels_[0].size(), levels_[1].size(), levels_[2].size()};
    }

    /** The twice-subdivided product as a plain simplicial complex. */
    SimplicialComplex regularized_complex() const {
        const Level& top = levels_[2];
        SimplicialComplex sc;
        for (long long v = 0; v < vertex_total(2); ++v)
            sc.vertex_names.push_back("w" + std::to_string(v));
        for (int q = 0; q <= top.top(); ++q)
            for (const auto& s : top.simp[q]) sc.facets.push_back(s);
        if (prod_.base_basepoint()) sc.basepoint = basepoint_vertex();
        sc.validate();
        return sc;
    }

    /**
     * Quotient of the twice-subdivided product: by the permutation action for
     * SP, additionally by the basepoint-doubling normal form for TP, and with
     * the collapsed subcomplex coned off for the bar modes.
     */
    SimplicialComplex quotient_space(OracleMode mode) const {
        if (mode != OracleMode::sp && !prod_.base_basepoint())
            throw hypothesis_error("this mode requires a basepoint vertex");
        if (mode == OracleMode::tp && prod_.power() > 3)
            throw hypothesis_error(
                "the basepoint-doubling relation used for the truncated quotient is "
                "single-valued only for n <= 3");
        const Level& top = levels_[2];
        long long nv = vertex_total(2);
        std::vector<long long> root(nv);
        std::iota(root.begin(), root.end(), 0);
        std::function<long long(long long)> find = [&](long long v) {
            while (root[v] != v) v = root[v] = root[root[v]];
            return v;
        };
        auto unite = [&](long long a, long long b) { root[find(a)] = find(b); };

        for (const auto& vmap : vmaps_[2])
            for (long long v = 0; v < nv; ++v) unite(v, vmap[v]);
        if (mode == OracleMode::tp)
            for (long long v = 0; v < nv; ++v) unite(v, truncation_normal_form(v));

        std::vector<int> cls(nv, -1);
        int classes = 0;
        for (long long v = 0; v < nv; ++v)
            if (cls[find(v)] == -1) cls[find(v)] = classes++;
        auto class_of = [&](long long v) { return cls[find(v)]; };

        std::set<std::vector<int>> facets;
        std::set<std::vector<int>> collapsed;
        bool bar = mode == OracleMode::spbar || mode == OracleMode::tpbar;
        for (int q = 0; q <= top.top(); ++q)
            for (int i = 0; i < static_cast<int>(top.simp[q].size()); ++i) {
                const auto& s = top.simp[q][i];
                std::vector<int> img;
                for (int v : s) img.push_back(class_of(v));
                std::sort(img.begin(), img.end());
                img.erase(std::unique(img.begin(), img.end()), img.end());
                if (mode != OracleMode::tp && img.size() != s.size())
                    throw hypothesis_error(
                        "the action is not regular after two subdivisions: a simplex "
                        "collapsed in the quotient");
                facets.insert(img);
                if (bar) {
                    long long c0 = carrier(2, q, i);
                    bool in = carrier_in_ideal(c0);
                    if (!in && mode == OracleMode::tpbar) in = carrier_in_diagonal(c0);
                    if (in) collapsed.insert(img);
                }
            }

        SimplicialComplex out;
        for (int c = 0; c < classes; ++c) out.vertex_names.push_back("c" + std::to_string(c));
        for (const auto& f : facets) out.facets.push_back(f);
        if (bar) {
            int apex = classes;
            out.vertex_names.push_back("apex");
            for (const auto& f : collapsed) {
                std::vector<int> coned = f;
                coned.push_back(apex);
                out.facets.push_back(coned);
            }
            out.basepoint = apex;
        } else if (prod_.base_basepoint()) {
            out.basepoint = class_of(basepoint_vertex());
        }
        out.validate();
        return out;
    }

  private:
    struct Level {
        std::vector<std::vector<std::vector<int>>> simp;
        std::vector<std::map<std::vector<int>, int>> ids;
        std::vector<long long> voffset;

        int top() const { return static_cast<int>(simp.size()) - 1; }
        std::size_t size() const {
            std::size_t n = 0;
            for (const auto& d : simp) n += d.size();
            return n;
        }
        long long gid(int q, int i) const { return voffset[q] + i; }
        std::pair<int, int> from_gid(long long g) const {
            int q = 0;
            while (q + 1 <= top() && voffset[q + 1] <= g) ++q;
            return {q, static_cast<int>(g - voffset[q])};
        }
    };

    void finish_level(Level& lv) const {
        lv.voffset.assign(lv.simp.size(), 0);
        for (std::size_t q = 1; q < lv.simp.size(); ++q)
            lv.voffset[q] = lv.voffset[q - 1] + static_cast<long long>(lv.simp[q - 1].size());
    }

    long long vertex_total(int level) const {
        return level == 0 ? static_cast<long long>(prod_.simplex_count(0))
                          : static_cast<long long>(levels_[level - 1].size());
    }

    void subdivide(const Level& in, Level& out) {
        out.simp.assign(in.simp.size(), {});
        out.ids.assign(in.simp.size(), {});
        std::vector<std::vector<std::vector<int>>> chains_by_top(in.size());
        for (int q = 0; q <= in.top(); ++q)
            for (int i = 0; i < static_cast<int>(in.simp[q].size()); ++i) {
                long long g = in.gid(q, i);
                std::vector<std::vector<int>> mine;
                mine.push_back({static_cast<int>(g)});
                const auto& s = in.simp[q][i];
                int m = static_cast<int>(s.size());
                for (unsigned mask = 1; mask + 1 < (1u << m); ++mask) {
                    std::vector<int> face;
                    for (int t = 0; t < m; ++t)
                        if (mask & (1u << t)) face.push_back(s[t]);
                    int fq = static_cast<int>(face.size()) - 1;
                    long long fg = in.gid(fq, in.ids[fq].at(face));
                    for (const auto& c : chains_by_top[fg]) {
                        std::vector<int> ext = c;
                        ext.push_back(static_cast<int>(g));
                        mine.push_back(std::move(ext));
                    }
                }
                for (const auto& c : mine) {
                    int cq = static_cast<int>(c.size()) - 1;
                    out.ids[cq].emplace(c, static_cast<int>(out.simp[cq].size()));
                    out.simp[cq].push_back(c);
                    if (++running_ > limit_) throw budget_error(running_, limit_);
                }
                chains_by_top[g] = std::move(mine);
            }
        finish_level(out);
    }

    void build_vertex_maps() {
        vmaps_.resize(3);
        for (const auto& vm : prod_.vertex_maps())
            vmaps_[0].emplace_back(vm.begin(), vm.end());
        for (int level = 1; level <= 2; ++level) {
            const Level& in = levels_[level - 1];
            for (const auto& prev : vmaps_[level - 1]) {
                std::vector<long long> vmap(vertex_total(level));
                for (int q = 0; q <= in.top(); ++q)
                    for (int i = 0; i < static_cast<int>(in.simp[q].size()); ++i) {
                        std::vector<int> img;
                        for (int v : in.simp[q][i]) img.push_back(static_cast<int>(prev[v]));
                        std::sort(img.begin(), img.end());
                        vmap[in.gid(q, i)] = in.gid(q, in.ids[q].at(img));
                    }
                vmaps_[level].push_back(std::move(vmap));
            }
        }
    }

    void check_regularity() const {
        const Level& top = levels_[2];
        for (const auto& vmap : vmaps_[2])
            for (int q = 0; q <= top.top(); ++q)
                for (const auto& s : top.simp[q]) {
                    std::vector<int> img;
                    for (int v : s) img.push_back(static_cast<int>(vmap[v]));
                    std::vector<int> key = img;
                    std::sort(key.begin(), key.end());
                    if (key == s && img != s)
                        throw hypothesis_error(
                            "the action is not regular after two subdivisions: an invariant "
                            "simplex moves its vertices");
                }
    }

    /** Underlying product simplex of a level-l simplex: follow maximal vertices down. */
    long long carrier(int level, int q, int i) const {
        long long g = levels_[level].simp[q][i].back();
        for (int l = level - 1; l >= 1; --l) {
            auto [lq, li] = levels_[l].from_gid(g);
            g = levels_[l].simp[lq][li].back();
        }
        return g;
    }

    bool carrier_in_ideal(long long gid0) const {
        auto [q, i] = levels_[0].from_gid(gid0);
        int bp = *prod_.base_basepoint();
        auto ts = prod_.tuples_of(q, i);
        for (int c = 0; c < prod_.power(); ++c) {
            bool all = true;
            for (const auto& t : ts)
                if (t[c] != bp) {
                    all = false;
                    break;
                }
            if (all) return true;
        }
        return false;
    }

    bool carrier_in_diagonal(long long gid0) const {
        auto [q, i] = levels_[0].from_gid(gid0);
        auto ts = prod_.tuples_of(q, i);
        for (int a = 0; a < prod_.power(); ++a)
            for (int b = a + 1; b < prod_.power(); ++b) {
                bool all = true;
                for (const auto& t : ts)
                    if (t[a] != t[b]) {
                        all = false;
                        break;
                    }
                if (all) return true;
            }
        return false;
    }

    /** Level-0 simplex image under doubling the coordinate pair (a, b). */
    long long doubled_level0(long long gid0, int a, int b) const {
        auto [q, i] = levels_[0].from_gid(gid0);
        int bp = *prod_.base_basepoint();
        std::vector<int> img;
        for (auto t : prod_.tuples_of(q, i)) {
            t[a] = bp;
            t[b] = bp;
            img.push_back(prod_.vid_of(t));
        }
        std::sort(img.begin(), img.end());
        img.erase(std::unique(img.begin(), img.end()), img.end());
        int nq = static_cast<int>(img.size()) - 1;
        return levels_[0].gid(nq, levels_[0].ids[nq].at(img));
    }

    /** Iterated basepoint doubling of a top-level vertex until no pair remains. */
    long long truncation_normal_form(long long v2) const {
        auto [q, i] = levels_[1].from_gid(v2);
        int bp = *prod_.base_basepoint();
        while (true) {
            long long c0 = levels_[1].simp[q][i].back();
            auto [cq, ci] = levels_[0].from_gid(c0);
            auto ts = prod_.tuples_of(cq, ci);
            int pa = -1, pb = -1;
            for (int a = 0; a < prod_.power() && pa == -1; ++a)
                for (int b = a + 1; b < prod_.power() && pa == -1; ++b) {
                    bool all = true, allbp = true;
                    for (const auto& t : ts) {
                        if (t[a] != t[b]) {
                            all = false;
                            break;
                        }
                        if (t[a] != bp) allbp = false;
                    }
                    if (all && !allbp) {
                        pa = a;
                        pb = b;
                    }
                }
            if (pa == -1) break;
            std::vector<int> img;
            for (int v : levels_[1].simp[q][i])
                img.push_back(static_cast<int>(doubled_level0(v, pa, pb)));
            std::sort(img.begin(), img.end());
            img.erase(std::unique(img.begin(), img.end()), img.end());
            int nq = static_cast<int>(img.size()) - 1;
            i = levels_[1].ids[nq].at(img);
            q = nq;
        }
        return levels_[1].gid(q, i);
    }

    long long basepoint_vertex() const {
        int bp = *prod_.base_basepoint();
        int vid0 = prod_.vid_of(std::vector<int>(prod_.power(), bp));
        int i0 = levels_[0].ids[0].at({vid0});
        long long g1 = levels_[0].gid(0, i0);
        int i1 = levels_[1].ids[0].at({static_cast<int>(g1)});
        return levels_[1].gid(0, i1);
    }

    ProductComplex prod_;
    std::size_t limit_;
    std::size_t running_ = 0;
    std::vector<Level> levels_;
    std::vector<std::vector<std::vector<long long>>> vmaps_;
};

}  // namespace braidhom
