#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <tuple>
#include <vector>

#include "braidhom/arith.hpp"

namespace braidhom {

/** Sparse integer matrix given by (row, col, value) triples; duplicates accumulate. */
struct SparseIntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::tuple<int, int, Integer>> entries;

    void add(int r, int c, Integer v) {
        if (r < 0 || r >= rows || c < 0 || c >= cols)
            throw std::out_of_range("matrix entry out of range");
        if (v != 0) entries.emplace_back(r, c, std::move(v));
    }

    SparseIntMatrix transposed() const {
        SparseIntMatrix t;
        t.rows = cols;
        t.cols = rows;
        t.entries.reserve(entries.size());
        for (const auto& [r, c, v] : entries) t.entries.emplace_back(c, r, v);
        return t;
    }
};

/** Invariant factors (one per rank, in divisibility order, all positive) and the rank. */
struct SmithResult {
    std::vector<Integer> invariant_factors;
    int rank = 0;
};

namespace detail {

/* Row-major sparse workspace with a column index, for fraction-free elimination. */
class SnfWorkspace {
  public:
    explicit SnfWorkspace(const SparseIntMatrix& m) : rows_(m.rows), col_rows_(m.cols) {
        for (const auto& [r, c, v] : m.entries) {
            Integer& slot = rows_[r][c];
            slot += v;
            if (slot == 0) rows_[r].erase(c);
        }
        for (int r = 0; r < m.rows; ++r)
            for (const auto& [c, v] : rows_[r]) col_rows_[c].insert(r);
    }

    int nrows() const { return static_cast<int>(rows_.size()); }
    int ncols() const { return static_cast<int>(col_rows_.size()); }

    const std::map<int, Integer>& row(int r) const { return rows_[r]; }
    const std::set<int>& col(int c) const { return col_rows_[c]; }

    Integer get(int r, int c) const {
        auto it = rows_[r].find(c);
        return it == rows_[r].end() ? Integer(0) : it->second;
    }

    void put(int r, int c, const Integer& v) {
        auto it = rows_[r].find(c);
        if (v == 0) {
            if (it != rows_[r].end()) {
                rows_[r].erase(it);
                col_rows_[c].erase(r);
            }
        } else {
            if (it == rows_[r].end()) col_rows_[c].insert(r);
            rows_[r][c] = v;
        }
    }

    /* row[dst] -= q * row[src] */
    void row_axpy(int dst, int src, const Integer& q) {
        if (q == 0) return;
        for (const auto& [c, v] : rows_[src]) put(dst, c, get(dst, c) - q * v);
    }

    void clear_row(int r) {
        for (const auto& [c, v] : rows_[r]) col_rows_[c].erase(r);
        rows_[r].clear();
    }

  private:
    std::vector<std::map<int, Integer>> rows_;
    std::vector<std::set<int>> col_rows_;
};

}  // namespace detail

/**
 * Smith normal form of a sparse integer matrix, returning invariant factors
 * and rank only.  Pivoting is deterministic: among active entries the one with
 * minimal Markowitz fill score (nnz_row - 1) * (nnz_col - 1) wins, ties broken
 * by lowest row then lowest column.  The diagonal collected by elimination is
 * normalized afterwards into a divisibility chain by pairwise gcd/lcm.
 */
inline SmithResult smith_normal_form(const SparseIntMatrix& m) {
    detail::SnfWorkspace w(m);
    std::vector<bool> row_done(m.rows, false), col_done(m.cols, false);

    auto score_of = [&](int r, int c) -> std::uint64_t {
        return static_cast<std::uint64_t>(w.row(r).size() - 1) *
               static_cast<std::uint64_t>(w.col(c).size() - 1);
    };

    /* (score, row, col); lazily revalidated on pop */
    using Cand = std::tuple<std::uint64_t, int, int>;
    std::priority_queue<Cand, std::vector<Cand>, std::greater<Cand>> pq;
    for (int r = 0; r < m.rows; ++r)
        for (const auto& [c, v] : w.row(r)) pq.emplace(score_of(r, c), r, c);

    std::vector<Integer> diagonal;

    while (!pq.empty()) {
        auto [score, r, c] = pq.top();
        pq.pop();
        if (row_done[r] || col_done[c] || w.get(r, c) == 0) continue;
        if (score != score_of(r, c)) {
            pq.emplace(score_of(r, c), r, c);
            continue;
        }

        /* Alternate column and row phases until the pivot divides and clears both. */
        while (true) {
            bool moved = false;
            /* column phase: eliminate other entries in column c by row operations */
            while (true) {
                const std::set<int>& col = w.col(c);
                int victim = -1;
                for (int i : col)
                    if (i != r) {
                        victim = i;
                        break;
                    }
                if (victim < 0) break;
                Integer p = w.get(r, c);
                Integer q = w.get(victim, c) / p;
                w.row_axpy(victim, r, q);
                Integer rem = w.get(victim, c);
                if (rem != 0) {
                    /* remainder strictly smaller than |p|; adopt as the new pivot */
                    r = victim;
                    moved = true;
                } else {
                    for (const auto& [cc, vv] : w.row(victim)) pq.emplace(score_of(victim, cc), victim, cc);
                }
            }
            if (moved) continue;
            /* row phase: column c now holds only the pivot, so a column operation
               col_j -= q * col_c touches row r alone */
            bool row_clean = true;
            Integer p = w.get(r, c);
            std::vector<std::pair<int, Integer>> row_entries(w.row(r).begin(), w.row(r).end());
            for (const auto& [j, v] : row_entries) {
                if (j == c) continue;
                Integer q = v / p;
                Integer rem = v - q * p;
                w.put(r, j, rem);
                if (rem != 0) {
                    c = j;
                    row_clean = false;
                    break;
                }
            }
            if (row_clean) break;
        }

        Integer p = w.get(r, c);
        diagonal.push_back(p < 0 ? Integer(-p) : p);
        row_done[r] = true;
        col_done[c] = true;
        w.clear_row(r);
    }

    /* Normalize the diagonal into a divisibility chain: diag(a, b) ~ diag(gcd, lcm).
       Units already divide everything, so only the non-unit part needs work. */
    std::size_t units = 0;
    std::vector<Integer> rest;
    for (Integer& d : diagonal) {
        if (d == 1)
            ++units;
        else
            rest.push_back(std::move(d));
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < rest.size(); ++i)
            for (std::size_t j = i + 1; j < rest.size(); ++j) {
                if (rest[j] % rest[i] == 0) continue;
                Integer g = boost::multiprecision::gcd(rest[i], rest[j]);
                Integer l = rest[i] / g * rest[j];
                rest[i] = g;
                rest[j] = l;
                changed = true;
            }
    }
    std::sort(rest.begin(), rest.end());

    SmithResult res;
    res.invariant_factors.assign(units, Integer(1));
    res.invariant_factors.insert(res.invariant_factors.end(), rest.begin(), rest.end());
    res.rank = static_cast<int>(res.invariant_factors.size());
    return res;
}

/** Rank of a sparse integer matrix reduced mod a prime p. */
inline int rank_mod_p(const SparseIntMatrix& m, unsigned p) {
    if (p < 2) throw coefficient_error("field characteristic must be a prime >= 2");
    const std::int64_t P = p;
    auto norm = [&](std::int64_t v) {
        v %= P;
        return v < 0 ? v + P : v;
    };
    std::vector<std::map<int, std::int64_t>> rows(m.rows);
    std::vector<std::set<int>> cols(m.cols);
    for (const auto& [r, c, v] : m.entries) {
        std::int64_t add = norm(static_cast<std::int64_t>(v % P));
        std::int64_t& slot = rows[r][c];
        slot = norm(slot + add);
        if (slot == 0) rows[r].erase(c);
    }
    for (int r = 0; r < m.rows; ++r)
        for (const auto& [c, v] : rows[r]) cols[c].insert(r);

    auto inv_mod = [&](std::int64_t a) {
        std::int64_t t = 0, newt = 1, rr = P, newr = norm(a);
        while (newr != 0) {
            std::int64_t q = rr / newr;
            std::tie(t, newt) = std::make_pair(newt, t - q * newt);
            std::tie(rr, newr) = std::make_pair(newr, rr - q * newr);
        }
        return norm(t);
    };

    auto score_of = [&](int r, int c) -> std::uint64_t {
        return static_cast<std::uint64_t>(rows[r].size() - 1) *
               static_cast<std::uint64_t>(cols[c].size() - 1);
    };
    using Cand = std::tuple<std::uint64_t, int, int>;
    std::priority_queue<Cand, std::vector<Cand>, std::greater<Cand>> pq;
    for (int r = 0; r < m.rows; ++r)
        for (const auto& [c, v] : rows[r]) pq.emplace(score_of(r, c), r, c);

    std::vector<bool> row_done(m.rows, false), col_done(m.cols, false);
    int rank = 0;

    auto put = [&](int r, int c, std::int64_t v) {
        auto it = rows[r].find(c);
        if (v == 0) {
            if (it != rows[r].end()) {
                rows[r].erase(it);
                cols[c].erase(r);
            }
        } else {
            if (it == rows[r].end()) cols[c].insert(r);
            rows[r][c] = v;
        }
    };

    while (!pq.empty()) {
        auto [score, r, c] = pq.top();
        pq.pop();
        if (row_done[r] || col_done[c] || !rows[r].count(c)) continue;
        if (score != score_of(r, c)) {
            pq.emplace(score_of(r, c), r, c);
            continue;
        }
        std::int64_t pivinv = inv_mod(rows[r][c]);
        std::vector<int> victims(cols[c].begin(), cols[c].end());
        for (int i : victims) {
            if (i == r) continue;
            std::int64_t q = norm(rows[i][c] * pivinv % P);
            for (const auto& [j, v] : rows[r]) put(i, j, norm(rows[i].count(j) ? rows[i][j] - q * v % P : -(q * v % P)));
            for (const auto& [j, v] : rows[i]) pq.emplace(score_of(i, j), i, j);
        }
        for (const auto& [j, v] : rows[r]) cols[j].erase(r);
        rows[r].clear();
        row_done[r] = true;
        col_done[c] = true;
        ++rank;
    }
    return rank;
}

}  // namespace braidhom
