#pragma once

#include <map>
#include <string>
#include <vector>

#include "braidhom/chain.hpp"
#include "braidhom/graded.hpp"

namespace braidhom {

/**
 * Presentation of a two-dimensional complex: a wedge of w circles with r disks
 * attached along signed words in the circle generators.
 */
struct TwoComplexPresentation {
    int w = 0;
    std::vector<std::vector<std::pair<int, int>>> disks;  // (generator 1..w, +1/-1)

    void validate() const {
        if (w < 0) throw std::invalid_argument("generator count must be >= 0");
        for (const auto& word : disks)
            for (const auto& [gen, sign] : word) {
                if (gen < 1 || gen > w)
                    throw std::invalid_argument("attaching word references generator " +
                                                std::to_string(gen) + " outside 1.." +
                                                std::to_string(w));
                if (sign != 1 && sign != -1)
                    throw std::invalid_argument("attaching letters must carry sign +1 or -1");
            }
    }

    /** Exponent sums of the attaching word of one disk, indexed by generator. */
    std::vector<long long> abelianized(std::size_t disk) const {
        std::vector<long long> a(w, 0);
        for (const auto& [gen, sign] : disks.at(disk)) a[gen - 1] += sign;
        return a;
    }

    /** Closed genus-g surface for q = 0, otherwise the punctured surface (a wedge). */
    static TwoComplexPresentation surface(int genus, int punctures) {
        if (genus < 0 || punctures < 0)
            throw std::invalid_argument("genus and puncture count must be >= 0");
        TwoComplexPresentation x;
        if (punctures > 0) {
            x.w = 2 * genus + punctures - 1;
            return x;
        }
        x.w = 2 * genus;
        std::vector<std::pair<int, int>> word;
        for (int g = 0; g < genus; ++g) {
            int a = 2 * g + 1, b = 2 * g + 2;
            word.insert(word.end(), {{a, 1}, {b, 1}, {a, -1}, {b, -1}});
        }
        x.disks.push_back(std::move(word));
        return x;
    }

    json to_json() const {
        json d = json::array();
        for (const auto& word : disks) {
            json w_ = json::array();
            for (const auto& [gen, sign] : word)
                w_.push_back(json::array({std::string(1, static_cast<char>('a' + gen - 1)), sign}));
            d.push_back(w_);
        }
        return json{{"w", w}, {"disks", d}};
    }

    static TwoComplexPresentation from_json(const json& j) {
        TwoComplexPresentation x;
        x.w = j.at("w").get<int>();
        if (j.contains("disks"))
            for (const auto& word : j["disks"]) {
                std::vector<std::pair<int, int>> letters;
                for (const auto& letter : word) {
                    int gen;
                    if (letter[0].is_string()) {
                        std::string s = letter[0].get<std::string>();
                        if (s.size() != 1 || s[0] < 'a')
                            throw std::invalid_argument("generator names are single letters a..");
                        gen = s[0] - 'a' + 1;
                    } else {
                        gen = letter[0].get<int>();
                    }
                    letters.emplace_back(gen, letter[1].get<int>());
                }
                x.disks.push_back(std::move(letters));
            }
        x.validate();
        return x;
    }
};

namespace detail {

/* One monomial cell: basepoint power, increasing circle subset, disk exponents. */
struct SpCell {
    int v0 = 0;
    std::vector<int> circles;
    std::vector<int> disk_exp;

    int degree() const {
        int s = 0;
        for (int e : disk_exp) s += e;
        return static_cast<int>(circles.size()) + 2 * s;
    }

    std::string name() const {
        std::string out;
        auto append = [&out](const std::string& part) {
            if (!out.empty()) out += "*";
            out += part;
        };
        if (v0 > 0) append(v0 == 1 ? "v0" : "v0^" + std::to_string(v0));
        for (int c : circles) append("e" + std::to_string(c));
        for (std::size_t j = 0; j < disk_exp.size(); ++j) {
            if (disk_exp[j] == 0) continue;
            std::string d = "D" + std::to_string(j + 1);
            if (disk_exp[j] > 1) d += "^" + std::to_string(disk_exp[j]);
            append(d);
        }
        if (out.empty()) out = "1";
        return out;
    }

    bool operator<(const SpCell& o) const {
        return std::tie(v0, circles, disk_exp) < std::tie(o.v0, o.circles, o.disk_exp);
    }
};

inline std::vector<SpCell> enumerate_sp_cells(const TwoComplexPresentation& x, int n,
                                              bool reduced) {
    std::vector<SpCell> cells;
    std::vector<int> subset;
    std::vector<int> exps(x.disks.size(), 0);
    auto disks = [&](auto&& self, std::size_t j, int remaining, int t) -> void {
        if (j == exps.size()) {
            SpCell c;
            c.v0 = remaining;
            c.circles = subset;
            c.disk_exp = exps;
            if (!reduced || c.v0 == 0) cells.push_back(std::move(c));
            return;
        }
        for (int s = 0; s <= remaining; ++s) {
            exps[j] = s;
            self(self, j + 1, remaining - s, t);
        }
        exps[j] = 0;
    };
    auto circles = [&](auto&& self, int next, int remaining) -> void {
        disks(disks, 0, remaining, static_cast<int>(subset.size()));
        for (int i = next; i <= x.w && remaining > 0; ++i) {
            subset.push_back(i);
            self(self, i + 1, remaining - 1);
            subset.pop_back();
        }
    };
    circles(circles, 1, n);
    std::sort(cells.begin(), cells.end());
    return cells;
}

}  // namespace detail

/**
 * Minimal multiplicative cell model of the n-fold symmetric product of a
 * two-complex.  Cells are star-monomials v0^a * e_{i_1} * ... * D_j^{s_j} of
 * total weight n; the boundary is the derivation determined by vanishing on
 * vertices and circles and by sending a disk power to the abelianized
 * attaching chain times the lowered power, with the Koszul sign for moving an
 * emitted circle factor into increasing position.
 */
inline ChainComplex build_sp_model(const TwoComplexPresentation& x, int n, bool reduced = false) {
    x.validate();
    if (n < 0) throw hypothesis_error("symmetric product weight must be >= 0");
    if (reduced && n < 1) throw hypothesis_error("reduced model needs n >= 1");

    auto cells = detail::enumerate_sp_cells(x, n, reduced);
    int top = 0;
    for (const auto& c : cells) top = std::max(top, c.degree());

    std::vector<std::vector<std::string>> names(top + 1);
    std::map<std::string, int> index;
    std::map<std::string, int> cell_degree;
    for (const auto& c : cells) {
        int q = c.degree();
        index[c.name()] = static_cast<int>(names[q].size());
        cell_degree[c.name()] = q;
        names[q].push_back(c.name());
    }

    std::map<int, SparseIntMatrix> bnd;
    for (int q = 1; q <= top; ++q) {
        bnd[q].rows = static_cast<int>(names[q - 1].size());
        bnd[q].cols = static_cast<int>(names[q].size());
    }

    for (const auto& c : cells) {
        int q = c.degree();
        if (q == 0) continue;
        int col = index.at(c.name());
        int t = static_cast<int>(c.circles.size());
        for (std::size_t j = 0; j < c.disk_exp.size(); ++j) {
            if (c.disk_exp[j] == 0) continue;
            std::vector<long long> a = x.abelianized(j);
            for (int i = 1; i <= x.w; ++i) {
                if (a[i - 1] == 0) continue;
                if (std::find(c.circles.begin(), c.circles.end(), i) != c.circles.end())
                    continue;  // e_i * e_i = 0
                detail::SpCell d = c;
                d.disk_exp[j] -= 1;
                int above = 0;  // circle factors of d that e_i must pass
                for (int k : c.circles)
                    if (k > i) ++above;
                d.circles.insert(std::upper_bound(d.circles.begin(), d.circles.end(), i), i);
                /* Koszul: the derivation passes the t circle factors, then the
                   emitted e_i moves left past the higher-indexed ones. */
                long long sign = ((t + above) % 2 == 0) ? 1 : -1;
                bnd[q].add(index.at(d.name()), col, Integer(sign * a[i - 1]));
            }
        }
    }

    return ChainComplex(std::move(names), std::move(bnd));
}

/** Quotient model keeping only basepoint-free cells; computes reduced homology. */
inline ChainComplex reduced_sp_model(const TwoComplexPresentation& x, int n) {
    return build_sp_model(x, n, true);
}

}  // namespace braidhom
