#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "braidhom/arith.hpp"

namespace braidhom {

using json = nlohmann::ordered_json;

/** Coefficient system for homology: Z, a prime field F_p, or sign-twisted integers. */
struct Coefficients {
    enum class Kind { integers, prime_field, twisted_integers };

    Kind kind = Kind::integers;
    unsigned p = 0;

    static Coefficients Z() { return {Kind::integers, 0}; }
    static Coefficients F(unsigned p) {
        if (p < 2) throw coefficient_error("field characteristic must be a prime >= 2");
        for (unsigned d = 2; d * d <= p; ++d)
            if (p % d == 0) throw coefficient_error("field characteristic must be prime, got " + std::to_string(p));
        return {Kind::prime_field, p};
    }
    static Coefficients PmZ() { return {Kind::twisted_integers, 0}; }

    bool is_field() const { return kind == Kind::prime_field; }
    bool operator==(const Coefficients& o) const { return kind == o.kind && p == o.p; }

    std::string name() const {
        switch (kind) {
            case Kind::integers: return "z";
            case Kind::prime_field: return "f" + std::to_string(p);
            default: return "pmz";
        }
    }

    /* symbol for a rank-one summand in human-readable tables */
    std::string free_label() const {
        return kind == Kind::prime_field ? "F" + std::to_string(p) : "Z";
    }

    /* accepts "z", "pmz", "f2", "f3", ... */
    static Coefficients parse(const std::string& s) {
        if (s == "z" || s == "Z") return Z();
        if (s == "pmz" || s == "PmZ" || s == "+-z") return PmZ();
        if (s.size() >= 2 && (s[0] == 'f' || s[0] == 'F')) {
            unsigned long p = 0;
            try {
                p = std::stoul(s.substr(1));
            } catch (const std::exception&) {
                throw coefficient_error("cannot parse coefficient system '" + s + "'");
            }
            return F(static_cast<unsigned>(p));
        }
        throw coefficient_error("cannot parse coefficient system '" + s + "'");
    }
};

/**
 * A finitely generated graded abelian group: in each degree a free rank and a
 * list of torsion orders (each > 1, stored in divisibility order).  Over a
 * field the torsion lists are empty and free ranks are dimensions.
 */
class GradedAbelianGroup {
  public:
    struct Entry {
        long long free = 0;
        std::vector<Integer> torsion;
        bool operator==(const Entry& o) const { return free == o.free && torsion == o.torsion; }
    };

    GradedAbelianGroup() = default;

    void set(int degree, long long free, std::vector<Integer> torsion = {}) {
        for (const Integer& t : torsion)
            if (t <= 1) throw std::invalid_argument("torsion orders must be > 1");
        if (free < 0) throw std::invalid_argument("free rank must be >= 0");
        if (free == 0 && torsion.empty())
            entries_.erase(degree);
        else
            entries_[degree] = Entry{free, std::move(torsion)};
    }

    void add(int degree, long long free, std::vector<Integer> torsion = {}) {
        Entry e = at(degree);
        e.free += free;
        e.torsion.insert(e.torsion.end(), torsion.begin(), torsion.end());
        std::sort(e.torsion.begin(), e.torsion.end());
        set(degree, e.free, std::move(e.torsion));
    }

    Entry at(int degree) const {
        auto it = entries_.find(degree);
        return it == entries_.end() ? Entry{} : it->second;
    }

    long long free_rank(int degree) const { return at(degree).free; }
    std::vector<Integer> torsion(int degree) const { return at(degree).torsion; }
    bool is_trivial(int degree) const { return entries_.find(degree) == entries_.end(); }
    bool is_trivial() const { return entries_.empty(); }
    const std::map<int, Entry>& entries() const { return entries_; }

    bool operator==(const GradedAbelianGroup& o) const { return entries_ == o.entries_; }

    /** Largest degree with a nonzero group, or nullopt for the zero group. */
    std::optional<int> top_degree() const {
        if (entries_.empty()) return std::nullopt;
        return entries_.rbegin()->first;
    }

    /** Smallest degree with a nonzero group, or nullopt for the zero group. */
    std::optional<int> bottom_degree() const {
        if (entries_.empty()) return std::nullopt;
        return entries_.begin()->first;
    }

    GradedAbelianGroup shifted(int d) const {
        GradedAbelianGroup g;
        for (const auto& [q, e] : entries_) g.set(q + d, e.free, e.torsion);
        return g;
    }

    GradedAbelianGroup direct_sum(const GradedAbelianGroup& o) const {
        GradedAbelianGroup g = *this;
        for (const auto& [q, e] : o.entries_) g.add(q, e.free, e.torsion);
        return g;
    }

    long long euler_characteristic() const {
        long long chi = 0;
        for (const auto& [q, e] : entries_) chi += (q % 2 == 0 ? e.free : -e.free);
        return chi;
    }

    std::string to_string(const std::string& free_symbol = "Z") const {
        if (entries_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [q, e] : entries_) {
            if (!first) os << "; ";
            first = false;
            os << q << ": ";
            bool inner = false;
            if (e.free == 1) {
                os << free_symbol;
                inner = true;
            } else if (e.free > 1) {
                os << free_symbol << "^" << e.free;
                inner = true;
            }
            for (const Integer& t : e.torsion) {
                if (inner) os << " + ";
                os << "Z/" << t;
                inner = true;
            }
        }
        return os.str();
    }

    json to_json() const {
        json j = json::object();
        for (const auto& [q, e] : entries_) {
            json entry;
            entry["free"] = e.free;
            json tor = json::array();
            for (const Integer& t : e.torsion) tor.push_back(t.str());
            entry["torsion"] = tor;
            j[std::to_string(q)] = entry;
        }
        return j;
    }

    static GradedAbelianGroup from_json(const json& j) {
        GradedAbelianGroup g;
        for (auto it = j.begin(); it != j.end(); ++it) {
            int q = std::stoi(it.key());
            long long free = it.value().value("free", 0LL);
            std::vector<Integer> torsion;
            if (it.value().contains("torsion"))
                for (const auto& t : it.value()["torsion"])
                    torsion.push_back(t.is_string() ? Integer(t.get<std::string>())
                                                    : Integer(t.get<long long>()));
            g.set(q, free, std::move(torsion));
        }
        return g;
    }

  private:
    std::map<int, Entry> entries_;
};

/**
 * Connectivity read off a reduced homology table: the largest c such that the
 * group vanishes in degrees <= c.  nullopt means the whole table is zero, so
 * the measured connectivity is unbounded.
 */
inline std::optional<int> homological_connectivity(const GradedAbelianGroup& reduced) {
    auto b = reduced.bottom_degree();
    if (!b) return std::nullopt;
    return *b - 1;
}

/** Largest degree carrying a nonzero group; -1 for the zero table. */
inline int cohomological_dimension(const GradedAbelianGroup& g) {
    auto t = g.top_degree();
    return t ? *t : -1;
}

/** Reduced version of an unreduced degree-0-pointed table: drop one Z in degree 0. */
inline GradedAbelianGroup reduce_at_basepoint(const GradedAbelianGroup& g) {
    if (g.free_rank(0) < 1)
        throw std::invalid_argument("cannot reduce: no free summand in degree 0");
    GradedAbelianGroup r = g;
    r.set(0, g.free_rank(0) - 1, g.torsion(0));
    return r;
}

/**
 * Degreewise tensor product (Kuenneth without Tor terms).  Valid over a field,
 * or over Z when both factors are torsion-free; otherwise rejected.
 */
inline GradedAbelianGroup graded_tensor(const GradedAbelianGroup& a, const GradedAbelianGroup& b,
                                        const Coefficients& coeff) {
    if (coeff.kind == Coefficients::Kind::twisted_integers)
        throw coefficient_error("homology with twisted coefficients not computable");
    if (!coeff.is_field()) {
        for (const auto* g : {&a, &b})
            for (const auto& [q, e] : g->entries())
                if (!e.torsion.empty())
                    throw coefficient_error(
                        "integral tensor product requires torsion-free factors; use a field");
    }
    GradedAbelianGroup out;
    for (const auto& [qa, ea] : a.entries())
        for (const auto& [qb, eb] : b.entries()) out.add(qa + qb, ea.free * eb.free);
    return out;
}

}  // namespace braidhom
