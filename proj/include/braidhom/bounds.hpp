#pragma once

#include <bit>
#include <optional>
#include <string>
#include <vector>

#include "braidhom/braid.hpp"
#include "braidhom/graded.hpp"

namespace braidhom {

/**
 * One evaluated bound: the formula tag, its value, whether it caps from above
 * or supports from below, the echoed inputs, and an optional measurement with
 * the resulting verdict.
 */
struct BoundReport {
    enum class Kind { upper, lower };
    enum class Verdict { not_measured, consistent, violated };

    std::string formula;
    Kind kind = Kind::upper;
    long long value = 0;
    json inputs = json::object();
    std::optional<long long> measured;
    bool measured_unbounded = false;
    Verdict verdict = Verdict::not_measured;

    /** Attach a measured value capped by the bound (e.g. cohomological dimension). */
    BoundReport& check_upper(long long m) {
        measured = m;
        verdict = m <= value ? Verdict::consistent : Verdict::violated;
        return *this;
    }

    /** Attach a measured connectivity; nullopt means unbounded (all groups vanish). */
    BoundReport& check_lower(std::optional<int> m) {
        if (!m) {
            measured_unbounded = true;
            verdict = Verdict::consistent;
            return *this;
        }
        measured = *m;
        verdict = *m >= value ? Verdict::consistent : Verdict::violated;
        return *this;
    }

    static std::string verdict_name(Verdict v) {
        switch (v) {
            case Verdict::consistent: return "consistent";
            case Verdict::violated: return "violated";
            default: return "not-measured";
        }
    }

    json to_json() const {
        json j{{"formula", formula},
               {"kind", kind == Kind::upper ? "upper" : "lower"},
               {"value", value},
               {"inputs", inputs},
               {"verdict", verdict_name(verdict)}};
        if (measured_unbounded)
            j["measured"] = "unbounded";
        else if (measured)
            j["measured"] = *measured;
        else
            j["measured"] = nullptr;
        return j;
    }
};

/**
 * Upper bound on the cohomological dimension of the braid space of k points:
 * (d-1)k - r, plus one when the manifold is closed with no punctures.
 */
inline BoundReport cohdim_bound(const SpaceDescriptor& space, int k) {
    space.validate();
    if (k < 2) throw hypothesis_error("cohomological dimension bound requires k >= 2");
    BoundReport b;
    b.formula = "cohdim";
    b.kind = BoundReport::Kind::upper;
    b.value = static_cast<long long>(space.d - 1) * k - space.conn_bar +
              (space.has_free_boundary() ? 0 : 1);
    b.inputs = {{"d", space.d},
                {"k", k},
                {"r", space.conn_bar},
                {"closed", !space.has_free_boundary()}};
    return b;
}

/** Lower bound 2n + r - 2 on the connectivity of the reduced symmetric product. */
inline BoundReport sp_connectivity_bound(int n, int r) {
    if (n < 1) throw hypothesis_error("symmetric product connectivity bound needs n >= 1");
    if (r < 1)
        throw hypothesis_error("symmetric product connectivity bound needs connectivity r >= 1");
    BoundReport b;
    b.formula = "sp-connectivity";
    b.kind = BoundReport::Kind::lower;
    b.value = 2LL * n + r - 2;
    b.inputs = {{"n", n}, {"r", r}};
    return b;
}

/**
 * Lower bound on the connectivity of the relative truncated-product pair:
 * k + r - 1 with punctures or boundary, k + r - 2 closed.
 */
inline BoundReport tp_relative_bound(int k, int r, DualityFlavor flavor) {
    if (k < 1) throw hypothesis_error("relative pair bound needs k >= 1");
    if (r < 0) throw hypothesis_error("relative pair bound needs r >= 0");
    BoundReport b;
    b.formula = "tp-relative";
    b.kind = BoundReport::Kind::lower;
    b.value = flavor == DualityFlavor::punctured ? k + r - 1 : k + r - 2;
    b.inputs = {{"k", k},
                {"r", r},
                {"flavor", flavor == DualityFlavor::punctured ? "punctured" : "closed"}};
    return b;
}

/** Lower bound r + k - 1 on the connectivity of the reduced truncated product. */
inline BoundReport nakaoka_bound(int k, int r) {
    if (k < 1) throw hypothesis_error("truncated product connectivity bound needs k >= 1");
    if (r < 0) throw hypothesis_error("truncated product connectivity bound needs r >= 0");
    BoundReport b;
    b.formula = "nakaoka";
    b.kind = BoundReport::Kind::lower;
    b.value = static_cast<long long>(r) + k - 1;
    b.inputs = {{"k", k}, {"r", r}};
    return b;
}

/**
 * Upper bound (k - alpha(k))(d - 1) on the mod-2 cohomological dimension of
 * the braid space of k points in d-space, alpha(k) the binary digit sum.
 */
inline BoundReport arnold_bound(int k, int d) {
    if (k < 1) throw hypothesis_error("binary-digit dimension bound needs k >= 1");
    if (d < 1) throw hypothesis_error("manifold dimension must be >= 1");
    int alpha = std::popcount(static_cast<unsigned int>(k));
    BoundReport b;
    b.formula = "arnold";
    b.kind = BoundReport::Kind::upper;
    b.value = static_cast<long long>(k - alpha) * (d - 1);
    b.inputs = {{"k", k}, {"d", d}, {"alpha", alpha}};
    return b;
}

/** Lower bound 2n - min(w, n) - 1 for reduced symmetric products of two-complexes. */
inline BoundReport conn2_bound(int n, int w) {
    if (n < 1) throw hypothesis_error("two-complex connectivity bound needs n >= 1");
    if (w < 0) throw hypothesis_error("two-complex connectivity bound needs w >= 0");
    BoundReport b;
    b.formula = "conn-two-complex";
    b.kind = BoundReport::Kind::lower;
    b.value = 2LL * n - std::min(w, n) - 1;
    b.inputs = {{"n", n}, {"w", w}};
    return b;
}

enum class StabilityProfile { generic, surface_punctured };

inline StabilityProfile parse_profile(const std::string& s) {
    if (s == "generic") return StabilityProfile::generic;
    if (s == "surface-punctured") return StabilityProfile::surface_punctured;
    throw std::invalid_argument("profile must be 'generic' or 'surface-punctured'");
}

/** Homology stability range s(k) of the point-addition map. */
inline int stability_range(int k, StabilityProfile profile) {
    if (k < 1) throw hypothesis_error("stability range needs k >= 1");
    return profile == StabilityProfile::generic ? k / 2 : k - 1;
}

/** Homological connectivity s(k-1) of the scanning comparison map. */
inline int scanning_connectivity(int k, StabilityProfile profile) {
    if (k < 2) throw hypothesis_error("scanning connectivity needs k >= 2");
    return stability_range(k - 1, profile);
}

/** Outcome of the stability staircase check over a family of tables. */
struct StabilityCheck {
    bool ok = true;
    int k = 0;       // first failing step (tables for k and k+1)
    int degree = 0;  // degree of the first violation
    std::string reason;

    json to_json() const {
        return json{{"ok", ok}, {"k", k}, {"degree", degree}, {"reason", reason}};
    }
};

/**
 * Checks the stability staircase on mod-p dimension tables for k = 1..K:
 * dimensions never drop when a point is added, and are equal up to s(k).
 */
inline StabilityCheck stability_table_check(const std::vector<GradedAbelianGroup>& tables,
                                            StabilityProfile profile) {
    for (const auto& t : tables)
        for (const auto& [q, e] : t.entries())
            if (!e.torsion.empty())
                throw coefficient_error("stability check takes field dimension tables");
    for (std::size_t i = 0; i + 1 < tables.size(); ++i) {
        int k = static_cast<int>(i) + 1;
        int s = stability_range(k, profile);
        int top = 0;
        for (const auto* g : {&tables[i], &tables[i + 1]})
            if (auto t = g->top_degree()) top = std::max(top, *t);
        for (int q = 0; q <= top; ++q) {
            long long lo = tables[i].free_rank(q);
            long long hi = tables[i + 1].free_rank(q);
            if (lo > hi)
                return {false, k, q, "dimension drops when adding a point"};
            if (q <= s && lo != hi)
                return {false, k, q, "dimensions differ inside the stability range"};
        }
    }
    return {};
}

}  // namespace braidhom
