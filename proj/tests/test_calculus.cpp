#include <catch2/catch_amalgamated.hpp>

#include "braidhom/bounds.hpp"
#include "braidhom/braid.hpp"
#include "test_helpers.hpp"

using namespace braidhom;
using braidhom::testing::ranks;
using Catch::Matchers::ContainsSubstring;

namespace {

SpaceDescriptor closed_surface(int conn = 0) {
    return SpaceDescriptor{2, true, true, 0, conn};
}

SpaceDescriptor punctured_plane_like(int d, int conn) {
    return SpaceDescriptor{d, true, true, 1, conn};
}

CohomologyTable table(int k, const Coefficients& coeff, GradedAbelianGroup g) {
    return CohomologyTable{k, coeff, std::move(g)};
}

std::uint64_t brute_compositions(int r, int s) {
    if (r == 0) return s == 0 ? 1 : 0;
    std::uint64_t count = 0;
    for (int first = 0; first <= s; ++first) count += brute_compositions(r - 1, s - first);
    return count;
}

}  // namespace

TEST_CASE("weak composition counts") {
    REQUIRE(compositions(2, 5) == 6);
    REQUIRE(compositions(4, 1) == 4);
    REQUIRE(compositions(3, 2) == 6);
    REQUIRE(compositions(0, 0) == 1);
    REQUIRE_THROWS_AS(compositions(0, 3), hypothesis_error);
    SECTION("brute force agreement") {
        for (int r = 1; r <= 6; ++r)
            for (int s = 0; s <= 12; ++s) REQUIRE(compositions(r, s) == brute_compositions(r, s));
    }
    SECTION("convolution identity") {
        /* Vandermonde on weak compositions: splitting into a parts then b parts
           is splitting into a + b parts, so re-splitting with k1 punctures and
           then k2 matches a single split with k1 + k2 - 1. */
        for (int a = 1; a <= 5; ++a)
            for (int b = 1; b <= 5; ++b)
                for (int s = 0; s <= 12; ++s) {
                    std::uint64_t conv = 0;
                    for (int t = 0; t <= s; ++t) conv += compositions(a, t) * compositions(b, s - t);
                    REQUIRE(conv == compositions(a + b, s));
                    int k1 = a + 1, k2 = b + 1;
                    REQUIRE(conv == compositions((k1 + k2 - 1) - 1, s));
                }
    }
}

TEST_CASE("braid space orientability") {
    REQUIRE(braid_orientable(SpaceDescriptor{2, true, true, 0, 0}, 5));
    REQUIRE(!braid_orientable(SpaceDescriptor{3, true, true, 0, 0}, 2));
    REQUIRE(!braid_orientable(SpaceDescriptor{4, false, true, 0, 0}, 2));
    REQUIRE_THROWS_WITH(braid_orientable(SpaceDescriptor{1, true, true, 0, 0}, 3),
                        ContainsSubstring("out of lemma scope"));
    REQUIRE_THROWS_WITH(braid_orientable(SpaceDescriptor{2, true, true, 0, 0}, 1),
                        ContainsSubstring("out of lemma scope"));
}

TEST_CASE("coefficient policy") {
    SpaceDescriptor circle{1, true, true, 0, 0};
    SpaceDescriptor sphere = closed_surface(1);
    SpaceDescriptor rp2{2, false, true, 0, 0};
    REQUIRE_NOTHROW(check_coefficient_policy(circle, 4, Coefficients::F(2)));
    REQUIRE_NOTHROW(check_coefficient_policy(sphere, 3, Coefficients::Z()));
    REQUIRE_NOTHROW(check_coefficient_policy(sphere, 3, Coefficients::F(3)));
    REQUIRE_THROWS_AS(check_coefficient_policy(circle, 2, Coefficients::Z()), coefficient_error);
    REQUIRE_THROWS_AS(check_coefficient_policy(rp2, 2, Coefficients::Z()), coefficient_error);
    REQUIRE_THROWS_AS(check_coefficient_policy(SpaceDescriptor{3, true, true, 0, 0}, 2,
                                               Coefficients::Z()),
                      coefficient_error);
    REQUIRE_THROWS_WITH(check_coefficient_policy(sphere, 2, Coefficients::PmZ()),
                        ContainsSubstring("twisted coefficients not computable"));
    SECTION("one point is plain duality") {
        REQUIRE_NOTHROW(check_coefficient_policy(SpaceDescriptor{3, true, true, 0, 0}, 1,
                                                 Coefficients::Z()));
        REQUIRE_THROWS_AS(check_coefficient_policy(rp2, 1, Coefficients::Z()), coefficient_error);
    }
}

TEST_CASE("duality transform") {
    SpaceDescriptor circle{1, true, true, 0, 0};
    SpaceDescriptor punctured_circle{1, true, true, 1, 0};
    Coefficients f2 = Coefficients::F(2);

    SECTION("closed circle pair gives the circle") {
        auto out = dualize(ranks(2, {1, 1}), 3, circle, DualityFlavor::closed, f2);
        REQUIRE(out.groups == ranks(0, {1, 1}));
        REQUIRE(out.k == 3);
    }
    SECTION("punctured circle pair is contractible") {
        auto out = dualize(ranks(4, {1}), 4, punctured_circle, DualityFlavor::punctured, f2);
        REQUIRE(out.groups == ranks(0, {1}));
    }
    SECTION("one point gives manifold duality") {
        SpaceDescriptor sphere = closed_surface(1);
        auto out = dualize(ranks(0, {1, 0, 1}), 1, sphere, DualityFlavor::closed,
                           Coefficients::Z());
        REQUIRE(out.groups == ranks(0, {1, 0, 1}));
    }
    SECTION("degree reflection is an involution") {
        GradedAbelianGroup g;
        g.set(0, 1);
        g.set(2, 3);
        g.set(5, 2);
        auto once = dualize(g, 3, closed_surface(1), DualityFlavor::closed, f2);
        auto twice = dualize(once.groups, 3, closed_surface(1), DualityFlavor::closed, f2);
        REQUIRE(twice.groups == g);
    }
    SECTION("hypothesis checks") {
        REQUIRE_THROWS_AS(dualize(ranks(0, {1}), 2, circle, DualityFlavor::punctured, f2),
                          hypothesis_error);
        REQUIRE_THROWS_AS(
            dualize(ranks(0, {1}), 2, punctured_circle, DualityFlavor::closed, f2),
            hypothesis_error);
        REQUIRE_THROWS_WITH(dualize(ranks(4, {1}), 3, circle, DualityFlavor::closed, f2),
                            ContainsSubstring("above k*d"));
        REQUIRE_THROWS_AS(dualize(ranks(2, {1, 1}), 3, circle, DualityFlavor::closed,
                                  Coefficients::Z()),
                          coefficient_error);
        GradedAbelianGroup torsioned;
        torsioned.set(1, 0, {Integer(2)});
        REQUIRE_THROWS_AS(dualize(torsioned, 2, closed_surface(1), DualityFlavor::closed, f2),
                          coefficient_error);
    }
}

TEST_CASE("point splitting for closed manifolds") {
    Coefficients f2 = Coefficients::F(2);
    SECTION("sphere from the plane") {
        auto out = split_closed(table(2, f2, ranks(0, {1, 1})), table(1, f2, ranks(0, {1})), 2);
        REQUIRE(out.groups == ranks(0, {1, 1, 1}));
        REQUIRE(out.k == 2);
        REQUIRE(les_consistency(ranks(0, {1}), ranks(0, {1, 1}), out.groups, 2));
    }
    SECTION("circle from the line") {
        auto out = split_closed(table(5, f2, ranks(0, {1})), table(4, f2, ranks(0, {1})), 1);
        REQUIRE(out.groups == ranks(0, {1, 1}));
    }
    SECTION("rejections") {
        REQUIRE_THROWS_AS(split_closed(table(2, Coefficients::Z(), ranks(0, {1, 1})),
                                       table(1, f2, ranks(0, {1})), 2),
                          coefficient_error);
        REQUIRE_THROWS_AS(split_closed(table(2, f2, ranks(0, {1, 1})),
                                       table(2, f2, ranks(0, {1})), 2),
                          hypothesis_error);
    }
}

TEST_CASE("puncture splitting") {
    Coefficients f2 = Coefficients::F(2);
    std::vector<CohomologyTable> base = {
        table(0, f2, ranks(0, {1})),
        table(1, f2, ranks(0, {1})),
        table(2, f2, ranks(0, {1, 1})),
        table(3, f2, ranks(0, {1, 1})),
        table(4, f2, ranks(0, {1, 1, 1, 1})),
    };
    SpaceDescriptor sphere = closed_surface(1);

    SECTION("two points on the twice-punctured sphere") {
        std::vector<CohomologyTable> upto2(base.begin(), base.begin() + 3);
        auto out = split_punctures(upto2, 2, sphere, f2);
        REQUIRE(out.groups == ranks(0, {1, 2, 1}));
    }
    SECTION("first cohomology stabilizes at rank two") {
        for (int n = 2; n <= 4; ++n) {
            std::vector<CohomologyTable> upton(base.begin(), base.begin() + n + 1);
            auto out = split_punctures(upton, 2, sphere, f2);
            REQUIRE(out.groups.free_rank(1) == 2);
        }
    }
    SECTION("one puncture is the identity") {
        std::vector<CohomologyTable> upto3(base.begin(), base.begin() + 4);
        auto out = split_punctures(upto3, 1, sphere, f2);
        REQUIRE(out.groups == base[3].groups);
    }
    SECTION("zero points") {
        std::vector<CohomologyTable> just0(base.begin(), base.begin() + 1);
        auto out = split_punctures(just0, 3, sphere, f2);
        REQUIRE(out.groups == ranks(0, {1}));
    }
    SECTION("rejections") {
        std::vector<CohomologyTable> upto2(base.begin(), base.begin() + 3);
        REQUIRE_THROWS_AS(split_punctures(upto2, 0, sphere, f2), hypothesis_error);
        REQUIRE_THROWS_AS(split_punctures(upto2, 2, sphere, Coefficients::Z()),
                          coefficient_error);
        REQUIRE_THROWS_AS(
            split_punctures(upto2, 2, SpaceDescriptor{2, false, true, 0, 0}, Coefficients::Z()),
            coefficient_error);
        auto mislabeled = upto2;
        mislabeled[1].k = 7;
        REQUIRE_THROWS_AS(split_punctures(mislabeled, 2, sphere, f2), hypothesis_error);
    }
}

TEST_CASE("long exact sequence rank condition") {
    REQUIRE(les_consistency(ranks(0, {1}), ranks(0, {1, 1}), ranks(0, {1, 1, 1}), 2));
    REQUIRE(les_consistency(GradedAbelianGroup(), GradedAbelianGroup(), GradedAbelianGroup(), 3));
    REQUIRE(!les_consistency(ranks(0, {1}), ranks(0, {1, 1}), ranks(0, {1, 1, 2}), 2));
    GradedAbelianGroup torsioned;
    torsioned.set(0, 1, {Integer(2)});
    REQUIRE_THROWS_AS(les_consistency(torsioned, torsioned, torsioned, 2), coefficient_error);
}

TEST_CASE("cohomology table serialization") {
    auto t = table(3, Coefficients::F(2), ranks(0, {1, 2, 1}));
    auto back = CohomologyTable::from_json(t.to_json());
    REQUIRE(back.k == 3);
    REQUIRE(back.coeff == t.coeff);
    REQUIRE(back.groups == t.groups);
    REQUIRE_NOTHROW(t.validate(1));
    CohomologyTable deep = table(1, Coefficients::F(2), ranks(0, {1, 0, 1}));
    REQUIRE_THROWS_WITH(deep.validate(1), ContainsSubstring("k*d"));
}

TEST_CASE("cohomological dimension bounds") {
    for (int d : {2, 3, 4}) {
        auto punctured = cohdim_bound(punctured_plane_like(d, d - 1), 2);
        REQUIRE(punctured.value == d - 1);
        auto closed = cohdim_bound(SpaceDescriptor{d, true, true, 0, d - 1}, 2);
        REQUIRE(closed.value == d);
    }
    for (int k = 2; k <= 6; ++k) {
        REQUIRE(cohdim_bound(closed_surface(0), k).value == k + 1);
        REQUIRE(cohdim_bound(punctured_plane_like(2, 0), k).value == k);
    }
    REQUIRE_THROWS_WITH(cohdim_bound(closed_surface(0), 1), ContainsSubstring("k >= 2"));
}

TEST_CASE("connectivity bounds") {
    for (int n = 1; n <= 5; ++n) REQUIRE(sp_connectivity_bound(n, 1).value == 2 * n - 1);
    REQUIRE(sp_connectivity_bound(2, 3).value == 5);
    REQUIRE_THROWS_WITH(sp_connectivity_bound(2, 0), ContainsSubstring("r >= 1"));

    REQUIRE(tp_relative_bound(3, 0, DualityFlavor::punctured).value == 2);
    REQUIRE(tp_relative_bound(3, 0, DualityFlavor::closed).value == 1);
    REQUIRE(nakaoka_bound(4, 0).value == 3);
    REQUIRE(nakaoka_bound(2, 1).value == 2);
    REQUIRE_THROWS_AS(nakaoka_bound(0, 0), hypothesis_error);

    for (int g : {1, 2})
        for (int n = 2 * g; n <= 2 * g + 3; ++n)
            REQUIRE(conn2_bound(n, 2 * g).value == 2 * n - 2 * g - 1);
}

TEST_CASE("bound verdicts") {
    auto b = cohdim_bound(closed_surface(0), 3);  // value 4, upper
    REQUIRE(b.verdict == BoundReport::Verdict::not_measured);
    REQUIRE(b.check_upper(4).verdict == BoundReport::Verdict::consistent);
    REQUIRE(b.check_upper(5).verdict == BoundReport::Verdict::violated);

    auto c = conn2_bound(2, 2);  // value 1, lower
    REQUIRE(c.check_lower(1).verdict == BoundReport::Verdict::consistent);
    REQUIRE(c.check_lower(0).verdict == BoundReport::Verdict::violated);
    REQUIRE(c.check_lower(std::nullopt).verdict == BoundReport::Verdict::consistent);
    REQUIRE(c.to_json()["measured"] == "unbounded");
}

TEST_CASE("stability ranges") {
    REQUIRE(stability_range(7, StabilityProfile::generic) == 3);
    REQUIRE(stability_range(1, StabilityProfile::generic) == 0);
    REQUIRE(stability_range(5, StabilityProfile::surface_punctured) == 4);
    REQUIRE(scanning_connectivity(7, StabilityProfile::generic) == 3);
    REQUIRE_THROWS_AS(scanning_connectivity(1, StabilityProfile::generic), hypothesis_error);
    for (int k = 2; k <= 20; ++k)
        for (auto p : {StabilityProfile::generic, StabilityProfile::surface_punctured})
            REQUIRE(scanning_connectivity(k, p) <= stability_range(k, p));
}

TEST_CASE("stability staircase check") {
    std::vector<GradedAbelianGroup> artin = {ranks(0, {1}), ranks(0, {1, 1}), ranks(0, {1, 1}),
                                             ranks(0, {1, 1, 1, 1})};
    REQUIRE(stability_table_check(artin, StabilityProfile::generic).ok);

    std::vector<GradedAbelianGroup> constant(5, ranks(0, {1, 2}));
    REQUIRE(stability_table_check(constant, StabilityProfile::generic).ok);

    std::vector<GradedAbelianGroup> dropping = {ranks(0, {1, 1}), ranks(0, {1})};
    auto drop = stability_table_check(dropping, StabilityProfile::generic);
    REQUIRE(!drop.ok);
    REQUIRE(drop.k == 1);
    REQUIRE(drop.degree == 1);

    std::vector<GradedAbelianGroup> late = {ranks(0, {1}), ranks(0, {1, 1}), ranks(0, {1, 2})};
    auto inside = stability_table_check(late, StabilityProfile::surface_punctured);
    REQUIRE(!inside.ok);
    REQUIRE(inside.k == 2);
    REQUIRE(inside.reason == "dimensions differ inside the stability range");
}

TEST_CASE("binary-digit cohomological dimension stays under the generic bound") {
    for (int k = 2; k <= 64; ++k)
        for (int d = 2; d <= 8; ++d) {
            long long exact = static_cast<long long>(k - popcount_u64(k)) * (d - 1);
            REQUIRE(exact <= static_cast<long long>(d - 1) * (k - 1));
        }
}
