#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>

#include "braidhom/oracle.hpp"
#include "test_helpers.hpp"

using namespace braidhom;
using braidhom::testing::ranks;

namespace {

GradedAbelianGroup oracle(const SimplicialComplex& x, OracleMode mode, int n,
                          const Coefficients& coeff) {
    return oracle_homology(x, mode, n, coeff).homology;
}

}  // namespace

TEST_CASE("builtin simplicial complexes have their textbook homology") {
    const Coefficients z = Coefficients::Z();
    REQUIRE(simplicial_homology(sc_point(), z) == ranks(0, {1}));
    REQUIRE(simplicial_homology(sc_interval(), z) == ranks(0, {1}));
    REQUIRE(simplicial_homology(sc_circle(3), z) == ranks(0, {1, 1}));
    REQUIRE(simplicial_homology(sc_circle(4), z) == ranks(0, {1, 1}));
    REQUIRE(simplicial_homology(sc_sphere(), z) == ranks(0, {1, 0, 1}));
    REQUIRE(simplicial_homology(sc_figure_eight(), z) == ranks(0, {1, 2}));
    REQUIRE(simplicial_homology(sc_torus(), z) == ranks(0, {1, 2, 1}));
    REQUIRE(simplicial_homology(sc_wedge_of_circles(5), z) == ranks(0, {1, 5}));

    SECTION("serialization round trip") {
        SimplicialComplex t = sc_torus();
        SimplicialComplex back = SimplicialComplex::from_json(t.to_json());
        REQUIRE(back.facets == t.facets);
        REQUIRE(back.basepoint == t.basepoint);
        REQUIRE(simplicial_homology(back, z) == ranks(0, {1, 2, 1}));
    }

    SECTION("facet validation") {
        SimplicialComplex bad;
        bad.vertex_names = {"a", "b"};
        bad.facets = {{1, 0}};
        REQUIRE_THROWS_AS(bad.validate(), std::invalid_argument);
    }

    SECTION("builtin lookup") {
        REQUIRE(builtin_space("torus").facets.size() == 14);
        REQUIRE(builtin_space("wedge-3").vertex_names.size() == 7);
        REQUIRE_THROWS_AS(builtin_space("klein"), std::invalid_argument);
    }
}

TEST_CASE("product triangulation realizes the n-fold product") {
    Budget big{500000};

    SECTION("circle squared is a torus") {
        ProductComplex p(sc_circle(3), 2, big);
        REQUIRE(p.simplex_count(0) == 9);
        REQUIRE(p.simplex_count(2) == 18);
        REQUIRE(simplicial_homology(p.as_complex(), Coefficients::Z()) == ranks(0, {1, 2, 1}));
    }

    SECTION("point power is a point") {
        ProductComplex p(sc_point(), 3, big);
        REQUIRE(p.total_simplices() == 1);
        REQUIRE(simplicial_homology(p.as_complex(), Coefficients::Z()) == ranks(0, {1}));
    }

    SECTION("sphere squared has the Kuenneth homology") {
        ProductComplex p(sc_sphere(), 2, big);
        REQUIRE(simplicial_homology(p.as_complex(), Coefficients::Z()) ==
                ranks(0, {1, 0, 2, 0, 1}));
    }

    SECTION("interval squared is contractible") {
        ProductComplex p(sc_interval(), 2, big);
        REQUIRE(simplicial_homology(p.as_complex(), Coefficients::Z()) == ranks(0, {1}));
    }
}

TEST_CASE("budget limits the oracle") {
    SECTION("defaults depend on the coefficient system") {
        REQUIRE(Budget::for_coefficients(Coefficients::F(2)).max_simplices == 5000000);
        REQUIRE(Budget::for_coefficients(Coefficients::Z()).max_simplices == 500000);
    }

    SECTION("environment override") {
        setenv("BRAIDHOM_MAX_SIMPLICES", "1234", 1);
        REQUIRE(Budget::for_coefficients(Coefficients::Z()).max_simplices == 1234);
        unsetenv("BRAIDHOM_MAX_SIMPLICES");
        REQUIRE(Budget::for_coefficients(Coefficients::Z()).max_simplices == 500000);
    }

    SECTION("exhaustion reports the size reached") {
        try {
            ProductComplex p(sc_circle(3), 2, Budget{10});
            FAIL("budget should have been exhausted");
        } catch (const budget_error& e) {
            REQUIRE(e.limit == 10);
            REQUIRE(e.reached > 10);
            REQUIRE(std::string(e.what()).find("simplex budget exhausted") != std::string::npos);
        }
    }
}

TEST_CASE("oracle symmetric products match the known answers") {
    const Coefficients z = Coefficients::Z();
    const Coefficients f2 = Coefficients::F(2);

    SECTION("circle: SP^n is homotopy equivalent to the circle") {
        REQUIRE(oracle(sc_circle(3), OracleMode::sp, 2, z) == ranks(0, {1, 1}));
        REQUIRE(oracle(sc_circle(3), OracleMode::sp, 3, z) == ranks(0, {1, 1}));
    }

    SECTION("independence of the triangulation") {
        REQUIRE(oracle(sc_circle(4), OracleMode::sp, 2, z) ==
                oracle(sc_circle(3), OracleMode::sp, 2, z));
        REQUIRE(oracle(sc_circle(4), OracleMode::sp, 3, z) ==
                oracle(sc_circle(3), OracleMode::sp, 3, z));
    }

    SECTION("figure eight at n = 2") {
        REQUIRE(oracle(sc_figure_eight(), OracleMode::sp, 2, f2) == ranks(0, {1, 2, 1}));
        REQUIRE(oracle(sc_figure_eight(), OracleMode::sp, 2, z) == ranks(0, {1, 2, 1}));
    }

    SECTION("torus at n = 2 over F2") {
        REQUIRE(oracle(sc_torus(), OracleMode::sp, 2, f2) == ranks(0, {1, 2, 2, 2, 1}));
    }

    SECTION("sphere at n = 2 is the complex projective plane") {
        REQUIRE(oracle(sc_sphere(), OracleMode::sp, 2, z) == ranks(0, {1, 0, 1, 0, 1}));
    }

    SECTION("point is absorbing") {
        for (int n = 1; n <= 4; ++n)
            REQUIRE(oracle(sc_point(), OracleMode::sp, n, z) == ranks(0, {1}));
    }

    SECTION("verified flag and simplex accounting") {
        OracleResult r = oracle_homology(sc_circle(3), OracleMode::sp, 2, z);
        REQUIRE(r.verified);
        REQUIRE(r.simplices_used == 9 + 27 + 18);
        json j = r.to_json();
        REQUIRE(j["verified"] == true);
        REQUIRE(j["homology"]["0"]["free"] == 1);
    }
}

TEST_CASE("oracle truncated products match the projective family") {
    const Coefficients z = Coefficients::Z();
    const Coefficients f2 = Coefficients::F(2);

    SECTION("TP^1 is the space itself") {
        REQUIRE(oracle(sc_circle(3), OracleMode::tp, 1, z) == ranks(0, {1, 1}));
    }

    SECTION("TP^2 of the circle is the real projective plane") {
        GradedAbelianGroup h = oracle(sc_circle(3), OracleMode::tp, 2, z);
        REQUIRE(h.free_rank(0) == 1);
        REQUIRE(h.torsion(1) == std::vector<Integer>{2});
        REQUIRE(h.free_rank(1) == 0);
        REQUIRE(h.is_trivial(2));
        REQUIRE(oracle(sc_circle(3), OracleMode::tp, 2, f2) == ranks(0, {1, 1, 1}));
    }

    SECTION("TP^3 of the circle is real projective 3-space") {
        GradedAbelianGroup h = oracle(sc_circle(3), OracleMode::tp, 3, z);
        REQUIRE(h.free_rank(0) == 1);
        REQUIRE(h.torsion(1) == std::vector<Integer>{2});
        REQUIRE(h.is_trivial(2));
        REQUIRE(h.free_rank(3) == 1);
        REQUIRE(h.torsion(3).empty());
    }

    SECTION("triangulation independence for TP") {
        REQUIRE(oracle(sc_circle(4), OracleMode::tp, 2, z) ==
                oracle(sc_circle(3), OracleMode::tp, 2, z));
    }

    SECTION("TP^2 of the sphere") {
        GradedAbelianGroup h = oracle(sc_sphere(), OracleMode::tp, 2, z);
        REQUIRE(h.free_rank(0) == 1);
        REQUIRE(h.is_trivial(1));
        REQUIRE(h.torsion(2) == std::vector<Integer>{2});
        REQUIRE(h.free_rank(2) == 0);
        REQUIRE(h.is_trivial(3));
        REQUIRE(h.free_rank(4) == 1);

        GradedAbelianGroup reduced = reduce_at_basepoint(oracle(sc_sphere(), OracleMode::tp, 2, f2));
        GradedAbelianGroup expect;
        expect.set(2, 1);
        expect.set(3, 1);
        expect.set(4, 1);
        REQUIRE(reduced == expect);
    }

    SECTION("validated family flag") {
        REQUIRE(oracle_homology(sc_circle(3), OracleMode::tp, 3, z).verified);
        REQUIRE(oracle_homology(sc_circle(4), OracleMode::tp, 3, z).verified);
        REQUIRE(oracle_homology(sc_sphere(), OracleMode::tp, 2, z).verified);
        REQUIRE_FALSE(oracle_homology(sc_figure_eight(), OracleMode::tp, 3, Coefficients::F(2)).verified);
    }

    SECTION("hypothesis guards") {
        REQUIRE_THROWS_AS(oracle_homology(sc_circle(3), OracleMode::tp, 4, z), hypothesis_error);
        SimplicialComplex nobp = sc_circle(3);
        nobp.basepoint.reset();
        REQUIRE_THROWS_AS(oracle_homology(nobp, OracleMode::tp, 2, z), hypothesis_error);
        REQUIRE_THROWS_AS(oracle_homology(nobp, OracleMode::spbar, 2, z), hypothesis_error);
        REQUIRE(oracle(nobp, OracleMode::sp, 2, z) == ranks(0, {1, 1}));
    }
}

TEST_CASE("oracle collapsed modes") {
    const Coefficients z = Coefficients::Z();

    SECTION("SPbar of the circle is contractible") {
        REQUIRE(oracle(sc_circle(3), OracleMode::spbar, 2, z) == ranks(0, {1}));
        REQUIRE(oracle(sc_circle(3), OracleMode::spbar, 3, z) == ranks(0, {1}));
    }

    SECTION("TPbar of the circle is a sphere") {
        GradedAbelianGroup h2 = oracle(sc_circle(3), OracleMode::tpbar, 2, z);
        REQUIRE(h2 == ranks(0, {1, 0, 1}));
        GradedAbelianGroup h3 = oracle(sc_circle(3), OracleMode::tpbar, 3, z);
        REQUIRE(h3 == ranks(0, {1, 0, 0, 1}));
    }

    SECTION("TPbar of the sphere at n = 2") {
        GradedAbelianGroup h = oracle(sc_sphere(), OracleMode::tpbar, 2, z);
        GradedAbelianGroup expect;
        expect.set(0, 1);
        expect.set(3, 1);
        expect.set(4, 1);
        REQUIRE(h == expect);
    }

    SECTION("point is absorbing in every mode") {
        for (OracleMode m : {OracleMode::sp, OracleMode::tp, OracleMode::spbar, OracleMode::tpbar})
            for (int n = 1; n <= 3; ++n)
                REQUIRE(oracle(sc_point(), m, n, z) == ranks(0, {1}));
    }

    SECTION("degree zero keeps rank one on connected inputs") {
        for (OracleMode m : {OracleMode::sp, OracleMode::tp, OracleMode::spbar, OracleMode::tpbar}) {
            REQUIRE(oracle(sc_circle(3), m, 2, z).free_rank(0) == 1);
            REQUIRE(oracle(sc_sphere(), m, 2, z).free_rank(0) == 1);
        }
    }
}

TEST_CASE("subdivision tower reproduces the orbit computation") {
    const Coefficients z = Coefficients::Z();
    const Coefficients f2 = Coefficients::F(2);
    Budget big{500000};

    SECTION("two subdivisions of the interval") {
        SubdividedTower t(sc_interval(), 1, big);
        auto sizes = t.level_sizes();
        REQUIRE(sizes == std::vector<std::size_t>{3, 5, 9});
        REQUIRE(simplicial_homology(t.regularized_complex(), z) == ranks(0, {1}));
    }

    SECTION("subdivision preserves circle homology") {
        SubdividedTower t(sc_circle(3), 1, big);
        REQUIRE(simplicial_homology(t.regularized_complex(), z) == ranks(0, {1, 1}));
    }

    SECTION("circle squared: quotients match the orbit route") {
        SubdividedTower t(sc_circle(3), 2, big);
        REQUIRE(simplicial_homology(t.quotient_space(OracleMode::sp), z) == ranks(0, {1, 1}));

        GradedAbelianGroup tp = simplicial_homology(t.quotient_space(OracleMode::tp), z);
        REQUIRE(tp == oracle(sc_circle(3), OracleMode::tp, 2, z));

        REQUIRE(simplicial_homology(t.quotient_space(OracleMode::spbar), z) == ranks(0, {1}));
        REQUIRE(simplicial_homology(t.quotient_space(OracleMode::tpbar), z) == ranks(0, {1, 0, 1}));
    }

    SECTION("four-vertex circle squared") {
        SubdividedTower t(sc_circle(4), 2, big);
        REQUIRE(simplicial_homology(t.quotient_space(OracleMode::sp), z) == ranks(0, {1, 1}));
    }

    SECTION("figure eight squared over F2") {
        SubdividedTower t(sc_figure_eight(), 2, Budget{5000000});
        REQUIRE(simplicial_homology(t.quotient_space(OracleMode::sp), f2) ==
                oracle(sc_figure_eight(), OracleMode::sp, 2, f2));
    }

    SECTION("quotient basepoints") {
        SubdividedTower t(sc_circle(3), 2, big);
        SimplicialComplex sp = t.quotient_space(OracleMode::sp);
        REQUIRE(sp.basepoint.has_value());
        SimplicialComplex bar = t.quotient_space(OracleMode::spbar);
        REQUIRE(bar.basepoint.has_value());
        REQUIRE(bar.vertex_names[*bar.basepoint] == "apex");
    }
}
