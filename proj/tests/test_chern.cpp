#include <doctest.h>

#include "support/chern_oracle.hpp"
#include "thomstem/chern.hpp"
#include "thomstem/errors.hpp"

using namespace thomstem;
using namespace thomstem::chern;
using ext::Monomial;

TEST_SUITE("char_class") {
    TEST_CASE("homology torus") {
        const auto t1 = make_homology_torus(1);
        CHECK(t1.b1 == 4);
        CHECK(t1.quadruple_product(Monomial::of({1, 2, 3, 4})) == 1);
        CHECK(t1.signature == 0);
        CHECK(t1.b_plus == 3);
        CHECK(make_homology_torus(5).quadruple_product(Monomial::of({1, 2, 3, 4})) == 5);
        CHECK(make_homology_torus(-7).quad_form.size() == 1);
        CHECK_THROWS_AS(make_homology_torus(0), InvalidArgument);
    }

    TEST_CASE("connected sum") {
        const auto s = connected_sum(make_homology_torus(1), make_homology_torus(1));
        CHECK(s.b1 == 8);
        CHECK(s.quad_form.size() == 2);
        CHECK(s.quadruple_product(Monomial::of({1, 2, 3, 4})) == 1);
        CHECK(s.quadruple_product(Monomial::of({5, 6, 7, 8})) == 1);
        CHECK(s.quadruple_product(Monomial::of({1, 2, 5, 6})) == 0);

        const auto t = connected_sum(make_homology_torus(3), make_homology_torus(5));
        CHECK(t.quadruple_product(Monomial::of({1, 2, 3, 4})) == 3);
        CHECK(t.quadruple_product(Monomial::of({5, 6, 7, 8})) == 5);
        CHECK(t.b_plus == 6);

        const auto point = make_manifold(0, {}, 0, 0, "S4");
        CHECK(connected_sum(t, point).quad_form == t.quad_form);
        CHECK(connected_sum(point, t).quad_form == t.quad_form);
    }

    TEST_CASE("connected sum commutes up to the block swap") {
        const auto ab = connected_sum(make_homology_torus(3), make_homology_torus(5));
        const auto ba = connected_sum(make_homology_torus(5), make_homology_torus(3));
        std::map<Monomial, Integer> swapped;
        for (const auto& [subset, v] : ba.quad_form) {
            std::vector<int> g;
            for (int k : subset.generators()) g.push_back(k <= 4 ? k + 4 : k - 4);
            std::sort(g.begin(), g.end());
            swapped[Monomial::of(g)] = v;
        }
        CHECK(swapped == ab.quad_form);
    }

    TEST_CASE("make_manifold validation") {
        CHECK_THROWS_AS(make_manifold(4, {{Monomial::of({1, 2, 3}), 1}}, 0, 0, "bad"), InvalidArgument);
        CHECK_THROWS_AS(make_manifold(4, {{Monomial::of({1, 2, 3, 5}), 1}}, 0, 0, "bad"), InvalidArgument);
        CHECK_THROWS_AS(make_manifold(-1, {}, 0, 0, "bad"), InvalidArgument);
        CHECK_THROWS_AS(make_manifold(4, {}, 0, -1, "bad"), InvalidArgument);
    }

    TEST_CASE("Chern character of the index bundle") {
        const auto ch = chern_character_index(connected_sum(make_homology_torus(3), make_homology_torus(5)));
        REQUIRE(ch.size() == 3);
        CHECK(ch[0].is_zero());
        CHECK(ch[1].is_zero());
        // frozen from the brute-force expansion below
        CHECK(ext::to_string(ch[2], "dt") == "3*dt[1,2,3,4] + 5*dt[5,6,7,8]");

        const auto single = chern_character_index(make_homology_torus(7));
        CHECK(ext::to_string(single[2], "dt") == "7*dt[1,2,3,4]");

        const auto flat = chern_character_index(make_manifold(4, {}, 0, 3, "flat"));
        for (const auto& part : flat) CHECK(part.is_zero());

        CHECK_THROWS_AS(chern_character_index(make_manifold(4, {}, 16, 3, "K3-like")), Unsupported);
    }

    TEST_CASE("brute-force expansion agrees on mixed quadruple forms") {
        // forms touching overlapping subsets exercise nontrivial interleaving signs
        const std::map<Monomial, Integer> form{{Monomial::of({1, 2, 3, 4}), 2},
                                               {Monomial::of({1, 3, 5, 6}), -3},
                                               {Monomial::of({2, 4, 5, 6}), 11}};
        const auto m = make_manifold(6, form, 0, 1, "mixed");
        const auto ch = chern_character_index(m);
        const auto oracle_ch = oracle::brute_force_ch(m);
        for (int k = 0; k < 3; ++k) CHECK(oracle::as_words(ch[k]) == oracle_ch[k]);
        CHECK(ext::to_string(ch[2], "dt") == "2*dt[1,2,3,4] - 3*dt[1,3,5,6] + 11*dt[2,4,5,6]");
    }

    TEST_CASE("exp(Omega) only keeps X-degree <= 4") {
        const auto e = exp_curvature(6);
        for (const auto& [key, c] : e.terms()) {
            CHECK(key.first.degree() <= 4);
            CHECK(key.first == key.second);
        }
        CHECK(e.coefficient(Monomial::of({1, 2}), Monomial::of({1, 2})) == Rational(-1));
        CHECK(e.coefficient(Monomial::of({1, 2, 3, 4}), Monomial::of({1, 2, 3, 4})) == Rational(1));
    }

    TEST_CASE("index bundle") {
        const auto f0 = index_bundle(make_homology_torus(5));
        CHECK(f0.field == Field::quaternionic);
        CHECK(f0.rank == 1);
        CHECK(f0.base_rank == 4);
        CHECK(f0.c1.is_zero());
        CHECK(ext::to_string(f0.c2, "dt") == "-5*dt[1,2,3,4]");
        CHECK(f0.sphere_shift == 1);
        CHECK(f0.real_dimension() == 4);

        const auto f = index_bundle(connected_sum(make_homology_torus(3), make_homology_torus(5)));
        CHECK(f.base_rank == 8);
        CHECK(ext::to_string(f.c2, "dt") == "-3*dt[1,2,3,4] - 5*dt[5,6,7,8]");
        CHECK(f.stiefel_whitney(4) == ext::Mod2Class(8, {Monomial::of({1, 2, 3, 4}), Monomial::of({5, 6, 7, 8})}));
        CHECK(f.stiefel_whitney(2).is_zero());
        CHECK(f.stiefel_whitney(0) == ext::Mod2Class::unit(8));

        const auto trivial = index_bundle(make_manifold(4, {}, 0, 3, "flat"));
        CHECK(trivial.c2.is_zero());
    }

    TEST_CASE("quotient bundle") {
        const auto g = quotient_real_bundle(index_bundle(make_homology_torus(3)));
        CHECK(g.field == Field::real);
        CHECK(g.rank == 3);
        for (int i = 1; i <= 3; ++i) CHECK(g.stiefel_whitney(i).is_zero());
        CHECK_THROWS_AS(quotient_real_bundle(make_quaternionic_bundle(ExteriorClass(4), 2)), Unsupported);
    }
}

TEST_SUITE("char_class properties") {
    TEST_CASE("index computation over a determinant grid matches the brute-force oracle") {
        const int grid[] = {-6, -5, -2, -1, 1, 2, 3, 4, 7, 10, 21};
        for (int r1 : grid)
            for (int r2 : grid) {
                const auto m = connected_sum(make_homology_torus(r1), make_homology_torus(r2));
                const auto ch = chern_character_index(m);  // integrality asserts live inside
                const auto oracle_ch = oracle::brute_force_ch(m);
                CHECK(ch[0].is_zero());
                CHECK(ch[1].is_zero());
                for (int k = 0; k < 3; ++k) CHECK(oracle::as_words(ch[k]) == oracle_ch[k]);
                CHECK(ch[2].coefficient(Monomial::of({1, 2, 3, 4})) == r1);
                CHECK(ch[2].coefficient(Monomial::of({5, 6, 7, 8})) == r2);
                const auto f = index_bundle(m);
                const bool both_odd = r1 % 2 != 0 && r2 % 2 != 0;
                const ext::Mod2Class vols(8, {Monomial::of({1, 2, 3, 4}), Monomial::of({5, 6, 7, 8})});
                CHECK((ext::mod2(f.c2) == vols) == both_odd);
            }
    }

    TEST_CASE("integrality on random quadruple forms") {
        oracle::Gen g(0x5eed0101);
        for (int trial = 0; trial < 60; ++trial) {
            const int b = g.uniform(4, 8);
            std::map<Monomial, Integer> form;
            const int n = g.uniform(0, 5);
            for (int i = 0; i < n; ++i) form[g.monomial_of_degree(b, 4)] = g.uniform(-50, 50);
            const auto m = make_manifold(b, form, 0, 0, "random");
            const auto ch = chern_character_index(m);
            const auto oracle_ch = oracle::brute_force_ch(m);
            for (int k = 0; k < 3; ++k) REQUIRE(oracle::as_words(ch[k]) == oracle_ch[k]);
        }
    }

    TEST_CASE("big determinants stay exact") {
        const Integer big("123456789012345678901234567890");
        const auto ch = chern_character_index(make_homology_torus(big));
        CHECK(ch[2].coefficient(Monomial::of({1, 2, 3, 4})) == big);
    }
}
