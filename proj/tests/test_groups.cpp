#include "doctest.h"

#include "hopftwist/groups.hpp"

using namespace hopftwist;

TEST_CASE("basic constructions") {
    CHECK(cyclic_group(1).order() == 1);
    FiniteGroup s3 = symmetric_group(3);
    CHECK(s3.order() == 6);
    int involutions = 0;
    for (int g = 0; g < 6; ++g) involutions += s3.element_order(g) == 2;
    CHECK(involutions == 3);
    CHECK(s3.num_conjugacy_classes() == 3);
    CHECK(s3.label(s3.identity()) == "e");
    CHECK(symmetric_group(4).order() == 24);
    CHECK(klein_four().is_abelian());
    CHECK(klein_four().exponent() == 2);
}

TEST_CASE("order-36 semidirect product") {
    FiniteGroup g = order36_group();
    CHECK(g.order() == 36);
    CHECK_FALSE(g.is_abelian());
    CHECK(parse_group_spec("semidirect(prod(cyclic:3,cyclic:3),cyclic:4,action=paper-36)") == g);
    // generator of Z/4 is (0,1) = index 1; x = (1,0) has base index 3, so element index 12
    int gen = 1, x = 3 * 4, x2 = 6 * 4, y = 1 * 4;
    CHECK(g.conjugate(gen, x) == x2);
    CHECK(g.conjugate(gen, y) == y);
    std::vector<int> base;
    for (int h = 0; h < 9; ++h) base.push_back(h * 4);
    Subgroup f = coset_reps(g, base);
    CHECK(f.index() == 4);
    CHECK(f.coset_reps() == std::vector<int>{0, 1, 2, 3});
    CHECK(f.is_normal());
}

TEST_CASE("coset representatives") {
    FiniteGroup s3 = symmetric_group(3);
    Subgroup whole = coset_reps(s3, {0, 1, 2, 3, 4, 5});
    CHECK(whole.coset_reps() == std::vector<int>{s3.identity()});
    Subgroup triv = coset_reps(s3, {s3.identity()});
    CHECK(triv.index() == 6);
    int t12 = s3.index_of("(12)");
    Subgroup h = coset_reps(s3, {s3.identity(), t12});
    CHECK_FALSE(h.is_normal());
    CHECK_THROWS(coset_reps(s3, {s3.identity(), s3.index_of("(123)")}));
    for (const Subgroup* sub : {&whole, &triv, &h}) {
        // (i, f) -> t_i f is a bijection onto G
        std::vector<int> hit(6, 0);
        for (int t : sub->coset_reps())
            for (int e : sub->elements()) ++hit[s3.mul(t, e)];
        for (int c : hit) CHECK(c == 1);
        for (int g = 0; g < 6; ++g)
            for (int i = 0; i < sub->index(); ++i) {
                auto [j, f2] = sub->transversal(g, i);
                CHECK(sub->contains(f2));
                CHECK(s3.mul(s3.mul(s3.inv(sub->coset_reps()[i]), g), sub->coset_reps()[j]) == f2);
            }
    }
}

TEST_CASE("conjugation and normality") {
    FiniteGroup s3 = symmetric_group(3);
    CHECK(conjugate(s3, s3.index_of("(123)"), s3.index_of("(12)")) == s3.index_of("(23)"));
    CHECK(is_normal(s3, {s3.identity(), s3.index_of("(123)"), s3.index_of("(132)")}));
}

TEST_CASE("invalid inputs are rejected") {
    CHECK_THROWS(FiniteGroup::from_table({{0, 1}, {0, 1}}));
    CHECK_THROWS(FiniteGroup::from_table({{0, 1}, {1, 0}}, {"a", "a"}));
    std::vector<std::vector<int>> bad(2, std::vector<int>{1, 0, 2});
    CHECK_THROWS(semidirect_product(cyclic_group(3), cyclic_group(2), bad));
    CHECK_THROWS(parse_group_spec("dihedral:4"));
    CHECK(parse_group_spec("prod(cyclic:2, cyclic:2)") == klein_four());
}
