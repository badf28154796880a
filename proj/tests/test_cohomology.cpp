#include "doctest.h"

#include "hopftwist/cohomology.hpp"

#include <set>

using namespace hopftwist;

namespace {

// Independent oracle for abelian groups: classes in H^2(A, K^x) are detected by
// the alternating form alpha(g,h) - alpha(h,g). Count the distinct forms over
// every normalized cocycle table.
int brute_force_class_count(const FiniteGroup& g, int n) {
    int m = g.order();
    std::vector<std::pair<int, int>> free_cells;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (a != g.identity() && b != g.identity()) free_cells.emplace_back(a, b);
    std::set<std::vector<int>> forms;
    long total = 1;
    for (std::size_t i = 0; i < free_cells.size(); ++i) total *= n;
    MuNCocycle c = trivial_cocycle(g, n);
    for (long code = 0; code < total; ++code) {
        long rest = code;
        for (const auto& [a, b] : free_cells) {
            c.exponents[a][b] = static_cast<int>(rest % n);
            rest /= n;
        }
        if (!check_group_cocycle(c)) continue;
        std::vector<int> form;
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) form.push_back(((c.exponents[a][b] - c.exponents[b][a]) % n + n) % n);
        forms.insert(form);
    }
    return static_cast<int>(forms.size());
}

}  // namespace

TEST_CASE("check_group_cocycle") {
    CHECK(check_group_cocycle(trivial_cocycle(symmetric_group(3), 6)));
    MuNCocycle v4 = v4_nondegenerate_cocycle();
    CHECK(check_group_cocycle(v4));
    MuNCocycle bad = v4;
    bad.exponents[1][3] ^= 1;
    CHECK_FALSE(check_group_cocycle(bad));
    CHECK(check_group_cocycle(z3z3_zeta_jk_cocycle()));
    MuNCocycle shifted = normalized_cocycle(klein_four(), 2, std::vector<std::vector<int>>(4, std::vector<int>(4, 1)));
    CHECK(check_group_cocycle(shifted));
}

TEST_CASE("Smith normal form") {
    std::vector<std::vector<mpz_class>> a = {{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
    SmithForm s = smith_normal_form(a, 3, 3);
    CHECK(s.diag[0] == 2);
    CHECK(s.diag[1] == 6);
    CHECK(s.diag[2] == 12);
    // P A Q = D and the inverses are inverses
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            mpz_class acc = 0, pp = 0, qq = 0;
            for (std::size_t k = 0; k < 3; ++k)
                for (std::size_t l = 0; l < 3; ++l) acc += s.P[i][k] * a[k][l] * s.Q[l][j];
            for (std::size_t k = 0; k < 3; ++k) {
                pp += s.P[i][k] * s.Pinv[k][j];
                qq += s.Q[i][k] * s.Qinv[k][j];
            }
            CHECK(acc == (i == j ? s.diag[i] : mpz_class(0)));
            CHECK(pp == (i == j ? 1 : 0));
            CHECK(qq == (i == j ? 1 : 0));
        }
}

TEST_CASE("H^2 of cyclic groups is trivial") {
    for (int n = 1; n <= 6; ++n) {
        CohomologyGroup h = compute_h2(cyclic_group(n), n);
        CHECK(h.invariant_factors.empty());
        if (n <= 3) CHECK(brute_force_class_count(cyclic_group(n), n) == 1);
    }
}

TEST_CASE("H^2 of V4 with mu_2 coefficients") {
    CohomologyGroup h = compute_h2(klein_four(), 2);
    CHECK(h.invariant_factors == std::vector<long>{2});
    CHECK(brute_force_class_count(klein_four(), 2) == 2);
    REQUIRE(h.representatives.size() == 1);
    CHECK(check_group_cocycle(h.representatives[0]));
    CHECK_FALSE(cohomologous(h.representatives[0], trivial_cocycle(klein_four(), 2)));
    CHECK(cohomologous(h.representatives[0], v4_nondegenerate_cocycle()));
    // mu_4 coefficients see the same class group
    CHECK(compute_h2(klein_four(), 4).invariant_factors == std::vector<long>{2});
}

TEST_CASE("H^2 of S3 and Z/3 x Z/3") {
    CHECK(compute_h2(symmetric_group(3), 6).invariant_factors.empty());
    CohomologyGroup h = compute_h2(direct_product(cyclic_group(3), cyclic_group(3)), 3);
    CHECK(h.invariant_factors == std::vector<long>{3});
    CHECK_FALSE(cohomologous(z3z3_zeta_jk_cocycle(), trivial_cocycle(h.representatives[0].group, 3)));
    // the representative and the explicit cocycle generate the same cyclic group
    MuNCocycle sq = z3z3_zeta_jk_cocycle();
    for (auto& row : sq.exponents)
        for (auto& x : row) x = (2 * x) % 3;
    CHECK((cohomologous(z3z3_zeta_jk_cocycle(), h.representatives[0]) || cohomologous(sq, h.representatives[0])));
}

TEST_CASE("coboundaries are cohomologous to zero") {
    FiniteGroup g = klein_four();
    MuNCocycle v4 = v4_nondegenerate_cocycle();
    MuNCocycle gauged = gauge_group_cocycle(v4, {0, 1, 1, 0});
    CHECK(check_group_cocycle(gauged));
    CHECK(cohomologous(gauged, v4));
    // symmetric cocycles on abelian groups are coboundaries over K^x
    MuNCocycle sym = trivial_cocycle(g, 2);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) sym.exponents[a][b] = (a % 2) * (b % 2);
    CHECK(check_group_cocycle(sym));
    CHECK(cohomologous(sym, trivial_cocycle(g, 2)));
}

TEST_CASE("twisted group algebras and nondegeneracy") {
    FiniteGroup s3 = symmetric_group(3);
    MuNCocycle t = trivial_cocycle(s3, 1);
    CHECK(twisted_center_dimension(t) == static_cast<std::size_t>(s3.num_conjugacy_classes()));
    CHECK_FALSE(is_nondegenerate(t));
    MuNCocycle v4 = v4_nondegenerate_cocycle();
    CHECK(is_nondegenerate(v4));
    SparseTensor m = twisted_group_algebra(v4);
    // x = (1,0) index 2, y = (0,1) index 1: U_x U_y = -U_y U_x
    CHECK(m.get({3, 2, 1}) == -m.get({3, 1, 2}));
    MuNCocycle z = z3z3_zeta_jk_cocycle();
    CHECK(is_nondegenerate(z));
    SparseTensor mz = twisted_group_algebra(z);
    // x = index 3, y = index 1, xy = index 4: U_y U_x = zeta U_x U_y
    CHECK(mz.get({4, 1, 3}) == CycloNum::root(3, 1) * mz.get({4, 3, 1}));
    CHECK(uct_evaluate(z, {{3, 1}, {1, 1}, {3, -1}, {1, -1}}) == CycloNum::root(3, 2));
}

TEST_CASE("uct_evaluate") {
    MuNCocycle v4 = v4_nondegenerate_cocycle();
    FiniteGroup g = v4.group;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) CHECK(uct_evaluate(v4, {{a, 1}, {b, 1}, {g.mul(a, b), -1}}) == v4.value(a, b));
    int x = 2, y = 1;
    CHECK(uct_evaluate(v4, {{x, 1}, {y, 1}, {x, -1}, {y, -1}}) == CycloNum(-1));
    CHECK(uct_evaluate(trivial_cocycle(g, 2), {{x, 1}, {y, 1}, {x, -1}, {y, -1}}) == CycloNum(1));
    CHECK_THROWS(uct_evaluate(v4, {{x, 1}}));
    // commutator words are gauge invariant
    for (int nu1 = 0; nu1 < 2; ++nu1)
        for (int nu2 = 0; nu2 < 2; ++nu2) {
            MuNCocycle gd = gauge_group_cocycle(v4, {0, nu1, nu2, (nu1 + nu2) % 2});
            CHECK(uct_evaluate(gd, {{x, 1}, {y, 1}, {x, -1}, {y, -1}}) == CycloNum(-1));
        }
}
