#include "doctest.h"

#include "hopftwist/groups.hpp"
#include "hopftwist/hopf.hpp"
#include "hopftwist/linsolve.hpp"

#include <algorithm>

using namespace hopftwist;

namespace {

HopfAlgebraData kg(const FiniteGroup& g) {
    int n = g.order();
    HopfAlgebraData h;
    h.dim = n;
    h.unit.assign(n, CycloNum());
    h.unit[g.identity()] = CycloNum(1);
    h.counit.assign(n, CycloNum(1));
    h.mult = SparseTensor({n}, {n, n});
    h.comult = SparseTensor({n, n}, {n});
    h.antipode = SparseTensor({n}, {n});
    for (int a = 0; a < n; ++a) {
        h.labels.push_back(g.label(a));
        for (int b = 0; b < n; ++b) h.mult.set({g.mul(a, b), a, b}, CycloNum(1));
        h.comult.set({a, a, a}, CycloNum(1));
        h.antipode.set({g.inv(a), a}, CycloNum(1));
    }
    return h;
}

// Sweedler algebra: basis g^i x^j at index 2i+j, g^2 = 1, x^2 = 0, xg = -gx.
HopfAlgebraData sweedler() {
    HopfAlgebraData h;
    h.dim = 4;
    h.N = 2;
    h.labels = {"1", "x", "g", "gx"};
    h.unit = {CycloNum(1), CycloNum(), CycloNum(), CycloNum()};
    h.counit = {CycloNum(1), CycloNum(), CycloNum(1), CycloNum()};
    h.mult = SparseTensor({4}, {4, 4});
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) {
                    if (j + l > 1) continue;
                    int sign = (j * k) % 2 ? -1 : 1;
                    h.mult.set({2 * ((i + k) % 2) + j + l, 2 * i + j, 2 * k + l}, CycloNum(sign));
                }
    h.comult = SparseTensor({4, 4}, {4});
    h.comult.set({0, 0, 0}, CycloNum(1));
    h.comult.set({2, 2, 2}, CycloNum(1));
    // x -> x(x)1 + g(x)x ; gx -> gx(x)g + 1(x)gx
    h.comult.set({1, 0, 1}, CycloNum(1));
    h.comult.set({2, 1, 1}, CycloNum(1));
    h.comult.set({3, 2, 3}, CycloNum(1));
    h.comult.set({0, 3, 3}, CycloNum(1));
    h.antipode = SparseTensor({4}, {4});
    h.antipode.set({0, 0}, CycloNum(1));
    h.antipode.set({2, 2}, CycloNum(1));
    h.antipode.set({3, 1}, CycloNum(-1));  // S(x) = -g^{-1}x = -gx
    h.antipode.set({1, 3}, CycloNum(1));   // S(gx) = S(x)S(g) = -gxg = x
    return h;
}

Functional random_functional(int n, unsigned seed) {
    Functional f(n);
    for (int i = 0; i < n; ++i) {
        seed = seed * 1103515245u + 12345u;
        f[i] = CycloNum(static_cast<long long>((seed >> 16) % 7) - 3);
    }
    return f;
}

}  // namespace

TEST_CASE("verify_hopf accepts group algebras and the Sweedler algebra") {
    for (const auto& g : {cyclic_group(1), cyclic_group(4), klein_four(), symmetric_group(3)}) {
        VerifyReport r = verify_hopf(kg(g));
        CHECK(r.ok());
        CHECK(r.axioms.size() == 8);
    }
    CHECK(verify_hopf(sweedler()).ok());
    CHECK(verify_hopf(dual_hopf(sweedler())).ok());
}

TEST_CASE("verify_hopf reports the first associativity failure") {
    HopfAlgebraData h = kg(symmetric_group(3));
    h.mult.set({3, 1, 2}, CycloNum(2));
    for (Exec e : {Exec::serial, Exec::parallel}) {
        VerifyReport r = verify_hopf(h, e);
        REQUIRE_FALSE(r.ok());
        const AxiomResult* f = r.first_failure();
        REQUIRE(f != nullptr);
        CHECK(f->name == "associativity");
        CHECK(f->witness.size() == 3);
    }
    CHECK(verify_hopf(h, Exec::serial).summary() == verify_hopf(h, Exec::parallel).summary());
}

TEST_CASE("wrong antipode is caught") {
    HopfAlgebraData h = sweedler();
    h.antipode.set({3, 1}, CycloNum(1));
    VerifyReport r = verify_hopf(h);
    CHECK_FALSE(r.ok());
    CHECK(r.first_failure()->name == "antipode");
}

TEST_CASE("dual_hopf is an involution") {
    for (const auto& h : {kg(symmetric_group(3)), sweedler()}) {
        HopfAlgebraData d = dual_hopf(h);
        HopfAlgebraData dd = dual_hopf(d);
        CHECK(dd.mult == h.mult);
        CHECK(dd.comult == h.comult);
        CHECK(dd.antipode == h.antipode);
        CHECK(verify_hopf(d).ok());
    }
    // dual of KG: e_a e_b = delta_ab e_a
    HopfAlgebraData d = dual_hopf(kg(symmetric_group(3)));
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b)
            for (int c = 0; c < 6; ++c) CHECK(d.m(a, b, c) == CycloNum(a == b && b == c ? 1 : 0));
}

TEST_CASE("convolution inverses") {
    HopfAlgebraData h = kg(symmetric_group(3));
    CHECK(convolution_inverse(h, h.counit) == h.counit);
    // on KG: psi(g) = 1/phi(g)
    Functional phi(6);
    for (int i = 0; i < 6; ++i) phi[i] = CycloNum(i + 2);
    Functional psi = convolution_inverse(h, phi);
    for (int i = 0; i < 6; ++i) CHECK(psi[i] == CycloNum(1) / CycloNum(i + 2));
    LinMap d = LinMap::from_tensor(h.comult);
    CHECK(convolve(d, phi, psi) == h.counit);

    HopfAlgebraData s = sweedler();
    Functional phi2 = {CycloNum(2), CycloNum(5), CycloNum(-1), CycloNum(3)};
    Functional psi2 = convolution_inverse(s, phi2);
    LinMap d2 = LinMap::from_tensor(s.comult);
    CHECK(convolve(d2, phi2, psi2) == s.counit);
    CHECK(convolve(d2, psi2, phi2) == s.counit);

    Functional zero(4);
    CHECK_THROWS_AS(convolution_inverse(s, zero), SingularError);
}

TEST_CASE("convolution on the tensor square") {
    HopfAlgebraData s = sweedler();
    LinMap d2 = tensor_square_comult(s);
    std::vector<CycloNum> e2 = tensor_square_counit(s);
    Functional phi = random_functional(16, 7);
    phi[0] = CycloNum(1);
    Functional psi = convolution_inverse(d2, e2, phi);
    CHECK(convolve(d2, phi, psi) == e2);
}

TEST_CASE("A_f A_g = A_{f*g}") {
    for (const auto& h : {kg(symmetric_group(3)), sweedler(), dual_hopf(sweedler()), dual_hopf(kg(symmetric_group(3)))}) {
        LinMap d = LinMap::from_tensor(h.comult);
        CHECK(functional_action(h, h.counit) == SparseTensor::identity({h.dim}));
        for (unsigned seed = 1; seed < 5; ++seed) {
            Functional f = random_functional(h.dim, seed), g = random_functional(h.dim, seed + 100);
            CHECK(compose({functional_action(h, f), functional_action(h, g)}) == functional_action(h, convolve(d, f, g)));
        }
    }
}

TEST_CASE("iterated coproduct") {
    HopfAlgebraData s = sweedler();
    SVec x = {{1, CycloNum(1)}};
    CHECK(iterated_coproduct(s, x, 1) == x);
    SVec d3 = iterated_coproduct(s, x, 3);
    // x -> x11 + gx1 + ggx
    SVec expect = {{1 * 16 + 0 * 4 + 0, CycloNum(1)}, {2 * 16 + 1 * 4 + 0, CycloNum(1)}, {2 * 16 + 2 * 4 + 1, CycloNum(1)}};
    std::sort(expect.begin(), expect.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    CHECK(d3 == expect);
}

TEST_CASE("solve_antipode recovers the stored antipode") {
    for (const auto& h : {kg(symmetric_group(3)), kg(klein_four()), sweedler(), dual_hopf(sweedler())}) CHECK(solve_antipode(h) == h.antipode);
}

TEST_CASE("structure_equal and index_of") {
    HopfAlgebraData a = sweedler(), b = sweedler();
    CHECK(structure_equal(a, b));
    b.counit[1] = CycloNum(1);
    CHECK_FALSE(structure_equal(a, b));
    CHECK(a.index_of("gx") == 3);
    CHECK_THROWS(a.index_of("y"));
}
