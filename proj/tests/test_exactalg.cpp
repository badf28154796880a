#include "doctest.h"

#include "hopftwist/linsolve.hpp"
#include "hopftwist/tensor.hpp"

#include <random>

using namespace hopftwist;

namespace {

CycloNum random_cyclo(std::mt19937& rng, int order) {
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
    const CycloField* f = cyclo_field(order);
    CycloNum::Coeffs c(f->phi);
    for (auto& x : c) x = Rational(num(rng), den(rng));
    return CycloNum(f, c);
}

SparseTensor random_map(std::mt19937& rng, int n, int order, int density_pct) {
    SparseTensor t({n}, {n});
    std::uniform_int_distribution<int> pct(0, 99);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (pct(rng) < density_pct) t.set({i, j}, random_cyclo(rng, order));
    return t;
}

}  // namespace

TEST_CASE("rational arithmetic stays canonical across the int64 boundary") {
    Rational big(INT64_MAX);
    Rational two(2);
    Rational p = big * two;
    CHECK_FALSE(p.is_small());
    CHECK(p / two == big);
    CHECK((p / two).is_small());
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK(Rational::parse("10/4") == Rational(5, 2));
    CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
    CHECK(Rational(INT64_MIN).to_mpq() == mpq_class(mpz_class("-9223372036854775808")));
    Rational q(1, 3);
    for (int i = 0; i < 50; ++i) q = q * Rational(7, 5) + Rational(1, 11);
    Rational r = q;
    for (int i = 0; i < 50; ++i) r = (r - Rational(1, 11)) / Rational(7, 5);
    CHECK(r == Rational(1, 3));
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_poly(1) == std::vector<long long>{-1, 1});
    CHECK(cyclotomic_poly(3) == std::vector<long long>{1, 1, 1});
    CHECK(cyclotomic_poly(4) == std::vector<long long>{1, 0, 1});
    CHECK(cyclotomic_poly(12) == std::vector<long long>{1, 0, -1, 0, 1});
    CHECK(euler_phi(36) == 12);
    CHECK(static_cast<int>(cyclotomic_poly(105).size()) - 1 == euler_phi(105));
}

TEST_CASE("cyclo_arith basic identities") {
    CycloNum i = CycloNum::root(4, 1);
    CHECK(cyclo_arith(i, i, ArithOp::mul) == CycloNum(-1));
    CycloNum z = CycloNum::root(3, 1);
    CHECK((CycloNum(1) + z + z * z).is_zero());
    CHECK(cyclo_arith(CycloNum(1), z, ArithOp::div) == z * z);
    CHECK_THROWS_AS(cyclo_arith(z, CycloNum::zero(3), ArithOp::div), std::domain_error);
    // mixed orders lift to the lcm
    CycloNum w = z * i;
    CHECK(w.order() == 12);
    CHECK(w == CycloNum::root(12, 7));
    CHECK(CycloNum::root(6, 2) == z);
}

TEST_CASE("galois_apply") {
    CycloNum z = CycloNum::root(3, 1);
    CHECK(galois_apply(z, 2) == z * z);
    CHECK(galois_apply(CycloNum(Rational(3, 5)).lifted(3), 2) == CycloNum(Rational(3, 5)));
    CHECK(galois_apply(z + z * z, 2) == z + z * z);
    CHECK_THROWS(galois_apply(z, 3));
}

TEST_CASE("scalar text syntax round-trips") {
    for (int order : {1, 3, 4, 5, 12}) {
        std::mt19937 rng(order);
        for (int k = 0; k < 20; ++k) {
            CycloNum a = random_cyclo(rng, order);
            CHECK(CycloNum::parse(a.str(order), order) == a);
        }
    }
    CycloNum v = CycloNum::parse("3/2*z^2 - 1", 5);
    CHECK(v == CycloNum(Rational(3, 2)) * CycloNum::root(5, 2) - CycloNum(1));
    CHECK(CycloNum::parse("-z", 3) == -CycloNum::root(3, 1));
    CHECK(CycloNum::parse("0", 3).is_zero());
    CHECK(CycloNum::parse("z^-1", 3) == CycloNum::root(3, 2));
    CHECK(CycloNum::parse("z^2", 3).str(3) == "-z - 1");
    CHECK(CycloNum::root(3, 1).str(6) == "z - 1");
    CHECK_THROWS(CycloNum::parse("3/", 3));
    CHECK_THROWS(CycloNum::parse("3 + y", 3));
}

TEST_CASE("field axioms and Galois automorphism on random triples") {
    std::mt19937 rng(7);
    for (int order : {3, 4, 5, 8, 12}) {
        for (int t = 0; t < 15; ++t) {
            CycloNum a = random_cyclo(rng, order), b = random_cyclo(rng, order), c = random_cyclo(rng, order);
            CHECK((a * b) * c == a * (b * c));
            CHECK((a + b) + c == a + (b + c));
            CHECK(a * (b + c) == a * b + a * c);
            if (!a.is_zero()) CHECK(a * a.inverse() == CycloNum(1));
            for (int j = 1; j < order; ++j) {
                if (std::gcd(j, order) != 1) continue;
                CHECK(galois_apply(a + b, j) == galois_apply(a, j) + galois_apply(b, j));
                CHECK(galois_apply(a * b, j) == galois_apply(a, j) * galois_apply(b, j));
            }
        }
    }
}

TEST_CASE("leg_permute implements L_sigma") {
    SparseTensor v({2, 2});
    v.set({0, 1}, CycloNum(1));
    SparseTensor sw = leg_permute(v, Permutation({2, 1}));
    CHECK(sw.get({1, 0}) == CycloNum(1));
    CHECK(sw.nnz() == 1);
    CHECK(leg_permute(v, Permutation::identity(2)) == v);
    SparseTensor u({3, 3, 3});
    u.set({0, 1, 2}, CycloNum(5));
    u.set({2, 2, 1}, CycloNum(-1));
    Permutation c({2, 3, 1});
    CHECK(leg_permute(leg_permute(leg_permute(u, c), c), c) == u);
    // L_s L_t = L_{st} on all of S3
    for (const auto& s : Permutation::all(3))
        for (const auto& t : Permutation::all(3)) CHECK(leg_permute(leg_permute(u, t), s) == leg_permute(u, s * t));
    // operator form agrees with the vector form and with permute_legs
    for (const auto& s : Permutation::all(3)) {
        SparseTensor op = permutation_operator(s, 3);
        SparseTensor as_map({27}, {1});
        for (const auto& [k, val] : u.entries()) as_map.set_rc(k, 0, val);
        SparseTensor image = compose({LinMap::from_tensor(op).to_tensor({27}, {27}), as_map});
        SVec sv;
        for (const auto& [k, val] : u.entries()) sv.emplace_back(k, val);
        SVec pv = permute_legs(sv, 3, s);
        SparseTensor expect = leg_permute(u, s);
        REQUIRE(pv.size() == expect.nnz());
        for (const auto& [k, val] : pv) {
            CHECK(expect.entries().at(k) == val);
            CHECK(image.get_rc(k, 0) == val);
        }
    }
}

TEST_CASE("compose and trace") {
    std::mt19937 rng(11);
    SparseTensor a = random_map(rng, 3, 1, 60), b = random_map(rng, 3, 1, 60);
    SparseTensor ab = compose({a, b});
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            CycloNum s;
            for (int k = 0; k < 3; ++k) s += a.get({i, k}) * b.get({k, j});
            CHECK(ab.get({i, j}) == s);
        }
    SparseTensor id = SparseTensor::identity({3});
    CHECK(compose({id, a}) == a);
    CHECK(trace(SparseTensor::identity({7})) == CycloNum(7));
    CHECK(trace(permutation_operator(Permutation({2, 1}), 5)) == CycloNum(5));
    SparseTensor c4 = random_map(rng, 4, 3, 50), d4 = random_map(rng, 4, 3, 50), e4 = random_map(rng, 4, 3, 50);
    CHECK(trace(compose({c4, d4})) == trace(compose({d4, c4})));
    CHECK(compose({compose({c4, d4}), e4}) == compose({c4, compose({d4, e4})}));
    CHECK_THROWS(trace(SparseTensor({2}, {3})));
    CHECK_THROWS(compose({SparseTensor({2}, {3}), SparseTensor({2}, {2})}));
}

TEST_CASE("linear solving") {
    CHECK(invert_map(SparseTensor::identity({4})) == SparseTensor::identity({4}));
    SparseTensor row({1}, {2});
    row.set({0, 0}, CycloNum(1));
    row.set({0, 1}, CycloNum(1));
    auto ker = kernel(row);
    REQUIRE(ker.size() == 1);
    CHECK(ker[0][0] == -ker[0][1]);
    CHECK_FALSE(ker[0][0].is_zero());

    std::mt19937 rng(5);
    int inverted = 0;
    for (int trial = 0; trial < 10; ++trial) {
        SparseTensor a = random_map(rng, 5, 1, 70);
        try {
            SparseTensor inv = invert_map(a);
            CHECK(compose({a, inv}) == SparseTensor::identity({5}));
            CHECK(compose({inv, a}) == SparseTensor::identity({5}));
            ++inverted;
        } catch (const SingularError& e) {
            CHECK(e.rank() < 5);
            CHECK(bareiss_determinant(dense_of(a)).is_zero());
        }
        std::vector<CycloNum> b(5);
        for (auto& x : b) x = random_cyclo(rng, 1);
        try {
            auto x = solve_linear(a, b);
            for (int i = 0; i < 5; ++i) {
                CycloNum s;
                for (int j = 0; j < 5; ++j) s += a.get({i, j}) * x[j];
                CHECK(s == b[i]);
            }
        } catch (const std::domain_error&) {
            CHECK(rank_of(a) < 5);
        }
    }
    CHECK(inverted > 0);
    SparseTensor sing({2}, {2});
    sing.set({0, 0}, CycloNum(1));
    sing.set({1, 0}, CycloNum(2));
    CHECK_THROWS_AS(invert_map(sing), SingularError);

    // cyclotomic entries, Bareiss against the sparse path
    SparseTensor a = random_map(rng, 4, 3, 100);
    Matrix rhs(4, std::vector<CycloNum>(4));
    for (int i = 0; i < 4; ++i) rhs[i][i] = CycloNum(1);
    Matrix x = bareiss_solve(dense_of(a), rhs);
    SparseTensor inv = invert_map(a);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(x[i][j] == inv.get({i, j}));
}

TEST_CASE("apply_legs matches compose with identity padding") {
    std::mt19937 rng(3);
    SparseTensor f = random_map(rng, 3, 1, 50);
    LinMap lf = LinMap::from_tensor(f);
    SVec v;
    for (std::uint64_t k = 0; k < 27; k += 2) v.emplace_back(k, CycloNum(static_cast<long long>(k) + 1));
    SVec w = apply_legs(v, 3, 3, lf, 1, 1, 1);
    SparseTensor big = tensor_product(tensor_product(SparseTensor::identity({3}), f), SparseTensor::identity({3}));
    SparseTensor vv({27}, {1});
    for (const auto& [k, c] : v) vv.set_rc(k, 0, c);
    SparseTensor expect = compose({LinMap::from_tensor(big).to_tensor({27}, {27}), vv});
    REQUIRE(w.size() == expect.nnz());
    for (const auto& [k, c] : w) CHECK(expect.get_rc(k, 0) == c);
}
