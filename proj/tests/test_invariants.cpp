#include "doctest.h"

#include "hopftwist/catalog.hpp"
#include "hopftwist/invariants.hpp"
#include "hopftwist/linsolve.hpp"

#include <algorithm>
#include <memory>
#include <random>

using namespace hopftwist;

namespace {

Deformation trivial_deformation(const HopfAlgebraData& h) { return twist_comodule_algebra(trivial_hopf_cocycle(std::make_shared<const HopfAlgebraData>(h))); }

Fingerprint fp(const Deformation& w, int depth, Exec exec = Exec::parallel) {
    FingerprintOptions o;
    o.depth = depth;
    o.exec = exec;
    return fingerprint(w, o);
}

Functional dual_basis(int n, int i) {
    Functional f(n);
    f[i] = CycloNum(1);
    return f;
}

bool has_value(const Fingerprint& f, const CycloNum& v) {
    return std::any_of(f.entries.begin(), f.entries.end(), [&](const FingerprintEntry& e) { return e.value == v; });
}

Deformation dual_ff(const FiniteGroup& g, const MuNCocycle& a) {
    std::vector<int> all(g.order());
    for (int i = 0; i < g.order(); ++i) all[i] = i;
    return dual_group_deformation(g, Subgroup(g, all), a);
}

Deformation order36_deformation() {
    FiniteGroup g = order36_group();
    std::vector<int> f;
    for (int h = 0; h < 9; ++h) f.push_back(4 * h);
    return dual_group_deformation(g, Subgroup(g, f), z3z3_zeta_jk_cocycle());
}

// sum_k v_k prod_{j != k} (x - j)/(k - j) through the points 0..deg
Rational interpolate(const std::vector<Rational>& v, int x) {
    Rational s(0);
    int d = static_cast<int>(v.size());
    for (int k = 0; k < d; ++k) {
        Rational t = v[k];
        for (int j = 0; j < d; ++j)
            if (j != k) t = t * Rational(x - j, k - j);
        s = s + t;
    }
    return s;
}

}  // namespace

TEST_CASE("three evaluation routes agree") {
    SUBCASE("V4 twisted group algebra, depth 2") {
        Deformation w = group_cocycle_deformation(klein_four(), v4_nondegenerate_cocycle());
        FingerprintOptions o;
        o.depth = 2;
        Fingerprint fast = fingerprint(w, o), stream = fingerprint_streaming(w, o);
        CHECK(compare_fingerprints(fast, stream) == Verdict::indistinguishable);
        for (const auto& e : fast.entries) CHECK(basic_invariant_reference(w, e.spec, dual_basis(4, e.spec.f)) == e.value);
    }
    SUBCASE("Taft n = 3 with random functionals") {
        Deformation w = taft_deformation(3, CycloNum(2), CycloNum(Rational(1, 3)));
        std::mt19937 rng(7);
        std::uniform_int_distribution<int> coef(-3, 3), basis(0, 8);
        for (int trial = 0; trial < 12; ++trial) {
            Functional f(9);
            for (auto& x : f) x = CycloNum(coef(rng));
            int l = trial % 3;
            auto perms = Permutation::all(l + 1);
            InvariantSpec s{l, perms[trial % perms.size()], 0, {}};
            for (int k = 0; k < l; ++k) s.hs.push_back(basis(rng));
            CycloNum a = basic_invariant(w, s, f);
            CHECK(a == basic_invariant_reference(w, s, f));
            FingerprintOptions o;
            o.functionals = {f};
            o.specs = {s};
            Fingerprint one = fingerprint(w, o);
            CHECK((one.entries.empty() ? CycloNum() : one.entries[0].value) == a);
        }
    }
    SUBCASE("serial and parallel kernels give identical fingerprints") {
        Deformation w = taft_deformation(2, CycloNum(1), CycloNum(3));
        Fingerprint a = fp(w, 2, Exec::serial), b = fp(w, 2, Exec::parallel);
        REQUIRE(a.entries.size() == b.entries.size());
        CHECK(compare_fingerprints(a, b) == Verdict::indistinguishable);
    }
}

TEST_CASE("fingerprint order and shape") {
    Deformation w = group_cocycle_deformation(klein_four(), v4_nondegenerate_cocycle());
    Fingerprint f = fp(w, 2);
    CHECK(std::is_sorted(f.entries.begin(), f.entries.end(), [](const auto& a, const auto& b) { return spec_less(a.spec, b.spec); }));
    CHECK(std::none_of(f.entries.begin(), f.entries.end(), [](const auto& e) { return e.value.is_zero(); }));
    CHECK(f.f_labels == w.parent->labels);
    CHECK(f.h_set == std::vector<int>{0, 1, 2, 3});
    REQUIRE(!f.entries.empty());
    CHECK(f.find(f.entries.back().spec) != nullptr);
    CHECK(*f.find(f.entries.back().spec) == f.entries.back().value);
}

TEST_CASE("depth 0 on group algebras") {
    for (const char* g : {"cyclic:3", "v4", "sym:3"}) {
        FiniteGroup grp = parse_group_spec(g);
        Deformation w = trivial_deformation(group_algebra(grp));
        Fingerprint f = fp(w, 0);
        // A_{e_g} projects onto U_g
        REQUIRE(static_cast<int>(f.entries.size()) == grp.order());
        for (const auto& e : f.entries) CHECK(e.value == CycloNum(1));
    }
}

TEST_CASE("spec validation and missing T") {
    Deformation w = taft_deformation(2, CycloNum(1), CycloNum(0));
    CHECK_THROWS_AS(basic_invariant(w, InvariantSpec{1, Permutation::identity(1), 0, {0}}), std::invalid_argument);
    CHECK_THROWS_AS(basic_invariant(w, InvariantSpec{1, Permutation::identity(2), 0, {}}), std::invalid_argument);
    CHECK_THROWS_AS(basic_invariant(w, InvariantSpec{0, Permutation::identity(1), 4, {}}), std::invalid_argument);
    CHECK_THROWS_AS(basic_invariant(w, InvariantSpec{1, Permutation::identity(2), 0, {7}}), std::invalid_argument);
    Deformation no_t = w;
    no_t.inverse_galois.reset();
    CHECK_THROWS_WITH_AS(basic_invariant(no_t, InvariantSpec{0, Permutation::identity(1), 0, {}}), doctest::Contains("invert_M"), std::logic_error);
}

TEST_CASE("word invariants of the V4 cocycle") {
    MuNCocycle a = v4_nondegenerate_cocycle();
    // x y x^-1 y^-1 with x = index 2, y = index 1
    CycloNum comm = uct_evaluate(a, {{2, 1}, {1, 1}, {2, -1}, {1, -1}});
    CHECK(comm == CycloNum(-1));
    Fingerprint twisted = fp(group_cocycle_deformation(klein_four(), a), 3);
    Fingerprint plain = fp(group_cocycle_deformation(klein_four(), trivial_cocycle(klein_four(), 2)), 3);
    CHECK(has_value(twisted, comm));
    CHECK_FALSE(has_value(plain, comm));
    CHECK(compare_fingerprints(twisted, plain) == Verdict::distinct);
}

TEST_CASE("gauge equivalent cocycles have equal fingerprints") {
    auto kg = std::make_shared<const HopfAlgebraData>(group_algebra(klein_four()));
    HopfTwoCocycle a = lift_group_cocycle(kg, v4_nondegenerate_cocycle());
    Functional nu{CycloNum(1), CycloNum(2), CycloNum(Rational(-1, 3)), CycloNum(5)};
    HopfTwoCocycle b = gauge_cocycle(a, nu);
    REQUIRE(b.alpha != a.alpha);
    CHECK(compare_fingerprints(fp(twist_comodule_algebra(a), 2), fp(twist_comodule_algebra(b), 2)) == Verdict::indistinguishable);

    auto taft = std::make_shared<const HopfAlgebraData>(taft_hopf(2));
    Functional mu{CycloNum(1), CycloNum(3), CycloNum(-1), CycloNum(2)};
    HopfTwoCocycle t = gauge_cocycle(trivial_hopf_cocycle(taft), mu);
    CHECK(compare_fingerprints(fp(twist_comodule_algebra(t), 2), fp(trivial_deformation(*taft), 2)) == Verdict::indistinguishable);
}

TEST_CASE("S3 twisted group algebras look untwisted") {
    FiniteGroup s3 = symmetric_group(3);
    MuNCocycle c = trivial_cocycle(s3, 6);
    // a coboundary: e(g, h) = b(g) + b(h) - b(gh)
    std::vector<int> b{0, 1, 3, 2, 5, 4};
    b[s3.identity()] = 0;
    for (int g = 0; g < 6; ++g)
        for (int h = 0; h < 6; ++h) c.exponents[g][h] = ((b[g] + b[h] - b[s3.mul(g, h)]) % 6 + 6) % 6;
    Fingerprint twisted = fp(group_cocycle_deformation(s3, c), 2);
    CHECK(compare_fingerprints(twisted, fp(trivial_deformation(group_algebra(s3)), 2)) == Verdict::indistinguishable);
}

TEST_CASE("Taft fingerprints depend on b only") {
    for (int n : {2, 3}) {
        std::vector<Fingerprint> by_b;
        for (int b = 0; b < 3; ++b) {
            Fingerprint f1 = fp(taft_deformation(n, CycloNum(1), CycloNum(b)), 2);
            Fingerprint f2 = fp(taft_deformation(n, CycloNum(2), CycloNum(b)), 2);
            CHECK(compare_fingerprints(f1, f2) == Verdict::indistinguishable);
            by_b.push_back(f1);
        }
        CHECK(compare_fingerprints(by_b[0], by_b[1]) == Verdict::distinct);
        CHECK(compare_fingerprints(by_b[0], by_b[2]) == Verdict::distinct);
        CHECK(compare_fingerprints(by_b[1], by_b[2]) == Verdict::distinct);
        CHECK(compare_fingerprints(by_b[0], fp(trivial_deformation(taft_hopf(n)), 2)) == Verdict::indistinguishable);
    }
}

TEST_CASE("Taft n = 2 entries are polynomials in b") {
    std::vector<Fingerprint> f;
    for (int b = 0; b <= 4; ++b) f.push_back(fp(taft_deformation(2, CycloNum(1), CycloNum(b)), 2));
    std::vector<InvariantSpec> specs;
    for (const auto& x : f)
        for (const auto& e : x.entries) specs.push_back(e.spec);
    std::sort(specs.begin(), specs.end(), spec_less);
    specs.erase(std::unique(specs.begin(), specs.end()), specs.end());
    int varying = 0;
    for (const auto& s : specs) {
        std::vector<Rational> v;
        for (int b = 0; b <= 4; ++b) {
            const CycloNum* x = f[b].find(s);
            REQUIRE((x == nullptr || x->is_rational()));
            v.push_back(x ? x->rational_part() : Rational(0));
        }
        // cubic through b = 0..3 predicts b = 4
        CHECK(interpolate({v.begin(), v.begin() + 4}, 4) == v[4]);
        if (v[0] != v[1]) ++varying;
    }
    CHECK(varying > 0);
}

TEST_CASE("comparison") {
    Deformation w = taft_deformation(2, CycloNum(1), CycloNum(0));
    CHECK(compare_fingerprints(fp(w, 2), fp(w, 2)) == Verdict::indistinguishable);
    CHECK(compare_fingerprints(fp(w, 2), fp(taft_deformation(2, CycloNum(1), CycloNum(1)), 2)) == Verdict::distinct);
    CHECK_THROWS_AS(compare_fingerprints(fp(w, 2), fp(w, 1)), std::invalid_argument);
    CHECK_THROWS_AS(compare_fingerprints(fp(w, 1), fp(group_cocycle_deformation(klein_four(), v4_nondegenerate_cocycle()), 1)), std::invalid_argument);
}

TEST_CASE("projectors m tau T_{e_{f^-1}}") {
    for (MuNCocycle a : {v4_nondegenerate_cocycle(), z3z3_zeta_jk_cocycle()}) {
        const FiniteGroup& g = a.group;
        Deformation w = dual_ff(g, a);
        int n = w.dim;
        std::vector<SparseTensor> e;
        for (int f = 0; f < g.order(); ++f) e.push_back(projector_from_T(w, g.inv(f)));
        SparseTensor sum({n}, {n});
        for (int f = 0; f < g.order(); ++f) {
            CHECK(rank_of(e[f]) == 1);
            for (int h = 0; h < g.order(); ++h) {
                SparseTensor p = compose({e[f], e[h]});
                CHECK(p == (f == h ? e[f] : SparseTensor({n}, {n})));
            }
            for (const auto& [k, v] : e[f].entries()) sum.add_rc(k / n, k % n, v);
        }
        CHECK(sum == SparseTensor::identity({n}));
    }
    // on untwisted KS3, m tau T_g is conjugation by U_g
    FiniteGroup s3 = symmetric_group(3);
    Deformation w = trivial_deformation(group_algebra(s3));
    for (int g = 0; g < 6; ++g) {
        SparseTensor conj({6}, {6});
        for (int x = 0; x < 6; ++x) conj.set({s3.conjugate(g, x), x}, CycloNum(1));
        CHECK(projector_from_T(w, g) == conj);
    }
}

TEST_CASE("F = G invariants lie in |F|^{-l} Z") {
    Deformation w = dual_ff(klein_four(), v4_nondegenerate_cocycle());
    for (const auto& e : fp(w, 2).entries) {
        REQUIRE(e.value.is_rational());
        Rational scaled = e.value.rational_part() * Rational(1 << (2 * e.spec.l));
        CHECK(scaled.denominator() == 1);
    }
}

TEST_CASE("coset sums on the order-36 deformation") {
    Deformation w = order36_deformation();
    FiniteGroup g = order36_group();
    std::vector<int> fe;
    for (int h = 0; h < 9; ++h) fe.push_back(4 * h);
    Subgroup f(g, fe);
    Deformation block = dual_ff(subgroup_group(f), z3z3_zeta_jk_cocycle());
    Fingerprint lhs = fp(w, 1);
    int nonzero = 0;
    for (int l = 0; l <= 1; ++l)
        for (const auto& sigma : Permutation::all(l + 1))
            for (int x = 0; x < 36; ++x)
                for (int h = 0; h < (l ? 36 : 1); ++h) {
                    InvariantSpec s{l, sigma, x, l ? std::vector<int>{h} : std::vector<int>{}};
                    const CycloNum* v = lhs.find(s);
                    CycloNum rhs = dual_group_coset_sum(f, block, s);
                    CHECK((v ? *v : CycloNum()) == rhs);
                    nonzero += !rhs.is_zero();
                }
    CHECK(nonzero > 0);
}

TEST_CASE("Galois twists") {
    Deformation w = dual_ff(subgroup_group(Subgroup(direct_product(cyclic_group(3), cyclic_group(3)), {0, 1, 2, 3, 4, 5, 6, 7, 8})), z3z3_zeta_jk_cocycle());
    Deformation same = galois_twist_deformation(w, 1);
    CHECK(same.mult == w.mult);
    CHECK(*same.inverse_galois == *w.inverse_galois);
    Deformation g2 = galois_twist_deformation(w, 2);
    CHECK(verify_comodule_algebra(g2).ok());
    Fingerprint f = fp(w, 2);
    CHECK(compare_fingerprints(fp(g2, 2), galois_apply(f, 2)) == Verdict::indistinguishable);
    RationalityReport r = rationality_report(f);
    CHECK(r.nonzero == f.entries.size());
    CHECK(r.rational + r.irrational.size() == r.nonzero);
    CHECK_FALSE(r.all_rational());
    CHECK_THROWS_AS(galois_twist_deformation(w, 3), std::invalid_argument);
    // H_3 itself involves zeta_3
    CHECK_THROWS_AS(galois_twist_deformation(taft_deformation(3, CycloNum(1), CycloNum(1)), 2), std::invalid_argument);
}

TEST_CASE("curated specs separate the B(V) # KS3 family") {
    std::vector<Fingerprint> f;
    for (auto [l, m] : std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {0, 1}, {1, 1}}) {
        Deformation w = fk3_deformation_group(CycloNum(l), CycloNum(m));
        FingerprintOptions o;
        o.specs = fk3_separating_specs(*w.parent);
        f.push_back(fingerprint(w, o));
    }
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) CHECK(compare_fingerprints(f[i], f[j]) == Verdict::distinct);
}
