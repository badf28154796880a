#include "doctest.h"

#include "hopftwist/hopf.hpp"
#include "hopftwist/presentation.hpp"

#include <random>

using namespace hopftwist;

namespace {

Element combo(const RewriteSystem& r, std::vector<std::pair<std::string, long long>> terms) {
    Element e;
    for (const auto& [w, c] : terms) e[Term{r.parse_word(w), 0}] += CycloNum(c);
    return e;
}

RewriteSystem fk3_rules(bool drop_last = false) {
    RewriteSystem r({"a", "b", "c"}, CoefficientAlgebra::trivial(3));
    r.add_relation(combo(r, {{"aa", 1}}));
    r.add_relation(combo(r, {{"bb", 1}}));
    r.add_relation(combo(r, {{"cc", 1}}));
    r.add_relation(combo(r, {{"ab", 1}, {"bc", 1}, {"ca", 1}}));
    if (!drop_last) r.add_relation(combo(r, {{"ac", 1}, {"cb", 1}, {"ba", 1}}));
    return r;
}

std::vector<Word> fk3_basis(const RewriteSystem& r) {
    std::vector<Word> b;
    for (const char* w : {"1", "a", "b", "c", "ab", "ac", "ba", "bc", "aba", "abc", "bac", "abac"}) b.push_back(r.parse_word(w));
    return b;
}

Element random_word_element(const RewriteSystem& r, std::mt19937& rng, int max_len) {
    Element e;
    std::uniform_int_distribution<int> len(0, max_len), letter(0, r.num_generators() - 1), coef(-3, 3);
    for (int k = 0; k < 3; ++k) {
        Word w;
        int l = len(rng);
        for (int i = 0; i < l; ++i) w.push_back(static_cast<char>(letter(rng)));
        CycloNum c(coef(rng));
        if (!c.is_zero()) e[Term{w, 0}] += c;
    }
    return e;
}

}  // namespace

TEST_CASE("deglex order") {
    CHECK(deglex_less("", std::string(1, '\0')));
    CHECK(deglex_less(std::string{0, 2}, std::string{1, 0}));
    CHECK(deglex_less(std::string{2, 2}, std::string{0, 0, 0}));
    CHECK_FALSE(deglex_less("ab", "ab"));
}

TEST_CASE("FK3 completion reproduces the 12-element basis") {
    RewriteSystem c = complete_rules(fk3_rules(), 5);
    std::vector<Word> words = c.irreducible_words(8);
    CHECK(words == fk3_basis(c));
    std::vector<int> profile(5);
    for (const auto& w : words) ++profile[w.size()];
    CHECK(profile == std::vector<int>{1, 3, 4, 3, 1});
    CHECK(unresolved_overlaps(c, 6).empty());
    // the completion adds exactly bab -> aba
    CHECK(c.rules().size() == 6);
    CHECK(c.word_label(c.rules().back().lhs) == "bab");
}

TEST_CASE("FK3 normal forms") {
    RewriteSystem c = complete_rules(fk3_rules(), 5);
    c.set_basis(fk3_basis(c));
    CHECK(c.normal_form(c.parse_word("aa")).empty());
    CHECK(c.normal_form(c.parse_word("ca")) == combo(c, {{"ab", -1}, {"bc", -1}}));
    CHECK(c.normal_form(c.parse_word("abacabac")).empty());
    // top degree: every degree-4 word is a multiple of abac
    for (const char* w : {"abca", "bacb", "cabc", "acba"}) {
        Element nf = c.normal_form(c.parse_word(w));
        for (const auto& [t, v] : nf) CHECK(c.word_label(t.word) == "abac");
    }
}

TEST_CASE("normal form is idempotent, linear and strategy independent") {
    RewriteSystem c = complete_rules(fk3_rules(), 5);
    c.set_basis(fk3_basis(c));
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        Element x = random_word_element(c, rng, 6), y = random_word_element(c, rng, 6);
        Element nx = c.normal_form(x);
        CHECK(c.normal_form(nx) == nx);
        CHECK(c.normal_form(x, Strategy::rightmost) == nx);
        Element sum = x;
        for (const auto& [t, v] : y) {
            sum[t] += v * CycloNum(2);
            if (sum[t].is_zero()) sum.erase(t);
        }
        Element lhs = c.normal_form(sum);
        Element rhs = nx;
        for (const auto& [t, v] : c.normal_form(y)) {
            rhs[t] += v * CycloNum(2);
            if (rhs[t].is_zero()) rhs.erase(t);
        }
        CHECK(lhs == rhs);
    }
}

TEST_CASE("FK3 structure constants") {
    RewriteSystem c = complete_rules(fk3_rules(), 5);
    c.set_basis(fk3_basis(c));
    PresentedAlgebra a = structure_constants(c);
    CHECK(a.dim() == 12);
    CHECK(check_associative(a.mult).ok);
    CHECK(check_unit(a.mult, a.unit).ok);
    CHECK(a.labels[11] == "abac");
}

TEST_CASE("commutative polynomial ring is already confluent") {
    RewriteSystem r({"x", "y"}, CoefficientAlgebra::trivial(2));
    r.add_relation(combo(r, {{"yx", 1}, {"xy", -1}}));
    RewriteSystem c = complete_rules(r, 6);
    CHECK(c.rules().size() == 1);
    CHECK(c.normal_form(c.parse_word("yxyx")) == combo(c, {{"xxyy", 1}}));
}

TEST_CASE("a dropped relation is detected") {
    RewriteSystem r = fk3_rules(true);
    r.set_basis(fk3_basis(r));
    CHECK_THROWS_AS(r.normal_form(r.parse_word("cb")), EscapesBasis);
    try {
        r.normal_form(r.parse_word("cb"));
    } catch (const EscapesBasis& e) {
        CHECK(e.word() == "cb");
    }
    // the missing relation is not a consequence of the others
    CHECK_THROWS(complete_rules(r, 5));
}

TEST_CASE("trivial presentation") {
    RewriteSystem r({}, CoefficientAlgebra::trivial(0));
    PresentedAlgebra a = structure_constants(r);
    CHECK(a.dim() == 1);
    CHECK(a.unit == std::vector<CycloNum>{CycloNum(1)});
    CHECK(a.mult.get({0, 0, 0}) == CycloNum(1));
}

TEST_CASE("inhomogeneous relations and coefficient algebras") {
    // K<x>/(x^2 - 2) over B = K[Z/2] with the generator s acting by x -> -x
    CoefficientAlgebra b;
    b.dim = 2;
    b.labels = {"1", "s"};
    b.mult = SparseTensor({2}, {2, 2});
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) b.mult.set({(i + j) % 2, i, j}, CycloNum(1));
    b.unit = {CycloNum(1), CycloNum()};
    b.straighten = {{{{0, 0, CycloNum(1)}}}, {{{0, 1, CycloNum(-1)}}}};
    RewriteSystem r({"x"}, b);
    Element rel;
    rel[Term{r.parse_word("xx"), 0}] = CycloNum(1);
    rel[Term{Word(), 0}] = CycloNum(-2);
    r.add_relation(rel);
    RewriteSystem c = complete_rules(r, 4);
    PresentedAlgebra a = structure_constants(c);
    CHECK(a.dim() == 4);
    CHECK(check_associative(a.mult).ok);
    // s x = -x s
    Element sx = c.multiply(c.coeff(1), c.letter(0));
    Element expect;
    expect[Term{r.parse_word("x"), 1}] = CycloNum(-1);
    CHECK(sx == expect);
}
