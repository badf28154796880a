#pragma once

#include "hopftwist/tensor.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace hopftwist {

// Letters are generator indices stored as chars; the order is degree first, then
// lexicographic by generator index.
using Word = std::string;
bool deglex_less(const Word& a, const Word& b);

// A term is word * b where b is a basis element of the coefficient algebra B,
// always written to the right of the word.
struct Term {
    Word word;
    int b = 0;
    friend bool operator==(const Term& x, const Term& y) { return x.word == y.word && x.b == y.b; }
};
struct TermLess {
    bool operator()(const Term& x, const Term& y) const {
        if (x.word != y.word) return deglex_less(x.word, y.word);
        return x.b < y.b;
    }
};
using Element = std::map<Term, CycloNum, TermLess>;

// b x_t = sum coef x_letter b'
struct StraightenTerm {
    int letter;
    int b;
    CycloNum coef;
};

// Finite-dimensional algebra B with basis letters can be pushed past from the left.
// For plain presentations B = K.
struct CoefficientAlgebra {
    int dim = 1;
    std::vector<std::string> labels{"1"};
    SparseTensor mult;                 // out {dim} in {dim, dim}
    std::vector<CycloNum> unit{CycloNum(1)};
    std::vector<std::vector<std::vector<StraightenTerm>>> straighten;  // [b][letter]

    static CoefficientAlgebra trivial(int num_letters);
    int unit_index() const;  // basis index of the unit if the unit is a basis element, else -1
};

class EscapesBasis : public std::runtime_error {
public:
    explicit EscapesBasis(const std::string& word) : std::runtime_error("normal form escapes the declared basis at word '" + word + "'"), word_(word) {}
    const std::string& word() const { return word_; }

private:
    std::string word_;
};

struct Rule {
    Word lhs;
    Element rhs;
};

enum class Strategy { leftmost, rightmost };

class RewriteSystem {
public:
    RewriteSystem() = default;
    RewriteSystem(std::vector<std::string> generator_labels, CoefficientAlgebra coeffs);

    int num_generators() const { return static_cast<int>(gens_.size()); }
    const std::vector<std::string>& generators() const { return gens_; }
    const CoefficientAlgebra& coefficients() const { return b_; }
    const std::vector<Rule>& rules() const { return rules_; }
    const std::vector<Word>& basis() const { return basis_; }

    // Orients relation = 0 by its leading word, whose coefficient must be a scalar multiple of 1_B.
    void add_relation(const Element& relation);
    void add_rule(Word lhs, Element rhs);
    void set_basis(std::vector<Word> words);

    bool is_reducible(const Word& w) const;
    // Rewrites until irreducible; throws EscapesBasis if a declared basis exists and is left.
    Element normal_form(const Element& x, Strategy s = Strategy::leftmost) const;
    Element normal_form(const Word& w) const;

    // Letter and coefficient helpers.
    Element letter(int t) const;
    Element coeff(int b) const;
    Element one() const;
    Element multiply(const Element& x, const Element& y) const;  // reduced product
    // Irreducible words up to the given length.
    std::vector<Word> irreducible_words(int max_length) const;

    std::string word_label(const Word& w) const;
    std::string term_label(const Term& t) const;
    Word parse_word(const std::string& text) const;  // generator labels separated by spaces or single-char labels

private:
    // b * w = sum coef w' b'
    std::vector<std::pair<Term, CycloNum>> push_through(int b, const Word& w) const;
    void reduce_once(Element& work, const Term& t, const CycloNum& c, std::size_t pos, const Rule& r) const;
    const Rule* find_rule(const Word& w, Strategy s, std::size_t& pos) const;

    std::vector<std::string> gens_;
    CoefficientAlgebra b_;
    std::vector<Rule> rules_;
    std::vector<Word> basis_;
    std::vector<std::vector<SVec>> bprod_;  // products of coefficient basis elements
    std::map<Word, int> basis_index_;
};

// Adds resolved critical pairs (overlaps and inclusions of leading words) up to the
// degree bound, and checks that the coefficient algebra respects every rule.
// Throws std::runtime_error if a new rule has a leading coefficient outside K 1_B or
// if the process has not stabilized by the bound.
RewriteSystem complete_rules(RewriteSystem r, int degree_bound);
// Critical pairs of degree <= bound that do not resolve; empty iff locally confluent there.
std::vector<Word> unresolved_overlaps(const RewriteSystem& r, int degree_bound);

// Structure constants on basis (declared words) x (basis of B), index word_index * dim B + b.
struct PresentedAlgebra {
    RewriteSystem system;
    std::vector<Word> words;
    std::vector<std::string> labels;
    SparseTensor mult;
    std::vector<CycloNum> unit;

    int dim() const { return static_cast<int>(words.size()) * system.coefficients().dim; }
    int index(const Word& w, int b) const;
    int index_of_word(const Word& w) const;
    // Coordinates of a reduced element in this basis.
    SVec to_vector(const Element& x) const;
};
PresentedAlgebra structure_constants(const RewriteSystem& r);

}  // namespace hopftwist
