#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hopftwist {

class FiniteGroup {
public:
    FiniteGroup() = default;
    // Validates associativity, identity and inverses.
    static FiniteGroup from_table(std::vector<std::vector<int>> mult, std::vector<std::string> labels = {});

    int order() const { return static_cast<int>(mult_.size()); }
    int mul(int a, int b) const { return mult_[a][b]; }
    int inv(int a) const { return inv_[a]; }
    int identity() const { return id_; }
    const std::vector<std::vector<int>>& table() const { return mult_; }
    const std::string& label(int g) const { return labels_[g]; }
    const std::vector<std::string>& labels() const { return labels_; }
    int index_of(std::string_view label) const;
    int element_order(int g) const;
    // g x g^{-1}
    int conjugate(int g, int x) const { return mul(mul(g, x), inv(g)); }
    int num_conjugacy_classes() const;
    bool is_abelian() const;
    // Least common multiple of the element orders.
    int exponent() const;

    friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.mult_ == b.mult_; }

private:
    std::vector<std::vector<int>> mult_;
    std::vector<int> inv_;
    int id_ = 0;
    std::vector<std::string> labels_;
};

FiniteGroup cyclic_group(int n);
// Element (g, h) has index g * |H| + h.
FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);
// action[a][h] = a(h); element (h, a) has index h * |A| + a with
// (h1, a1)(h2, a2) = (h1 a1(h2), a1 a2).
FiniteGroup semidirect_product(const FiniteGroup& h, const FiniteGroup& a, const std::vector<std::vector<int>>& action);
// Permutations of {1..n} in lexicographic one-line order, composed right to left.
FiniteGroup symmetric_group(int n);
// Klein four group Z/2 x Z/2 (x^i y^j has index 2i + j).
FiniteGroup klein_four();
// (Z/3 x Z/3) x| Z/4 with the generator acting by x^i y^j -> x^{2i} y^j.
FiniteGroup order36_group();

// cyclic:3, sym:3, v4, prod(G,H), semidirect(prod(cyclic:3,cyclic:3),cyclic:4,action=paper-36);
// order-36 names the same action.
FiniteGroup parse_group_spec(std::string_view spec);

class Subgroup {
public:
    // Throws if the set is not a subgroup.
    Subgroup(const FiniteGroup& parent, std::vector<int> elements);

    const FiniteGroup& parent() const { return parent_; }
    const std::vector<int>& elements() const { return elems_; }
    const std::vector<int>& coset_reps() const { return reps_; }
    int order() const { return static_cast<int>(elems_.size()); }
    int index() const { return static_cast<int>(reps_.size()); }
    bool contains(int g) const { return member_[g] != 0; }
    // Position of g inside elements(), or -1.
    int position(int g) const { return pos_[g]; }
    // i with x in t_i F.
    int coset_of(int x) const { return coset_[x]; }
    // The unique j with t_i^{-1} g t_j in F, together with that element.
    std::pair<int, int> transversal(int g, int i) const;
    bool is_normal() const;

private:
    FiniteGroup parent_;
    std::vector<int> elems_;
    std::vector<int> reps_;
    std::vector<char> member_;
    std::vector<int> pos_;
    std::vector<int> coset_;
};

Subgroup coset_reps(const FiniteGroup& g, std::vector<int> elements);
bool is_normal(const FiniteGroup& g, const std::vector<int>& elements);
int conjugate(const FiniteGroup& g, int by, int x);

}  // namespace hopftwist
