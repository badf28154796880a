#include "hopftwist/groups.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <stdexcept>

namespace hopftwist {

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> mult, std::vector<std::string> labels) {
    int m = static_cast<int>(mult.size());
    if (m == 0) throw std::invalid_argument("empty group table");
    for (const auto& row : mult) {
        if (static_cast<int>(row.size()) != m) throw std::invalid_argument("group table is not square");
        for (int x : row)
            if (x < 0 || x >= m) throw std::invalid_argument("group table entry out of range");
    }
    FiniteGroup g;
    g.mult_ = std::move(mult);
    int id = -1;
    for (int e = 0; e < m && id < 0; ++e) {
        bool ok = true;
        for (int x = 0; x < m && ok; ++x) ok = g.mult_[e][x] == x && g.mult_[x][e] == x;
        if (ok) id = e;
    }
    if (id < 0) throw std::invalid_argument("group table has no identity");
    g.id_ = id;
    g.inv_.assign(m, -1);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (g.mult_[a][b] == id && g.mult_[b][a] == id) g.inv_[a] = b;
    for (int a = 0; a < m; ++a)
        if (g.inv_[a] < 0) throw std::invalid_argument("group table element without inverse");
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c)
                if (g.mult_[g.mult_[a][b]][c] != g.mult_[a][g.mult_[b][c]]) throw std::invalid_argument("group table is not associative");
    if (labels.empty()) {
        for (int a = 0; a < m; ++a) labels.push_back(std::to_string(a));
    }
    if (static_cast<int>(labels.size()) != m) throw std::invalid_argument("label count differs from group order");
    std::set<std::string> uniq(labels.begin(), labels.end());
    if (static_cast<int>(uniq.size()) != m) throw std::invalid_argument("group labels are not unique");
    g.labels_ = std::move(labels);
    return g;
}

int FiniteGroup::index_of(std::string_view label) const {
    for (int i = 0; i < order(); ++i)
        if (labels_[i] == label) return i;
    throw std::invalid_argument("no group element labelled '" + std::string(label) + "'");
}

int FiniteGroup::element_order(int g) const {
    int k = 1;
    for (int x = g; x != id_; x = mul(x, g)) ++k;
    return k;
}

int FiniteGroup::num_conjugacy_classes() const {
    std::vector<char> seen(order(), 0);
    int n = 0;
    for (int x = 0; x < order(); ++x) {
        if (seen[x]) continue;
        ++n;
        for (int g = 0; g < order(); ++g) seen[conjugate(g, x)] = 1;
    }
    return n;
}

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < order(); ++a)
        for (int b = 0; b < order(); ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

int FiniteGroup::exponent() const {
    int e = 1;
    for (int g = 0; g < order(); ++g) e = std::lcm(e, element_order(g));
    return e;
}

FiniteGroup cyclic_group(int n) {
    if (n < 1) throw std::invalid_argument("cyclic group order must be positive");
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return FiniteGroup::from_table(std::move(t));
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
    int m = g.order(), n = h.order();
    std::vector<std::vector<int>> t(m * n, std::vector<int>(m * n));
    std::vector<std::string> labels;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < n; ++b) labels.push_back("(" + g.label(a) + "," + h.label(b) + ")");
    for (int a1 = 0; a1 < m; ++a1)
        for (int b1 = 0; b1 < n; ++b1)
            for (int a2 = 0; a2 < m; ++a2)
                for (int b2 = 0; b2 < n; ++b2) t[a1 * n + b1][a2 * n + b2] = g.mul(a1, a2) * n + h.mul(b1, b2);
    return FiniteGroup::from_table(std::move(t), std::move(labels));
}

FiniteGroup semidirect_product(const FiniteGroup& h, const FiniteGroup& a, const std::vector<std::vector<int>>& action) {
    int m = h.order(), k = a.order();
    if (static_cast<int>(action.size()) != k) throw std::invalid_argument("action must list one map per acting element");
    for (int x = 0; x < k; ++x) {
        const auto& phi = action[x];
        if (static_cast<int>(phi.size()) != m) throw std::invalid_argument("action map has wrong length");
        std::vector<int> sorted = phi;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < m; ++i)
            if (sorted[i] != i) throw std::invalid_argument("action map is not a bijection");
        for (int u = 0; u < m; ++u)
            for (int v = 0; v < m; ++v)
                if (phi[h.mul(u, v)] != h.mul(phi[u], phi[v])) throw std::invalid_argument("action map is not a homomorphism");
    }
    for (int x = 0; x < k; ++x)
        for (int y = 0; y < k; ++y)
            for (int u = 0; u < m; ++u)
                if (action[a.mul(x, y)][u] != action[x][action[y][u]]) throw std::invalid_argument("action is not a group homomorphism into Aut(H)");
    std::vector<std::vector<int>> t(m * k, std::vector<int>(m * k));
    std::vector<std::string> labels;
    for (int u = 0; u < m; ++u)
        for (int x = 0; x < k; ++x) labels.push_back("(" + h.label(u) + ";" + a.label(x) + ")");
    for (int u1 = 0; u1 < m; ++u1)
        for (int x1 = 0; x1 < k; ++x1)
            for (int u2 = 0; u2 < m; ++u2)
                for (int x2 = 0; x2 < k; ++x2) t[u1 * k + x1][u2 * k + x2] = h.mul(u1, action[x1][u2]) * k + a.mul(x1, x2);
    return FiniteGroup::from_table(std::move(t), std::move(labels));
}

namespace {

std::string cycle_label(const std::vector<int>& img) {
    int n = static_cast<int>(img.size());
    std::vector<char> seen(n, 0);
    std::string s;
    for (int i = 0; i < n; ++i) {
        if (seen[i] || img[i] == i + 1) continue;
        s += "(";
        for (int j = i; !seen[j]; j = img[j] - 1) {
            seen[j] = 1;
            s += std::to_string(j + 1);
        }
        s += ")";
    }
    return s.empty() ? "e" : s;
}

}  // namespace

FiniteGroup symmetric_group(int n) {
    if (n < 1 || n > 5) throw std::invalid_argument("symmetric group degree must be in 1..5");
    std::vector<std::vector<int>> perms;
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    do {
        perms.push_back(v);
    } while (std::next_permutation(v.begin(), v.end()));
    int m = static_cast<int>(perms.size());
    auto find = [&](const std::vector<int>& p) {
        return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), p) - perms.begin());
    };
    std::vector<std::vector<int>> t(m, std::vector<int>(m));
    std::vector<int> c(n);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            for (int x = 0; x < n; ++x) c[x] = perms[a][perms[b][x] - 1];
            t[a][b] = find(c);
        }
    std::vector<std::string> labels;
    for (const auto& p : perms) labels.push_back(cycle_label(p));
    return FiniteGroup::from_table(std::move(t), std::move(labels));
}

FiniteGroup klein_four() { return direct_product(cyclic_group(2), cyclic_group(2)); }

FiniteGroup order36_group() {
    FiniteGroup h = direct_product(cyclic_group(3), cyclic_group(3));
    FiniteGroup a = cyclic_group(4);
    std::vector<std::vector<int>> action(4, std::vector<int>(9));
    for (int k = 0; k < 4; ++k) {
        int mult = 1;
        for (int r = 0; r < k; ++r) mult = (mult * 2) % 3;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) action[k][i * 3 + j] = ((mult * i) % 3) * 3 + j;
    }
    return semidirect_product(h, a, action);
}

namespace {

class SpecParser {
public:
    explicit SpecParser(std::string_view s) : s_(s) {}

    FiniteGroup run() {
        FiniteGroup g = group();
        if (pos_ != s_.size()) fail("trailing characters");
        return g;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw std::invalid_argument("bad group spec '" + std::string(s_) + "': " + why);
    }
    std::string word() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-' || s_[pos_] == '_')) ++pos_;
        return std::string(s_.substr(start, pos_ - start));
    }
    void expect(char c) {
        if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    int number() {
        std::string w = word();
        if (w.empty() || !std::all_of(w.begin(), w.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) fail("expected a number");
        return std::stoi(w);
    }
    FiniteGroup group() {
        std::string head = word();
        if (head == "cyclic") {
            expect(':');
            return cyclic_group(number());
        }
        if (head == "sym") {
            expect(':');
            return symmetric_group(number());
        }
        if (head == "v4") return klein_four();
        if (head == "prod") {
            expect('(');
            FiniteGroup g = group();
            while (pos_ < s_.size() && s_[pos_] == ',') {
                ++pos_;
                g = direct_product(g, group());
            }
            expect(')');
            return g;
        }
        if (head == "semidirect") {
            expect('(');
            FiniteGroup h = group();
            expect(',');
            FiniteGroup a = group();
            expect(',');
            if (word() != "action") fail("expected action=");
            expect('=');
            std::string act = word();
            expect(')');
            if (act != "paper-36" && act != "order-36") fail("unknown action '" + act + "'");
            if (h.order() != 9 || a.order() != 4) fail("action " + act + " needs (Z/3 x Z/3) and Z/4");
            return order36_group();
        }
        fail("unknown group '" + head + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

FiniteGroup parse_group_spec(std::string_view spec) {
    std::string clean;
    for (char c : spec)
        if (!std::isspace(static_cast<unsigned char>(c))) clean += c;
    return SpecParser(clean).run();
}

Subgroup::Subgroup(const FiniteGroup& parent, std::vector<int> elements) : parent_(parent) {
    int m = parent.order();
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    member_.assign(m, 0);
    for (int x : elements) {
        if (x < 0 || x >= m) throw std::invalid_argument("subgroup element out of range");
        member_[x] = 1;
    }
    if (!member_[parent.identity()]) throw std::invalid_argument("subset does not contain the identity");
    for (int a : elements) {
        if (!member_[parent.inv(a)]) throw std::invalid_argument("subset is not closed under inverses");
        for (int b : elements)
            if (!member_[parent.mul(a, b)]) throw std::invalid_argument("subset is not closed under multiplication");
    }
    elems_ = std::move(elements);
    pos_.assign(m, -1);
    for (int i = 0; i < static_cast<int>(elems_.size()); ++i) pos_[elems_[i]] = i;
    coset_.assign(m, -1);
    std::vector<int> order_;
    order_.push_back(parent.identity());
    for (int g = 0; g < m; ++g)
        if (g != parent.identity()) order_.push_back(g);
    for (int g : order_) {
        if (coset_[g] >= 0) continue;
        int i = static_cast<int>(reps_.size());
        reps_.push_back(g);
        for (int f : elems_) coset_[parent.mul(g, f)] = i;
    }
}

std::pair<int, int> Subgroup::transversal(int g, int i) const {
    // t_i^{-1} g t_j in F  <=>  t_j in g^{-1} t_i F
    int j = coset_[parent_.mul(parent_.inv(g), reps_[i])];
    int f = parent_.mul(parent_.mul(parent_.inv(reps_[i]), g), reps_[j]);
    return {j, f};
}

bool Subgroup::is_normal() const { return hopftwist::is_normal(parent_, elems_); }

Subgroup coset_reps(const FiniteGroup& g, std::vector<int> elements) { return Subgroup(g, std::move(elements)); }

bool is_normal(const FiniteGroup& g, const std::vector<int>& elements) {
    std::vector<char> in(g.order(), 0);
    for (int x : elements) in[x] = 1;
    for (int a = 0; a < g.order(); ++a)
        for (int x : elements)
            if (!in[g.conjugate(a, x)]) return false;
    return true;
}

int conjugate(const FiniteGroup& g, int by, int x) { return g.conjugate(by, x); }

}  // namespace hopftwist
