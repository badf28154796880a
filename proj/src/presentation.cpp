#include "hopftwist/presentation.hpp"

#include "hopftwist/hopf.hpp"

#include <algorithm>
#include <sstream>

namespace hopftwist {

bool deglex_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return static_cast<unsigned char>(a[i]) < static_cast<unsigned char>(b[i]);
    return false;
}

CoefficientAlgebra CoefficientAlgebra::trivial(int num_letters) {
    CoefficientAlgebra b;
    b.mult = SparseTensor({1}, {1, 1});
    b.mult.set({0, 0, 0}, CycloNum(1));
    b.straighten.assign(1, std::vector<std::vector<StraightenTerm>>(num_letters));
    for (int t = 0; t < num_letters; ++t) b.straighten[0][t] = {{t, 0, CycloNum(1)}};
    return b;
}

int CoefficientAlgebra::unit_index() const {
    int found = -1;
    for (int i = 0; i < dim; ++i) {
        if (unit[i].is_zero()) continue;
        if (found >= 0 || !unit[i].is_one()) return -1;
        found = i;
    }
    return found;
}

namespace {

void add_to(Element& e, const Term& t, const CycloNum& c) {
    if (c.is_zero()) return;
    auto it = e.find(t);
    if (it == e.end()) {
        e.emplace(t, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) e.erase(it);
}

Element subtract(const Element& a, const Element& b) {
    Element out = a;
    for (const auto& [t, c] : b) add_to(out, t, -c);
    return out;
}

}  // namespace

RewriteSystem::RewriteSystem(std::vector<std::string> generator_labels, CoefficientAlgebra coeffs) : gens_(std::move(generator_labels)), b_(std::move(coeffs)) {
    int nb = b_.dim;
    if (static_cast<int>(b_.straighten.size()) != nb) throw std::invalid_argument("straightening table must cover every coefficient basis element");
    for (const auto& row : b_.straighten)
        if (static_cast<int>(row.size()) != num_generators()) throw std::invalid_argument("straightening table must cover every letter");
    MultTable mt(b_.mult);
    bprod_.assign(nb, std::vector<SVec>(nb));
    for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j) bprod_[i][j] = mt.basis_product(i, j);
}

void RewriteSystem::add_rule(Word lhs, Element rhs) {
    for (const auto& [t, c] : rhs)
        if (!deglex_less(t.word, lhs)) throw std::invalid_argument("rule right-hand side must be smaller than '" + word_label(lhs) + "'");
    rules_.push_back({std::move(lhs), std::move(rhs)});
}

void RewriteSystem::add_relation(const Element& relation) {
    if (relation.empty()) return;
    const Word lead = relation.rbegin()->first.word;
    int b0 = -1;
    for (int b = 0; b < b_.dim && b0 < 0; ++b)
        if (!b_.unit[b].is_zero()) b0 = b;
    auto at = [&](int b) {
        auto it = relation.find(Term{lead, b});
        return it == relation.end() ? CycloNum() : it->second;
    };
    CycloNum c = at(b0) / b_.unit[b0];
    for (int b = 0; b < b_.dim; ++b)
        if (at(b) != c * b_.unit[b]) throw std::runtime_error("leading coefficient of relation at '" + word_label(lead) + "' is not a scalar");
    if (c.is_zero()) throw std::runtime_error("leading coefficient of relation at '" + word_label(lead) + "' is not a scalar");
    CycloNum s = -c.inverse();
    Element rhs;
    for (const auto& [t, v] : relation)
        if (t.word != lead) add_to(rhs, t, v * s);
    add_rule(lead, std::move(rhs));
}

void RewriteSystem::set_basis(std::vector<Word> words) {
    basis_ = std::move(words);
    basis_index_.clear();
    for (std::size_t i = 0; i < basis_.size(); ++i) basis_index_[basis_[i]] = static_cast<int>(i);
}

std::vector<std::pair<Term, CycloNum>> RewriteSystem::push_through(int b, const Word& w) const {
    std::vector<std::pair<Term, CycloNum>> cur{{Term{Word(), b}, CycloNum(1)}};
    for (char ch : w) {
        std::map<Term, CycloNum, TermLess> next;
        for (const auto& [t, c] : cur)
            for (const auto& st : b_.straighten[t.b][static_cast<unsigned char>(ch)]) {
                Word nw = t.word;
                nw.push_back(static_cast<char>(st.letter));
                CycloNum v = c * st.coef;
                auto it = next.find(Term{nw, st.b});
                if (it == next.end())
                    next.emplace(Term{nw, st.b}, v);
                else
                    it->second += v;
            }
        cur.clear();
        for (auto& [t, c] : next)
            if (!c.is_zero()) cur.emplace_back(t, c);
    }
    return cur;
}

const Rule* RewriteSystem::find_rule(const Word& w, Strategy s, std::size_t& pos) const {
    std::size_t n = w.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = s == Strategy::leftmost ? k : n - 1 - k;
        for (const auto& r : rules_) {
            std::size_t len = r.lhs.size();
            if (p + len <= n && w.compare(p, len, r.lhs) == 0) {
                pos = p;
                return &r;
            }
        }
    }
    // the empty word is reducible only by a rule with empty left side
    for (const auto& r : rules_)
        if (r.lhs.empty()) {
            pos = s == Strategy::leftmost ? 0 : n;
            return &r;
        }
    return nullptr;
}

bool RewriteSystem::is_reducible(const Word& w) const {
    std::size_t pos;
    return find_rule(w, Strategy::leftmost, pos) != nullptr;
}

void RewriteSystem::reduce_once(Element& work, const Term& t, const CycloNum& c, std::size_t pos, const Rule& r) const {
    Word prefix = t.word.substr(0, pos);
    Word suffix = t.word.substr(pos + r.lhs.size());
    for (const auto& [rt, rc] : r.rhs) {
        CycloNum base = c * rc;
        for (const auto& [st, sc] : push_through(rt.b, suffix)) {
            Word w = prefix + rt.word + st.word;
            CycloNum v = base * sc;
            for (const auto& [g, gc] : bprod_[st.b][t.b]) add_to(work, Term{w, static_cast<int>(g)}, v * gc);
        }
    }
}

Element RewriteSystem::normal_form(const Element& x, Strategy s) const {
    Element work = x;
    Element out;
    while (!work.empty()) {
        auto it = std::prev(work.end());
        Term t = it->first;
        CycloNum c = it->second;
        work.erase(it);
        std::size_t pos = 0;
        const Rule* r = find_rule(t.word, s, pos);
        if (!r) {
            if (!basis_.empty() && !basis_index_.count(t.word)) throw EscapesBasis(word_label(t.word));
            add_to(out, t, c);
            continue;
        }
        reduce_once(work, t, c, pos, *r);
    }
    return out;
}

Element RewriteSystem::normal_form(const Word& w) const {
    Element e;
    for (int b = 0; b < b_.dim; ++b) add_to(e, Term{w, b}, b_.unit[b]);
    return normal_form(e);
}

Element RewriteSystem::letter(int t) const {
    Element e;
    for (int b = 0; b < b_.dim; ++b) add_to(e, Term{Word(1, static_cast<char>(t)), b}, b_.unit[b]);
    return e;
}

Element RewriteSystem::coeff(int b) const {
    Element e;
    e.emplace(Term{Word(), b}, CycloNum(1));
    return e;
}

Element RewriteSystem::one() const {
    Element e;
    for (int b = 0; b < b_.dim; ++b) add_to(e, Term{Word(), b}, b_.unit[b]);
    return e;
}

Element RewriteSystem::multiply(const Element& x, const Element& y) const {
    Element prod;
    for (const auto& [t1, c1] : x)
        for (const auto& [t2, c2] : y) {
            CycloNum c = c1 * c2;
            for (const auto& [st, sc] : push_through(t1.b, t2.word)) {
                Word w = t1.word + st.word;
                for (const auto& [g, gc] : bprod_[st.b][t2.b]) add_to(prod, Term{w, static_cast<int>(g)}, c * sc * gc);
            }
        }
    return normal_form(prod);
}

std::vector<Word> RewriteSystem::irreducible_words(int max_length) const {
    std::vector<Word> out;
    if (is_reducible(Word())) return out;
    std::vector<Word> layer{Word()};
    out.push_back(Word());
    for (int len = 1; len <= max_length && !layer.empty(); ++len) {
        std::vector<Word> next;
        for (const auto& w : layer)
            for (int t = 0; t < num_generators(); ++t) {
                Word e = w;
                e.push_back(static_cast<char>(t));
                if (!is_reducible(e)) next.push_back(e);
            }
        std::sort(next.begin(), next.end(), deglex_less);
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

std::string RewriteSystem::word_label(const Word& w) const {
    if (w.empty()) return "1";
    std::string s;
    bool spaced = false;
    for (const auto& g : gens_)
        if (g.size() != 1) spaced = true;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (spaced && i) s += " ";
        s += gens_.at(static_cast<unsigned char>(w[i]));
    }
    return s;
}

std::string RewriteSystem::term_label(const Term& t) const {
    if (b_.dim == 1) return word_label(t.word);
    if (t.word.empty()) return b_.labels[t.b];
    return word_label(t.word) + "*" + b_.labels[t.b];
}

Word RewriteSystem::parse_word(const std::string& text) const {
    Word w;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok == "1") continue;
        auto it = std::find(gens_.begin(), gens_.end(), tok);
        if (it != gens_.end()) {
            w.push_back(static_cast<char>(it - gens_.begin()));
            continue;
        }
        for (char ch : tok) {
            auto jt = std::find(gens_.begin(), gens_.end(), std::string(1, ch));
            if (jt == gens_.end()) throw std::invalid_argument("unknown generator in word '" + text + "'");
            w.push_back(static_cast<char>(jt - gens_.begin()));
        }
    }
    return w;
}

namespace {

struct Overlap {
    Word word;
    std::size_t i, j;  // rule indices
    std::size_t pos_j;  // position of rule j's left side inside word (rule i sits at 0)
};

std::vector<Overlap> critical_pairs(const RewriteSystem& r, std::size_t bound, bool& beyond) {
    std::vector<Overlap> out;
    beyond = false;
    const auto& rules = r.rules();
    for (std::size_t i = 0; i < rules.size(); ++i)
        for (std::size_t j = 0; j < rules.size(); ++j) {
            const Word& u = rules[i].lhs;
            const Word& v = rules[j].lhs;
            if (u.empty() || v.empty()) continue;
            // inclusion of v in u
            if (i != j)
                for (std::size_t p = 0; p + v.size() <= u.size(); ++p)
                    if (u.compare(p, v.size(), v) == 0) out.push_back({u, i, j, p});
            // proper overlap: suffix of u = prefix of v
            for (std::size_t k = 1; k < u.size() && k < v.size(); ++k) {
                if (u.compare(u.size() - k, k, v, 0, k) != 0) continue;
                Word w = u + v.substr(k);
                if (w.size() > bound) {
                    beyond = true;
                    continue;
                }
                out.push_back({w, i, j, u.size() - k});
            }
        }
    return out;
}

Element one_step(const RewriteSystem& r, const Word& w, const Rule& rule, std::size_t pos) {
    // w * 1_B with rule applied at pos; the suffix is pushed past the rule's coefficients
    const auto& b = r.coefficients();
    Element out;
    Word prefix = w.substr(0, pos), suffix = w.substr(pos + rule.lhs.size());
    for (const auto& [rt, rc] : rule.rhs) {
        Element piece;
        piece.emplace(Term{prefix + rt.word, rt.b}, rc);
        Element tail;
        for (int k = 0; k < b.dim; ++k)
            if (!b.unit[k].is_zero()) tail.emplace(Term{suffix, k}, b.unit[k]);
        for (const auto& [t, c] : r.multiply(piece, tail)) add_to(out, t, c);
    }
    return r.normal_form(out);
}

// Differences that must vanish: unresolved overlaps and coefficient-compatibility defects.
std::vector<Element> defects(const RewriteSystem& r, std::size_t bound, bool& beyond, std::vector<Word>* where = nullptr) {
    std::vector<Element> out;
    for (const auto& ov : critical_pairs(r, bound, beyond)) {
        const auto& rules = r.rules();
        Element d = subtract(one_step(r, ov.word, rules[ov.i], 0), one_step(r, ov.word, rules[ov.j], ov.pos_j));
        if (!d.empty()) {
            out.push_back(std::move(d));
            if (where) where->push_back(ov.word);
        }
    }
    const auto& b = r.coefficients();
    for (int k = 0; k < b.dim; ++k)
        for (const auto& rule : r.rules()) {
            // b_k * lhs and b_k * rhs, each reduced
            Element bk = r.coeff(k);
            Element lw;
            for (int m = 0; m < b.dim; ++m)
                if (!b.unit[m].is_zero()) lw.emplace(Term{rule.lhs, m}, b.unit[m]);
            Element left = r.multiply(bk, lw);
            Element right = r.multiply(bk, rule.rhs);
            Element d = subtract(left, right);
            if (!d.empty()) {
                out.push_back(std::move(d));
                if (where) where->push_back(b.labels[k] + "*" + r.word_label(rule.lhs));
            }
        }
    return out;
}

}  // namespace

std::vector<Word> unresolved_overlaps(const RewriteSystem& r, int degree_bound) {
    bool beyond = false;
    std::vector<Word> where;
    RewriteSystem plain = r;
    plain.set_basis({});
    defects(plain, static_cast<std::size_t>(degree_bound), beyond, &where);
    return where;
}

RewriteSystem complete_rules(RewriteSystem r, int degree_bound) {
    std::vector<Word> declared = r.basis();
    r.set_basis({});
    for (int round = 0;; ++round) {
        bool beyond = false;
        std::vector<Element> ds = defects(r, static_cast<std::size_t>(degree_bound), beyond);
        if (ds.empty()) {
            if (beyond) throw std::runtime_error("completion did not stabilize within degree bound " + std::to_string(degree_bound));
            break;
        }
        // add one relation at a time: later defects may reduce under it
        Element d = r.normal_form(ds.front());
        if (!d.empty()) r.add_relation(d);
        if (round > 10000) throw std::runtime_error("completion did not terminate");
    }
    r.set_basis(declared);
    if (!declared.empty()) {
        // closure: every product of basis words stays in the basis
        for (const auto& u : declared)
            for (const auto& v : declared) r.normal_form(u + v);
    }
    return r;
}

int PresentedAlgebra::index_of_word(const Word& w) const {
    auto it = std::find(words.begin(), words.end(), w);
    if (it == words.end()) throw std::invalid_argument("word is not in the basis");
    return static_cast<int>(it - words.begin());
}

int PresentedAlgebra::index(const Word& w, int b) const { return index_of_word(w) * system.coefficients().dim + b; }

SVec PresentedAlgebra::to_vector(const Element& x) const {
    std::map<Word, int> pos;
    for (std::size_t i = 0; i < words.size(); ++i) pos[words[i]] = static_cast<int>(i);
    int nb = system.coefficients().dim;
    SVec v;
    for (const auto& [t, c] : x) {
        auto it = pos.find(t.word);
        if (it == pos.end()) throw EscapesBasis(system.word_label(t.word));
        v.emplace_back(static_cast<std::uint64_t>(it->second) * nb + t.b, c);
    }
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
}

PresentedAlgebra structure_constants(const RewriteSystem& r) {
    PresentedAlgebra a;
    a.system = r;
    a.words = r.basis();
    if (a.words.empty()) {
        a.words = r.irreducible_words(64);
        if (!a.words.empty() && static_cast<int>(a.words.back().size()) == 64) throw std::runtime_error("presented algebra is not finite-dimensional within length 64");
        a.system.set_basis(a.words);
    }
    int nb = r.coefficients().dim;
    int n = a.dim();
    for (const auto& w : a.words)
        for (int b = 0; b < nb; ++b) a.labels.push_back(a.system.term_label(Term{w, b}));
    a.mult = SparseTensor({n}, {n, n});
    std::vector<Element> basis_el;
    for (const auto& w : a.words)
        for (int b = 0; b < nb; ++b) {
            Element e;
            e.emplace(Term{w, b}, CycloNum(1));
            basis_el.push_back(std::move(e));
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (const auto& [k, c] : a.to_vector(a.system.multiply(basis_el[i], basis_el[j]))) a.mult.set({static_cast<int>(k), i, j}, c);
    a.unit = std::vector<CycloNum>(n);
    for (const auto& [k, c] : a.to_vector(a.system.one())) a.unit[k] = c;
    return a;
}

}  // namespace hopftwist
