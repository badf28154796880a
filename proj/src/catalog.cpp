#include "hopftwist/catalog.hpp"

#include "detail.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>

namespace hopftwist {

using namespace detail;

namespace {

using U64 = std::uint64_t;

HopfAlgebraData checked(HopfAlgebraData h, const std::string& what) {
    VerifyReport r = verify_hopf(h);
    if (!r.ok()) throw std::runtime_error(what + " fails the Hopf axioms: " + r.summary());
    return h;
}

Deformation checked(Deformation w, const std::string& what) {
    VerifyReport r = verify_comodule_algebra(w);
    if (!r.ok()) throw std::runtime_error(what + " fails the comodule algebra axioms: " + r.summary());
    return w;
}

SparseTensor from_columns(const std::vector<SVec>& cols, std::vector<int> out, std::vector<int> in) {
    SparseTensor t(std::move(out), std::move(in));
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (const auto& [r, v] : cols[c]) t.set_rc(r, c, v);
    return t;
}

// x (x) y on keys i * nb + j
SVec tensor_of(const SVec& x, const SVec& y, U64 nb) {
    SVec out;
    for (const auto& [i, a] : x)
        for (const auto& [j, b] : y) out.emplace_back(i * nb + j, a * b);
    std::sort(out.begin(), out.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
    return out;
}

std::string power(const std::string& x, int e) {
    if (e == 0) return "";
    return e == 1 ? x : x + "^" + std::to_string(e);
}

std::string monomial(const std::string& g, int i, const std::string& x, int j) {
    std::string s = power(g, i) + power(x, j);
    return s.empty() ? "1" : s;
}

// S3 with the three transpositions as degrees of a, b, c.
struct S3 {
    FiniteGroup g = symmetric_group(3);
    std::array<int, 3> deg{g.index_of("(12)"), g.index_of("(23)"), g.index_of("(13)")};

    int sign(int x) const { return x == deg[0] || x == deg[1] || x == deg[2] ? -1 : 1; }
    int letter_of(int transposition) const {
        for (int t = 0; t < 3; ++t)
            if (deg[t] == transposition) return t;
        throw std::logic_error("not a transposition");
    }
    // x.x_t = sgn(x) x_{x t x^{-1}}
    int acted_letter(int x, int t) const { return letter_of(g.conjugate(x, deg[t])); }
};

const S3& s3() {
    static const S3 s;
    return s;
}

CoefficientAlgebra group_coefficients() {
    const S3& s = s3();
    CoefficientAlgebra b;
    b.dim = 6;
    b.labels = s.g.labels();
    b.mult = SparseTensor({6}, {6, 6});
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) b.mult.set({s.g.mul(i, j), i, j}, CycloNum(1));
    b.unit.assign(6, CycloNum());
    b.unit[s.g.identity()] = CycloNum(1);
    b.straighten.assign(6, std::vector<std::vector<StraightenTerm>>(3));
    for (int x = 0; x < 6; ++x)
        for (int t = 0; t < 3; ++t) b.straighten[x][t] = {{s.acted_letter(x, t), x, CycloNum(s.sign(x))}};
    return b;
}

std::string dual_label(const FiniteGroup& g, int x) { return "e_" + (x == g.identity() ? std::string("1") : g.label(x)); }

CoefficientAlgebra dual_coefficients(Fk3DualSides sides) {
    const S3& s = s3();
    CoefficientAlgebra b;
    b.dim = 6;
    b.labels.clear();
    for (int x = 0; x < 6; ++x) b.labels.push_back(dual_label(s.g, x));
    b.mult = SparseTensor({6}, {6, 6});
    for (int i = 0; i < 6; ++i) b.mult.set({i, i, i}, CycloNum(1));
    b.unit.assign(6, CycloNum(1));
    const std::array<int, 3> printed{s.deg[0], s.deg[1], s.deg[1]};
    b.straighten.assign(6, std::vector<std::vector<StraightenTerm>>(3));
    for (int x = 0; x < 6; ++x)
        for (int t = 0; t < 3; ++t) {
            int y = sides == Fk3DualSides::left ? s.g.mul(s.deg[t], x) : s.g.mul(x, printed[t]);
            b.straighten[x][t] = {{t, y, CycloNum(1)}};
        }
    return b;
}

void add_term(Element& e, const Term& t, const CycloNum& c) {
    if (c.is_zero()) return;
    CycloNum& v = e[t];
    v += c;
    if (v.is_zero()) e.erase(t);
}

// c * word * 1_B
void add_word(Element& e, const RewriteSystem& r, const std::string& w, const CycloNum& c) {
    const CoefficientAlgebra& b = r.coefficients();
    Word word = r.parse_word(w);
    for (int i = 0; i < b.dim; ++i)
        if (!b.unit[i].is_zero()) add_term(e, Term{word, i}, c * b.unit[i]);
}

void add_coeff(Element& e, int b, const CycloNum& c) { add_term(e, Term{Word(), b}, c); }

const std::vector<std::string>& fk3_words() {
    static const std::vector<std::string> w{"1", "a", "b", "c", "ab", "ac", "ba", "bc", "aba", "abc", "bac", "abac"};
    return w;
}

RewriteSystem finish_fk3(RewriteSystem r) {
    RewriteSystem c = complete_rules(std::move(r), 5);
    std::vector<Word> basis;
    for (const auto& w : fk3_words()) basis.push_back(c.parse_word(w));
    c.set_basis(std::move(basis));
    return c;
}

// Words in the generators (letters 0..2, then the 6 coefficient basis elements) for each
// basis element word * b of a 12 x 6 presented algebra.
std::vector<std::vector<int>> fk3_generator_words(const RewriteSystem& r, bool reversed) {
    std::vector<std::vector<int>> out;
    for (const auto& text : fk3_words()) {
        Word w = r.parse_word(text);
        for (int b = 0; b < 6; ++b) {
            std::vector<int> word;
            for (char ch : w) word.push_back(static_cast<unsigned char>(ch));
            word.push_back(3 + b);
            if (reversed) std::reverse(word.begin(), word.end());
            out.push_back(std::move(word));
        }
    }
    return out;
}

// Letter t and coefficient basis elements as vectors in a presented algebra.
struct Fk3Vectors {
    std::array<SVec, 3> letter;
    std::array<SVec, 6> coeff;
};

// Reads the vectors off the labels word*b of a presented algebra, so the same code serves
// H and W.
Fk3Vectors fk3_vectors(const std::vector<std::string>& labels, const std::vector<CycloNum>& unit) {
    auto at = [&](const std::string& l) {
        auto it = std::find(labels.begin(), labels.end(), l);
        if (it == labels.end()) throw std::logic_error("missing basis label " + l);
        return static_cast<int>(it - labels.begin());
    };
    Fk3Vectors v;
    const char* letters[3] = {"a", "b", "c"};
    // the first six basis elements are the coefficient algebra
    for (int b = 0; b < 6; ++b) v.coeff[b] = basis(b);
    for (int t = 0; t < 3; ++t)
        for (int b = 0; b < 6; ++b)
            if (!unit[b].is_zero()) v.letter[t] = svec_add(v.letter[t], svec_scale(basis(at(std::string(letters[t]) + "*" + labels[b])), unit[b]));
    return v;
}

// Generator images under Delta (or rho when the first factor is W) for the group case.
std::vector<SVec> group_case_images(const Fk3Vectors& first, const Fk3Vectors& second, U64 nb) {
    const S3& s = s3();
    std::vector<SVec> img;
    SVec one2;
    for (const auto& [k, c] : second.coeff[s.g.identity()]) one2.emplace_back(k, c);
    for (int t = 0; t < 3; ++t) img.push_back(svec_add(tensor_of(first.letter[t], one2, nb), tensor_of(first.coeff[s.deg[t]], second.letter[t], nb)));
    for (int x = 0; x < 6; ++x) img.push_back(tensor_of(first.coeff[x], second.coeff[x], nb));
    return img;
}

// Generator images for the dual case: x_t -> x_t (x) 1 + sum_g e_g (x) g^{-1}.x_t and
// e_g -> sum_{xy = g} e_x (x) e_y.
std::vector<SVec> dual_case_images(const Fk3Vectors& first, const Fk3Vectors& second, U64 nb) {
    const S3& s = s3();
    SVec one2;
    for (int x = 0; x < 6; ++x) one2 = svec_add(one2, second.coeff[x]);
    std::vector<SVec> img;
    for (int t = 0; t < 3; ++t) {
        SVec v = tensor_of(first.letter[t], one2, nb);
        for (int g = 0; g < 6; ++g) {
            int gi = s.g.inv(g);
            v = svec_add(v, tensor_of(first.coeff[g], svec_scale(second.letter[s.acted_letter(gi, t)], CycloNum(s.sign(gi))), nb));
        }
        img.push_back(std::move(v));
    }
    for (int g = 0; g < 6; ++g) {
        SVec v;
        for (int x = 0; x < 6; ++x) v = svec_add(v, tensor_of(first.coeff[x], second.coeff[s.g.mul(s.g.inv(x), g)], nb));
        img.push_back(std::move(v));
    }
    return img;
}

HopfAlgebraData presented_hopf(const PresentedAlgebra& pa, bool dual) {
    const S3& s = s3();
    HopfAlgebraData h;
    h.dim = pa.dim();
    h.labels = pa.labels;
    h.unit = pa.unit;
    h.mult = pa.mult;
    int n = h.dim;
    MultTable mt(h.mult);
    Fk3Vectors v = fk3_vectors(pa.labels, pa.unit);
    SVec one = svec_from_dense(h.unit);

    std::vector<SVec> dimg = dual ? dual_case_images(v, v, n) : group_case_images(v, v, n);
    auto mul2 = [&](const SVec& a, const SVec& b) { return tensor_mul(mt, mt, a, b); };
    h.comult = from_columns(extend_multiplicatively(fk3_generator_words(pa.system, false), dimg, tensor_of(one, one, n), mul2), {n, n}, {n});

    // S(x_t) = -deg(t) x_t, S(g) = g^{-1}; dual case S(x_t) = -sum_h e_h (h.x_t), S(e_g) = e_{g^{-1}}
    std::vector<SVec> simg;
    for (int t = 0; t < 3; ++t) {
        if (!dual) {
            simg.push_back(svec_scale(mt.mul(v.coeff[s.deg[t]], v.letter[t]), CycloNum(-1)));
            continue;
        }
        SVec acc;
        for (int x = 0; x < 6; ++x) acc = svec_add(acc, svec_scale(mt.mul(v.coeff[x], v.letter[s.acted_letter(x, t)]), CycloNum(-s.sign(x))));
        simg.push_back(std::move(acc));
    }
    for (int x = 0; x < 6; ++x) simg.push_back(v.coeff[s.g.inv(x)]);
    auto mul1 = [&](const SVec& a, const SVec& b) { return mt.mul(a, b); };
    h.antipode = from_columns(extend_multiplicatively(fk3_generator_words(pa.system, true), simg, one, mul1), {n}, {n});

    h.counit.assign(n, CycloNum());
    int id = s.g.identity();
    for (int b = 0; b < 6; ++b)
        if (!dual || b == id) h.counit[pa.index(Word(), b)] = CycloNum(1);
    h.N = 1;
    return h;
}

Deformation presented_deformation(const PresentedAlgebra& pa, HopfPtr parent, bool dual) {
    Deformation w;
    w.parent = parent;
    w.dim = pa.dim();
    w.labels = pa.labels;
    w.unit = pa.unit;
    w.mult = pa.mult;
    int n = w.dim, nh = parent->dim;
    MultTable mw(w.mult), mh(parent->mult);
    Fk3Vectors vw = fk3_vectors(pa.labels, pa.unit), vh = fk3_vectors(parent->labels, parent->unit);
    std::vector<SVec> img = dual ? dual_case_images(vw, vh, nh) : group_case_images(vw, vh, nh);
    auto mul = [&](const SVec& a, const SVec& b) { return tensor_mul(mw, mh, a, b); };
    SVec one = tensor_of(svec_from_dense(w.unit), svec_from_dense(parent->unit), nh);
    w.coaction = from_columns(extend_multiplicatively(fk3_generator_words(pa.system, false), img, one, mul), {n, nh}, {n});
    w.provenance = "from-generators";
    return w;
}

}  // namespace

HopfAlgebraData group_algebra(const FiniteGroup& g) {
    int n = g.order();
    HopfAlgebraData h;
    h.dim = n;
    h.labels = g.labels();
    h.unit.assign(n, CycloNum());
    h.unit[g.identity()] = CycloNum(1);
    h.counit.assign(n, CycloNum(1));
    h.mult = SparseTensor({n}, {n, n});
    h.comult = SparseTensor({n, n}, {n});
    h.antipode = SparseTensor({n}, {n});
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) h.mult.set({g.mul(i, j), i, j}, CycloNum(1));
        h.comult.set({i, i, i}, CycloNum(1));
        h.antipode.set({g.inv(i), i}, CycloNum(1));
    }
    return checked(std::move(h), "group algebra");
}

HopfAlgebraData dual_group_algebra(const FiniteGroup& g) {
    int n = g.order();
    HopfAlgebraData h;
    h.dim = n;
    for (int i = 0; i < n; ++i) h.labels.push_back(dual_label(g, i));
    h.unit.assign(n, CycloNum(1));
    h.counit.assign(n, CycloNum());
    h.counit[g.identity()] = CycloNum(1);
    h.mult = SparseTensor({n}, {n, n});
    h.comult = SparseTensor({n, n}, {n});
    h.antipode = SparseTensor({n}, {n});
    for (int i = 0; i < n; ++i) {
        h.mult.set({i, i, i}, CycloNum(1));
        for (int j = 0; j < n; ++j) h.comult.set({i, j, g.mul(i, j)}, CycloNum(1));
        h.antipode.set({g.inv(i), i}, CycloNum(1));
    }
    return checked(std::move(h), "dual group algebra");
}

Deformation group_cocycle_deformation(const FiniteGroup& g, const MuNCocycle& alpha) {
    if (!(alpha.group == g)) throw std::invalid_argument("cocycle lives on a different group");
    if (!check_group_cocycle(alpha)) throw std::invalid_argument("not a normalized 2-cocycle");
    auto kg = std::make_shared<const HopfAlgebraData>(group_algebra(g));
    return checked(twist_comodule_algebra(lift_group_cocycle(kg, alpha)), "twisted group algebra");
}

FiniteGroup subgroup_group(const Subgroup& f) {
    const auto& el = f.elements();
    const FiniteGroup& g = f.parent();
    int k = f.order();
    std::vector<std::vector<int>> t(k, std::vector<int>(k));
    std::vector<std::string> labels;
    for (int i = 0; i < k; ++i) {
        labels.push_back(g.label(el[i]));
        for (int j = 0; j < k; ++j) t[i][j] = f.position(g.mul(el[i], el[j]));
    }
    return FiniteGroup::from_table(std::move(t), std::move(labels));
}

Deformation dual_group_deformation(const FiniteGroup& g, const Subgroup& f, const MuNCocycle& alpha) {
    if (!(f.parent() == g)) throw std::invalid_argument("subgroup of a different group");
    const FiniteGroup fg = subgroup_group(f);
    if (!(alpha.group == fg)) throw std::invalid_argument("cocycle must live on the subgroup, indexed by its element positions");
    if (!check_group_cocycle(alpha)) throw std::invalid_argument("not a normalized 2-cocycle");
    if (!is_nondegenerate(alpha)) throw std::invalid_argument("the cocycle must be nondegenerate on F (K^alpha F a full matrix algebra)");

    int nf = f.order(), m = f.index(), ng = g.order(), n = m * nf;
    MultTable kf(twisted_group_algebra(alpha));
    std::vector<SVec> uinv(nf);
    for (int k = 0; k < nf; ++k) uinv[k] = {{static_cast<U64>(fg.inv(k)), alpha.value(k, fg.inv(k)).inverse()}};
    auto in_block = [&](int i, const SVec& v) {
        SVec out;
        for (const auto& [k, c] : v) out.emplace_back(static_cast<U64>(i) * nf + k, c);
        return out;
    };

    Deformation w;
    w.parent = std::make_shared<const HopfAlgebraData>(dual_group_algebra(g));
    w.dim = n;
    const auto& reps = f.coset_reps();
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < nf; ++k) w.labels.push_back("e_" + (reps[i] == g.identity() ? std::string("1") : g.label(reps[i])) + "U_" + (k == fg.identity() ? std::string("1") : fg.label(k)));
    w.unit.assign(n, CycloNum());
    w.mult = SparseTensor({n}, {n, n});
    for (int i = 0; i < m; ++i) {
        w.unit[i * nf + fg.identity()] = CycloNum(1);
        for (int a = 0; a < nf; ++a)
            for (int b = 0; b < nf; ++b) w.mult.set({i * nf + fg.mul(a, b), i * nf + a, i * nf + b}, alpha.value(a, b));
    }
    // rho(w) = sum_g (g.w) (x) e_g with g.(e_{t_i} U) = e_{t_j} U_f U U_f^{-1} when g t_i = t_j f
    w.coaction = SparseTensor({n, ng}, {n});
    for (int x = 0; x < ng; ++x)
        for (int i = 0; i < m; ++i) {
            int gt = g.mul(x, reps[i]);
            int j = f.coset_of(gt);
            int fk = f.position(g.mul(g.inv(reps[j]), gt));
            for (int k = 0; k < nf; ++k) {
                SVec v = kf.mul(kf.mul(basis(fk), basis(k)), uinv[fk]);
                for (const auto& [r, c] : in_block(j, v)) w.coaction.add_rc(r * ng + x, i * nf + k, c);
            }
        }
    // T_{e_g}(e_{t_i} U_{f1}) = |F|^{-1} sum_f e_{t_i} U_{f1} U_f (x) e_{t_j} U_{f2}^{-1} U_f^{-1} U_{f2}, f2 = t_i^{-1} g t_j
    SparseTensor t({n, n}, {n, ng});
    CycloNum scale = CycloNum(Rational(1, nf));
    for (int i = 0; i < m; ++i)
        for (int x = 0; x < ng; ++x) {
            auto [j, f2] = f.transversal(x, i);
            int p2 = f.position(f2);
            for (int f1 = 0; f1 < nf; ++f1) {
                Accum acc(static_cast<U64>(n) * n);
                for (int k = 0; k < nf; ++k) {
                    SVec left = in_block(i, kf.mul(basis(f1), basis(k)));
                    SVec right = in_block(j, kf.mul(kf.mul(uinv[p2], uinv[k]), basis(p2)));
                    for (const auto& [key, c] : tensor_of(left, right, n)) acc.add_mul(key, c, scale);
                }
                for (const auto& [r, c] : acc.take()) t.set_rc(r, static_cast<U64>(i * nf + f1) * ng + x, c);
            }
        }
    w.inverse_galois = std::move(t);
    w.provenance = "from-generators";
    return checked(std::move(w), "dual group deformation");
}

HopfAlgebraData taft_hopf(int n) {
    if (n < 2) throw std::invalid_argument("Taft algebras need n >= 2");
    int d = n * n;
    auto idx = [n](int i, int j) { return i * n + j; };
    HopfAlgebraData h;
    h.dim = d;
    h.N = n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h.labels.push_back(monomial("g", i, "x", j));
    h.unit.assign(d, CycloNum());
    h.unit[0] = CycloNum(1);
    h.counit.assign(d, CycloNum());
    for (int i = 0; i < n; ++i) h.counit[idx(i, 0)] = CycloNum(1);
    // x^j g^k = zeta^{-jk} g^k x^j
    h.mult = SparseTensor({d}, {d, d});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; j + l < n; ++l) h.mult.set({idx((i + k) % n, j + l), idx(i, j), idx(k, l)}, CycloNum::root(n, -static_cast<long long>(j) * k));
    MultTable mt(h.mult);
    U64 g = idx(1, 0), x = idx(0, 1), ginv = idx(n - 1, 0);
    std::vector<std::vector<int>> words, reversed;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<int> w(i, 0);
            w.insert(w.end(), j, 1);
            words.push_back(w);
            reversed.emplace_back(w.rbegin(), w.rend());
        }
    SVec one = basis(0);
    std::vector<SVec> dimg{{{g * d + g, CycloNum(1)}}, {{x * d + 0, CycloNum(1)}, {g * d + x, CycloNum(1)}}};
    auto mul2 = [&](const SVec& a, const SVec& b) { return tensor_mul(mt, mt, a, b); };
    h.comult = from_columns(extend_multiplicatively(words, dimg, tensor_of(one, one, d), mul2), {d, d}, {d});
    // S(g) = g^{-1}, S(x) = -g^{-1} x
    std::vector<SVec> simg{basis(static_cast<int>(ginv)), {{static_cast<U64>(idx(n - 1, 1)), CycloNum(-1)}}};
    auto mul1 = [&](const SVec& a, const SVec& b) { return mt.mul(a, b); };
    h.antipode = from_columns(extend_multiplicatively(reversed, simg, one, mul1), {d}, {d});
    return checked(std::move(h), "Taft algebra");
}

Deformation taft_deformation(int n, const CycloNum& a, const CycloNum& b) {
    if (a.is_zero()) throw std::invalid_argument("a = 0: the group-like generator G must be invertible");
    auto h = std::make_shared<const HopfAlgebraData>(taft_hopf(n));
    int d = n * n;
    auto idx = [n](int i, int j) { return i * n + j; };
    Deformation w;
    w.parent = h;
    w.dim = d;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) w.labels.push_back(monomial("G", i, "t", j));
    w.unit.assign(d, CycloNum());
    w.unit[0] = CycloNum(1);
    w.mult = SparseTensor({d}, {d, d});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    CycloNum c = CycloNum::root(n, -static_cast<long long>(j) * k);
                    if (i + k >= n) c *= a;
                    if (j + l >= n) c *= b;
                    if (!c.is_zero()) w.mult.set({idx((i + k) % n, (j + l) % n), idx(i, j), idx(k, l)}, c);
                }
    MultTable mw(w.mult), mh(h->mult);
    std::vector<std::vector<int>> words;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<int> word(i, 0);
            word.insert(word.end(), j, 1);
            words.push_back(word);
        }
    // rho(G) = G (x) g, rho(t) = t (x) g^{-1} + 1 (x) x g^{-1}
    U64 gg = idx(1, 0), tt = idx(0, 1), ginv = idx(n - 1, 0);
    SVec xginv = mh.basis_product(idx(0, 1), static_cast<int>(ginv));
    std::vector<SVec> img{{{gg * d + gg, CycloNum(1)}}, svec_add({{tt * d + ginv, CycloNum(1)}}, tensor_of(basis(0), xginv, d))};
    auto mul = [&](const SVec& x, const SVec& y) { return tensor_mul(mw, mh, x, y); };
    w.coaction = from_columns(extend_multiplicatively(words, img, tensor_of(basis(0), basis(0), d), mul), {d, d}, {d});
    w.inverse_galois = invert_M(w);
    w.provenance = "from-generators";
    return checked(std::move(w), "Taft deformation");
}

Functional taft_xi(int n) {
    // x g^i = zeta^{-i} g^i x, so xi(g^i x) = zeta^i
    Functional xi(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) xi[i * n + 1] = CycloNum::root(n, i);
    return xi;
}

RewriteSystem fk3_rewrite_system_group(const CycloNum& lambda, const CycloNum& mu, bool hopf_prop510) {
    const S3& s = s3();
    RewriteSystem r({"a", "b", "c"}, group_coefficients());
    int id = s.g.identity();
    for (const char* sq : {"aa", "bb", "cc"}) {
        Element e;
        add_word(e, r, sq, CycloNum(1));
        add_coeff(e, id, -lambda);
        r.add_relation(e);
    }
    int rot[2] = {s.g.index_of("(123)"), s.g.index_of("(132)")};
    const char* sums[2][3] = {{"ab", "bc", "ca"}, {"ba", "ac", "cb"}};
    for (int k = 0; k < 2; ++k) {
        Element e;
        for (const char* w : sums[k]) add_word(e, r, w, CycloNum(1));
        add_coeff(e, id, -mu);
        if (hopf_prop510) add_coeff(e, rot[k], mu);
        r.add_relation(e);
    }
    return finish_fk3(std::move(r));
}

RewriteSystem fk3_rewrite_system_dual(const CycloNum& la, const CycloNum& lb, const CycloNum& lc, bool hopf_sec55, Fk3DualSides sides) {
    const S3& s = s3();
    RewriteSystem r({"a", "b", "c"}, dual_coefficients(sides));
    const CycloNum lam[3] = {la, lb, lc};
    const char* sq[3] = {"aa", "bb", "cc"};
    auto e = [&](const char* label) { return s.g.index_of(label); };
    // a^2 = (la - lb)(e13 + e132) + (la - lc)(e23 + e123) and its images under relabeling
    const std::array<std::array<const char*, 4>, 3> deformed{{{"(13)", "(132)", "(23)", "(123)"}, {"(12)", "(132)", "(13)", "(123)"}, {"(23)", "(132)", "(12)", "(123)"}}};
    const int others[3][2] = {{1, 2}, {2, 0}, {0, 1}};
    for (int t = 0; t < 3; ++t) {
        Element rel;
        add_word(rel, r, sq[t], CycloNum(1));
        if (hopf_sec55) {
            CycloNum d1 = lam[t] - lam[others[t][0]], d2 = lam[t] - lam[others[t][1]];
            add_coeff(rel, e(deformed[t][0]), -d1);
            add_coeff(rel, e(deformed[t][1]), -d1);
            add_coeff(rel, e(deformed[t][2]), -d2);
            add_coeff(rel, e(deformed[t][3]), -d2);
        } else {
            for (int x = 0; x < 6; ++x) add_coeff(rel, x, -lam[t]);
        }
        r.add_relation(rel);
    }
    const char* sums[2][3] = {{"ab", "bc", "ca"}, {"ba", "ac", "cb"}};
    for (const auto& sum : sums) {
        Element rel;
        for (const char* w : sum) add_word(rel, r, w, CycloNum(1));
        r.add_relation(rel);
    }
    return finish_fk3(std::move(r));
}

HopfAlgebraData fk3_bosonization_group() { return checked(presented_hopf(structure_constants(fk3_rewrite_system_group(0, 0)), false), "B(V) # KS3"); }

HopfAlgebraData fk3_bosonization_dual() { return checked(presented_hopf(structure_constants(fk3_rewrite_system_dual(0, 0, 0)), true), "B(V) # K[S3]"); }

HopfAlgebraData deformed_hopf_prop510(const CycloNum& mu) {
    return checked(presented_hopf(structure_constants(fk3_rewrite_system_group(0, mu, true)), false), "deformed B(V) # KS3");
}

HopfAlgebraData deformed_hopf_sec55(const CycloNum& la, const CycloNum& lb, const CycloNum& lc) {
    return checked(presented_hopf(structure_constants(fk3_rewrite_system_dual(la, lb, lc, true)), true), "deformed B(V) # K[S3]");
}

namespace {

HopfPtr fk3_group_parent() {
    static const HopfPtr h = std::make_shared<const HopfAlgebraData>(fk3_bosonization_group());
    return h;
}

HopfPtr fk3_dual_parent() {
    static const HopfPtr h = std::make_shared<const HopfAlgebraData>(fk3_bosonization_dual());
    return h;
}

}  // namespace

GeneratorTwist fk3_generator_twist(const Deformation& w, Fk3Twist variant) {
    const S3& s = s3();
    const HopfAlgebraData& h = *w.parent;
    U64 n = w.dim;
    MultTable mw(w.mult);
    auto hidx = [&](const std::string& l) { return h.index_of(l); };
    auto widx = [&](const std::string& l) { return static_cast<U64>(w.index_of(l)); };
    const std::string id = s.g.label(s.g.identity());
    const char* letters[3] = {"a", "b", "c"};

    GeneratorTwist gt;
    for (const char* l : letters) gt.h_generators.push_back(hidx(std::string(l) + "*" + id));
    for (int x = 0; x < 6; ++x) gt.h_generators.push_back(hidx(s.g.label(x)));
    for (const char* l : letters) gt.w_generators.push_back(static_cast<int>(widx(std::string(l) + "*" + id)));
    for (int x = 0; x < 6; ++x) gt.w_generators.push_back(static_cast<int>(widx(s.g.label(x))));

    // x_t -> -w_{deg t} w_t (x) 1 + w_{deg t} (x) w_t, w_g -> w_{g^{-1}} (x) w_g
    SVec one = svec_from_dense(w.unit);
    for (int t = 0; t < 3; ++t) {
        U64 dg = widx(s.g.label(s.deg[t]));
        U64 wt = widx(std::string(letters[t]) + "*" + id);
        SVec first = tensor_of(svec_scale(mw.basis_product(static_cast<int>(dg), static_cast<int>(wt)), CycloNum(-1)), one, n);
        SVec second = tensor_of(basis(static_cast<int>(dg)), basis(static_cast<int>(wt)), n);
        if (t == 1 && variant == Fk3Twist::printed)
            second = tensor_of(basis(static_cast<int>(widx(s.g.label(s.deg[0])))), basis(static_cast<int>(widx(std::string("a*") + id))), n);
        gt.images.push_back(svec_add(first, second));
    }
    for (int x = 0; x < 6; ++x) gt.images.push_back({{widx(s.g.label(s.g.inv(x))) * n + widx(s.g.label(x)), CycloNum(1)}});

    // basis element word * g of H as letters followed by g
    RewriteSystem sys = fk3_rewrite_system_group(0, 0);
    gt.h_words = fk3_generator_words(sys, false);
    return gt;
}

Deformation fk3_deformation_group(const CycloNum& lambda, const CycloNum& mu, std::optional<Fk3Twist> twist) {
    Deformation w = presented_deformation(structure_constants(fk3_rewrite_system_group(lambda, mu)), fk3_group_parent(), false);
    if (twist) w.inverse_galois = extend_generator_twist(w, fk3_generator_twist(w, *twist));
    return checked(std::move(w), "W_{lambda,mu}");
}

Deformation fk3_dual_algebra_unchecked(const RewriteSystem& r) { return presented_deformation(structure_constants(r), fk3_dual_parent(), true); }

Deformation fk3_deformation_dual(const CycloNum& la, const CycloNum& lb, const CycloNum& lc) {
    return checked(fk3_dual_algebra_unchecked(fk3_rewrite_system_dual(la, lb, lc)), "W_{la,lb,lc}");
}

SVec product_of_labels(const Deformation& w, const std::vector<std::string>& factors) {
    MultTable mt(w.mult);
    SVec acc = svec_from_dense(w.unit);
    for (const auto& f : factors) {
        SVec v;
        auto it = std::find(w.labels.begin(), w.labels.end(), f);
        if (it != w.labels.end()) {
            v = basis(static_cast<int>(it - w.labels.begin()));
        } else {
            // a letter: f * 1 over the coefficient basis elements making up the unit
            for (const auto& [k, c] : svec_from_dense(w.unit)) v = svec_add(v, svec_scale(basis(w.index_of(f + "*" + w.labels[k])), c));
        }
        acc = mt.mul(acc, v);
    }
    return acc;
}

namespace {

// Laurent polynomials in t and mu with s^2 replaced by a fixed polynomial in t and mu.
using Mono = std::array<int, 3>;  // exponents of t, mu, s
using Poly = std::map<Mono, Rational>;

void poly_add(Poly& p, const Mono& m, const Rational& c) {
    Rational& v = p[m];
    v += c;
    if (v.is_zero()) p.erase(m);
}

Poly poly_mul(const Poly& a, const Poly& b, const Poly& s2) {
    Poly out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            Mono m{ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]};
            if (m[2] < 2) {
                poly_add(out, m, ca * cb);
                continue;
            }
            for (const auto& [ms, cs] : s2) poly_add(out, {m[0] + ms[0], m[1] + ms[1], m[2] - 2}, ca * cb * cs);
        }
    return out;
}

Poly poly_sum(const Poly& a, const Poly& b, const Rational& sb = Rational(1)) {
    Poly out = a;
    for (const auto& [m, c] : b) poly_add(out, m, c * sb);
    return out;
}

Poly term(const Rational& c, int t, int mu, int s) {
    Poly p;
    poly_add(p, {t, mu, s}, c);
    return p;
}

using Mat = std::array<Poly, 4>;

Mat mat_mul(const Mat& x, const Mat& y, const Poly& s2) {
    Mat z;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) z[2 * i + j] = poly_sum(poly_mul(x[2 * i], y[j], s2), poly_mul(x[2 * i + 1], y[2 + j], s2));
    return z;
}

Mat mat_sum(const Mat& x, const Mat& y) {
    Mat z;
    for (int i = 0; i < 4; ++i) z[i] = poly_sum(x[i], y[i]);
    return z;
}

Mat scalar_mat(const Poly& p) { return {p, Poly{}, Poly{}, p}; }

WitnessCheck check_relations(const Mat& a, const Mat& b, const Mat& c, const Poly& lambda, const Poly& mu, const Poly& s2) {
    auto mm = [&](const Mat& x, const Mat& y) { return mat_mul(x, y, s2); };
    auto is = [](const Mat& x, const Mat& y) {
        for (int i = 0; i < 4; ++i)
            if (!poly_sum(x[i], y[i], Rational(-1)).empty()) return false;
        return true;
    };
    WitnessCheck w;
    w.relations = {"a^2 = lambda", "b^2 = lambda", "c^2 = lambda", "ab + bc + ca = mu", "ac + cb + ba = mu"};
    w.holds = {is(mm(a, a), scalar_mat(lambda)), is(mm(b, b), scalar_mat(lambda)), is(mm(c, c), scalar_mat(lambda)),
               is(mat_sum(mat_sum(mm(a, b), mm(b, c)), mm(c, a)), scalar_mat(mu)), is(mat_sum(mat_sum(mm(a, c), mm(c, b)), mm(b, a)), scalar_mat(mu))};
    return w;
}

}  // namespace

bool WitnessCheck::ok() const { return std::all_of(holds.begin(), holds.end(), [](bool b) { return b; }); }

WitnessCheck matrix_witness_lambda_zero() {
    Poly one = term(1, 0, 0, 0), mu = term(1, 0, 1, 0);
    Mat ab{Poly{}, one, Poly{}, Poly{}};
    Mat c{Poly{}, Poly{}, mu, Poly{}};
    return check_relations(ab, ab, c, Poly{}, mu, Poly{});
}

WitnessCheck matrix_witness_lambda_nonzero(WitnessR r_choice) {
    // lambda = t^2, r = (mu - t^2) / (k t), s^2 = lambda - r^2
    Rational k = r_choice == WitnessR::corrected ? Rational(2) : Rational(1);
    Poly lambda = term(1, 2, 0, 0), mu = term(1, 0, 1, 0);
    Poly r = poly_sum(term(k.inverse(), -1, 1, 0), term(-k.inverse(), 1, 0, 0));
    Poly s2 = poly_sum(lambda, poly_mul(r, r, Poly{}), Rational(-1));
    Poly t = term(1, 1, 0, 0), s = term(1, 0, 0, 1);
    Poly neg_t = term(-1, 1, 0, 0);
    Mat ab{t, Poly{}, Poly{}, neg_t};  // t X, X = diag(1, -1)
    Poly neg_r = poly_sum(Poly{}, r, Rational(-1));
    Mat c{r, s, s, neg_r};  // r X + s Y, Y = antidiag(1, 1)
    return check_relations(ab, ab, c, lambda, mu, s2);
}

std::vector<InvariantSpec> fk3_separating_specs(const HopfAlgebraData& h) {
    std::vector<InvariantSpec> out;
    for (const char* f : {"a*(23)", "a*(123)", "b*e"})
        out.push_back({2, Permutation({1, 3, 2}), h.index_of(f), {h.index_of(std::string(f) == "b*e" ? "c*e" : "a*e"), h.index_of("ab*e")}});
    return out;
}

const std::vector<CatalogEntryInfo>& catalog_entries() {
    static const std::vector<CatalogEntryInfo> e{
        {"kg", "hopf", "--group SPEC"},
        {"dual-kg", "hopf", "--group SPEC"},
        {"kalpha-g", "deformation", "--group SPEC --cocycle trivial|v4|z3z3|FILE"},
        {"dual-group-def", "deformation", "--group SPEC --subgroup LIST --cocycle v4|z3z3|FILE"},
        {"taft", "hopf", "--n N"},
        {"taft-def", "deformation", "--n N --a SCALAR --b SCALAR"},
        {"fk3-ks3", "hopf", ""},
        {"fk3-ks3-def", "deformation", "--lambda SCALAR --mu SCALAR"},
        {"fk3-dual", "hopf", ""},
        {"fk3-dual-def", "deformation", "--la SCALAR --lb SCALAR --lc SCALAR"},
        {"prop510", "hopf", "--mu SCALAR"},
        {"sec55-hopf", "hopf", "--la SCALAR --lb SCALAR --lc SCALAR"},
    };
    return e;
}

}  // namespace hopftwist
