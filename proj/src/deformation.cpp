#include "hopftwist/deformation.hpp"

#include "hopftwist/linsolve.hpp"
#include "detail.hpp"

#include <map>
#include <numeric>
#include <stdexcept>

namespace hopftwist {

using namespace detail;

namespace {

using U64 = std::uint64_t;

struct Entry {
    U64 a, b;
    CycloNum c;
};

// Delta(h_i) as (h_1, h_2, coefficient) triples.
std::vector<std::vector<Entry>> coproduct_lists(const SparseTensor& comult, int n_out2) {
    LinMap d = LinMap::from_tensor(comult);
    std::vector<std::vector<Entry>> out(d.cols);
    for (U64 i = 0; i < d.cols; ++i)
        for (std::size_t e = d.col_begin(i); e < d.col_end(i); ++e) out[i].push_back({d.row[e] / n_out2, d.row[e] % n_out2, d.val[e]});
    return out;
}

SVec unit_svec(const std::vector<CycloNum>& unit) { return svec_from_dense(unit); }

void add_scaled(Accum& acc, const SVec& v, const CycloNum& s, U64 offset_mul = 1, U64 offset_add = 0) {
    for (const auto& [k, c] : v) acc.add_mul(k * offset_mul + offset_add, c, s);
}

// Evaluates a bilinear table on sparse arguments.
CycloNum bilinear(const std::vector<CycloNum>& table, int n, const SVec& x, const SVec& y) {
    CycloNum s;
    for (const auto& [i, a] : x)
        for (const auto& [j, b] : y) {
            const CycloNum& t = table[i * n + j];
            if (!t.is_zero()) s.add_mul(t, a * b);
        }
    return s;
}

// Context shared by the cocycle computations.
struct CocycleCtx {
    const HopfAlgebraData& h;
    int n;
    std::vector<std::vector<Entry>> delta;
    MultTable mt;
    LinMap s;

    explicit CocycleCtx(const HopfAlgebraData& hh)
        : h(hh), n(hh.dim), delta(coproduct_lists(hh.comult, hh.dim)), mt(hh.mult), s(LinMap::from_tensor(hh.antipode)) {}

    SVec antipode(const SVec& x) const {
        Accum acc(n);
        for (const auto& [k, c] : x)
            for (std::size_t e = s.col_begin(k); e < s.col_end(k); ++e) acc.add_mul(s.row[e], s.val[e], c);
        return acc.take();
    }
};

// x ._alpha y for every basis pair
std::vector<SVec> twisted_products(const CocycleCtx& ctx, const std::vector<CycloNum>& alpha) {
    int n = ctx.n;
    std::vector<SVec> out(static_cast<std::size_t>(n) * n);
    Accum acc(n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            for (const auto& dx : ctx.delta[x])
                for (const auto& dy : ctx.delta[y]) {
                    const CycloNum& a = alpha[dx.a * n + dy.a];
                    if (a.is_zero()) continue;
                    CycloNum w = dx.c * dy.c * a;
                    U64 col = dx.b * n + dy.b;
                    const LinMap& m = ctx.mt.map();
                    for (std::size_t e = m.col_begin(col); e < m.col_end(col); ++e) acc.add_mul(m.row[e], m.val[e], w);
                }
            out[static_cast<std::size_t>(x) * n + y] = acc.take();
        }
    return out;
}

SVec bilinear_product(const std::vector<SVec>& table, int n, const SVec& x, const SVec& y) {
    Accum acc(n);
    for (const auto& [i, a] : x)
        for (const auto& [j, b] : y) add_scaled(acc, table[i * n + j], a * b);
    return acc.take();
}

// Rows and columns of a tensor as a column-indexed list of SVecs.
std::vector<SVec> columns_of(const SparseTensor& t) {
    LinMap m = LinMap::from_tensor(t);
    std::vector<SVec> out(m.cols);
    for (U64 c = 0; c < m.cols; ++c) out[c] = column(m, c);
    return out;
}

SVec apply_cols(const std::vector<SVec>& cols, U64 dim, const SVec& x) {
    Accum acc(dim);
    for (const auto& [k, c] : x) add_scaled(acc, cols[k], c);
    return acc.take();
}


void require_parent(const Deformation& w) {
    if (!w.parent) throw std::invalid_argument("deformation has no parent Hopf algebra");
}

const SparseTensor& require_t(const Deformation& w) {
    if (!w.inverse_galois) throw std::invalid_argument("deformation carries no inverse Galois map");
    return *w.inverse_galois;
}

}  // namespace

SVec tensor_mul(const MultTable& a, const MultTable& b, const SVec& x, const SVec& y, bool op_first, bool op_second) {
    U64 na = a.dim(), nb = b.dim();
    const LinMap& ma = a.map();
    const LinMap& mb = b.map();
    Accum acc(na * nb);
    for (const auto& [k1, c1] : x) {
        U64 p = k1 / nb, q = k1 % nb;
        for (const auto& [k2, c2] : y) {
            U64 r = k2 / nb, s = k2 % nb;
            CycloNum w = c1 * c2;
            U64 ca = op_first ? r * na + p : p * na + r;
            U64 cb = op_second ? s * nb + q : q * nb + s;
            for (std::size_t e1 = ma.col_begin(ca); e1 < ma.col_end(ca); ++e1) {
                CycloNum w1 = w * ma.val[e1];
                for (std::size_t e2 = mb.col_begin(cb); e2 < mb.col_end(cb); ++e2) acc.add_mul(ma.row[e1] * nb + mb.row[e2], w1, mb.val[e2]);
            }
        }
    }
    return acc.take();
}

std::vector<SVec> extend_multiplicatively(const std::vector<std::vector<int>>& words, const std::vector<SVec>& gen_images, const SVec& unit_image, const std::function<SVec(const SVec&, const SVec&)>& mul) {
    std::vector<SVec> out;
    out.reserve(words.size());
    for (const auto& w : words) {
        if (w.empty()) {
            out.push_back(unit_image);
            continue;
        }
        SVec v = gen_images.at(w[0]);
        for (std::size_t i = 1; i < w.size(); ++i) v = mul(v, gen_images.at(w[i]));
        out.push_back(std::move(v));
    }
    return out;
}

HopfTwoCocycle trivial_hopf_cocycle(HopfPtr h) {
    int n = h->dim;
    HopfTwoCocycle c{h, std::vector<CycloNum>(static_cast<std::size_t>(n) * n)};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c.alpha[i * n + j] = h->counit[i] * h->counit[j];
    return c;
}

HopfTwoCocycle lift_group_cocycle(HopfPtr kg, const MuNCocycle& c) {
    int n = kg->dim;
    if (n != c.group.order()) throw std::invalid_argument("group algebra and cocycle have different orders");
    HopfTwoCocycle out{kg, std::vector<CycloNum>(static_cast<std::size_t>(n) * n)};
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) out.alpha[g * n + h] = c.value(g, h);
    return out;
}

CocycleReport check_hopf_cocycle(const HopfTwoCocycle& c) {
    const HopfAlgebraData& h = *c.parent;
    int n = h.dim;
    CocycleReport rep;
    if (c.alpha.size() != static_cast<std::size_t>(n) * n) throw std::invalid_argument("cocycle table has the wrong size");
    SVec one = unit_svec(h.unit);
    for (int x = 0; x < n && rep.unital; ++x) {
        SVec bx = basis(x);
        if (bilinear(c.alpha, n, one, bx) != h.counit[x] || bilinear(c.alpha, n, bx, one) != h.counit[x]) {
            rep.unital = false;
            rep.witness = {x};
        }
    }
    CocycleCtx ctx(h);
    std::vector<SVec> p = twisted_products(ctx, c.alpha);
    // alpha(x_1, y_1) alpha(x_2 y_2, z) = alpha(y_1, z_1) alpha(x, y_2 z_2), i.e.
    // alpha(x . y, z) = alpha(x, y . z) for the twisted product.
    Witness w = scan(n, Exec::parallel, [&](int x) -> Witness {
        for (int y = 0; y < n; ++y) {
            const SVec& xy = p[x * n + y];
            for (int z = 0; z < n; ++z) {
                CycloNum lhs, rhs;
                for (const auto& [k, v] : xy) lhs.add_mul(v, c.alpha[k * n + z]);
                for (const auto& [k, v] : p[y * n + z]) rhs.add_mul(v, c.alpha[x * n + k]);
                if (lhs != rhs) return std::vector<int>{x, y, z};
            }
        }
        return std::nullopt;
    });
    if (w) {
        rep.cocycle = false;
        if (rep.witness.empty()) rep.witness = *w;
    }
    if (rep.unital && rep.cocycle) {
        try {
            gamma_data(c);
        } catch (const SingularError&) {
            rep.gamma_invertible = false;
        }
    }
    return rep;
}

std::vector<CycloNum> convolve_bilinear(const HopfAlgebraData& h, const std::vector<CycloNum>& a, const std::vector<CycloNum>& b) {
    return convolve(tensor_square_comult(h), a, b);
}

GammaData gamma_data(const HopfTwoCocycle& c) {
    const HopfAlgebraData& h = *c.parent;
    int n = h.dim;
    CocycleCtx ctx(h);
    GammaData g;
    g.gamma.assign(n, CycloNum());
    for (int x = 0; x < n; ++x)
        for (const auto& d : ctx.delta[x]) {
            for (std::size_t e = ctx.s.col_begin(d.b); e < ctx.s.col_end(d.b); ++e) g.gamma[x].add_mul(d.c * ctx.s.val[e], c.alpha[d.a * n + ctx.s.row[e]]);
        }
    g.gamma_inv = convolution_inverse(h, g.gamma);

    std::size_t nn = static_cast<std::size_t>(n) * n;
    std::vector<CycloNum> gm(nn), sa(nn), gi(nn);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            std::size_t k = x * n + y;
            for (const auto& [t, v] : ctx.mt.basis_product(x, y)) gm[k].add_mul(v, g.gamma[t]);
            sa[k] = bilinear(c.alpha, n, ctx.antipode(basis(y)), ctx.antipode(basis(x)));
            gi[k] = g.gamma_inv[x] * g.gamma_inv[y];
        }
    LinMap d2 = tensor_square_comult(h);
    g.alpha_inv = convolve(d2, convolve(d2, gm, sa), gi);
    std::vector<CycloNum> e2 = tensor_square_counit(h);
    if (convolve(d2, c.alpha, g.alpha_inv) != e2 || convolve(d2, g.alpha_inv, c.alpha) != e2)
        throw SingularError("cocycle is not convolution-invertible by the closed formula", 0, nn);
    return g;
}

SparseTensor twisted_multiplication(const HopfTwoCocycle& c) {
    int n = c.parent->dim;
    CocycleCtx ctx(*c.parent);
    std::vector<SVec> p = twisted_products(ctx, c.alpha);
    SparseTensor m({n}, {n, n});
    for (std::size_t k = 0; k < p.size(); ++k)
        for (const auto& [r, v] : p[k]) m.set_rc(r, k, v);
    return m;
}

SparseTensor twisted_antipode(const HopfTwoCocycle& c, const GammaData& g) {
    int n = c.parent->dim;
    CocycleCtx ctx(*c.parent);
    SparseTensor t({n}, {n});
    for (int x = 0; x < n; ++x) {
        Accum acc(n);
        for (const auto& d : ctx.delta[x]) {
            if (g.gamma_inv[d.b].is_zero()) continue;
            add_scaled(acc, ctx.antipode(basis(static_cast<int>(d.a))), d.c * g.gamma_inv[d.b]);
        }
        for (const auto& [r, v] : acc.take()) t.set_rc(r, x, v);
    }
    return t;
}

AntipodeIdentityReport check_twisted_antipode(const HopfTwoCocycle& c, const GammaData& g) {
    int n = c.parent->dim;
    CocycleCtx ctx(*c.parent);
    std::vector<SVec> p = twisted_products(ctx, c.alpha);
    std::vector<SVec> st = columns_of(twisted_antipode(c, g));
    SVec one = unit_svec(c.parent->unit);
    AntipodeIdentityReport rep;
    for (int x = 0; x < n; ++x) {
        Accum l(n), r(n);
        for (const auto& d : ctx.delta[x]) {
            add_scaled(l, bilinear_product(p, n, basis(static_cast<int>(d.a)), st[d.b]), d.c);
            add_scaled(r, bilinear_product(p, n, st[d.a], basis(static_cast<int>(d.b))), d.c);
        }
        SVec expect = svec_scale(one, c.parent->counit[x]);
        if (rep.left && !svec_equal(l.take(), expect)) {
            rep.left = false;
            if (rep.witness.empty()) rep.witness = {x};
        }
        if (rep.right && !svec_equal(r.take(), expect)) {
            rep.right = false;
            if (rep.witness.empty()) rep.witness = {x};
        }
    }
    Witness w = scan(n, Exec::parallel, [&](int x) -> Witness {
        for (int y = 0; y < n; ++y) {
            SVec lhs = bilinear_product(p, n, st[x], st[y]);
            Accum acc(n);
            for (const auto& dx : ctx.delta[x])
                for (const auto& dy : ctx.delta[y]) {
                    const CycloNum& ai = g.alpha_inv[dy.b * n + dx.b];
                    if (ai.is_zero()) continue;
                    SVec yx = ctx.mt.basis_product(static_cast<int>(dy.a), static_cast<int>(dx.a));
                    add_scaled(acc, apply_cols(st, n, yx), dx.c * dy.c * ai);
                }
            if (!svec_equal(lhs, acc.take())) return std::vector<int>{x, y};
        }
        return std::nullopt;
    });
    if (w) {
        rep.product = false;
        if (rep.witness.empty()) rep.witness = *w;
    }
    return rep;
}

int Deformation::index_of(const std::string& label) const {
    for (int i = 0; i < dim; ++i)
        if (labels[i] == label) return i;
    throw std::invalid_argument("no basis element labelled '" + label + "'");
}

Deformation twist_comodule_algebra(const HopfTwoCocycle& c) {
    const HopfAlgebraData& h = *c.parent;
    int n = h.dim;
    GammaData g = gamma_data(c);
    CocycleCtx ctx(h);
    std::vector<SVec> p = twisted_products(ctx, c.alpha);
    std::vector<SVec> st = columns_of(twisted_antipode(c, g));

    Deformation w;
    w.parent = c.parent;
    w.dim = n;
    w.labels = h.labels;
    w.unit = h.unit;
    w.mult = SparseTensor({n}, {n, n});
    for (std::size_t k = 0; k < p.size(); ++k)
        for (const auto& [r, v] : p[k]) w.mult.set_rc(r, k, v);
    w.coaction = h.comult;
    // T(x (x) y) = x . S~(y_1) (x) y_2
    SparseTensor t({n, n}, {n, n});
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            Accum acc(static_cast<U64>(n) * n);
            for (const auto& d : ctx.delta[y]) add_scaled(acc, bilinear_product(p, n, basis(x), st[d.a]), d.c, n, d.b);
            for (const auto& [r, v] : acc.take()) t.set_rc(r, static_cast<U64>(x) * n + y, v);
        }
    w.inverse_galois = std::move(t);
    w.provenance = "from-cocycle";
    return w;
}

HopfAlgebraData double_twist(const HopfTwoCocycle& c) {
    const HopfAlgebraData& h = *c.parent;
    int n = h.dim;
    GammaData g = gamma_data(c);
    CocycleCtx ctx(h);
    std::vector<SVec> d3(n);
    for (int x = 0; x < n; ++x) d3[x] = iterated_coproduct(h, basis(x), 3);
    U64 nn = static_cast<U64>(n) * n;

    HopfAlgebraData out = h;
    out.mult = SparseTensor({n}, {n, n});
    // x . y = alpha(x_1, y_1) alpha^{-1}(x_3, y_3) x_2 y_2
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            Accum acc(n);
            for (const auto& [kx, cx] : d3[x]) {
                U64 x1 = kx / nn, x2 = (kx / n) % n, x3 = kx % n;
                for (const auto& [ky, cy] : d3[y]) {
                    U64 y1 = ky / nn, y2 = (ky / n) % n, y3 = ky % n;
                    const CycloNum& a = c.alpha[x1 * n + y1];
                    const CycloNum& ai = g.alpha_inv[x3 * n + y3];
                    if (a.is_zero() || ai.is_zero()) continue;
                    CycloNum w = cx * cy * a * ai;
                    U64 col = x2 * n + y2;
                    const LinMap& m = ctx.mt.map();
                    for (std::size_t e = m.col_begin(col); e < m.col_end(col); ++e) acc.add_mul(m.row[e], m.val[e], w);
                }
            }
            for (const auto& [r, v] : acc.take()) out.mult.set_rc(r, static_cast<U64>(x) * n + y, v);
        }
    // S^alpha(x) = gamma(x_1) S(x_2) gamma^{-1}(x_3)
    out.antipode = SparseTensor({n}, {n});
    for (int x = 0; x < n; ++x) {
        Accum acc(n);
        for (const auto& [k, cx] : d3[x]) {
            U64 x1 = k / nn, x2 = (k / n) % n, x3 = k % n;
            if (g.gamma[x1].is_zero() || g.gamma_inv[x3].is_zero()) continue;
            add_scaled(acc, ctx.antipode(basis(static_cast<int>(x2))), cx * g.gamma[x1] * g.gamma_inv[x3]);
        }
        for (const auto& [r, v] : acc.take()) out.antipode.set_rc(r, x, v);
    }
    out.N = std::lcm(h.N, std::lcm(out.mult.order(), out.antipode.order()));
    return out;
}

SparseTensor build_M(const Deformation& w) {
    require_parent(w);
    int n = w.dim, nh = w.parent->dim;
    MultTable mw(w.mult);
    auto rho = coproduct_lists(w.coaction, nh);
    SparseTensor m({n, nh}, {n, n});
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            Accum acc(static_cast<U64>(n) * nh);
            for (const auto& d : rho[y]) add_scaled(acc, mw.basis_product(x, static_cast<int>(d.a)), d.c, nh, d.b);
            for (const auto& [r, v] : acc.take()) m.set_rc(r, static_cast<U64>(x) * n + y, v);
        }
    return m;
}

SparseTensor invert_M(const Deformation& w) {
    require_parent(w);
    if (w.dim != w.parent->dim) throw SingularError("not Hopf-Galois: dim W differs from dim H", 0, static_cast<std::size_t>(w.dim) * w.parent->dim);
    try {
        return invert_map(build_M(w));
    } catch (const SingularError& e) {
        throw SingularError("not Hopf-Galois: M is singular", e.rank(), e.size());
    }
}

namespace {

struct TwistExtension {
    std::string failure;
    std::vector<SVec> tilde;  // T~(h_i) for every basis element
};

TwistExtension extend_twist(const Deformation& w, const GeneratorTwist& gt) {
    require_parent(w);
    const HopfAlgebraData& h = *w.parent;
    int n = w.dim, nh = h.dim;
    TwistExtension out;
    if (gt.images.size() != gt.h_generators.size()) throw std::invalid_argument("one image per generator expected");
    if (static_cast<int>(gt.h_words.size()) != nh) throw std::invalid_argument("one word per basis element of H expected");
    MultTable mw(w.mult), mh(h.mult);
    SVec hone = unit_svec(h.unit), wone = unit_svec(w.unit);

    // the words must describe the basis of H
    std::vector<SVec> gens;
    for (int g : gt.h_generators) gens.push_back(basis(g));
    auto hmul = [&](const SVec& a, const SVec& b) { return mh.mul(a, b); };
    std::vector<SVec> check = extend_multiplicatively(gt.h_words, gens, hone, hmul);
    for (int i = 0; i < nh; ++i)
        if (!svec_equal(check[i], basis(i))) {
            out.failure = "word for basis element " + h.labels[i] + " does not multiply to it";
            return out;
        }

    auto opmul = [&](const SVec& a, const SVec& b) { return tensor_mul(mw, mw, a, b, true, false); };
    SVec oneone;
    for (const auto& [i, a] : wone)
        for (const auto& [j, b] : wone) oneone.emplace_back(i * n + j, a * b);
    std::sort(oneone.begin(), oneone.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    out.tilde = extend_multiplicatively(gt.h_words, gt.images, oneone, opmul);

    // algebra map on all basis pairs
    Witness bad = scan(nh, Exec::parallel, [&](int i) -> Witness {
        for (int j = 0; j < nh; ++j) {
            SVec lhs = apply_cols(out.tilde, static_cast<U64>(n) * n, mh.basis_product(i, j));
            if (!svec_equal(lhs, opmul(out.tilde[i], out.tilde[j]))) return std::vector<int>{i, j};
        }
        return std::nullopt;
    });
    if (bad) {
        out.failure = "T~ is not multiplicative at (" + h.labels[(*bad)[0]] + ", " + h.labels[(*bad)[1]] + ")";
        return out;
    }
    // M T~(h) = 1 (x) h on generators of H
    std::vector<SVec> mcols = columns_of(build_M(w));
    for (std::size_t g = 0; g < gt.h_generators.size(); ++g) {
        SVec lhs = apply_cols(mcols, static_cast<U64>(n) * nh, out.tilde[gt.h_generators[g]]);
        SVec rhs;
        for (const auto& [i, a] : wone) rhs.emplace_back(i * nh + gt.h_generators[g], a);
        if (!svec_equal(lhs, rhs)) {
            out.failure = "M T~(" + h.labels[gt.h_generators[g]] + ") differs from 1 (x) " + h.labels[gt.h_generators[g]];
            return out;
        }
    }
    // (m (x) 1)(1 (x) T~) rho(w) = 1 (x) w on generators of W
    auto rho = coproduct_lists(w.coaction, nh);
    for (int g : gt.w_generators) {
        Accum acc(static_cast<U64>(n) * n);
        for (const auto& d : rho[g])
            for (const auto& [k, v] : out.tilde[d.b])
                for (const auto& [r, c] : mw.basis_product(static_cast<int>(d.a), static_cast<int>(k / n))) acc.add_mul(r * n + k % n, c, v * d.c);
        SVec rhs;
        for (const auto& [i, a] : wone) rhs.emplace_back(i * n + g, a);
        std::sort(rhs.begin(), rhs.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        if (!svec_equal(acc.take(), rhs)) {
            out.failure = "(m (x) 1)(1 (x) T~) rho(" + w.labels[g] + ") differs from 1 (x) " + w.labels[g];
            return out;
        }
    }
    return out;
}

}  // namespace

std::string generator_twist_failure(const Deformation& w, const GeneratorTwist& gt) { return extend_twist(w, gt).failure; }

SparseTensor extend_generator_twist(const Deformation& w, const GeneratorTwist& gt) {
    TwistExtension ext = extend_twist(w, gt);
    if (!ext.failure.empty()) throw GeneratorTwistError(ext.failure);
    int n = w.dim, nh = w.parent->dim;
    MultTable mw(w.mult);
    // T(x (x) h) = (x (x) 1) T~(h)
    SparseTensor t({n, n}, {n, nh});
    for (int x = 0; x < n; ++x)
        for (int hh = 0; hh < nh; ++hh) {
            Accum acc(static_cast<U64>(n) * n);
            for (const auto& [k, v] : ext.tilde[hh])
                for (const auto& [r, c] : mw.basis_product(x, static_cast<int>(k / n))) acc.add_mul(r * n + k % n, c, v);
            for (const auto& [r, v] : acc.take()) t.set_rc(r, static_cast<U64>(x) * nh + hh, v);
        }
    return t;
}

AxiomResult check_galois_inverse(const Deformation& w, const SparseTensor& t, Exec exec) {
    require_parent(w);
    int n = w.dim, nh = w.parent->dim;
    std::vector<SVec> mcols = columns_of(build_M(w));
    std::vector<SVec> tcols = columns_of(t);
    U64 dom = static_cast<U64>(n) * n, cod = static_cast<U64>(n) * nh;
    if (t.cols() != cod || t.rows() != dom) return {"Galois inverse", false, {}};
    Witness bad = scan(n, exec, [&](int x) -> Witness {
        for (int y = 0; y < n; ++y) {
            U64 c = static_cast<U64>(x) * n + y;
            if (!svec_equal(apply_cols(tcols, dom, mcols[c]), basis(static_cast<int>(c)))) return std::vector<int>{0, x, y};
        }
        for (int y = 0; y < nh; ++y) {
            U64 c = static_cast<U64>(x) * nh + y;
            if (!svec_equal(apply_cols(mcols, cod, tcols[c]), basis(static_cast<int>(c)))) return std::vector<int>{1, x, y};
        }
        return std::nullopt;
    });
    return make_result("Galois inverse", bad);
}

VerifyReport verify_comodule_algebra(const Deformation& w, Exec exec) {
    require_parent(w);
    const HopfAlgebraData& h = *w.parent;
    int n = w.dim, nh = h.dim;
    VerifyReport rep;
    AxiomResult a = check_associative(w.mult, exec);
    a.name = "associativity";
    rep.axioms.push_back(a);
    AxiomResult u = check_unit(w.mult, w.unit);
    u.name = "unit";
    rep.axioms.push_back(u);

    std::vector<SVec> rho = columns_of(w.coaction);
    LinMap dh = LinMap::from_tensor(h.comult);
    MultTable mw(w.mult), mh(h.mult);
    // (rho (x) 1) rho = (1 (x) Delta) rho, i.e. A_f A_g = A_{f * g}
    rep.axioms.push_back(make_result("action associativity", scan(n, exec, [&](int x) -> Witness {
        Accum al(static_cast<U64>(n) * nh * nh), ar(static_cast<U64>(n) * nh * nh);
        for (const auto& [k, c] : rho[x]) {
            U64 x0 = k / nh, x1 = k % nh;
            for (const auto& [k2, c2] : rho[x0]) al.add_mul((k2 / nh * nh + k2 % nh) * nh + x1, c, c2);
            for (std::size_t e = dh.col_begin(x1); e < dh.col_end(x1); ++e) ar.add_mul(x0 * nh * nh + dh.row[e], c, dh.val[e]);
        }
        if (!svec_equal(al.take(), ar.take())) return std::vector<int>{x};
        return std::nullopt;
    })));
    rep.axioms.push_back(make_result("action unit", scan(n, exec, [&](int x) -> Witness {
        Accum acc(n);
        for (const auto& [k, c] : rho[x]) acc.add_mul(k / nh, c, h.counit[k % nh]);
        if (!svec_equal(acc.take(), basis(x))) return std::vector<int>{x};
        return std::nullopt;
    })));
    // rho(xy) = rho(x) rho(y): the action is compatible with the multiplication
    rep.axioms.push_back(make_result("action compatible with multiplication", scan(n, exec, [&](int x) -> Witness {
        for (int y = 0; y < n; ++y) {
            SVec lhs = apply_cols(rho, static_cast<U64>(n) * nh, mw.basis_product(x, y));
            if (!svec_equal(lhs, tensor_mul(mw, mh, rho[x], rho[y]))) return std::vector<int>{x, y};
        }
        return std::nullopt;
    })));
    {
        SVec one = unit_svec(w.unit);
        SVec lhs = apply_cols(rho, static_cast<U64>(n) * nh, one);
        SVec rhs;
        for (const auto& [i, a1] : one)
            for (const auto& [j, b1] : unit_svec(h.unit)) rhs.emplace_back(i * nh + j, a1 * b1);
        std::sort(rhs.begin(), rhs.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
        AxiomResult r{"coaction unital", svec_equal(lhs, rhs), {}};
        rep.axioms.push_back(r);
    }
    if (w.inverse_galois) rep.axioms.push_back(check_galois_inverse(w, *w.inverse_galois, exec));
    return rep;
}

VerifyReport check_galois_identities(const Deformation& w, Exec exec) {
    require_parent(w);
    const HopfAlgebraData& h = *w.parent;
    const SparseTensor& t = require_t(w);
    int n = w.dim, nh = h.dim;
    U64 nn = static_cast<U64>(n) * n;
    std::vector<SVec> rho = columns_of(w.coaction);
    std::vector<SVec> tc = columns_of(t);
    auto dh = coproduct_lists(h.comult, nh);
    MultTable mw(w.mult), mh(h.mult);
    CocycleCtx hctx(h);
    VerifyReport rep;

    // (1) A_f m = m (A_{f_1} (x) A_{f_2}) for all f at once: rho(ab) = rho(a) rho(b)
    rep.axioms.push_back(make_result("(1) A_f m = m (A_f1 (x) A_f2)", scan(n, exec, [&](int a) -> Witness {
        Accum acc(static_cast<U64>(n) * nh);
        for (int b = 0; b < n; ++b) {
            SVec lhs = apply_cols(rho, static_cast<U64>(n) * nh, mw.basis_product(a, b));
            for (const auto& [ka, ca] : rho[a])
                for (const auto& [kb, cb] : rho[b])
                    for (const auto& [r, c] : mw.basis_product(static_cast<int>(ka / nh), static_cast<int>(kb / nh)))
                        for (const auto& [s, d] : mh.basis_product(static_cast<int>(ka % nh), static_cast<int>(kb % nh))) acc.add_mul(r * nh + s, c * d, ca * cb);
            if (!svec_equal(lhs, acc.take())) return std::vector<int>{a, b};
        }
        return std::nullopt;
    })));

    // (2) (1 (x) rho) T(w (x) h) = T(w (x) h_1) (x) h_2
    rep.axioms.push_back(make_result("(2) (1 (x) A_f) T_h = T_{h_1 f(h_2)}", scan(n, exec, [&](int x) -> Witness {
        Accum l(nn * nh), r(nn * nh);
        for (int y = 0; y < nh; ++y) {
            for (const auto& [k, c] : tc[static_cast<U64>(x) * nh + y]) {
                U64 p = k / n, q = k % n;
                for (const auto& [k2, c2] : rho[q]) l.add_mul((p * n + k2 / nh) * nh + k2 % nh, c, c2);
            }
            for (const auto& d : dh[y])
                for (const auto& [k, c] : tc[static_cast<U64>(x) * nh + d.a]) r.add_mul(k * nh + d.b, c, d.c);
            if (!svec_equal(l.take(), r.take())) return std::vector<int>{x, y};
        }
        return std::nullopt;
    })));

    // (3) x_0 (x) y (x) x_1 over T(w (x) h) = x (x) y equals T(w_0 (x) h_2) (x) w_1 S(h_1)
    std::vector<SVec> scols = columns_of(h.antipode);
    std::vector<SVec> times_s(static_cast<std::size_t>(nh) * nh);  // [u * nh + a] = u S(a)
    for (int u = 0; u < nh; ++u)
        for (int a = 0; a < nh; ++a) times_s[static_cast<std::size_t>(u) * nh + a] = mh.mul(basis(u), scols[a]);
    rep.axioms.push_back(make_result("(3) (A_f (x) 1) T_h = T_{f_2(S h_1) h_2} A_f1", scan(n, exec, [&](int x) -> Witness {
        Accum l(nn * nh), r(nn * nh);
        for (int y = 0; y < nh; ++y) {
            for (const auto& [k, c] : tc[static_cast<U64>(x) * nh + y]) {
                U64 p = k / n, q = k % n;
                for (const auto& [k2, c2] : rho[p]) l.add_mul(((k2 / nh) * n + q) * nh + k2 % nh, c, c2);
            }
            // group by (w_0, h_2) first, collecting the H factor w_1 S(h_1)
            std::map<U64, Accum> by_t;
            for (const auto& [kw, cw] : rho[x]) {
                U64 w0 = kw / nh, w1 = kw % nh;
                for (const auto& d : dh[y]) {
                    auto [it, fresh] = by_t.try_emplace(w0 * nh + d.b, static_cast<U64>(nh));
                    add_scaled(it->second, times_s[w1 * nh + d.a], cw * d.c);
                }
            }
            for (auto& [col, acc] : by_t) {
                SVec hs = acc.take();
                for (const auto& [k, c] : tc[col])
                    for (const auto& [s2, cs] : hs) r.add_mul(k * nh + s2, c, cs);
            }
            if (!svec_equal(l.take(), r.take())) return std::vector<int>{x, y};
        }
        return std::nullopt;
    })));

    // T(w (x) h) = (w (x) 1) T(1 (x) h), which makes (4) left W-linear
    SVec one = unit_svec(w.unit);
    std::vector<SVec> t1(nh);
    for (int y = 0; y < nh; ++y) {
        Accum acc(nn);
        for (const auto& [k, c] : one) add_scaled(acc, tc[k * nh + y], c);
        t1[y] = acc.take();
    }
    rep.axioms.push_back(make_result("T left W-linear", scan(n, exec, [&](int x) -> Witness {
        Accum acc(nn);
        for (int y = 0; y < nh; ++y) {
            for (const auto& [k, c] : t1[y])
                for (const auto& [r, v] : mw.basis_product(x, static_cast<int>(k / n))) acc.add_mul(r * n + k % n, v, c);
            if (!svec_equal(acc.take(), tc[static_cast<U64>(x) * nh + y])) return std::vector<int>{x, y};
        }
        return std::nullopt;
    })));

    // (4) at w = 1: sum T(x (x) h) (x) y over T(1 (x) g) = x (x) y equals
    // sum x' (x) T(y' (x) g_2) over T(1 (x) h g_1) = x' (x) y'
    rep.axioms.push_back(make_result("(4) (T_h (x) 1) T_g = (1 (x) T_g2) T_{h g1}", scan(nh, exec, [&](int hh) -> Witness {
        Accum l(nn * n), r(nn * n), v(nn * nh);
        for (int g = 0; g < nh; ++g) {
            for (const auto& [k, c] : t1[g]) {
                U64 x = k / n, y = k % n;
                for (const auto& [k2, c2] : tc[x * nh + hh]) l.add_mul(k2 * n + y, c, c2);
            }
            // sum over g of T(1 (x) h g_1) (x) g_2 in W (x) W (x) H, then 1 (x) T
            for (const auto& d : dh[g])
                for (const auto& [kk, ck] : mh.basis_product(hh, static_cast<int>(d.a))) add_scaled(v, t1[kk], ck * d.c, nh, d.b);
            for (const auto& [k, c] : v.take()) {
                U64 xy = k / nh, b = k % nh, x = xy / n, y = xy % n;
                add_scaled(r, tc[y * nh + b], c, 1, x * nn);
            }
            if (!svec_equal(l.take(), r.take())) return std::vector<int>{hh, g};
        }
        return std::nullopt;
    })));
    return rep;
}

SparseTensor comodule_frame(const Deformation& w, const Functional& f) {
    require_parent(w);
    int n = w.dim, nh = w.parent->dim;
    if (static_cast<int>(f.size()) != n) throw std::invalid_argument("frame functional has the wrong length");
    CycloNum f1;
    for (int i = 0; i < n; ++i) f1.add_mul(f[i], w.unit[i]);
    if (!f1.is_one()) throw std::invalid_argument("frame functional must take the value 1 on the unit");
    SparseTensor psi({nh}, {n});
    for (const auto& [k, v] : w.coaction.entries()) {
        U64 row = k / w.coaction.cols(), x = k % w.coaction.cols();
        U64 x0 = row / nh, x1 = row % nh;
        if (!f[x0].is_zero()) psi.add_rc(x1, x, v * f[x0]);
    }
    try {
        return invert_map(psi);
    } catch (const SingularError& e) {
        throw SingularError("frame functional does not give a comodule isomorphism", e.rank(), e.size());
    }
}

HopfTwoCocycle reconstruct_cocycle(const Deformation& w, const Functional& f) {
    int nh = w.parent->dim;
    std::vector<SVec> phi = columns_of(comodule_frame(w, f));
    MultTable mw(w.mult);
    HopfTwoCocycle c{w.parent, std::vector<CycloNum>(static_cast<std::size_t>(nh) * nh)};
    for (int x = 0; x < nh; ++x)
        for (int y = 0; y < nh; ++y) c.alpha[x * nh + y] = apply_functional(f, mw.mul(phi[x], phi[y]));
    return c;
}

namespace {

// z -> rho(z) - z (x) 1 on W (x) W, with rho(a (x) b) = a_0 (x) b_0 (x) a_1 b_1
SparseTensor codiagonal_defect(const Deformation& w) {
    int n = w.dim, nh = w.parent->dim;
    MultTable mh(w.parent->mult);
    std::vector<SVec> rho = columns_of(w.coaction);
    SVec hone = unit_svec(w.parent->unit);
    SparseTensor k({n, n, nh}, {n, n});
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Accum acc(static_cast<U64>(n) * n * nh);
            for (const auto& [ka, ca] : rho[a])
                for (const auto& [kb, cb] : rho[b])
                    for (const auto& [s, cs] : mh.basis_product(static_cast<int>(ka % nh), static_cast<int>(kb % nh))) acc.add_mul(((ka / nh) * n + kb / nh) * nh + s, ca * cb, cs);
            U64 z = static_cast<U64>(a) * n + b;
            for (const auto& [s, cs] : hone) acc.add(z * nh + s, -cs);
            for (const auto& [r, v] : acc.take()) k.set_rc(r, z, v);
        }
    return k;
}

}  // namespace

std::size_t coinvariant_dimension(const Deformation& w) {
    require_parent(w);
    SparseTensor k = codiagonal_defect(w);
    return static_cast<std::size_t>(k.cols()) - rank_of(k);
}

HopfAlgebraData double_twist_from_deformation(const Deformation& w, std::optional<Functional> frame) {
    require_parent(w);
    const HopfAlgebraData& h = *w.parent;
    int n = w.dim, nh = h.dim;
    if (n != nh) throw std::invalid_argument("double twist needs dim W = dim H");
    Functional f = frame ? *frame : h.counit;
    std::vector<SVec> phi = columns_of(comodule_frame(w, f));
    SparseTensor t = w.inverse_galois ? *w.inverse_galois : invert_M(w);
    std::vector<SVec> tc = columns_of(t);
    U64 nn = static_cast<U64>(n) * n;
    SVec wone = unit_svec(w.unit);

    // S~(h) = (1 (x) f) T(1 (x) h)
    std::vector<SVec> st(nh);
    for (int y = 0; y < nh; ++y) {
        Accum acc(n);
        for (const auto& [k, c] : wone)
            for (const auto& [r, v] : tc[k * nh + y])
                if (!f[r % n].is_zero()) acc.add_mul(r / n, v * c, f[r % n]);
        st[y] = acc.take();
    }
    // iota(x) = phi(x_1) (x) S~(x_2)
    auto dh = coproduct_lists(h.comult, nh);
    std::vector<SVec> iota(nh);
    for (int x = 0; x < nh; ++x) {
        Accum acc(nn);
        for (const auto& d : dh[x])
            for (const auto& [a, ca] : phi[d.a])
                for (const auto& [b, cb] : st[d.b]) acc.add_mul(a * n + b, ca * cb, d.c);
        iota[x] = acc.take();
    }

    SparseTensor defect = codiagonal_defect(w);
    std::vector<SVec> dcols = columns_of(defect);
    for (int x = 0; x < nh; ++x)
        if (!apply_cols(dcols, nn * nh, iota[x]).empty()) throw std::runtime_error("iota(" + h.labels[x] + ") is not coinvariant");
    std::size_t kdim = static_cast<std::size_t>(nn) - rank_of(defect);
    if (kdim != static_cast<std::size_t>(nh)) throw std::runtime_error("coinvariant subspace has dimension " + std::to_string(kdim) + ", expected " + std::to_string(nh));

    // left inverse of iota through a set of pivot coordinates
    SparseTensor it({nh}, {static_cast<int>(nn)});
    for (int x = 0; x < nh; ++x)
        for (const auto& [r, v] : iota[x]) it.set_rc(x, r, v);
    Echelon e = sparse_rref(rows_of(it), static_cast<std::uint32_t>(nn));
    if (e.rank() != static_cast<std::size_t>(nh)) throw SingularError("iota is not injective", e.rank(), nh);
    std::vector<std::uint32_t> piv = e.pivots;
    SparseTensor sq({nh}, {nh});
    for (int x = 0; x < nh; ++x)
        for (int p = 0; p < nh; ++p)
            for (const auto& [r, v] : iota[x])
                if (r == piv[p]) sq.set_rc(p, x, v);
    std::vector<SVec> sqinv = columns_of(invert_map(sq));
    auto pull_back = [&](const SVec& z) -> SVec {
        Accum acc(nh);
        std::size_t zi = 0;
        for (int p = 0; p < nh; ++p) {
            while (zi < z.size() && z[zi].first < piv[p]) ++zi;
            if (zi < z.size() && z[zi].first == piv[p]) add_scaled(acc, sqinv[p], z[zi].second);
        }
        SVec x = acc.take();
        if (!svec_equal(apply_cols(iota, nn, x), z)) throw std::runtime_error("product leaves the image of iota");
        return x;
    };

    MultTable mw(w.mult);
    HopfAlgebraData out;
    out.dim = nh;
    out.labels = h.labels;
    out.counit = h.counit;
    out.comult = h.comult;
    out.mult = SparseTensor({nh}, {nh, nh});
    for (int x = 0; x < nh; ++x)
        for (int y = 0; y < nh; ++y)
            for (const auto& [r, v] : pull_back(tensor_mul(mw, mw, iota[x], iota[y], false, true))) out.mult.set_rc(r, static_cast<U64>(x) * nh + y, v);
    SVec oneone;
    for (const auto& [i, a] : wone)
        for (const auto& [j, b] : wone) oneone.emplace_back(i * n + j, a * b);
    std::sort(oneone.begin(), oneone.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
    SVec u = pull_back(oneone);
    out.unit.assign(nh, CycloNum());
    for (const auto& [k, v] : u) out.unit[k] = v;
    out.antipode = solve_antipode(out);
    out.N = std::lcm(h.N, std::lcm(out.mult.order(), out.antipode.order()));
    return out;
}

HopfTwoCocycle gauge_cocycle(const HopfTwoCocycle& c, const Functional& nu) {
    const HopfAlgebraData& h = *c.parent;
    int n = h.dim;
    Functional nui = convolution_inverse(h, nu);
    MultTable mh(h.mult);
    std::size_t nn = static_cast<std::size_t>(n) * n;
    std::vector<CycloNum> ii(nn), num(nn);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            ii[x * n + y] = nui[x] * nui[y];
            num[x * n + y] = apply_functional(nu, mh.basis_product(x, y));
        }
    LinMap d2 = tensor_square_comult(h);
    return HopfTwoCocycle{c.parent, convolve(d2, convolve(d2, ii, c.alpha), num)};
}

SparseTensor gauge_map(const HopfAlgebraData& h, const Functional& nu) {
    int n = h.dim;
    SparseTensor g({n}, {n});
    auto dh = coproduct_lists(h.comult, n);
    for (int x = 0; x < n; ++x)
        for (const auto& d : dh[x])
            if (!nu[d.a].is_zero()) g.add_rc(d.b, x, d.c * nu[d.a]);
    return g;
}

SVec yd_action(const Deformation& w, const SVec& x, const SVec& hv) {
    require_parent(w);
    int n = w.dim, nh = w.parent->dim;
    const SparseTensor& t = require_t(w);
    LinMap tl = LinMap::from_tensor(t);
    MultTable mw(w.mult);
    Accum acc(n);
    for (const auto& [k, c] : unit_svec(w.unit))
        for (const auto& [y, cy] : hv) {
            U64 col = k * nh + y;
            for (std::size_t e = tl.col_begin(col); e < tl.col_end(col); ++e) {
                SVec p = basis(static_cast<int>(tl.row[e] / n)), q = basis(static_cast<int>(tl.row[e] % n));
                mw.mul_into(acc, mw.mul(p, x), q, tl.val[e] * c * cy);
            }
        }
    return acc.take();
}

SparseTensor t_slice(const Deformation& w, int hh) {
    int n = w.dim, nh = w.parent->dim;
    const SparseTensor& t = require_t(w);
    LinMap tl = LinMap::from_tensor(t);
    SparseTensor out({n, n}, {n});
    for (int x = 0; x < n; ++x) {
        U64 col = static_cast<U64>(x) * nh + hh;
        for (std::size_t e = tl.col_begin(col); e < tl.col_end(col); ++e) out.set_rc(tl.row[e], x, tl.val[e]);
    }
    return out;
}

SparseTensor comodule_action(const Deformation& w, const Functional& f) {
    int n = w.dim, nh = w.parent->dim;
    SparseTensor a({n}, {n});
    for (const auto& [k, v] : w.coaction.entries()) {
        U64 row = k / w.coaction.cols(), x = k % w.coaction.cols();
        if (!f[row % nh].is_zero()) a.add_rc(row / nh, x, v * f[row % nh]);
    }
    return a;
}

}  // namespace hopftwist
