#include "hopftwist/invariants.hpp"

#include "detail.hpp"

#include <functional>
#include <numeric>
#include <stdexcept>

namespace hopftwist {

using namespace detail;
using U64 = std::uint64_t;

namespace {

const SparseTensor& need_t(const Deformation& w) {
    if (!w.parent) throw std::invalid_argument("deformation has no parent Hopf algebra");
    if (!w.inverse_galois) throw std::logic_error("deformation carries no T; run invert_M or supply a GeneratorTwist");
    return *w.inverse_galois;
}

// Shared read-only data for the streaming kernels.
struct Ctx {
    int n = 0, nh = 0;
    std::vector<SVec> tcols;                                // T(w (x) h) at w * nh + h
    LinMap mult;
    std::vector<std::vector<std::tuple<U64, U64, CycloNum>>> rho_entries;  // (w_0, h index, coefficient)

    explicit Ctx(const Deformation& w) : n(w.dim), nh(w.parent->dim) {
        const SparseTensor& t = need_t(w);
        LinMap lt = LinMap::from_tensor(t);
        tcols.resize(static_cast<std::size_t>(n) * nh);
        for (U64 c = 0; c < lt.cols; ++c) tcols[c] = column(lt, c);
        mult = LinMap::from_tensor(w.mult);
        LinMap lr = LinMap::from_tensor(w.coaction);
        rho_entries.resize(n);
        for (int k = 0; k < n; ++k)
            for (std::size_t e = lr.col_begin(k); e < lr.col_end(k); ++e) rho_entries[k].emplace_back(lr.row[e] / nh, lr.row[e] % nh, lr.val[e]);
    }
};

// Applies T_h to the last of p legs.
SVec apply_t_last(const Ctx& c, const SVec& v, int h, Accum& acc) {
    for (const auto& [k, a] : v) {
        U64 pre = k / c.n, last = k % c.n;
        for (const auto& [k2, b] : c.tcols[last * c.nh + h]) acc.add_mul(pre * c.n * c.n + k2, a, b);
    }
    return acc.take();
}

// m^l: multiplies the legs left to right.
SVec multiply_legs(const Ctx& c, SVec v, int p) {
    for (; p > 1; --p) v = apply_legs(v, c.n, p, c.mult, 0, 2, 1);
    return v;
}

// Sum over w of the coefficient of (w, h_j) in rho(Phi(w)), for every j.
void read_traces(const Ctx& c, const std::vector<SVec>& phi, std::vector<CycloNum>& out) {
    out.assign(c.nh, CycloNum());
    for (int w = 0; w < c.n; ++w)
        for (const auto& [k, a] : phi[w])
            for (const auto& [w0, j, r] : c.rho_entries[k])
                if (w0 == static_cast<U64>(w)) out[j].add_mul(a, r);
}

struct Plan {
    std::vector<Functional> fs;
    std::vector<std::string> f_labels;
    std::vector<int> h_set;
};

Plan make_plan(const Deformation& w, const FingerprintOptions& opt) {
    const HopfAlgebraData& h = *w.parent;
    Plan p;
    if (opt.functionals.empty()) {
        for (int j = 0; j < h.dim; ++j) {
            Functional f(h.dim);
            f[j] = CycloNum(1);
            p.fs.push_back(std::move(f));
        }
        p.f_labels = h.labels;
    } else {
        p.fs = opt.functionals;
        for (const auto& f : p.fs)
            if (static_cast<int>(f.size()) != h.dim) throw std::invalid_argument("functional has the wrong length");
        p.f_labels = opt.functional_labels;
        if (p.f_labels.empty())
            for (std::size_t i = 0; i < p.fs.size(); ++i) p.f_labels.push_back("f" + std::to_string(i));
        if (p.f_labels.size() != p.fs.size()) throw std::invalid_argument("one label per functional expected");
    }
    p.h_set = opt.h_set;
    if (p.h_set.empty()) {
        p.h_set.resize(h.dim);
        std::iota(p.h_set.begin(), p.h_set.end(), 0);
    }
    for (int x : p.h_set)
        if (x < 0 || x >= h.dim) throw std::invalid_argument("h index out of range");
    return p;
}

Fingerprint empty_fingerprint(const Deformation& w, const Plan& p, int depth) {
    Fingerprint fp;
    fp.depth = depth;
    fp.h_labels = w.parent->labels;
    fp.f_labels = p.f_labels;
    fp.h_set = p.h_set;
    return fp;
}

CycloNum pair_functional(const Functional& f, const std::vector<CycloNum>& per_basis) {
    CycloNum s;
    for (std::size_t j = 0; j < f.size(); ++j)
        if (!f[j].is_zero() && !per_basis[j].is_zero()) s.add_mul(f[j], per_basis[j]);
    return s;
}

// Values for every sigma and f at one hs tuple, given V[w] = T(hs)(w).
// out[sigma][f]
void evaluate_tuple(const Ctx& c, const std::vector<SVec>& v, int l, const std::vector<Permutation>& sigmas, const std::vector<Functional>& fs, std::vector<std::vector<CycloNum>>& out) {
    out.assign(sigmas.size(), {});
    std::vector<SVec> phi(c.n);
    std::vector<CycloNum> per_basis;
    for (std::size_t s = 0; s < sigmas.size(); ++s) {
        for (int w = 0; w < c.n; ++w) phi[w] = multiply_legs(c, sigmas[s].is_identity() ? v[w] : permute_legs(v[w], c.n, sigmas[s]), l + 1);
        read_traces(c, phi, per_basis);
        out[s].reserve(fs.size());
        for (const auto& f : fs) out[s].push_back(pair_functional(f, per_basis));
    }
}

}  // namespace

bool spec_less(const InvariantSpec& a, const InvariantSpec& b) {
    if (a.l != b.l) return a.l < b.l;
    if (!(a.sigma == b.sigma)) return a.sigma < b.sigma;
    if (a.f != b.f) return a.f < b.f;
    return a.hs < b.hs;
}

void validate_spec(const InvariantSpec& s, int num_functionals, int dim_h) {
    if (s.l < 0) throw std::invalid_argument("negative l");
    if (s.sigma.size() != s.l + 1) throw std::invalid_argument("sigma must permute l + 1 legs");
    if (static_cast<int>(s.hs.size()) != s.l) throw std::invalid_argument("expected l elements of H");
    if (s.f < 0 || s.f >= num_functionals) throw std::invalid_argument("functional index out of range");
    for (int h : s.hs)
        if (h < 0 || h >= dim_h) throw std::invalid_argument("h index out of range");
}

CycloNum basic_invariant(const Deformation& w, const InvariantSpec& s, const Functional& f) {
    Ctx c(w);
    validate_spec(s, INT_MAX, c.nh);
    if (static_cast<int>(f.size()) != c.nh) throw std::invalid_argument("functional has the wrong length");
    Accum acc(ipow(c.n, s.l + 1));
    Accum af(c.n);
    CycloNum tr;
    for (int x = 0; x < c.n; ++x) {
        for (const auto& [w0, j, r] : c.rho_entries[x])
            if (!f[j].is_zero()) af.add_mul(w0, r, f[j]);
        SVec v = af.take();
        for (int k = 0; k < s.l; ++k) v = apply_t_last(c, v, s.hs[k], acc);
        v = multiply_legs(c, s.sigma.is_identity() ? std::move(v) : permute_legs(v, c.n, s.sigma), s.l + 1);
        auto it = std::lower_bound(v.begin(), v.end(), static_cast<U64>(x), [](const auto& e, U64 k) { return e.first < k; });
        if (it != v.end() && it->first == static_cast<U64>(x)) tr += it->second;
    }
    return tr;
}

CycloNum basic_invariant(const Deformation& w, const InvariantSpec& s) {
    need_t(w);
    int nh = w.parent->dim;
    if (s.f < 0 || s.f >= nh) throw std::invalid_argument("functional index out of range");
    Functional f(nh);
    f[s.f] = CycloNum(1);
    return basic_invariant(w, s, f);
}

CycloNum basic_invariant_reference(const Deformation& w, const InvariantSpec& s, const Functional& f) {
    need_t(w);
    int n = w.dim;
    validate_spec(s, INT_MAX, w.parent->dim);
    std::vector<SparseTensor> chain;
    if (s.l > 0) {
        // m^l = m (m (x) 1) ... (m (x) 1^{l-1})
        SparseTensor ml = w.mult;
        for (int p = 3; p <= s.l + 1; ++p) ml = compose({ml, tensor_product(w.mult, SparseTensor::identity(std::vector<int>(p - 2, n)))});
        chain.push_back(ml);
        chain.push_back(permutation_operator(s.sigma, n));
        SparseTensor t = t_slice(w, s.hs[0]);
        for (int k = 1; k < s.l; ++k) t = compose({tensor_product(SparseTensor::identity(std::vector<int>(k, n)), t_slice(w, s.hs[k])), t});
        chain.push_back(t);
    }
    chain.push_back(comodule_action(w, f));
    return trace(compose(chain));
}

const CycloNum* Fingerprint::find(const InvariantSpec& s) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), s, [](const FingerprintEntry& e, const InvariantSpec& k) { return spec_less(e.spec, k); });
    if (it == entries.end() || !(it->spec == s)) return nullptr;
    return &it->value;
}

Fingerprint fingerprint(const Deformation& w, const FingerprintOptions& opt) {
    Ctx c(w);
    Plan plan = make_plan(w, opt);
    int nf = static_cast<int>(plan.fs.size());

    if (!opt.specs.empty()) {
        int depth = 0;
        for (const auto& s : opt.specs) {
            validate_spec(s, nf, c.nh);
            depth = std::max(depth, s.l);
        }
        Fingerprint fp = empty_fingerprint(w, plan, depth);
        std::vector<InvariantSpec> specs = opt.specs;
        std::sort(specs.begin(), specs.end(), spec_less);
        specs.erase(std::unique(specs.begin(), specs.end()), specs.end());
        std::vector<CycloNum> values(specs.size());
        auto run = [&](std::size_t i) {
            const InvariantSpec& s = specs[i];
            Accum acc(ipow(c.n, s.l + 1));
            std::vector<SVec> v(c.n);
            for (int x = 0; x < c.n; ++x) {
                v[x] = basis(x);
                for (int k = 0; k < s.l; ++k) v[x] = apply_t_last(c, v[x], s.hs[k], acc);
            }
            std::vector<std::vector<CycloNum>> out;
            evaluate_tuple(c, v, s.l, {s.sigma}, {plan.fs[s.f]}, out);
            values[i] = out[0][0];
        };
        if (opt.exec == Exec::serial) {
            for (std::size_t i = 0; i < specs.size(); ++i) run(i);
        } else {
#pragma omp parallel for schedule(dynamic)
            for (std::size_t i = 0; i < specs.size(); ++i) run(i);
        }
        for (std::size_t i = 0; i < specs.size(); ++i)
            if (!values[i].is_zero()) fp.entries.push_back({specs[i], values[i]});
        return fp;
    }

    if (opt.depth < 0) throw std::invalid_argument("negative depth");
    Fingerprint fp = empty_fingerprint(w, plan, opt.depth);
    int nset = static_cast<int>(plan.h_set.size());
    for (int l = 0; l <= opt.depth; ++l) {
        std::vector<Permutation> sigmas = Permutation::all(l + 1);
        U64 tuples = ipow(nset, l);
        // res[t][sigma][f], t the lexicographic index of the hs tuple
        std::vector<std::vector<std::vector<CycloNum>>> res(tuples);
        // one task per leading element; depth-first over the rest so prefixes are shared
        int tasks = l == 0 ? 1 : nset;
        auto run = [&](int first) {
            Accum acc(ipow(c.n, l + 1));
            std::vector<std::vector<SVec>> stack(l + 1, std::vector<SVec>(c.n));
            for (int x = 0; x < c.n; ++x) stack[0][x] = basis(x);
            std::function<void(int, U64)> dfs = [&](int k, U64 t) {
                if (k == l) {
                    evaluate_tuple(c, stack[l], l, sigmas, plan.fs, res[t]);
                    return;
                }
                for (int i = (k == 0 ? first : 0); i < (k == 0 ? first + 1 : nset); ++i) {
                    for (int x = 0; x < c.n; ++x) stack[k + 1][x] = apply_t_last(c, stack[k][x], plan.h_set[i], acc);
                    dfs(k + 1, t * nset + i);
                }
            };
            dfs(0, 0);
        };
        if (opt.exec == Exec::serial || tasks == 1) {
            for (int i = 0; i < tasks; ++i) run(i);
        } else {
#pragma omp parallel for schedule(dynamic)
            for (int i = 0; i < tasks; ++i) run(i);
        }
        for (std::size_t s = 0; s < sigmas.size(); ++s)
            for (int f = 0; f < nf; ++f)
                for (U64 t = 0; t < tuples; ++t) {
                    const CycloNum& val = res[t][s][f];
                    if (val.is_zero()) continue;
                    InvariantSpec spec{l, sigmas[s], f, {}};
                    for (int k = l - 1, rest = static_cast<int>(t); k >= 0; --k, rest /= nset) spec.hs.insert(spec.hs.begin(), plan.h_set[rest % nset]);
                    fp.entries.push_back({std::move(spec), val});
                }
    }
    return fp;
}

Fingerprint fingerprint_streaming(const Deformation& w, const FingerprintOptions& opt) {
    need_t(w);
    Plan plan = make_plan(w, opt);
    int nf = static_cast<int>(plan.fs.size());
    std::vector<InvariantSpec> specs = opt.specs;
    int depth = opt.depth;
    if (specs.empty()) {
        int nset = static_cast<int>(plan.h_set.size());
        for (int l = 0; l <= opt.depth; ++l)
            for (const auto& sigma : Permutation::all(l + 1))
                for (int f = 0; f < nf; ++f)
                    for (U64 t = 0; t < ipow(nset, l); ++t) {
                        InvariantSpec s{l, sigma, f, std::vector<int>(l)};
                        U64 rest = t;
                        for (int k = l - 1; k >= 0; --k, rest /= nset) s.hs[k] = plan.h_set[rest % nset];
                        specs.push_back(std::move(s));
                    }
    } else {
        depth = 0;
        for (const auto& s : specs) depth = std::max(depth, s.l);
        std::sort(specs.begin(), specs.end(), spec_less);
        specs.erase(std::unique(specs.begin(), specs.end()), specs.end());
    }
    Fingerprint fp = empty_fingerprint(w, plan, depth);
    for (const auto& s : specs) {
        validate_spec(s, nf, w.parent->dim);
        CycloNum v = basic_invariant(w, s, plan.fs[s.f]);
        if (!v.is_zero()) fp.entries.push_back({s, v});
    }
    return fp;
}

Verdict compare_fingerprints(const Fingerprint& a, const Fingerprint& b) {
    if (a.h_labels != b.h_labels) throw std::invalid_argument("fingerprints over different parents");
    if (a.depth != b.depth || a.f_labels != b.f_labels || a.h_set != b.h_set) throw std::invalid_argument("fingerprints over different depths or index sets");
    if (a.entries.size() != b.entries.size()) return Verdict::distinct;
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        if (!(a.entries[i].spec == b.entries[i].spec) || a.entries[i].value != b.entries[i].value) return Verdict::distinct;
    return Verdict::indistinguishable;
}

SparseTensor projector_from_T(const Deformation& w, int h) {
    Ctx c(w);
    if (h < 0 || h >= c.nh) throw std::invalid_argument("h index out of range");
    MultTable mt(w.mult);
    SparseTensor out({c.n}, {c.n});
    Accum acc(c.n);
    for (int x = 0; x < c.n; ++x) {
        for (const auto& [k, a] : c.tcols[static_cast<U64>(x) * c.nh + h]) mt.mul_into(acc, basis(static_cast<int>(k % c.n)), basis(static_cast<int>(k / c.n)), a);
        for (const auto& [r, v] : acc.take()) out.set_rc(r, x, v);
    }
    return out;
}

Deformation galois_twist_deformation(const Deformation& w, long long j) {
    if (!w.parent) throw std::invalid_argument("deformation has no parent Hopf algebra");
    const HopfAlgebraData& h = *w.parent;
    int order = lcm_order(lcm_order(w.mult.order(), w.coaction.order()), lcm_order(h.mult.order(), lcm_order(h.comult.order(), h.antipode.order())));
    if (w.inverse_galois) order = lcm_order(order, w.inverse_galois->order());
    for (const auto& u : w.unit) order = lcm_order(order, u.order());
    if (std::gcd(j, static_cast<long long>(order)) != 1) throw std::invalid_argument("Galois exponent must be prime to " + std::to_string(order));
    auto fixed = [&](const std::vector<CycloNum>& v) {
        return std::all_of(v.begin(), v.end(), [&](const CycloNum& x) { return x.galois(j) == x; });
    };
    if (h.mult.galois(j) != h.mult || h.comult.galois(j) != h.comult || h.antipode.galois(j) != h.antipode || !fixed(h.unit) || !fixed(h.counit))
        throw std::invalid_argument("the parent Hopf algebra is not fixed by zeta -> zeta^" + std::to_string(j));
    Deformation g = w;
    g.mult = w.mult.galois(j);
    g.coaction = w.coaction.galois(j);
    for (auto& u : g.unit) u = u.galois(j);
    if (w.inverse_galois) g.inverse_galois = w.inverse_galois->galois(j);
    return g;
}

Fingerprint galois_apply(const Fingerprint& f, long long j) {
    Fingerprint g = f;
    for (auto& e : g.entries) e.value = galois_apply(e.value, j);
    return g;
}

RationalityReport rationality_report(const Fingerprint& f) {
    RationalityReport r;
    for (const auto& e : f.entries) {
        ++r.nonzero;
        if (e.value.is_rational())
            ++r.rational;
        else
            r.irrational.push_back(e.spec);
    }
    return r;
}

CycloNum dual_group_coset_sum(const Subgroup& f, const Deformation& block, const InvariantSpec& spec) {
    const FiniteGroup& g = f.parent();
    if (!block.parent || block.parent->dim != f.order()) throw std::invalid_argument("block must be the F = G deformation of F");
    validate_spec(spec, g.order(), g.order());
    CycloNum sum;
    for (int t : f.coset_reps()) {
        auto pos = [&](int x) { return f.position(g.mul(g.mul(g.inv(t), x), t)); };
        InvariantSpec local{spec.l, spec.sigma, pos(spec.f), {}};
        bool inside = local.f >= 0;
        for (int x : spec.hs) {
            local.hs.push_back(pos(x));
            inside = inside && local.hs.back() >= 0;
        }
        if (inside) sum += basic_invariant(block, local);
    }
    return sum;
}

}  // namespace hopftwist
