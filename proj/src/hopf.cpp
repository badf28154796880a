#include "hopftwist/hopf.hpp"

#include "hopftwist/linsolve.hpp"
#include "detail.hpp"

#include <omp.h>

#include <atomic>
#include <climits>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace hopftwist {

MultTable::MultTable(const SparseTensor& mult) : n_(mult.out_shape().at(0)), m_(LinMap::from_tensor(mult)) {
    if (mult.out_shape().size() != 1 || mult.in_shape() != std::vector<int>{n_, n_}) throw std::invalid_argument("multiplication tensor must have shape {n} <- {n,n}");
}

SVec MultTable::basis_product(int i, int j) const {
    std::uint64_t c = static_cast<std::uint64_t>(i) * n_ + j;
    SVec out;
    for (std::size_t e = m_.col_begin(c); e < m_.col_end(c); ++e) out.emplace_back(m_.row[e], m_.val[e]);
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}

void MultTable::mul_into(Accum& acc, const SVec& a, const SVec& b, const CycloNum& s) const {
    for (const auto& [i, ca] : a) {
        CycloNum sa = ca * s;
        for (const auto& [j, cb] : b) {
            CycloNum w = sa * cb;
            std::uint64_t c = i * static_cast<std::uint64_t>(n_) + j;
            for (std::size_t e = m_.col_begin(c); e < m_.col_end(c); ++e) acc.add_mul(m_.row[e], m_.val[e], w);
        }
    }
}

SVec MultTable::mul(const SVec& a, const SVec& b) const {
    Accum acc(n_);
    mul_into(acc, a, b);
    return acc.take();
}

int HopfAlgebraData::index_of(const std::string& label) const {
    for (int i = 0; i < dim; ++i)
        if (labels[i] == label) return i;
    throw std::invalid_argument("no basis element labelled '" + label + "'");
}

bool structure_equal(const HopfAlgebraData& a, const HopfAlgebraData& b) {
    if (a.dim != b.dim) return false;
    for (int i = 0; i < a.dim; ++i)
        if (a.unit[i] != b.unit[i] || a.counit[i] != b.counit[i]) return false;
    return a.mult == b.mult && a.comult == b.comult && a.antipode == b.antipode;
}

bool VerifyReport::ok() const {
    for (const auto& a : axioms)
        if (!a.ok) return false;
    return true;
}

const AxiomResult* VerifyReport::first_failure() const {
    for (const auto& a : axioms)
        if (!a.ok) return &a;
    return nullptr;
}

std::string VerifyReport::summary() const {
    std::ostringstream os;
    for (const auto& a : axioms) {
        os << a.name << ": " << (a.ok ? "ok" : "FAIL");
        if (!a.ok) {
            os << " at (";
            for (std::size_t i = 0; i < a.witness.size(); ++i) os << (i ? "," : "") << a.witness[i];
            os << ")";
        }
        os << "\n";
    }
    return os.str();
}

namespace {

using namespace detail;

// (a (x) b)(c (x) d) = ac (x) bd on H (x) H
SVec tensor_square_mul(const MultTable& mt, const SVec& x, const SVec& y) {
    int n = mt.dim();
    const LinMap& m = mt.map();
    Accum acc(static_cast<std::uint64_t>(n) * n);
    for (const auto& [k1, c1] : x) {
        std::uint64_t a = k1 / n, b = k1 % n;
        for (const auto& [k2, c2] : y) {
            std::uint64_t c = k2 / n, d = k2 % n;
            CycloNum w = c1 * c2;
            std::uint64_t ac = a * n + c, bd = b * n + d;
            for (std::size_t e1 = m.col_begin(ac); e1 < m.col_end(ac); ++e1) {
                CycloNum w1 = w * m.val[e1];
                for (std::size_t e2 = m.col_begin(bd); e2 < m.col_end(bd); ++e2) acc.add_mul(m.row[e1] * n + m.row[e2], w1, m.val[e2]);
            }
        }
    }
    return acc.take();
}

}  // namespace

AxiomResult check_associative(const SparseTensor& mult, Exec exec) {
    MultTable mt(mult);
    int n = mt.dim();
    Witness w = scan(n, exec, [&](int i) -> Witness {
        for (int j = 0; j < n; ++j) {
            SVec ij = mt.basis_product(i, j);
            for (int k = 0; k < n; ++k) {
                SVec left = mt.mul(ij, basis(k));
                SVec right = mt.mul(basis(i), mt.basis_product(j, k));
                if (!svec_equal(left, right)) return std::vector<int>{i, j, k};
            }
        }
        return std::nullopt;
    });
    return make_result("associativity", w);
}

AxiomResult check_unit(const SparseTensor& mult, const std::vector<CycloNum>& unit) {
    MultTable mt(mult);
    int n = mt.dim();
    SVec u = svec_from_dense(unit);
    for (int i = 0; i < n; ++i) {
        SVec b = basis(i);
        if (!svec_equal(mt.mul(u, b), b) || !svec_equal(mt.mul(b, u), b)) return make_result("unit", std::vector<int>{i});
    }
    return make_result("unit", std::nullopt);
}

VerifyReport verify_hopf(const HopfAlgebraData& h, Exec exec) {
    int n = h.dim;
    if (static_cast<int>(h.unit.size()) != n || static_cast<int>(h.counit.size()) != n) throw std::invalid_argument("unit/counit length differs from dim");
    VerifyReport rep;
    MultTable mt(h.mult);
    LinMap d = LinMap::from_tensor(h.comult);
    LinMap s = LinMap::from_tensor(h.antipode);
    SVec u = svec_from_dense(h.unit);

    rep.axioms.push_back(check_associative(h.mult, exec));
    rep.axioms.push_back(check_unit(h.mult, h.unit));

    rep.axioms.push_back(make_result("coassociativity", scan(n, exec, [&](int i) -> Witness {
        SVec di = column(d, i);
        if (!svec_equal(apply_legs(di, n, 2, d, 0, 1, 2), apply_legs(di, n, 2, d, 1, 1, 2))) return std::vector<int>{i};
        return std::nullopt;
    })));

    rep.axioms.push_back(make_result("counit", scan(n, exec, [&](int i) -> Witness {
        CycloNum l0, r0;
        SVec left, right;
        Accum la(n), ra(n);
        for (std::size_t e = d.col_begin(i); e < d.col_end(i); ++e) {
            std::uint64_t a = d.row[e] / n, b = d.row[e] % n;
            if (!h.counit[a].is_zero()) la.add_mul(b, h.counit[a], d.val[e]);
            if (!h.counit[b].is_zero()) ra.add_mul(a, h.counit[b], d.val[e]);
        }
        SVec bi = basis(i);
        if (!svec_equal(la.take(), bi) || !svec_equal(ra.take(), bi)) return std::vector<int>{i};
        return std::nullopt;
    })));

    rep.axioms.push_back(make_result("comultiplication multiplicative", scan(n, exec, [&](int i) -> Witness {
        SVec di = column(d, i);
        for (int j = 0; j < n; ++j) {
            SVec prod = mt.basis_product(i, j);
            SVec left = apply_legs(prod, n, 1, d, 0, 1, 2);
            SVec right = tensor_square_mul(mt, di, column(d, j));
            if (!svec_equal(left, right)) return std::vector<int>{i, j};
        }
        return std::nullopt;
    })));

    rep.axioms.push_back(make_result("counit multiplicative", scan(n, exec, [&](int i) -> Witness {
        for (int j = 0; j < n; ++j)
            if (apply_functional(h.counit, mt.basis_product(i, j)) != h.counit[i] * h.counit[j]) return std::vector<int>{i, j};
        return std::nullopt;
    })));

    {
        SVec du = apply_legs(u, n, 1, d, 0, 1, 2);
        SVec uu;
        for (const auto& [a, ca] : u)
            for (const auto& [b, cb] : u) uu.emplace_back(a * n + b, ca * cb);
        std::sort(uu.begin(), uu.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        bool ok = svec_equal(du, uu) && apply_functional(h.counit, u) == CycloNum(1);
        rep.axioms.push_back(make_result("unit is grouplike", ok ? Witness() : Witness(std::vector<int>{})));
    }

    rep.axioms.push_back(make_result("antipode", scan(n, exec, [&](int i) -> Witness {
        SVec di = column(d, i);
        SVec target = scaled_dense(h.unit, h.counit[i]);
        Accum left(n), right(n);
        for (const auto& [k, c] : di) {
            int a = static_cast<int>(k / n), b = static_cast<int>(k % n);
            SVec sa = column(s, a), sb = column(s, b);
            mt.mul_into(left, sa, basis(b), c);
            mt.mul_into(right, basis(a), sb, c);
        }
        if (!svec_equal(left.take(), target)) return std::vector<int>{i, 0};
        if (!svec_equal(right.take(), target)) return std::vector<int>{i, 1};
        return std::nullopt;
    })));
    return rep;
}

HopfAlgebraData dual_hopf(const HopfAlgebraData& h) {
    int n = h.dim;
    HopfAlgebraData d;
    d.dim = n;
    d.N = h.N;
    for (const auto& l : h.labels) d.labels.push_back("f[" + l + "]");
    d.unit = h.counit;
    d.counit = h.unit;
    d.mult = SparseTensor({n}, {n, n});
    for (const auto& [k, v] : h.comult.entries()) {
        // comult key: (j, k) row, i col -> Delta(h_i) has h_j (x) h_k; dual: f_j f_k = ... f_i
        std::uint64_t row = k / h.comult.cols(), col = k % h.comult.cols();
        d.mult.set_rc(col, row, v);
    }
    d.comult = SparseTensor({n, n}, {n});
    for (const auto& [k, v] : h.mult.entries()) {
        std::uint64_t row = k / h.mult.cols(), col = k % h.mult.cols();
        d.comult.set_rc(col, row, v);
    }
    d.antipode = SparseTensor({n}, {n});
    for (const auto& [k, v] : h.antipode.entries()) d.antipode.set_rc(k % n, k / n, v);
    return d;
}

Functional dual_basis_functional(int n, int i) {
    Functional f(n);
    f[i] = CycloNum(1);
    return f;
}

Functional convolve(const LinMap& comult, const Functional& phi, const Functional& psi) {
    std::uint64_t n = comult.cols;
    std::uint64_t m = phi.size();
    Functional out(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        CycloNum s;
        for (std::size_t e = comult.col_begin(i); e < comult.col_end(i); ++e) {
            std::uint64_t a = comult.row[e] / m, b = comult.row[e] % m;
            if (phi[a].is_zero() || psi[b].is_zero()) continue;
            s.add_mul(comult.val[e], phi[a] * psi[b]);
        }
        out[i] = s;
    }
    return out;
}

Functional convolution_inverse(const LinMap& comult, const std::vector<CycloNum>& counit, const Functional& phi) {
    // unknown psi: sum_{a,b} Delta[i][a][b] phi(a) psi(b) = eps(i)
    std::uint64_t n = comult.cols;
    std::uint64_t m = phi.size();
    SparseTensor sys({static_cast<int>(n)}, {static_cast<int>(m)});
    for (std::uint64_t i = 0; i < n; ++i)
        for (std::size_t e = comult.col_begin(i); e < comult.col_end(i); ++e) {
            std::uint64_t a = comult.row[e] / m, b = comult.row[e] % m;
            if (!phi[a].is_zero()) sys.add_rc(i, b, comult.val[e] * phi[a]);
        }
    Functional psi;
    try {
        psi = solve_linear(sys, counit);
    } catch (const std::domain_error&) {
        throw SingularError("functional is not convolution-invertible", rank_of(sys), n);
    }
    Functional left = convolve(comult, phi, psi), right = convolve(comult, psi, phi);
    for (std::uint64_t i = 0; i < n; ++i)
        if (left[i] != counit[i] || right[i] != counit[i]) throw SingularError("functional is not convolution-invertible", rank_of(sys), n);
    return psi;
}

Functional convolution_inverse(const HopfAlgebraData& h, const Functional& phi) {
    if (static_cast<int>(phi.size()) != h.dim) throw std::invalid_argument("functional length differs from dim");
    return convolution_inverse(LinMap::from_tensor(h.comult), h.counit, phi);
}

LinMap tensor_square_comult(const HopfAlgebraData& h) {
    int n = h.dim;
    std::uint64_t nn = static_cast<std::uint64_t>(n);
    LinMap d = LinMap::from_tensor(h.comult);
    SparseTensor t({n * n, n * n}, {n * n});
    for (std::uint64_t x = 0; x < nn; ++x)
        for (std::uint64_t y = 0; y < nn; ++y)
            for (std::size_t e1 = d.col_begin(x); e1 < d.col_end(x); ++e1)
                for (std::size_t e2 = d.col_begin(y); e2 < d.col_end(y); ++e2) {
                    std::uint64_t x1 = d.row[e1] / nn, x2 = d.row[e1] % nn;
                    std::uint64_t y1 = d.row[e2] / nn, y2 = d.row[e2] % nn;
                    t.add_rc((x1 * nn + y1) * nn * nn + (x2 * nn + y2), x * nn + y, d.val[e1] * d.val[e2]);
                }
    return LinMap::from_tensor(t);
}

std::vector<CycloNum> tensor_square_counit(const HopfAlgebraData& h) {
    int n = h.dim;
    std::vector<CycloNum> e(static_cast<std::size_t>(n) * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) e[x * n + y] = h.counit[x] * h.counit[y];
    return e;
}

SparseTensor functional_action(const HopfAlgebraData& h, const Functional& f) {
    int n = h.dim;
    SparseTensor a({n}, {n});
    for (const auto& [k, v] : h.comult.entries()) {
        std::uint64_t row = k / h.comult.cols(), i = k % h.comult.cols();
        std::uint64_t j = row / n, kk = row % n;
        if (!f[kk].is_zero()) a.add_rc(j, i, v * f[kk]);
    }
    return a;
}

SVec iterated_coproduct(const HopfAlgebraData& h, const SVec& x, int k) {
    if (k < 1) throw std::invalid_argument("iterated coproduct needs k >= 1");
    LinMap d = LinMap::from_tensor(h.comult);
    SVec v = x;
    for (int p = 1; p < k; ++p) v = apply_legs(v, h.dim, p, d, p - 1, 1, 2);
    return v;
}

SparseTensor solve_antipode(const HopfAlgebraData& h) {
    int n = h.dim;
    // unknown s[l][k] (S(h_k) = sum_l s[l][k] h_l) at column l*n+k;
    // equation (i,t): sum Delta[i][j][k] m[j][l][t] s[l][k] = eps(i) u(t)
    LinMap d = LinMap::from_tensor(h.comult);
    MultTable mt(h.mult);
    SparseTensor sys({n, n}, {n, n});
    std::vector<CycloNum> rhs(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int t = 0; t < n; ++t) rhs[i * n + t] = h.counit[i] * h.unit[t];
        for (std::size_t e = d.col_begin(i); e < d.col_end(i); ++e) {
            int j = static_cast<int>(d.row[e] / n), k = static_cast<int>(d.row[e] % n);
            for (int l = 0; l < n; ++l)
                for (const auto& [t, c] : mt.basis_product(j, l)) sys.add_rc(static_cast<std::uint64_t>(i) * n + t, static_cast<std::uint64_t>(l) * n + k, d.val[e] * c);
        }
    }
    auto rows = rows_of(sys);
    std::uint32_t nc = static_cast<std::uint32_t>(n * n);
    for (std::size_t r = 0; r < rows.size(); ++r)
        if (!rhs[r].is_zero()) rows[r].emplace_back(nc, rhs[r]);
    Echelon e = sparse_rref(std::move(rows), nc + 1);
    if (e.rank() < nc) throw SingularError("antipode equations are underdetermined", e.rank(), nc);
    SparseTensor s({n}, {n});
    for (std::size_t r = 0; r < e.rank(); ++r) {
        if (e.pivots[r] == nc) throw std::domain_error("identity is not convolution-invertible");
        for (const auto& [c, v] : e.rows[r])
            if (c == nc) s.set_rc(e.pivots[r] / n, e.pivots[r] % n, v);
    }
    return s;
}

}  // namespace hopftwist
