#include "hopftwist/cohomology.hpp"

#include "hopftwist/linsolve.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace hopftwist {

namespace {

int mod(long long a, int n) { return static_cast<int>(((a % n) + n) % n); }

using ZMat = std::vector<std::vector<mpz_class>>;

ZMat zidentity(std::size_t n) {
    ZMat m(n, std::vector<mpz_class>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

// Dense index helpers over the normalized cochains (identity arguments dropped).
struct NormalizedIndex {
    const FiniteGroup& g;
    std::vector<int> pos;  // element -> position among non-identity elements, -1 for identity
    std::vector<int> elems;
    explicit NormalizedIndex(const FiniteGroup& grp) : g(grp), pos(grp.order(), -1) {
        for (int x = 0; x < grp.order(); ++x)
            if (x != grp.identity()) {
                pos[x] = static_cast<int>(elems.size());
                elems.push_back(x);
            }
    }
    std::size_t m1() const { return elems.size(); }
    // -1 when the pair touches the identity (value forced to zero)
    long pair(int a, int b) const {
        if (pos[a] < 0 || pos[b] < 0) return -1;
        return static_cast<long>(pos[a]) * static_cast<long>(m1()) + pos[b];
    }
};

ZMat coboundary_d1(const NormalizedIndex& ix) {
    std::size_t m1 = ix.m1();
    ZMat d(m1 * m1, std::vector<mpz_class>(m1, 0));
    for (int a : ix.elems)
        for (int b : ix.elems) {
            long r = ix.pair(a, b);
            d[r][ix.pos[a]] += 1;
            d[r][ix.pos[b]] += 1;
            int ab = ix.g.mul(a, b);
            if (ix.pos[ab] >= 0) d[r][ix.pos[ab]] -= 1;
        }
    return d;
}

ZMat coboundary_d2(const NormalizedIndex& ix) {
    std::size_t m1 = ix.m1();
    ZMat d;
    d.reserve(m1 * m1 * m1);
    for (int a : ix.elems)
        for (int b : ix.elems)
            for (int c : ix.elems) {
                std::vector<mpz_class> row(m1 * m1, 0);
                auto add = [&](int x, int y, int s) {
                    long p = ix.pair(x, y);
                    if (p >= 0) row[p] += s;
                };
                add(b, c, 1);
                add(ix.g.mul(a, b), c, -1);
                add(a, ix.g.mul(b, c), 1);
                add(a, b, -1);
                d.push_back(std::move(row));
            }
    return d;
}

MuNCocycle unflatten(const FiniteGroup& g, int n, const NormalizedIndex& ix, const std::vector<mpz_class>& x) {
    MuNCocycle c = trivial_cocycle(g, n);
    for (int a : ix.elems)
        for (int b : ix.elems) {
            mpz_class r = x[ix.pair(a, b)] % n;
            if (r < 0) r += n;
            c.exponents[a][b] = static_cast<int>(r.get_si());
        }
    return c;
}

}  // namespace

SmithForm smith_normal_form(ZMat a, std::size_t rows, std::size_t cols) {
    SmithForm s;
    s.P = zidentity(rows);
    s.Pinv = zidentity(rows);
    s.Q = zidentity(cols);
    s.Qinv = zidentity(cols);
    auto row_addmul = [&](std::size_t i, std::size_t j, const mpz_class& k) {  // row_i += k row_j
        if (k == 0) return;
        for (std::size_t c = 0; c < cols; ++c) a[i][c] += k * a[j][c];
        for (std::size_t c = 0; c < rows; ++c) s.P[i][c] += k * s.P[j][c];
        for (std::size_t r = 0; r < rows; ++r) s.Pinv[r][j] -= k * s.Pinv[r][i];
    };
    auto col_addmul = [&](std::size_t i, std::size_t j, const mpz_class& k) {  // col_i += k col_j
        if (k == 0) return;
        for (std::size_t r = 0; r < rows; ++r) a[r][i] += k * a[r][j];
        for (std::size_t r = 0; r < cols; ++r) s.Q[r][i] += k * s.Q[r][j];
        for (std::size_t c = 0; c < cols; ++c) s.Qinv[j][c] -= k * s.Qinv[i][c];
    };
    auto row_swap = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        std::swap(a[i], a[j]);
        std::swap(s.P[i], s.P[j]);
        for (std::size_t r = 0; r < rows; ++r) std::swap(s.Pinv[r][i], s.Pinv[r][j]);
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < rows; ++r) std::swap(a[r][i], a[r][j]);
        for (std::size_t r = 0; r < cols; ++r) std::swap(s.Q[r][i], s.Q[r][j]);
        std::swap(s.Qinv[i], s.Qinv[j]);
    };
    auto row_negate = [&](std::size_t i) {
        for (auto& x : a[i]) x = -x;
        for (auto& x : s.P[i]) x = -x;
        for (std::size_t r = 0; r < rows; ++r) s.Pinv[r][i] = -s.Pinv[r][i];
    };

    std::size_t n = std::min(rows, cols);
    for (std::size_t t = 0; t < n; ++t) {
        while (true) {
            std::size_t bi = rows, bj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (a[i][j] != 0 && (bi == rows || abs(a[i][j]) < abs(a[bi][bj]))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == rows) goto finished;
            row_swap(t, bi);
            col_swap(t, bj);
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                mpz_class q;
                mpz_tdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
                row_addmul(i, t, -q);
                if (a[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                mpz_class q;
                mpz_tdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
                col_addmul(j, t, -q);
                if (a[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        row_addmul(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (a[t][t] < 0) row_negate(t);
        s.rank = t + 1;
    }
finished:
    s.diag.assign(n, 0);
    for (std::size_t t = 0; t < n; ++t) s.diag[t] = a[t][t];
    return s;
}

MuNCocycle trivial_cocycle(const FiniteGroup& g, int n) {
    MuNCocycle c;
    c.group = g;
    c.N = n;
    c.exponents.assign(g.order(), std::vector<int>(g.order(), 0));
    return c;
}

MuNCocycle normalized_cocycle(const FiniteGroup& g, int n, std::vector<std::vector<int>> exponents) {
    if (n < 1) throw std::invalid_argument("root-of-unity order must be positive");
    int m = g.order();
    if (static_cast<int>(exponents.size()) != m) throw std::invalid_argument("exponent table has wrong size");
    for (const auto& row : exponents)
        if (static_cast<int>(row.size()) != m) throw std::invalid_argument("exponent table has wrong size");
    int shift = exponents[g.identity()][g.identity()];
    MuNCocycle c = trivial_cocycle(g, n);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) c.exponents[a][b] = mod(static_cast<long long>(exponents[a][b]) - shift, n);
    return c;
}

MuNCocycle v4_nondegenerate_cocycle() {
    FiniteGroup g = klein_four();
    MuNCocycle c = trivial_cocycle(g, 2);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) c.exponents[a][b] = ((a % 2) * (b / 2)) % 2;
    return c;
}

MuNCocycle z3z3_zeta_jk_cocycle() {
    FiniteGroup g = direct_product(cyclic_group(3), cyclic_group(3));
    MuNCocycle c = trivial_cocycle(g, 3);
    for (int a = 0; a < 9; ++a)
        for (int b = 0; b < 9; ++b) c.exponents[a][b] = ((a % 3) * (b / 3)) % 3;
    return c;
}

MuNCocycle gauge_group_cocycle(const MuNCocycle& c, const std::vector<int>& nu) {
    const FiniteGroup& g = c.group;
    if (static_cast<int>(nu.size()) != g.order()) throw std::invalid_argument("1-cochain has wrong length");
    MuNCocycle r = c;
    auto v = [&](int x) { return x == g.identity() ? 0 : nu[x]; };
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b)
            r.exponents[a][b] = mod(static_cast<long long>(c.exponents[a][b]) + v(a) + v(b) - v(g.mul(a, b)), c.N);
    return r;
}

bool check_group_cocycle(const MuNCocycle& c) {
    const FiniteGroup& g = c.group;
    int m = g.order(), n = c.N;
    if (static_cast<int>(c.exponents.size()) != m) return false;
    for (const auto& row : c.exponents)
        if (static_cast<int>(row.size()) != m) return false;
    int e = g.identity();
    for (int x = 0; x < m; ++x)
        if (mod(c.exponents[e][x], n) != 0 || mod(c.exponents[x][e], n) != 0) return false;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int d = 0; d < m; ++d) {
                long long lhs = static_cast<long long>(c.exponents[a][b]) + c.exponents[g.mul(a, b)][d];
                long long rhs = static_cast<long long>(c.exponents[b][d]) + c.exponents[a][g.mul(b, d)];
                if (mod(lhs - rhs, n) != 0) return false;
            }
    return true;
}

CohomologyGroup compute_h2(const FiniteGroup& g, int n) {
    if (n < 1) throw std::invalid_argument("root-of-unity order must be positive");
    NormalizedIndex ix(g);
    std::size_t m1 = ix.m1();
    std::size_t n2 = m1 * m1;
    CohomologyGroup out;
    if (n2 == 0) return out;

    // cocycles mod N: x = Q y with y_i in (N / gcd(d_i, N)) Z on the rank part
    ZMat d2 = coboundary_d2(ix);
    SmithForm s2 = smith_normal_form(d2, d2.size(), n2);
    std::vector<mpz_class> scale(n2, 1);
    for (std::size_t i = 0; i < s2.rank; ++i) {
        mpz_class gg;
        mpz_class nn(n);
        mpz_gcd(gg.get_mpz_t(), s2.diag[i].get_mpz_t(), nn.get_mpz_t());
        scale[i] = nn / gg;
    }

    // saturated coboundaries: first r1 columns of P1^{-1}
    ZMat d1 = coboundary_d1(ix);
    SmithForm s1 = smith_normal_form(d1, n2, m1);

    // generators of B_sat + N Z^{n2} in the lattice basis L = Q diag(scale)
    std::vector<std::vector<mpz_class>> gens;
    for (std::size_t i = 0; i < s1.rank; ++i) {
        std::vector<mpz_class> v(n2);
        for (std::size_t r = 0; r < n2; ++r) v[r] = s1.Pinv[r][i];
        gens.push_back(std::move(v));
    }
    for (std::size_t j = 0; j < n2; ++j) {
        std::vector<mpz_class> v(n2, 0);
        v[j] = n;
        gens.push_back(std::move(v));
    }
    ZMat coords(n2, std::vector<mpz_class>(gens.size(), 0));
    for (std::size_t c = 0; c < gens.size(); ++c)
        for (std::size_t i = 0; i < n2; ++i) {
            mpz_class acc = 0;
            for (std::size_t k = 0; k < n2; ++k)
                if (s2.Qinv[i][k] != 0 && gens[c][k] != 0) acc += s2.Qinv[i][k] * gens[c][k];
            if (acc % scale[i] != 0) throw std::logic_error("coboundary outside the cocycle lattice");
            coords[i][c] = acc / scale[i];
        }
    SmithForm s3 = smith_normal_form(coords, n2, gens.size());
    for (std::size_t i = 0; i < n2; ++i) {
        mpz_class d = i < s3.diag.size() ? s3.diag[i] : mpz_class(0);
        if (d == 1) continue;
        if (d == 0) throw std::logic_error("infinite quotient in H^2 computation");
        // representative: L * Pinv3[:, i]
        std::vector<mpz_class> y(n2);
        for (std::size_t r = 0; r < n2; ++r) y[r] = s3.Pinv[r][i] * scale[r];
        std::vector<mpz_class> x(n2, 0);
        for (std::size_t r = 0; r < n2; ++r)
            for (std::size_t k = 0; k < n2; ++k)
                if (s2.Q[r][k] != 0 && y[k] != 0) x[r] += s2.Q[r][k] * y[k];
        out.invariant_factors.push_back(d.get_si());
        out.representatives.push_back(unflatten(g, n, ix, x));
    }
    return out;
}

bool cohomologous(const MuNCocycle& a, const MuNCocycle& b) {
    if (!(a.group == b.group)) throw std::invalid_argument("cocycles live on different groups");
    int n = std::lcm(a.N, b.N);
    NormalizedIndex ix(a.group);
    std::size_t m1 = ix.m1(), n2 = m1 * m1;
    if (n2 == 0) return true;
    std::vector<mpz_class> x(n2);
    for (int p : ix.elems)
        for (int q : ix.elems)
            x[ix.pair(p, q)] = a.exponents[p][q] * (n / a.N) - b.exponents[p][q] * (n / b.N);
    ZMat d1 = coboundary_d1(ix);
    SmithForm s1 = smith_normal_form(d1, n2, m1);
    for (std::size_t i = s1.rank; i < n2; ++i) {
        mpz_class acc = 0;
        for (std::size_t k = 0; k < n2; ++k) acc += s1.P[i][k] * x[k];
        if (acc % n != 0) return false;
    }
    return true;
}

SparseTensor twisted_group_algebra(const MuNCocycle& c) {
    if (!check_group_cocycle(c)) throw std::invalid_argument("not a normalized 2-cocycle");
    const FiniteGroup& g = c.group;
    int m = g.order();
    SparseTensor t({m}, {m, m});
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) t.set({g.mul(a, b), a, b}, c.value(a, b));
    return t;
}

std::size_t twisted_center_dimension(const MuNCocycle& c) {
    const FiniteGroup& g = c.group;
    int m = g.order();
    // rows (h, target): coefficient of U_target in U_h z - z U_h
    SparseTensor sys({m, m}, {m});
    for (int h = 0; h < m; ++h)
        for (int x = 0; x < m; ++x) {
            CycloNum left = c.value(h, x), right = c.value(x, h);
            sys.add_rc(static_cast<std::uint64_t>(h) * m + g.mul(h, x), x, left);
            sys.add_rc(static_cast<std::uint64_t>(h) * m + g.mul(x, h), x, -right);
        }
    return kernel(sys).size();
}

bool is_nondegenerate(const MuNCocycle& c) {
    if (!check_group_cocycle(c)) throw std::invalid_argument("not a normalized 2-cocycle");
    return twisted_center_dimension(c) == 1;
}

CycloNum uct_evaluate(const MuNCocycle& c, const std::vector<std::pair<int, int>>& word) {
    const FiniteGroup& g = c.group;
    int cur = g.identity();
    CycloNum lambda(1);
    for (const auto& [h, e] : word) {
        if (h < 0 || h >= g.order()) throw std::invalid_argument("word letter out of range");
        if (e == 1) {
            lambda *= c.value(cur, h);
            cur = g.mul(cur, h);
        } else if (e == -1) {
            // U_h^{-1} = alpha(h, h^{-1})^{-1} U_{h^{-1}}
            int hi = g.inv(h);
            lambda *= c.value(h, hi).inverse();
            lambda *= c.value(cur, hi);
            cur = g.mul(cur, hi);
        } else {
            throw std::invalid_argument("word exponents must be +1 or -1");
        }
    }
    if (cur != g.identity()) throw std::invalid_argument("word does not evaluate to the identity");
    return lambda;
}

}  // namespace hopftwist
