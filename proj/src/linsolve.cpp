#include "hopftwist/linsolve.hpp"

#include <algorithm>
#include <limits>

namespace hopftwist {

Matrix bareiss_solve(const Matrix& a, const Matrix& b) {
    std::size_t n = a.size();
    std::size_t k = b.empty() ? 0 : b[0].size();
    if (b.size() != n) throw std::invalid_argument("right-hand side row count differs");
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) throw std::invalid_argument("bareiss_solve needs a square matrix");
        m[i] = a[i];
        m[i].insert(m[i].end(), b[i].begin(), b[i].end());
    }
    std::size_t w = n + k;
    CycloNum prev(1);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c].is_zero()) ++piv;
        if (piv == n) throw SingularError("matrix is not invertible", rank, n);
        std::swap(m[c], m[piv]);
        ++rank;
        CycloNum inv_prev = prev.inverse();
        for (std::size_t r = c + 1; r < n; ++r) {
            for (std::size_t j = c + 1; j < w; ++j) {
                CycloNum v = m[c][c] * m[r][j] - m[r][c] * m[c][j];
                m[r][j] = v * inv_prev;  // exact by Sylvester's identity
            }
            m[r][c] = CycloNum();
        }
        prev = m[c][c];
    }
    Matrix x(n, std::vector<CycloNum>(k));
    std::vector<CycloNum> diag_inv(n);
    for (std::size_t i = 0; i < n; ++i) diag_inv[i] = m[i][i].inverse();
    for (std::size_t col = 0; col < k; ++col) {
        for (std::size_t i = n; i-- > 0;) {
            CycloNum s = m[i][n + col];
            for (std::size_t j = i + 1; j < n; ++j)
                if (!m[i][j].is_zero()) s -= m[i][j] * x[j][col];
            x[i][col] = s * diag_inv[i];
        }
    }
    return x;
}

CycloNum bareiss_determinant(const Matrix& a) {
    std::size_t n = a.size();
    Matrix m = a;
    CycloNum prev(1);
    int sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c].is_zero()) ++piv;
        if (piv == n) return CycloNum();
        if (piv != c) {
            std::swap(m[c], m[piv]);
            sign = -sign;
        }
        CycloNum inv_prev = prev.inverse();
        for (std::size_t r = c + 1; r < n; ++r) {
            for (std::size_t j = c + 1; j < n; ++j) m[r][j] = (m[c][c] * m[r][j] - m[r][c] * m[c][j]) * inv_prev;
            m[r][c] = CycloNum();
        }
        prev = m[c][c];
    }
    return n == 0 ? CycloNum(1) : (sign > 0 ? prev : -prev);
}

namespace {

const CycloNum* find_col(const SparseRow& r, std::uint32_t c) {
    auto it = std::lower_bound(r.begin(), r.end(), c, [](const auto& e, std::uint32_t v) { return e.first < v; });
    return (it != r.end() && it->first == c) ? &it->second : nullptr;
}

// r - s * p
SparseRow axpy(const SparseRow& r, const CycloNum& s, const SparseRow& p) {
    SparseRow out;
    out.reserve(r.size() + p.size());
    std::size_t i = 0, j = 0;
    while (i < r.size() || j < p.size()) {
        if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
            out.push_back(r[i++]);
        } else if (i == r.size() || p[j].first < r[i].first) {
            out.emplace_back(p[j].first, -(s * p[j].second));
            ++j;
        } else {
            CycloNum v = r[i].second - s * p[j].second;
            if (!v.is_zero()) out.emplace_back(r[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

Echelon sparse_rref(std::vector<SparseRow> rows, std::uint32_t elim_cols) {
    Echelon ech;
    std::vector<char> used(rows.size(), 0);
    for (std::uint32_t c = 0; c < elim_cols; ++c) {
        std::size_t best = rows.size();
        std::size_t best_len = std::numeric_limits<std::size_t>::max();
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (used[r] || rows[r].empty() || rows[r].front().first != c) continue;
            if (rows[r].size() < best_len) {
                best = r;
                best_len = rows[r].size();
            }
        }
        if (best == rows.size()) continue;
        used[best] = 1;
        SparseRow& p = rows[best];
        CycloNum inv = p.front().second.inverse();
        for (auto& e : p) e.second *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == best || rows[r].empty()) continue;
            const CycloNum* v = find_col(rows[r], c);
            if (!v) continue;
            CycloNum s = *v;
            rows[r] = axpy(rows[r], s, p);
        }
        for (auto& q : ech.rows) {
            const CycloNum* v = find_col(q, c);
            if (!v) continue;
            CycloNum s = *v;
            q = axpy(q, s, p);
        }
        ech.rows.push_back(std::move(p));
        ech.pivots.push_back(c);
        p.clear();
    }
    return ech;
}

std::vector<SparseRow> rows_of(const SparseTensor& a) {
    std::vector<SparseRow> rows(a.rows());
    for (const auto& [k, v] : a.entries()) rows[k / a.cols()].emplace_back(static_cast<std::uint32_t>(k % a.cols()), v);
    return rows;
}

Matrix dense_of(const SparseTensor& a) {
    Matrix m(a.rows(), std::vector<CycloNum>(a.cols()));
    for (const auto& [k, v] : a.entries()) m[k / a.cols()][k % a.cols()] = v;
    return m;
}

std::vector<CycloNum> solve_linear(const SparseTensor& a, const std::vector<CycloNum>& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("right-hand side length differs from row count");
    if (a.rows() == a.cols()) {
        Matrix rhs(b.size(), std::vector<CycloNum>(1));
        for (std::size_t i = 0; i < b.size(); ++i) rhs[i][0] = b[i];
        try {
            Matrix x = bareiss_solve(dense_of(a), rhs);
            std::vector<CycloNum> out(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i][0];
            return out;
        } catch (const SingularError&) {
            // fall through to the general consistent-system path
        }
    }
    auto rows = rows_of(a);
    std::uint32_t nc = static_cast<std::uint32_t>(a.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (!b[i].is_zero()) rows[i].emplace_back(nc, b[i]);
    Echelon e = sparse_rref(std::move(rows), nc + 1);
    std::vector<CycloNum> x(a.cols());
    for (std::size_t i = 0; i < e.rank(); ++i) {
        if (e.pivots[i] == nc) throw std::domain_error("linear system is inconsistent");
        const CycloNum* v = find_col(e.rows[i], nc);
        if (v) x[e.pivots[i]] = *v;
    }
    return x;
}

SparseTensor invert_map(const SparseTensor& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("invert_map needs a square map");
    std::uint32_t n = static_cast<std::uint32_t>(a.rows());
    auto rows = rows_of(a);
    for (std::uint32_t i = 0; i < n; ++i) rows[i].emplace_back(n + i, CycloNum(1));
    Echelon e = sparse_rref(std::move(rows), n);
    if (e.rank() < n) throw SingularError("map is not invertible", e.rank(), n);
    SparseTensor inv(a.in_shape(), a.out_shape());
    for (std::size_t i = 0; i < e.rank(); ++i)
        for (const auto& [c, v] : e.rows[i])
            if (c >= n) inv.set_rc(e.pivots[i], c - n, v);
    return inv;
}

std::vector<std::vector<CycloNum>> kernel_rows(std::vector<SparseRow> rows, std::uint32_t ncols) {
    Echelon e = sparse_rref(std::move(rows), ncols);
    std::vector<int> pivot_row(ncols, -1);
    for (std::size_t i = 0; i < e.rank(); ++i) pivot_row[e.pivots[i]] = static_cast<int>(i);
    // column -> list of (pivot row, coefficient) for free columns
    std::vector<std::vector<std::pair<std::uint32_t, const CycloNum*>>> bycol(ncols);
    for (std::size_t i = 0; i < e.rank(); ++i)
        for (const auto& [c, v] : e.rows[i])
            if (pivot_row[c] < 0) bycol[c].emplace_back(e.pivots[i], &v);
    std::vector<std::vector<CycloNum>> basis;
    for (std::uint32_t f = 0; f < ncols; ++f) {
        if (pivot_row[f] >= 0) continue;
        std::vector<CycloNum> v(ncols);
        v[f] = CycloNum(1);
        for (const auto& [pc, val] : bycol[f]) v[pc] = -*val;
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<std::vector<CycloNum>> kernel(const SparseTensor& a) {
    return kernel_rows(rows_of(a), static_cast<std::uint32_t>(a.cols()));
}

std::size_t rank_of(const SparseTensor& a) {
    return sparse_rref(rows_of(a), static_cast<std::uint32_t>(a.cols())).rank();
}

}  // namespace hopftwist
