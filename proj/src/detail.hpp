#pragma once

// Shared helpers for the verification kernels; not part of the public API.

#include "hopftwist/hopf.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <climits>
#include <optional>
#include <vector>

namespace hopftwist::detail {

using Witness = std::optional<std::vector<int>>;

// First failing outer index in index order, independent of scheduling.
template <class F>
Witness scan(int count, Exec exec, F&& check) {
    if (exec == Exec::serial) {
        for (int i = 0; i < count; ++i)
            if (Witness w = check(i)) return w;
        return std::nullopt;
    }
    std::vector<Witness> found(count);
    std::atomic<int> best{INT_MAX};
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < count; ++i) {
        if (i > best.load(std::memory_order_relaxed)) continue;
        found[i] = check(i);
        if (found[i]) {
            int cur = best.load();
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
        }
    }
    for (int i = 0; i < count; ++i)
        if (found[i]) return found[i];
    return std::nullopt;
}

inline AxiomResult make_result(const std::string& name, const Witness& w) {
    AxiomResult r;
    r.name = name;
    r.ok = !w.has_value();
    if (w) r.witness = *w;
    return r;
}

inline SVec basis(int i) { return SVec{{static_cast<std::uint64_t>(i), CycloNum(1)}}; }

inline SVec column(const LinMap& f, std::uint64_t c) {
    SVec out;
    for (std::size_t e = f.col_begin(c); e < f.col_end(c); ++e) out.emplace_back(f.row[e], f.val[e]);
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}

inline SVec scaled_dense(const std::vector<CycloNum>& v, const CycloNum& s) {
    SVec out;
    if (s.is_zero()) return out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) out.emplace_back(i, v[i] * s);
    return out;
}

inline bool svec_equal(const SVec& a, const SVec& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].first != b[i].first || a[i].second != b[i].second) return false;
    return true;
}

inline CycloNum apply_functional(const std::vector<CycloNum>& f, const SVec& x) {
    CycloNum s;
    for (const auto& [k, c] : x)
        if (!f[k].is_zero()) s.add_mul(f[k], c);
    return s;
}

}  // namespace hopftwist::detail
