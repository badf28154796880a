#pragma once

#include "hopftwist/groups.hpp"
#include "hopftwist/tensor.hpp"

#include <gmpxx.h>

#include <utility>
#include <vector>

namespace hopftwist {

// alpha(g, h) = zeta_N^{exponents[g][h]}
struct MuNCocycle {
    FiniteGroup group;
    int N = 1;
    std::vector<std::vector<int>> exponents;

    CycloNum value(int g, int h) const { return CycloNum::root(N, exponents[g][h]); }
};

MuNCocycle trivial_cocycle(const FiniteGroup& g, int n = 1);
// Reduces entries mod N and gauges by a constant so that alpha(1, .) = alpha(., 1) = 1.
MuNCocycle normalized_cocycle(const FiniteGroup& g, int n, std::vector<std::vector<int>> exponents);
// (-1)^{jk} on Z/2 x Z/2 and zeta_3^{jk} on Z/3 x Z/3, for x^i y^j, x^k y^l.
MuNCocycle v4_nondegenerate_cocycle();
MuNCocycle z3z3_zeta_jk_cocycle();
// Multiply by the coboundary of nu: alpha'(g,h) = alpha(g,h) nu(g) nu(h) / nu(gh), nu(1) = 0.
MuNCocycle gauge_group_cocycle(const MuNCocycle& c, const std::vector<int>& nu);

bool check_group_cocycle(const MuNCocycle& c);

struct CohomologyGroup {
    std::vector<long> invariant_factors;
    std::vector<MuNCocycle> representatives;
};

// Classes of mu_N-valued normalized 2-cocycles up to coboundaries of K^x-valued
// 1-cochains, i.e. the image of H^2(G, mu_N) in H^2(G, K^x).
CohomologyGroup compute_h2(const FiniteGroup& g, int n);
// True when a - b lies in the image described above (same class in H^2(G, K^x)).
bool cohomologous(const MuNCocycle& a, const MuNCocycle& b);

SparseTensor twisted_group_algebra(const MuNCocycle& c);
bool is_nondegenerate(const MuNCocycle& c);
std::size_t twisted_center_dimension(const MuNCocycle& c);
// U_{h_1}^{e_1} ... U_{h_r}^{e_r} = lambda U_1; returns lambda.
CycloNum uct_evaluate(const MuNCocycle& c, const std::vector<std::pair<int, int>>& word);

// Integer Smith normal form with transforms: P A Q = D.
struct SmithForm {
    std::vector<std::vector<mpz_class>> P, Pinv, Q, Qinv;
    std::vector<mpz_class> diag;  // length min(rows, cols); d_i | d_{i+1}, zeros last
    std::size_t rank = 0;
};
SmithForm smith_normal_form(std::vector<std::vector<mpz_class>> a, std::size_t rows, std::size_t cols);

}  // namespace hopftwist
