#pragma once

#include "hopftwist/cohomology.hpp"
#include "hopftwist/hopf.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hopftwist {

// Products in A (x) B on keys a * dim B + b. With op_first the first factor multiplies
// in A^op, e.g. (x (x) y)(x' (x) y') = x'x (x) yy'; op_second likewise for B.
SVec tensor_mul(const MultTable& a, const MultTable& b, const SVec& x, const SVec& y, bool op_first = false, bool op_second = false);
// Images of product words under an algebra map given on generators:
// result[i] = gen_images[words[i][0]] * ... * gen_images[words[i].back()], with the
// empty word mapping to unit_image.
std::vector<SVec> extend_multiplicatively(const std::vector<std::vector<int>>& words, const std::vector<SVec>& gen_images, const SVec& unit_image, const std::function<SVec(const SVec&, const SVec&)>& mul);

using HopfPtr = std::shared_ptr<const HopfAlgebraData>;

// alpha[i * n + j] = alpha(h_i, h_j)
struct HopfTwoCocycle {
    HopfPtr parent;
    std::vector<CycloNum> alpha;

    CycloNum operator()(int i, int j) const { return alpha[static_cast<std::size_t>(i) * parent->dim + j]; }
};

HopfTwoCocycle trivial_hopf_cocycle(HopfPtr h);
// alpha(U_g, U_h) = zeta^{e(g,h)} on the group algebra whose basis is indexed like the group.
HopfTwoCocycle lift_group_cocycle(HopfPtr kg, const MuNCocycle& c);

struct CocycleReport {
    bool unital = true;
    bool cocycle = true;
    bool gamma_invertible = true;
    std::vector<int> witness;  // failing (i, j) or (i, j, k)
    bool ok() const { return unital && cocycle && gamma_invertible; }
};
CocycleReport check_hopf_cocycle(const HopfTwoCocycle& c);

struct GammaData {
    Functional gamma, gamma_inv;
    std::vector<CycloNum> alpha_inv;  // n x n table
};
// gamma(x) = alpha(x_1, S x_2); gamma^{-1} by convolution inversion; alpha^{-1}(x, y) =
// gamma(x_1 y_1) alpha(S y_2, S x_2) gamma^{-1}(x_3) gamma^{-1}(y_3). Throws if alpha * alpha^{-1} != eps (x) eps.
GammaData gamma_data(const HopfTwoCocycle& c);

// x ._alpha y on basis pairs; out {n} in {n, n}.
SparseTensor twisted_multiplication(const HopfTwoCocycle& c);
// S~(x) = S(x_1) gamma^{-1}(x_2)
SparseTensor twisted_antipode(const HopfTwoCocycle& c, const GammaData& g);
struct AntipodeIdentityReport {
    bool left = true, right = true, product = true;
    std::vector<int> witness;
    bool ok() const { return left && right && product; }
};
// x_1 . S~(x_2) = S~(x_1) . x_2 = eps(x) 1 and S~(x) . S~(y) = alpha^{-1}(y_2, x_2) S~(y_1 x_1).
AntipodeIdentityReport check_twisted_antipode(const HopfTwoCocycle& c, const GammaData& g);
// alpha * beta in the convolution algebra of H (x) H.
std::vector<CycloNum> convolve_bilinear(const HopfAlgebraData& h, const std::vector<CycloNum>& a, const std::vector<CycloNum>& b);

// An H-comodule algebra W with optional inverse T of the Galois map.
struct Deformation {
    HopfPtr parent;
    int dim = 0;
    std::vector<std::string> labels;
    std::vector<CycloNum> unit;
    SparseTensor mult;                          // out {n} in {n, n}
    SparseTensor coaction;                      // out {n, nH} in {n}
    std::optional<SparseTensor> inverse_galois; // T: out {n, n} in {n, nH}
    std::string provenance;                     // from-cocycle | from-generators | from-file

    int index_of(const std::string& label) const;
};

Deformation twist_comodule_algebra(const HopfTwoCocycle& c);
HopfAlgebraData double_twist(const HopfTwoCocycle& c);

// M(x (x) y) = x y_0 (x) y_1; out {n, nH} in {n, n}.
SparseTensor build_M(const Deformation& w);
// Exact sparse inversion; throws SingularError ("not Hopf-Galois") carrying the rank.
SparseTensor invert_M(const Deformation& w);

// T~ on algebra generators of H (images in W^op (x) W, keys i * nW + j) and a
// multiplicative generating set of W.
struct GeneratorTwist {
    std::vector<int> h_generators;                // basis indices of H
    std::vector<SVec> images;                     // T~(h) for each generator
    std::vector<std::vector<int>> h_words;        // each basis element of H as a word in h_generators
    std::vector<int> w_generators;                // basis indices of W
};
struct GeneratorTwistError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Checks T~ is an algebra map H -> W^op (x) W, M T~(h) = 1 (x) h on generators of H and
// (m (x) 1)(1 (x) T~) rho(w) = 1 (x) w on generators of W; returns T(w (x) h) = (w (x) 1) T~(h).
SparseTensor extend_generator_twist(const Deformation& w, const GeneratorTwist& gt);
// Same checks, reported instead of thrown; empty string on success.
std::string generator_twist_failure(const Deformation& w, const GeneratorTwist& gt);

// Families: associativity, unit, action associativity (A_f A_g = A_{f*g}, i.e. coassociativity),
// action unit (A_eps = id), compatibility of action and multiplication (rho multiplicative,
// rho(1) = 1 (x) 1), and when T is present, T o M = M o T = id.
VerifyReport verify_comodule_algebra(const Deformation& w, Exec exec = Exec::parallel);
// T o M = id and M o T = id, streamed column by column.
AxiomResult check_galois_inverse(const Deformation& w, const SparseTensor& t, Exec exec = Exec::parallel);

// Identities relating A, m and T on basis elements:
//  (1) A_f m = m (A_{f_1} (x) A_{f_2})
//  (2) (1 (x) A_f) T_h = T_{h_1 f(h_2)}
//  (3) (A_f (x) 1) T_h = T_{f_2(S h_1) h_2} A_{f_1}
//  (4) (T_h (x) 1) T_g = (1 (x) T_{g_2}) T_{h g_1}
// (4) is checked at w = 1 for all (h, g) after checking T(w (x) h) = (w (x) 1) T(1 (x) h).
VerifyReport check_galois_identities(const Deformation& w, Exec exec = Exec::parallel);

// Comodule frame: psi_f(w) = f(w_0) w_1 must be invertible with f(1) = 1.
// Returns phi = psi_f^{-1}: H -> W as out {nW} in {nH}.
SparseTensor comodule_frame(const Deformation& w, const Functional& f);
// alpha_f(x, y) = f(phi(x) phi(y)).
HopfTwoCocycle reconstruct_cocycle(const Deformation& w, const Functional& f);
// Coinvariants of W (x) W under rho(a (x) b) = a_0 (x) b_0 (x) a_1 b_1 with the product of
// W (x) W^op, transported to H along x -> phi(x_1) (x) S~(x_2), S~(h) = (1 (x) f) T(1 (x) h).
// The default frame f is the counit of H read on W's basis.
HopfAlgebraData double_twist_from_deformation(const Deformation& w, std::optional<Functional> frame = std::nullopt);
// Kernel dimension of z -> rho(z) - z (x) 1 on W (x) W.
std::size_t coinvariant_dimension(const Deformation& w);

// alpha'(x, y) = nu^{-1}(x_1) nu^{-1}(y_1) alpha(x_2, y_2) nu(x_3 y_3)
HopfTwoCocycle gauge_cocycle(const HopfTwoCocycle& c, const Functional& nu);
// x -> nu(x_1) x_2
SparseTensor gauge_map(const HopfAlgebraData& h, const Functional& nu);

// x . h = S~(h_1) x h_2, read from T(1 (x) h) = S~(h_1) (x) h_2.
SVec yd_action(const Deformation& w, const SVec& x, const SVec& h);

// T_h(w) = T(w (x) h) for a fixed h, as out {n, n} in {n}.
SparseTensor t_slice(const Deformation& w, int h);
// A_f on W: A_f(w) = w_0 f(w_1).
SparseTensor comodule_action(const Deformation& w, const Functional& f);

}  // namespace hopftwist
