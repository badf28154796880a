#pragma once

#include "hopftwist/cohomology.hpp"
#include "hopftwist/deformation.hpp"
#include "hopftwist/groups.hpp"
#include "hopftwist/invariants.hpp"
#include "hopftwist/presentation.hpp"

#include <string>
#include <vector>

namespace hopftwist {

// Basis U_g indexed like the group, U_g group-like.
HopfAlgebraData group_algebra(const FiniteGroup& g);
// Basis of orthogonal idempotents e_g, Delta(e_g) = sum_{ab = g} e_a (x) e_b.
HopfAlgebraData dual_group_algebra(const FiniteGroup& g);

// K^alpha G over KG, T(U_g (x) h) = U_g U_h^{-1} (x) U_h.
Deformation group_cocycle_deformation(const FiniteGroup& g, const MuNCocycle& alpha);

// The group of a subgroup, element k being f.elements()[k].
FiniteGroup subgroup_group(const Subgroup& f);
// (+)_i e_{t_i} K^alpha F over K[G]; basis e_{t_i} U_f at index i * |F| + position(f).
// alpha lives on subgroup_group(f) and must be nondegenerate.
Deformation dual_group_deformation(const FiniteGroup& g, const Subgroup& f, const MuNCocycle& alpha);

// H_n = K<g, x>/(g^n - 1, x^n, g x g^{-1} - zeta x), basis g^i x^j at index i * n + j,
// zeta = zeta_n, Delta(x) = x (x) 1 + g (x) x.
HopfAlgebraData taft_hopf(int n);
// W_{a,b} on basis G^i t^j (index i * n + j) with G^n = a, t^n = b, t G = zeta^{-1} G t,
// rho(G) = G (x) g and rho(t) = t (x) g^{-1} + 1 (x) x g^{-1}; T by inverting M.
Deformation taft_deformation(int n, const CycloNum& a, const CycloNum& b);
// xi(x g^i) = 1 for every i and xi vanishes on the other monomials x^j g^i.
Functional taft_xi(int n);

// B(V) # KS3 with deg a = (12), deg b = (23), deg c = (13) and g x_t = sgn(g) x_{g t g^{-1}} g.
HopfAlgebraData fk3_bosonization_group();
enum class Fk3Twist { printed, pattern_corrected };
// R # KS3 with w_a^2 = w_b^2 = w_c^2 = lambda and both cyclic sums equal to mu.
// With a twist variant the generator twist is checked and T assembled from it.
Deformation fk3_deformation_group(const CycloNum& lambda, const CycloNum& mu, std::optional<Fk3Twist> twist = Fk3Twist::pattern_corrected);
GeneratorTwist fk3_generator_twist(const Deformation& w, Fk3Twist variant);

// B(V) # K[S3] with e_g x_t = x_t e_{deg(t) g} and
// Delta(x_t) = x_t (x) 1 + sum_g e_g (x) g^{-1}.x_t, where g.x_t = sgn(g) x_{g t g^{-1}}.
HopfAlgebraData fk3_bosonization_dual();
// W_{la, lb, lc} over B(V) # K[S3]; no inverse Galois map is attached.
Deformation fk3_deformation_dual(const CycloNum& la, const CycloNum& lb, const CycloNum& lc);

// Relations ab + bc + ca = mu (1 - (123)) and ba + ac + cb = mu (1 - (132)) on B(V) # KS3.
HopfAlgebraData deformed_hopf_prop510(const CycloNum& mu);
// Squares a^2, b^2, c^2 deformed by differences of the lambdas on B(V) # K[S3].
HopfAlgebraData deformed_hopf_sec55(const CycloNum& la, const CycloNum& lb, const CycloNum& lc);

// Presentation data behind the 72-dimensional objects, exposed for tests.
RewriteSystem fk3_rewrite_system_group(const CycloNum& lambda, const CycloNum& mu, bool hopf_prop510 = false);
// as_printed commutes e_g past w_a, w_b, w_c as e_g w_t = w_t e_{g s_t} with s = (12), (23), (23)
// instead of the left multiplication e_{deg(t) g} that rho being multiplicative forces.
enum class Fk3DualSides { left, as_printed };
RewriteSystem fk3_rewrite_system_dual(const CycloNum& la, const CycloNum& lb, const CycloNum& lc, bool hopf_sec55 = false, Fk3DualSides sides = Fk3DualSides::left);
// Algebra built from a completed system with the 12-word basis; no verification.
Deformation fk3_dual_algebra_unchecked(const RewriteSystem& r);
// Coordinates of a product of basis labels (letters a, b, c or group labels) in a presented deformation.
SVec product_of_labels(const Deformation& w, const std::vector<std::string>& factors);

// Depth-2 specs over the dual basis of B(V) # KS3 that separate W_{lambda,mu} at
// (0,0), (1,0), (0,1), (1,1); both read off the products w_a and w_a w_b.
std::vector<InvariantSpec> fk3_separating_specs(const HopfAlgebraData& h);

// The 2 x 2 matrix representations of R for lambda = 0 and lambda != 0, checked
// symbolically in mu (and t with t^2 = lambda, s^2 = lambda - r^2).
struct WitnessCheck {
    std::vector<std::string> relations;  // relation names
    std::vector<bool> holds;
    bool ok() const;
};
enum class WitnessR { printed, corrected };  // r = (mu - lambda)/t or (mu - lambda)/(2t)
WitnessCheck matrix_witness_lambda_zero();
WitnessCheck matrix_witness_lambda_nonzero(WitnessR r);

struct CatalogEntryInfo {
    std::string name;
    std::string kind;  // hopf | deformation
    std::string parameters;
};
const std::vector<CatalogEntryInfo>& catalog_entries();

}  // namespace hopftwist
