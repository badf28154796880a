#pragma once

#include "hopftwist/deformation.hpp"
#include "hopftwist/groups.hpp"

#include <string>
#include <vector>

namespace hopftwist {

// c(l, sigma, f, h(1), ..., h(l)) = Tr_W(m^l L_sigma T(h(1), ..., h(l)) A_f) with
// T(h(1), ..., h(l)) = (1^{l-1} (x) T_{h(l)}) ... T_{h(1)} and m^l = m (m (x) 1) ... .
// f indexes a list of functionals on H (by default the dual basis), hs are basis indices of H.
struct InvariantSpec {
    int l = 0;
    Permutation sigma;
    int f = 0;
    std::vector<int> hs;

    friend bool operator==(const InvariantSpec& a, const InvariantSpec& b) = default;
};
// Fingerprint order: l, then sigma, then f, then hs.
bool spec_less(const InvariantSpec& a, const InvariantSpec& b);
void validate_spec(const InvariantSpec& s, int num_functionals, int dim_h);

// Streams one basis vector of W at a time, applying A_f first. Throws std::logic_error
// when W carries no T.
CycloNum basic_invariant(const Deformation& w, const InvariantSpec& s, const Functional& f);
CycloNum basic_invariant(const Deformation& w, const InvariantSpec& s);  // f = dual basis index

// Dense reference: composes A_f, the T slices, L_sigma and m^l as tensors and takes the trace.
CycloNum basic_invariant_reference(const Deformation& w, const InvariantSpec& s, const Functional& f);

struct FingerprintEntry {
    InvariantSpec spec;
    CycloNum value;
};

struct Fingerprint {
    int depth = 0;
    std::vector<std::string> h_labels;  // basis of the parent, used for hs
    std::vector<std::string> f_labels;  // names of the functionals, used for f
    std::vector<int> h_set;             // basis indices of H the hs range over
    std::vector<FingerprintEntry> entries;  // nonzero values in spec order

    const CycloNum* find(const InvariantSpec& s) const;
};

struct FingerprintOptions {
    int depth = 1;
    std::vector<Functional> functionals;   // empty: dual basis of H
    std::vector<std::string> functional_labels;
    std::vector<int> h_set;                // empty: all of H
    std::vector<InvariantSpec> specs;      // nonempty: evaluate exactly these instead of enumerating
    Exec exec = Exec::parallel;
};

// All specs with l <= depth over the index sets (or the given specs), zeros omitted. The kernel
// computes m^l L_sigma T(hs) on every basis vector once per (sigma, hs) and reads off every f
// through the coaction; the result does not depend on scheduling.
Fingerprint fingerprint(const Deformation& w, const FingerprintOptions& opt);
// One basic_invariant call per spec.
Fingerprint fingerprint_streaming(const Deformation& w, const FingerprintOptions& opt);

enum class Verdict { indistinguishable, distinct };
// Distinct fingerprints refute isomorphism; equal ones prove nothing. Throws std::invalid_argument
// when the fingerprints were taken over different parents, depths or index sets.
Verdict compare_fingerprints(const Fingerprint& a, const Fingerprint& b);

// m tau T_h as out {n} in {n}.
SparseTensor projector_from_T(const Deformation& w, int h);

// Applies zeta -> zeta^j to every structure tensor of W. Throws std::invalid_argument unless
// gcd(j, N) = 1 and the parent is fixed by the automorphism.
Deformation galois_twist_deformation(const Deformation& w, long long j);
Fingerprint galois_apply(const Fingerprint& f, long long j);

struct RationalityReport {
    std::size_t nonzero = 0;
    std::size_t rational = 0;
    std::vector<InvariantSpec> irrational;
    bool all_rational() const { return irrational.empty(); }
};
RationalityReport rationality_report(const Fingerprint& f);

// For W = dual_group_deformation(G, F, alpha) and block = dual_group_deformation(F, F, alpha):
// sum_i d_F(t_i^{-1} g t_i, sigma, t_i^{-1} g(1) t_i, ...), where d_F is the invariant of the
// block when every argument lies in F and 0 otherwise. spec.f and spec.hs are elements of G.
CycloNum dual_group_coset_sum(const Subgroup& f, const Deformation& block, const InvariantSpec& spec);

}  // namespace hopftwist
