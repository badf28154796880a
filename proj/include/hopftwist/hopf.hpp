#pragma once

#include "hopftwist/tensor.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hopftwist {

// Compiled multiplication W (x) W -> W for repeated products of sparse elements.
class MultTable {
public:
    MultTable() = default;
    explicit MultTable(const SparseTensor& mult);

    int dim() const { return n_; }
    const LinMap& map() const { return m_; }
    SVec basis_product(int i, int j) const;
    SVec mul(const SVec& a, const SVec& b) const;
    // acc += s * a b
    void mul_into(Accum& acc, const SVec& a, const SVec& b, const CycloNum& s = CycloNum(1)) const;

private:
    int n_ = 0;
    LinMap m_;
};

// Basis h_0..h_{n-1}. Tensors:
//   mult     out {n}   in {n,n}: h_i h_j = sum_k mult[k][i][j] h_k
//   comult   out {n,n} in {n}:   Delta(h_i) = sum comult[j][k][i] h_j (x) h_k
//   antipode out {n}   in {n}
struct HopfAlgebraData {
    int dim = 0;
    int N = 1;
    std::vector<std::string> labels;
    std::vector<CycloNum> unit;
    std::vector<CycloNum> counit;
    SparseTensor mult;
    SparseTensor comult;
    SparseTensor antipode;

    CycloNum m(int i, int j, int k) const { return mult.get({k, i, j}); }
    CycloNum delta(int i, int j, int k) const { return comult.get({j, k, i}); }
    int index_of(const std::string& label) const;
};

bool structure_equal(const HopfAlgebraData& a, const HopfAlgebraData& b);

struct AxiomResult {
    std::string name;
    bool ok = true;
    std::vector<int> witness;  // first failing basis indices
};

struct VerifyReport {
    std::vector<AxiomResult> axioms;
    bool ok() const;
    const AxiomResult* first_failure() const;
    std::string summary() const;
};

enum class Exec { serial, parallel };

VerifyReport verify_hopf(const HopfAlgebraData& h, Exec exec = Exec::parallel);
// Associativity and unit checks for a bare algebra.
AxiomResult check_associative(const SparseTensor& mult, Exec exec = Exec::parallel);
AxiomResult check_unit(const SparseTensor& mult, const std::vector<CycloNum>& unit);

HopfAlgebraData dual_hopf(const HopfAlgebraData& h);

using Functional = std::vector<CycloNum>;

// (phi * psi)(x) = phi(x_1) psi(x_2) over the coalgebra given by comult/counit.
Functional convolve(const LinMap& comult, const Functional& phi, const Functional& psi);
Functional convolution_inverse(const LinMap& comult, const std::vector<CycloNum>& counit, const Functional& phi);
Functional convolution_inverse(const HopfAlgebraData& h, const Functional& phi);
// Coalgebra structure of H (x) H with Delta(x (x) y) = (x_1 (x) y_1) (x) (x_2 (x) y_2).
LinMap tensor_square_comult(const HopfAlgebraData& h);
std::vector<CycloNum> tensor_square_counit(const HopfAlgebraData& h);

// A_f(h_i) = sum Delta[i][j][k] f(h_k) h_j
SparseTensor functional_action(const HopfAlgebraData& h, const Functional& f);
// Delta^{(k)}(x) as a vector on k legs; k = 1 returns x.
SVec iterated_coproduct(const HopfAlgebraData& h, const SVec& x, int k);
// Convolution inverse of the identity, solved as an n^2 unknown linear system.
SparseTensor solve_antipode(const HopfAlgebraData& h);

Functional dual_basis_functional(int n, int i);

}  // namespace hopftwist
