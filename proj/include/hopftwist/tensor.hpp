#pragma once

#include "hopftwist/cyclo.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hopftwist {

// One-line notation, 1-based: images[i-1] = sigma(i). Product is composition,
// (s * t)(x) = s(t(x)).
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> images);
    static Permutation identity(int p);
    static std::vector<Permutation> all(int p);  // lexicographic in one-line notation

    int size() const { return static_cast<int>(img_.size()); }
    int operator()(int i) const { return img_[i - 1]; }
    const std::vector<int>& images() const { return img_; }
    Permutation inverse() const;
    bool is_identity() const;
    std::string str() const;

    friend Permutation operator*(const Permutation& s, const Permutation& t);
    friend bool operator==(const Permutation& a, const Permutation& b) { return a.img_ == b.img_; }
    friend bool operator<(const Permutation& a, const Permutation& b) { return a.img_ < b.img_; }

private:
    std::vector<int> img_;
};

// A multilinear map W_out1 (x) ... <- W_in1 (x) ...; a vector has no input legs and a
// functional has no output legs. Entries are keyed row-major over (out legs, in legs),
// i.e. key = row * cols() + col.
class SparseTensor {
public:
    using Key = std::uint64_t;

    SparseTensor() = default;
    explicit SparseTensor(std::vector<int> out_shape, std::vector<int> in_shape = {});
    static SparseTensor identity(const std::vector<int>& shape);

    const std::vector<int>& out_shape() const { return out_; }
    const std::vector<int>& in_shape() const { return in_; }
    std::vector<int> shape() const;
    std::uint64_t rows() const { return rows_; }
    std::uint64_t cols() const { return cols_; }
    bool is_square() const { return out_ == in_; }

    // idx covers out legs then in legs
    Key encode(std::span<const int> idx) const;
    std::vector<int> decode(Key k) const;
    Key key_rc(std::uint64_t row, std::uint64_t col) const { return row * cols_ + col; }

    CycloNum get(std::span<const int> idx) const;
    CycloNum get(std::initializer_list<int> idx) const { return get(std::span<const int>(idx.begin(), idx.size())); }
    CycloNum get_rc(std::uint64_t row, std::uint64_t col) const;
    void set(std::span<const int> idx, const CycloNum& v);
    void set(std::initializer_list<int> idx, const CycloNum& v) { set(std::span<const int>(idx.begin(), idx.size()), v); }
    void set_rc(std::uint64_t row, std::uint64_t col, const CycloNum& v);
    void add_rc(std::uint64_t row, std::uint64_t col, const CycloNum& v);

    const std::map<Key, CycloNum>& entries() const { return e_; }
    std::size_t nnz() const { return e_.size(); }

    SparseTensor galois(long long j) const;
    // Smallest field order holding every entry (lcm of entry orders).
    int order() const;

    friend bool operator==(const SparseTensor& a, const SparseTensor& b);
    friend bool operator!=(const SparseTensor& a, const SparseTensor& b) { return !(a == b); }

private:
    std::vector<int> out_, in_;
    std::uint64_t rows_ = 1, cols_ = 1;
    std::map<Key, CycloNum> e_;
};

// L_sigma on the output legs of t: output leg j of t moves to position sigma(j).
SparseTensor leg_permute(const SparseTensor& t, const Permutation& sigma);
// The operator L_sigma on (K^d)^{(x)p}.
SparseTensor permutation_operator(const Permutation& sigma, int d);
// compose({A, B, C}) = A o B o C (C applied first).
SparseTensor compose(const std::vector<SparseTensor>& maps);
SparseTensor tensor_product(const SparseTensor& a, const SparseTensor& b);
CycloNum trace(const SparseTensor& m);

// Sparse vector: sorted (key, value) pairs, no zeros.
using SVec = std::vector<std::pair<std::uint64_t, CycloNum>>;

// Column-compressed linear map used by the hot kernels.
struct LinMap {
    std::uint64_t rows = 0, cols = 0;
    std::vector<std::uint64_t> start;  // size cols+1
    std::vector<std::uint64_t> row;
    std::vector<CycloNum> val;

    static LinMap from_tensor(const SparseTensor& t);
    SparseTensor to_tensor(std::vector<int> out_shape, std::vector<int> in_shape) const;
    std::size_t col_begin(std::uint64_t c) const { return start[c]; }
    std::size_t col_end(std::uint64_t c) const { return start[c + 1]; }
};

// Sparse accumulator over [0, dim): dense storage for small dims.
class Accum {
public:
    explicit Accum(std::uint64_t dim);
    void add(std::uint64_t k, const CycloNum& v);
    void add_mul(std::uint64_t k, const CycloNum& a, const CycloNum& b);
    SVec take();  // sorted, zeros dropped; resets the accumulator
    bool dense() const { return dense_; }

private:
    std::uint64_t dim_;
    bool dense_;
    std::vector<CycloNum> vals_;
    std::vector<std::uint64_t> touched_;
    std::vector<char> mark_;
    std::unordered_map<std::uint64_t, CycloNum> map_;
};

std::uint64_t ipow(std::uint64_t b, int e);

// Apply f: K^{n^kin} -> K^{n^kout} to legs [first, first+kin) of a vector on p legs of dim n.
SVec apply_legs(const SVec& v, int n, int p, const LinMap& f, int first, int kin, int kout);
// Permute the legs of a vector on p legs of dim n: input leg j goes to position sigma(j).
SVec permute_legs(const SVec& v, int n, const Permutation& sigma);
SVec svec_scale(const SVec& v, const CycloNum& s);
SVec svec_add(const SVec& a, const SVec& b);
SVec svec_from_dense(const std::vector<CycloNum>& d);

}  // namespace hopftwist
