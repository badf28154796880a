#pragma once

#include "hopftwist/tensor.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace hopftwist {

using Matrix = std::vector<std::vector<CycloNum>>;

class SingularError : public std::runtime_error {
public:
    SingularError(const std::string& what, std::size_t rank, std::size_t size)
        : std::runtime_error(what + " (rank " + std::to_string(rank) + " of " + std::to_string(size) + ")"), rank_(rank), size_(size) {}
    std::size_t rank() const { return rank_; }
    std::size_t size() const { return size_; }

private:
    std::size_t rank_, size_;
};

// Bareiss fraction-free elimination on [A | B]; A square. Returns X with A X = B.
Matrix bareiss_solve(const Matrix& a, const Matrix& b);
CycloNum bareiss_determinant(const Matrix& a);

using SparseRow = std::vector<std::pair<std::uint32_t, CycloNum>>;

// Reduced row echelon form by Gauss-Jordan, choosing among the candidate rows the
// one with the fewest nonzeros. Only columns < elim_cols are eliminated.
struct Echelon {
    std::vector<SparseRow> rows;        // pivot rows, pivot entry normalized to 1
    std::vector<std::uint32_t> pivots;  // pivot column of each row
    std::size_t rank() const { return pivots.size(); }
};
Echelon sparse_rref(std::vector<SparseRow> rows, std::uint32_t elim_cols);

std::vector<SparseRow> rows_of(const SparseTensor& a);
Matrix dense_of(const SparseTensor& a);

std::vector<CycloNum> solve_linear(const SparseTensor& a, const std::vector<CycloNum>& b);
SparseTensor invert_map(const SparseTensor& a);
// Exact basis of the null space, one dense vector per free column.
std::vector<std::vector<CycloNum>> kernel(const SparseTensor& a);
std::vector<std::vector<CycloNum>> kernel_rows(std::vector<SparseRow> rows, std::uint32_t ncols);
std::size_t rank_of(const SparseTensor& a);

}  // namespace hopftwist
