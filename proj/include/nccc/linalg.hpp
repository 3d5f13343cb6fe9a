#pragma once

#include "nccc/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace nccc {

/// Dense row-major matrix over Q.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static QMatrix identity(std::size_t n);
    static QMatrix from_rows(const std::vector<QVec>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Q& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Q& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    QVec row(std::size_t r) const;
    QVec col(std::size_t c) const;

    QMatrix operator*(const QMatrix& other) const;
    QVec operator*(const QVec& v) const;
    bool operator==(const QMatrix& other) const;
    bool is_zero() const;

    QMatrix transpose() const;
    /// Kronecker product; row index (i, k) -> i * other.rows() + k.
    QMatrix kron(const QMatrix& other) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Q> data_;
};

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(QMatrix& m);

std::size_t rank(QMatrix m);

/// Basis of {x : m x = 0}, one vector per returned entry.
std::vector<QVec> nullspace(const QMatrix& m);

/// Some x with m x = b, or nullopt.
std::optional<QVec> solve(const QMatrix& m, const QVec& b);

Q determinant(QMatrix m);

/// Rows of `vectors` extended greedily; returns indices of `candidates` that are
/// independent modulo span(vectors).
std::vector<std::size_t> complete_basis(const std::vector<QVec>& vectors,
                                        const std::vector<QVec>& candidates,
                                        std::size_t dim);

/// Sparse matrix as a list of rows, each a sorted list of (column, value).
struct SparseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::vector<std::pair<std::size_t, Q>>> row_entries;

    SparseMatrix() = default;
    SparseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), row_entries(r) {}

    /// Adds v to entry (r, c). Rows are kept unsorted until finalize().
    void add(std::size_t r, std::size_t c, const Q& v);
    void finalize();
    QMatrix to_dense() const;
    bool is_zero() const;
};

std::size_t sparse_rank(const SparseMatrix& m);

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);

/// Bounded cochain complex of finite-dimensional Q-spaces starting in degree 0.
/// differentials[k] maps degree k to degree k+1 (rows = dims[k+1], cols = dims[k]).
class ChainComplexQ {
public:
    ChainComplexQ() = default;
    ChainComplexQ(std::vector<std::size_t> dims, std::vector<SparseMatrix> differentials);

    const std::vector<std::size_t>& dims() const { return dims_; }
    const std::vector<SparseMatrix>& differentials() const { return differentials_; }

    bool is_complex() const;
    /// Cohomology dimensions, same length as dims().
    std::vector<std::size_t> cohomology() const;
    long euler_characteristic() const;

private:
    std::vector<std::size_t> dims_;
    std::vector<SparseMatrix> differentials_;
};

/// Graded dimensions with trailing zeros trimmed to a fixed length.
using GradedDims = std::vector<std::size_t>;

GradedDims pad_dims(GradedDims d, std::size_t length);
long euler_characteristic(const GradedDims& d);
bool all_zero(const GradedDims& d);

}  // namespace nccc
