#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace amgreuse {

using index_t = std::int64_t;

/// One (row, col, value) entry of an assembly list. Duplicates are summed
/// on construction, FEM-assembly style.
struct Triplet {
    index_t row;
    index_t col;
    double value;
};

/// Compressed sparse row matrix. The single representation for system
/// matrices, transfer operators and all coarse operators.
///
/// Invariants: row_ptr is non-decreasing with row_ptr[0] == 0 and
/// row_ptr[nrows] == nnz; column indices are strictly increasing within
/// each row and < ncols. Explicit zeros are permitted.
struct CsrMatrix {
    index_t nrows = 0;
    index_t ncols = 0;
    std::vector<index_t> row_ptr{0};
    std::vector<index_t> col_idx;
    std::vector<double> values;

    index_t nnz() const { return static_cast<index_t>(col_idx.size()); }

    std::span<const index_t> row_cols(index_t i) const {
        return {col_idx.data() + row_ptr[i],
                static_cast<std::size_t>(row_ptr[i + 1] - row_ptr[i])};
    }
    std::span<const double> row_vals(index_t i) const {
        return {values.data() + row_ptr[i],
                static_cast<std::size_t>(row_ptr[i + 1] - row_ptr[i])};
    }

    bool operator==(const CsrMatrix&) const = default;
};

/// Sparsity structure without values: the output of the symbolic product
/// phase and the input to the numeric phase.
struct Pattern {
    index_t nrows = 0;
    index_t ncols = 0;
    std::vector<index_t> row_ptr{0};
    std::vector<index_t> col_idx;

    index_t nnz() const { return static_cast<index_t>(col_idx.size()); }

    bool operator==(const Pattern&) const = default;
};

/// Non-owning structural view; both CsrMatrix and Pattern convert to it, so
/// the symbolic product accepts either.
struct PatternView {
    index_t nrows;
    index_t ncols;
    std::span<const index_t> row_ptr;
    std::span<const index_t> col_idx;

    PatternView(const CsrMatrix& a)
        : nrows(a.nrows), ncols(a.ncols), row_ptr(a.row_ptr), col_idx(a.col_idx) {}
    PatternView(const Pattern& p)
        : nrows(p.nrows), ncols(p.ncols), row_ptr(p.row_ptr), col_idx(p.col_idx) {}
};

/// Assemble a CSR matrix from an unsorted triplet list. Duplicate entries
/// are summed in input order; rows come out sorted. Throws
/// std::invalid_argument naming the offending entry if an index is out of
/// range.
CsrMatrix csr_from_triplets(index_t nrows, index_t ncols, std::span<const Triplet> entries);

/// y = A * x into a caller-provided buffer. Fixed per-row accumulation
/// order, so results are bit-reproducible.
void spmv(const CsrMatrix& A, std::span<const double> x, std::span<double> y);
std::vector<double> spmv(const CsrMatrix& A, std::span<const double> x);

CsrMatrix transpose(const CsrMatrix& A);

/// Structural (no numeric cancellation) pattern of A * B.
Pattern spmm_symbolic(const PatternView& a, const PatternView& b);

/// Fill the values of A * B into `pattern`. The pattern must contain every
/// structurally required entry of the product (it may be a superset; extra
/// entries come out exactly zero).
CsrMatrix spmm_numeric(const CsrMatrix& A, const CsrMatrix& B, const Pattern& pattern);

/// Two-phase product: spmm_numeric on spmm_symbolic's pattern.
CsrMatrix spmm(const CsrMatrix& A, const CsrMatrix& B);

/// R * A * P computed as two two-phase sparse products.
CsrMatrix galerkin_product(const CsrMatrix& R, const CsrMatrix& A, const CsrMatrix& P);

/// Throws std::invalid_argument if the structural invariants do not hold.
void validate(const CsrMatrix& A);

} // namespace amgreuse
