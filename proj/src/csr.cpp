#include "amgreuse/csr.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace amgreuse {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

void check_dims(index_t an, index_t bn, const char* what) {
    if (an != bn) {
        std::ostringstream os;
        os << what << ": dimension mismatch (" << an << " vs " << bn << ")";
        fail(os.str());
    }
}

} // namespace

CsrMatrix csr_from_triplets(index_t nrows, index_t ncols, std::span<const Triplet> entries) {
    if (nrows < 0 || ncols < 0) fail("csr_from_triplets: negative dimension");

    for (std::size_t k = 0; k < entries.size(); ++k) {
        const Triplet& t = entries[k];
        if (t.row < 0 || t.row >= nrows || t.col < 0 || t.col >= ncols) {
            std::ostringstream os;
            os << "csr_from_triplets: entry " << k << " (" << t.row << ", " << t.col
               << ") out of range for " << nrows << "x" << ncols << " matrix";
            fail(os.str());
        }
    }

    // Stable bucket by row, keeping input order within a row so that
    // duplicates are summed in a fixed order.
    std::vector<index_t> count(static_cast<std::size_t>(nrows) + 1, 0);
    for (const Triplet& t : entries) ++count[static_cast<std::size_t>(t.row) + 1];
    std::partial_sum(count.begin(), count.end(), count.begin());

    std::vector<std::size_t> order(entries.size());
    {
        std::vector<index_t> pos(count.begin(), count.end() - 1);
        for (std::size_t k = 0; k < entries.size(); ++k)
            order[static_cast<std::size_t>(pos[entries[k].row]++)] = k;
    }

    CsrMatrix A;
    A.nrows = nrows;
    A.ncols = ncols;
    A.row_ptr.assign(static_cast<std::size_t>(nrows) + 1, 0);
    A.col_idx.reserve(entries.size());
    A.values.reserve(entries.size());

    std::vector<std::size_t> row_entries;
    for (index_t i = 0; i < nrows; ++i) {
        row_entries.assign(order.begin() + count[i], order.begin() + count[i + 1]);
        std::stable_sort(row_entries.begin(), row_entries.end(),
                         [&](std::size_t a, std::size_t b) { return entries[a].col < entries[b].col; });
        const index_t row_start = A.nnz();
        for (std::size_t k : row_entries) {
            if (A.nnz() > row_start && A.col_idx.back() == entries[k].col) {
                A.values.back() += entries[k].value;
            } else {
                A.col_idx.push_back(entries[k].col);
                A.values.push_back(entries[k].value);
            }
        }
        A.row_ptr[i + 1] = A.nnz();
    }
    return A;
}

void spmv(const CsrMatrix& A, std::span<const double> x, std::span<double> y) {
    check_dims(A.ncols, static_cast<index_t>(x.size()), "spmv");
    check_dims(A.nrows, static_cast<index_t>(y.size()), "spmv");
    for (index_t i = 0; i < A.nrows; ++i) {
        double sum = 0.0;
        for (index_t k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k)
            sum += A.values[k] * x[A.col_idx[k]];
        y[i] = sum;
    }
}

std::vector<double> spmv(const CsrMatrix& A, std::span<const double> x) {
    std::vector<double> y(static_cast<std::size_t>(A.nrows));
    spmv(A, x, y);
    return y;
}

CsrMatrix transpose(const CsrMatrix& A) {
    CsrMatrix T;
    T.nrows = A.ncols;
    T.ncols = A.nrows;
    T.row_ptr.assign(static_cast<std::size_t>(A.ncols) + 1, 0);
    T.col_idx.resize(static_cast<std::size_t>(A.nnz()));
    T.values.resize(static_cast<std::size_t>(A.nnz()));

    for (index_t k = 0; k < A.nnz(); ++k) ++T.row_ptr[A.col_idx[k] + 1];
    std::partial_sum(T.row_ptr.begin(), T.row_ptr.end(), T.row_ptr.begin());

    std::vector<index_t> pos(T.row_ptr.begin(), T.row_ptr.end() - 1);
    for (index_t i = 0; i < A.nrows; ++i) {
        for (index_t k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) {
            index_t p = pos[A.col_idx[k]]++;
            T.col_idx[p] = i;
            T.values[p] = A.values[k];
        }
    }
    return T;
}

Pattern spmm_symbolic(const PatternView& a, const PatternView& b) {
    check_dims(a.ncols, b.nrows, "spmm_symbolic");

    Pattern c;
    c.nrows = a.nrows;
    c.ncols = b.ncols;
    c.row_ptr.assign(static_cast<std::size_t>(a.nrows) + 1, 0);

    std::vector<index_t> marker(static_cast<std::size_t>(b.ncols), -1);
    std::vector<index_t> cols;

    for (index_t i = 0; i < a.nrows; ++i) {
        cols.clear();
        for (index_t ka = a.row_ptr[i]; ka < a.row_ptr[i + 1]; ++ka) {
            index_t k = a.col_idx[ka];
            for (index_t kb = b.row_ptr[k]; kb < b.row_ptr[k + 1]; ++kb) {
                index_t j = b.col_idx[kb];
                if (marker[j] != i) {
                    marker[j] = i;
                    cols.push_back(j);
                }
            }
        }
        std::sort(cols.begin(), cols.end());
        c.col_idx.insert(c.col_idx.end(), cols.begin(), cols.end());
        c.row_ptr[i + 1] = c.nnz();
    }
    return c;
}

CsrMatrix spmm_numeric(const CsrMatrix& A, const CsrMatrix& B, const Pattern& pattern) {
    check_dims(A.ncols, B.nrows, "spmm_numeric");
    check_dims(pattern.nrows, A.nrows, "spmm_numeric: pattern rows");
    check_dims(pattern.ncols, B.ncols, "spmm_numeric: pattern cols");

    CsrMatrix C;
    C.nrows = pattern.nrows;
    C.ncols = pattern.ncols;
    C.row_ptr = pattern.row_ptr;
    C.col_idx = pattern.col_idx;
    C.values.assign(C.col_idx.size(), 0.0);

    // Per-row dense scratch keyed by the pattern; untouched pattern slots
    // stay exactly zero.
    std::vector<double> scratch(static_cast<std::size_t>(B.ncols), 0.0);
    std::vector<index_t> member(static_cast<std::size_t>(B.ncols), -1);

    for (index_t i = 0; i < C.nrows; ++i) {
        for (index_t k = C.row_ptr[i]; k < C.row_ptr[i + 1]; ++k) {
            scratch[C.col_idx[k]] = 0.0;
            member[C.col_idx[k]] = i;
        }
        for (index_t ka = A.row_ptr[i]; ka < A.row_ptr[i + 1]; ++ka) {
            const index_t k = A.col_idx[ka];
            const double av = A.values[ka];
            for (index_t kb = B.row_ptr[k]; kb < B.row_ptr[k + 1]; ++kb) {
                const index_t j = B.col_idx[kb];
                if (member[j] != i) {
                    std::ostringstream os;
                    os << "spmm_numeric: pattern is missing entry (" << i << ", " << j << ")";
                    fail(os.str());
                }
                scratch[j] += av * B.values[kb];
            }
        }
        for (index_t k = C.row_ptr[i]; k < C.row_ptr[i + 1]; ++k)
            C.values[k] = scratch[C.col_idx[k]];
    }
    return C;
}

CsrMatrix spmm(const CsrMatrix& A, const CsrMatrix& B) {
    return spmm_numeric(A, B, spmm_symbolic(A, B));
}

CsrMatrix galerkin_product(const CsrMatrix& R, const CsrMatrix& A, const CsrMatrix& P) {
    check_dims(R.ncols, A.nrows, "galerkin_product: R*A");
    check_dims(A.ncols, P.nrows, "galerkin_product: A*P");
    return spmm(R, spmm(A, P));
}

void validate(const CsrMatrix& A) {
    if (A.nrows < 0 || A.ncols < 0) fail("validate: negative dimension");
    if (static_cast<index_t>(A.row_ptr.size()) != A.nrows + 1)
        fail("validate: row_ptr length != nrows + 1");
    if (A.row_ptr.front() != 0) fail("validate: row_ptr[0] != 0");
    if (A.row_ptr.back() != A.nnz()) fail("validate: row_ptr[nrows] != nnz");
    if (A.values.size() != A.col_idx.size()) fail("validate: values/col_idx length mismatch");
    for (index_t i = 0; i < A.nrows; ++i) {
        if (A.row_ptr[i] > A.row_ptr[i + 1]) fail("validate: row_ptr not non-decreasing");
        for (index_t k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) {
            if (A.col_idx[k] < 0 || A.col_idx[k] >= A.ncols)
                fail("validate: column index out of range");
            if (k > A.row_ptr[i] && A.col_idx[k] <= A.col_idx[k - 1])
                fail("validate: columns not strictly increasing within a row");
        }
    }
}

} // namespace amgreuse
