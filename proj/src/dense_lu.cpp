#include "amgreuse/dense_lu.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace amgreuse {

DenseFactorization coarse_factorize(const CsrMatrix& A) {
    if (A.nrows != A.ncols) throw std::invalid_argument("coarse_factorize: matrix is not square");

    const index_t n = A.nrows;
    DenseFactorization f;
    f.n = n;
    f.lu.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    f.piv.resize(static_cast<std::size_t>(n));

    for (index_t i = 0; i < n; ++i)
        for (index_t k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k)
            f.lu[i * n + A.col_idx[k]] = A.values[k];

    double* m = f.lu.data();
    for (index_t k = 0; k < n; ++k) {
        index_t p = k;
        double best = std::fabs(m[k * n + k]);
        for (index_t i = k + 1; i < n; ++i) {
            const double cand = std::fabs(m[i * n + k]);
            if (cand > best) {
                best = cand;
                p = i;
            }
        }
        f.piv[k] = p;
        if (p != k)
            for (index_t j = 0; j < n; ++j) std::swap(m[k * n + j], m[p * n + j]);
        const double pivot = m[k * n + k];
        if (pivot == 0.0) {
            std::ostringstream os;
            os << "coarse_factorize: singular matrix (zero pivot at step " << k << ")";
            throw std::runtime_error(os.str());
        }
        for (index_t i = k + 1; i < n; ++i) {
            const double l = m[i * n + k] / pivot;
            m[i * n + k] = l;
            for (index_t j = k + 1; j < n; ++j) m[i * n + j] -= l * m[k * n + j];
        }
    }
    return f;
}

std::vector<double> coarse_solve(const DenseFactorization& f, std::span<const double> rhs) {
    if (static_cast<index_t>(rhs.size()) != f.n)
        throw std::invalid_argument("coarse_solve: dimension mismatch");

    const index_t n = f.n;
    std::vector<double> x(rhs.begin(), rhs.end());
    const double* m = f.lu.data();

    for (index_t k = 0; k < n; ++k)
        if (f.piv[k] != k) std::swap(x[k], x[f.piv[k]]);
    for (index_t i = 1; i < n; ++i) {
        double sum = x[i];
        for (index_t j = 0; j < i; ++j) sum -= m[i * n + j] * x[j];
        x[i] = sum;
    }
    for (index_t i = n; i-- > 0;) {
        double sum = x[i];
        for (index_t j = i + 1; j < n; ++j) sum -= m[i * n + j] * x[j];
        x[i] = sum / m[i * n + i];
    }
    return x;
}

} // namespace amgreuse
