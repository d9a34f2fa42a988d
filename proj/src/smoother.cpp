#include "amgreuse/smoother.hpp"

#include <sstream>
#include <stdexcept>

namespace amgreuse {

JacobiSmoother build_smoother(const CsrMatrix& A, double omega) {
    if (A.nrows != A.ncols) throw std::invalid_argument("build_smoother: matrix is not square");

    JacobiSmoother s;
    s.omega = omega;
    s.inv_diag.assign(static_cast<std::size_t>(A.nrows), 0.0);
    for (index_t i = 0; i < A.nrows; ++i) {
        double d = 0.0;
        bool found = false;
        for (index_t k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) {
            if (A.col_idx[k] == i) {
                d = A.values[k];
                found = true;
                break;
            }
        }
        if (!found || d == 0.0) {
            std::ostringstream os;
            os << "build_smoother: zero diagonal at row " << i;
            throw std::invalid_argument(os.str());
        }
        s.inv_diag[i] = 1.0 / d;
    }
    return s;
}

void smooth(const JacobiSmoother& s, const CsrMatrix& A, std::span<const double> f,
            std::span<double> u, int sweeps) {
    if (A.nrows != A.ncols) throw std::invalid_argument("smooth: matrix is not square");
    if (static_cast<index_t>(f.size()) != A.nrows ||
        static_cast<index_t>(u.size()) != A.nrows ||
        static_cast<index_t>(s.inv_diag.size()) != A.nrows)
        throw std::invalid_argument("smooth: dimension mismatch");

    std::vector<double> r(static_cast<std::size_t>(A.nrows));
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        spmv(A, u, r);
        for (index_t i = 0; i < A.nrows; ++i)
            u[i] += s.omega * s.inv_diag[i] * (f[i] - r[i]);
    }
}

std::vector<double> smooth(const JacobiSmoother& s, const CsrMatrix& A,
                           std::span<const double> f, std::vector<double> u, int sweeps) {
    smooth(s, A, f, std::span<double>(u), sweeps);
    return u;
}

} // namespace amgreuse
