#pragma once

#include <span>
#include <vector>

#include "amgreuse/csr.hpp"

namespace amgreuse {

/// Dense LU factors with partial pivoting, row-major. L has an implicit
/// unit diagonal and shares storage with U.
struct DenseFactorization {
    index_t n = 0;
    std::vector<double> lu;
    std::vector<index_t> piv;

    bool operator==(const DenseFactorization&) const = default;
};

/// Densify and factorize a square matrix. Throws std::runtime_error if a
/// zero pivot remains after pivoting (singular to working precision).
DenseFactorization coarse_factorize(const CsrMatrix& A);

std::vector<double> coarse_solve(const DenseFactorization& f, std::span<const double> rhs);

} // namespace amgreuse
