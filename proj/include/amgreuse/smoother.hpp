#pragma once

#include <span>
#include <vector>

#include "amgreuse/csr.hpp"

namespace amgreuse {

/// Damped Jacobi relaxation: u <- u + omega * D^-1 * (f - A u).
struct JacobiSmoother {
    std::vector<double> inv_diag;
    double omega = 0.72;

    bool operator==(const JacobiSmoother&) const = default;
};

/// Throws std::invalid_argument with the row index if any diagonal entry is
/// missing or zero.
JacobiSmoother build_smoother(const CsrMatrix& A, double omega);

/// Apply `sweeps` damped Jacobi sweeps in place.
void smooth(const JacobiSmoother& s, const CsrMatrix& A, std::span<const double> f,
            std::span<double> u, int sweeps);

/// Value-returning convenience overload.
std::vector<double> smooth(const JacobiSmoother& s, const CsrMatrix& A,
                           std::span<const double> f, std::vector<double> u, int sweeps);

} // namespace amgreuse
