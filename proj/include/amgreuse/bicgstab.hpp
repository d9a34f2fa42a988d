#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "amgreuse/csr.hpp"
#include "amgreuse/hierarchy.hpp"

namespace amgreuse {

/// y = Op(x). Both A and the preconditioner are passed in this shape; the
/// preconditioner must be a fixed linear operator for the whole solve.
using LinearOperator = std::function<void(std::span<const double>, std::span<double>)>;

struct SolveParams {
    double tol = 1e-8;      // relative residual target, |f - A u| / |f|
    index_t max_iter = 100;
};

struct SolveStats {
    index_t iterations = 0;
    double relative_residual = 0.0;
    bool converged = false;
    bool breakdown = false;
};

/// Right-preconditioned BiCGStab. Stops when the true residual
/// |f - A u| / |f| (recomputed, never the recurrence value) drops below
/// tol, or at max_iter. |f| = 0 returns u = 0 immediately. On a scalar
/// breakdown the best iterate so far is returned with converged = false
/// and the breakdown flag set.
std::pair<std::vector<double>, SolveStats>
bicgstab(const LinearOperator& A, const LinearOperator& M, std::span<const double> f,
         std::span<const double> u0, const SolveParams& prm = {});

/// Wraps a CSR matrix as a linear operator. The matrix must outlive the
/// returned operator.
LinearOperator make_operator(const CsrMatrix& A);

/// One V-cycle with a zero initial guess as the preconditioning step. The
/// hierarchy must outlive the returned operator.
LinearOperator make_preconditioner(const Hierarchy& h, const AmgParams& prm = {});

LinearOperator identity_operator();

} // namespace amgreuse
