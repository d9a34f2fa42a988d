#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "amgreuse/csr.hpp"
#include "amgreuse/dense_lu.hpp"
#include "amgreuse/smoother.hpp"

namespace amgreuse {

struct AmgParams {
    double eps = 0.08;            // strength-of-connection threshold
    double omega = 0.72;          // Jacobi damping
    int pre_sweeps = 1;
    int post_sweeps = 1;
    index_t coarse_enough = 100;  // stop coarsening at this size
    index_t max_direct_size = 2000;
};

/// Wall time spent in each setup phase, seconds.
struct SetupPhaseTimings {
    double transfer_ops = 0.0;
    double galerkin = 0.0;
    double smoother = 0.0;
    double coarse_solver = 0.0;

    double total() const { return transfer_ops + galerkin + smoother + coarse_solver; }
    SetupPhaseTimings& operator+=(const SetupPhaseTimings& o) {
        transfer_ops += o.transfer_ops;
        galerkin += o.galerkin;
        smoother += o.smoother;
        coarse_solver += o.coarse_solver;
        return *this;
    }
};

/// One level of the hierarchy. P, R and the smoother are absent on the
/// coarsest level. R is the materialized transpose of P.
struct Level {
    CsrMatrix A;
    std::shared_ptr<const CsrMatrix> P;
    std::shared_ptr<const CsrMatrix> R;
    std::optional<JacobiSmoother> smoother;
};

struct Hierarchy {
    std::vector<Level> levels;      // finest first; back() is the coarsest
    DenseFactorization coarse_solver;
    SetupPhaseTimings setup_timings;

    index_t finest_size() const { return levels.front().A.nrows; }
    std::size_t num_levels() const { return levels.size(); }

    /// sum_i nnz(A_i) / nnz(A_1)
    double operator_complexity() const;
};

/// Full AMG setup: coarsen until the matrix is small enough to factorize
/// directly, recording per-phase wall times. If coarsening stalls the
/// hierarchy is truncated at the current level and factorized densely when
/// that is affordable; otherwise throws.
Hierarchy setup(const CsrMatrix& A, const AmgParams& prm = {});

/// Rebuild every level matrix, smoother and the coarse factorization from
/// A_new while keeping the transfer operators of `h` untouched (shared, not
/// recomputed). transfer_ops time is reported as zero. Throws
/// std::invalid_argument if A_new does not match the finest dimensions.
Hierarchy partial_update(const Hierarchy& h, CsrMatrix A_new, const AmgParams& prm = {});

/// One V-cycle from a zero initial guess: a fixed linear operator
/// approximating A^-1, suitable as a preconditioner.
std::vector<double> vcycle(const Hierarchy& h, std::span<const double> f,
                           const AmgParams& prm = {});

} // namespace amgreuse
