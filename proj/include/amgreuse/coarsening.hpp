#pragma once

#include <span>
#include <vector>

#include "amgreuse/csr.hpp"

namespace amgreuse {

/// Symmetric strong-coupling graph over the unknowns of a square matrix.
/// Off-diagonal only, adjacency lists sorted.
struct StrengthGraph {
    index_t n = 0;
    std::vector<index_t> adj_ptr{0};
    std::vector<index_t> adj;

    std::span<const index_t> neighbors(index_t i) const {
        return {adj.data() + adj_ptr[i],
                static_cast<std::size_t>(adj_ptr[i + 1] - adj_ptr[i])};
    }
    index_t num_edges() const { return static_cast<index_t>(adj.size()); }
};

/// Total partition of fine indices into aggregates. Every aggregate id in
/// [0, n_coarse) is used at least once.
struct Aggregates {
    index_t n_fine = 0;
    index_t n_coarse = 0;
    std::vector<index_t> assignment;

    bool operator==(const Aggregates&) const = default;
};

/// Edge (i, j), i != j, present iff a_ij is stored and
/// |a_ij|^2 > eps^2 * |a_ii * a_jj|; the result is symmetrized by union.
/// Throws if any diagonal entry is missing or zero (the criterion is
/// undefined there).
StrengthGraph strength_graph(const CsrMatrix& A, double eps);

/// Deterministic greedy two-pass aggregation. Pass 1: scanning nodes in
/// ascending order, every unaggregated node with at least one unaggregated
/// strong neighbor becomes a root and absorbs all its unaggregated strong
/// neighbors. Pass 2: each leftover joins the aggregate of its
/// lowest-indexed aggregated neighbor; isolated nodes become singletons.
/// Ids are numbered in order of root/singleton creation.
Aggregates aggregate(const StrengthGraph& g);

/// Piecewise-constant prolongation: one unit entry per row,
/// P[i, assignment[i]] = 1.
CsrMatrix tentative_prolongation(const Aggregates& agg);

} // namespace amgreuse
