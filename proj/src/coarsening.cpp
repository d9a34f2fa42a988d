#include "amgreuse/coarsening.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace amgreuse {

StrengthGraph strength_graph(const CsrMatrix& A, double eps) {
    if (A.nrows != A.ncols) throw std::invalid_argument("strength_graph: matrix is not square");
    if (eps < 0.0 || eps >= 1.0) throw std::invalid_argument("strength_graph: eps must be in [0, 1)");

    const index_t n = A.nrows;
    std::vector<double> dia(static_cast<std::size_t>(n), 0.0);
    for (index_t i = 0; i < n; ++i) {
        bool found = false;
        for (index_t k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) {
            if (A.col_idx[k] == i) {
                dia[i] = A.values[k];
                found = true;
                break;
            }
        }
        if (!found || dia[i] == 0.0) {
            std::ostringstream os;
            os << "strength_graph: zero diagonal at row " << i;
            throw std::invalid_argument(os.str());
        }
    }

    const double eps2 = eps * eps;
    // Directed pass, then union-symmetrize by emitting both directions.
    std::vector<index_t> deg(static_cast<std::size_t>(n) + 1, 0);
    std::vector<std::pair<index_t, index_t>> edges;
    edges.reserve(static_cast<std::size_t>(A.nnz()));
    for (index_t i = 0; i < n; ++i) {
        for (index_t k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) {
            const index_t j = A.col_idx[k];
            const double v = A.values[k];
            if (j != i && v * v > eps2 * std::fabs(dia[i] * dia[j])) {
                edges.emplace_back(i, j);
                edges.emplace_back(j, i);
            }
        }
    }
    for (const auto& [i, j] : edges) ++deg[static_cast<std::size_t>(i) + 1];

    StrengthGraph g;
    g.n = n;
    g.adj_ptr.assign(deg.begin(), deg.end());
    std::partial_sum(g.adj_ptr.begin(), g.adj_ptr.end(), g.adj_ptr.begin());
    g.adj.resize(edges.size());
    {
        std::vector<index_t> pos(g.adj_ptr.begin(), g.adj_ptr.end() - 1);
        for (const auto& [i, j] : edges) g.adj[pos[i]++] = j;
    }
    // Sort and deduplicate each adjacency list (an edge strong in both
    // directions was emitted twice).
    std::vector<index_t> compact_ptr{0};
    std::vector<index_t> compact;
    compact.reserve(g.adj.size());
    for (index_t i = 0; i < n; ++i) {
        auto first = g.adj.begin() + g.adj_ptr[i];
        auto last = g.adj.begin() + g.adj_ptr[i + 1];
        std::sort(first, last);
        auto uniq_end = std::unique(first, last);
        compact.insert(compact.end(), first, uniq_end);
        compact_ptr.push_back(static_cast<index_t>(compact.size()));
    }
    g.adj_ptr = std::move(compact_ptr);
    g.adj = std::move(compact);
    return g;
}

Aggregates aggregate(const StrengthGraph& g) {
    constexpr index_t unassigned = -1;
    Aggregates agg;
    agg.n_fine = g.n;
    agg.assignment.assign(static_cast<std::size_t>(g.n), unassigned);
    index_t next_id = 0;

    // Pass 1: roots absorb their unaggregated strong neighbors.
    for (index_t i = 0; i < g.n; ++i) {
        if (agg.assignment[i] != unassigned) continue;
        bool has_free_neighbor = false;
        for (index_t j : g.neighbors(i)) {
            if (agg.assignment[j] == unassigned) {
                has_free_neighbor = true;
                break;
            }
        }
        if (!has_free_neighbor) continue;
        const index_t id = next_id++;
        agg.assignment[i] = id;
        for (index_t j : g.neighbors(i))
            if (agg.assignment[j] == unassigned) agg.assignment[j] = id;
    }

    // Pass 2: leftovers join their lowest-indexed aggregated neighbor;
    // isolated nodes become singletons.
    for (index_t i = 0; i < g.n; ++i) {
        if (agg.assignment[i] != unassigned) continue;
        auto nbrs = g.neighbors(i);
        if (nbrs.empty()) {
            agg.assignment[i] = next_id++;
            continue;
        }
        for (index_t j : nbrs) {
            if (agg.assignment[j] != unassigned) {
                agg.assignment[i] = agg.assignment[j];
                break;
            }
        }
    }

    agg.n_coarse = next_id;
    return agg;
}

CsrMatrix tentative_prolongation(const Aggregates& agg) {
    CsrMatrix P;
    P.nrows = agg.n_fine;
    P.ncols = agg.n_coarse;
    P.row_ptr.resize(static_cast<std::size_t>(agg.n_fine) + 1);
    P.col_idx.resize(static_cast<std::size_t>(agg.n_fine));
    P.values.assign(static_cast<std::size_t>(agg.n_fine), 1.0);
    for (index_t i = 0; i <= agg.n_fine; ++i) P.row_ptr[i] = i;
    for (index_t i = 0; i < agg.n_fine; ++i) P.col_idx[i] = agg.assignment[i];
    return P;
}

} // namespace amgreuse
