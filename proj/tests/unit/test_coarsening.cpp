#include <doctest.h>

#include <numeric>
#include <set>
#include <stdexcept>

#include "amgreuse/coarsening.hpp"
#include "oracles.hpp"

using namespace amgreuse;

namespace {

StrengthGraph graph_from_edges(index_t n, const std::set<std::pair<index_t, index_t>>& edges) {
    StrengthGraph g;
    g.n = n;
    g.adj_ptr.assign(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& [i, j] : edges) {
        (void)j;
        ++g.adj_ptr[i + 1];
    }
    std::partial_sum(g.adj_ptr.begin(), g.adj_ptr.end(), g.adj_ptr.begin());
    g.adj.resize(edges.size());
    std::vector<index_t> pos(g.adj_ptr.begin(), g.adj_ptr.end() - 1);
    for (const auto& [i, j] : edges) g.adj[pos[i]++] = j; // set order keeps lists sorted
    return g;
}

std::set<std::pair<index_t, index_t>> edges_of(const StrengthGraph& g) {
    std::set<std::pair<index_t, index_t>> out;
    for (index_t i = 0; i < g.n; ++i)
        for (index_t j : g.neighbors(i)) out.emplace(i, j);
    return out;
}

std::set<std::pair<index_t, index_t>> path_edges(index_t n) {
    std::set<std::pair<index_t, index_t>> e;
    for (index_t i = 0; i + 1 < n; ++i) {
        e.emplace(i, i + 1);
        e.emplace(i + 1, i);
    }
    return e;
}

void check_partition(const Aggregates& agg) {
    REQUIRE(static_cast<index_t>(agg.assignment.size()) == agg.n_fine);
    std::vector<index_t> histogram(static_cast<std::size_t>(agg.n_coarse), 0);
    for (index_t id : agg.assignment) {
        REQUIRE(id >= 0);
        REQUIRE(id < agg.n_coarse);
        ++histogram[id];
    }
    for (index_t count : histogram) CHECK(count >= 1);
}

} // namespace

TEST_CASE("strength_graph of a diagonal matrix has no edges") {
    const CsrMatrix A =
        csr_from_triplets(3, 3, std::vector<Triplet>{{0, 0, 2.0}, {1, 1, -3.0}, {2, 2, 7.0}});
    const StrengthGraph g = strength_graph(A, 0.08);
    CHECK(g.num_edges() == 0);
}

TEST_CASE("strength_graph of tridiag at eps 0.08 is the path graph") {
    const StrengthGraph g = strength_graph(oracle::poisson1d(4), 0.08);
    CHECK(edges_of(g) == path_edges(4));
}

TEST_CASE("strength_graph of tridiag at eps 0.9 has no edges") {
    // |-1|^2 = 1 vs 0.81 * |2*2| = 3.24
    const StrengthGraph g = strength_graph(oracle::poisson1d(4), 0.9);
    CHECK(g.num_edges() == 0);
}

TEST_CASE("strength_graph matches the brute-force criterion on random matrices") {
    for (std::uint64_t s = 0; s < 6; ++s) {
        const CsrMatrix A = oracle::random_csr(30, 30, 0.15, 300 + s, /*diag_dominant=*/true);
        for (double eps : {0.0, 0.02, 0.08, 0.5}) {
            const StrengthGraph g = strength_graph(A, eps);
            CHECK(edges_of(g) == oracle::brute_strong_pairs(A, eps));
        }
    }
}

TEST_CASE("strength_graph rejects a zero diagonal naming the row") {
    const CsrMatrix A =
        csr_from_triplets(2, 2, std::vector<Triplet>{{0, 0, 1.0}, {0, 1, 1.0}, {1, 0, 1.0}});
    CHECK_THROWS_WITH_AS(strength_graph(A, 0.08), doctest::Contains("zero diagonal at row 1"),
                         std::invalid_argument);
}

TEST_CASE("aggregate on an edgeless graph yields singletons") {
    const Aggregates agg = aggregate(graph_from_edges(3, {}));
    CHECK(agg.n_coarse == 3);
    CHECK(agg.assignment == std::vector<index_t>{0, 1, 2});
}

TEST_CASE("aggregate pairs a path graph") {
    const Aggregates agg = aggregate(graph_from_edges(6, path_edges(6)));
    CHECK(agg.n_coarse == 3);
    CHECK(agg.assignment == std::vector<index_t>{0, 0, 1, 1, 2, 2});
}

TEST_CASE("aggregate absorbs a whole star into one aggregate") {
    std::set<std::pair<index_t, index_t>> e;
    for (index_t leaf = 1; leaf <= 4; ++leaf) {
        e.emplace(0, leaf);
        e.emplace(leaf, 0);
    }
    const Aggregates agg = aggregate(graph_from_edges(5, e));
    CHECK(agg.n_coarse == 1);
    CHECK(agg.assignment == std::vector<index_t>(5, 0));
}

TEST_CASE("aggregate replays the two-pass rule on random graphs") {
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<index_t> node(0, 19);
    for (int trial = 0; trial < 10; ++trial) {
        std::set<std::pair<index_t, index_t>> edges;
        for (int e = 0; e < 25; ++e) {
            const index_t a = node(rng);
            const index_t b = node(rng);
            if (a == b) continue;
            edges.emplace(a, b);
            edges.emplace(b, a);
        }
        const Aggregates agg = aggregate(graph_from_edges(20, edges));
        check_partition(agg);

        index_t expect_coarse = 0;
        const auto expect = oracle::brute_aggregate(edges, 20, expect_coarse);
        CHECK(agg.assignment == expect);
        CHECK(agg.n_coarse == expect_coarse);
    }
}

TEST_CASE("aggregate makes progress whenever the graph has an edge") {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<index_t> node(0, 11);
    for (int trial = 0; trial < 20; ++trial) {
        std::set<std::pair<index_t, index_t>> edges;
        const index_t a = node(rng);
        const index_t b = (a + 1) % 12;
        edges.emplace(a, b);
        edges.emplace(b, a);
        for (int e = 0; e < trial; ++e) {
            const index_t u = node(rng);
            const index_t v = node(rng);
            if (u == v) continue;
            edges.emplace(u, v);
            edges.emplace(v, u);
        }
        const Aggregates agg = aggregate(graph_from_edges(12, edges));
        check_partition(agg);
        CHECK(agg.n_coarse < 12);
    }
}

TEST_CASE("tentative_prolongation of singletons is the identity") {
    Aggregates agg;
    agg.n_fine = 3;
    agg.n_coarse = 3;
    agg.assignment = {0, 1, 2};
    CHECK(tentative_prolongation(agg) == oracle::identity(3));
}

TEST_CASE("tentative_prolongation stacks unit rows per aggregate") {
    Aggregates agg;
    agg.n_fine = 4;
    agg.n_coarse = 2;
    agg.assignment = {0, 0, 1, 1};
    const CsrMatrix P = tentative_prolongation(agg);
    const auto d = oracle::densify(P);
    CHECK(d.at(0, 0) == 1.0);
    CHECK(d.at(1, 0) == 1.0);
    CHECK(d.at(2, 1) == 1.0);
    CHECK(d.at(3, 1) == 1.0);
    CHECK(P.nnz() == 4);
}

TEST_CASE("prolongation column sums recount the assignment histogram and P^T P is diagonal") {
    const StrengthGraph g = strength_graph(oracle::poisson2d(7), 0.08);
    const Aggregates agg = aggregate(g);
    check_partition(agg);
    const CsrMatrix P = tentative_prolongation(agg);

    std::vector<index_t> histogram(static_cast<std::size_t>(agg.n_coarse), 0);
    for (index_t id : agg.assignment) ++histogram[id];

    const CsrMatrix PtP = spmm(transpose(P), P);
    CHECK(PtP.nnz() == agg.n_coarse);
    for (index_t i = 0; i < PtP.nrows; ++i) {
        CHECK(PtP.col_idx[i] == i);
        CHECK(PtP.values[i] == static_cast<double>(histogram[i]));
    }
}

TEST_CASE("coarsening is deterministic for a fixed matrix and eps") {
    const CsrMatrix A = oracle::poisson2d(9);
    const Aggregates a1 = aggregate(strength_graph(A, 0.08));
    const Aggregates a2 = aggregate(strength_graph(A, 0.08));
    CHECK(a1 == a2);
}
