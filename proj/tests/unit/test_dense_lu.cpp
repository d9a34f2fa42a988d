#include <doctest.h>

#include <stdexcept>

#include "amgreuse/dense_lu.hpp"
#include "oracles.hpp"

using namespace amgreuse;

TEST_CASE("coarse_solve on the identity returns the RHS") {
    const DenseFactorization f = coarse_factorize(oracle::identity(4));
    const std::vector<double> rhs{1.0, -2.0, 3.0, 0.5};
    CHECK(coarse_solve(f, rhs) == rhs);
}

TEST_CASE("coarse_solve matches the hand-solved 2x2 system") {
    const CsrMatrix A = csr_from_triplets(
        2, 2, std::vector<Triplet>{{0, 0, 2.0}, {0, 1, 1.0}, {1, 0, 1.0}, {1, 1, 2.0}});
    const auto x = coarse_solve(coarse_factorize(A), std::vector<double>{3.0, 3.0});
    CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("coarse_factorize rejects a singular matrix") {
    const CsrMatrix A = csr_from_triplets(
        2, 2, std::vector<Triplet>{{0, 0, 1.0}, {0, 1, 1.0}, {1, 0, 1.0}, {1, 1, 1.0}});
    CHECK_THROWS_WITH_AS(coarse_factorize(A), doctest::Contains("singular"), std::runtime_error);
}

TEST_CASE("LU factors reconstruct the matrix within 1e-10") {
    const CsrMatrix A = oracle::random_csr(30, 30, 0.4, 55, /*diag_dominant=*/true);
    const DenseFactorization f = coarse_factorize(A);

    // P*A = L*U with the stored row swaps applied in order.
    oracle::Dense pa = oracle::densify(A);
    for (index_t k = 0; k < f.n; ++k)
        if (f.piv[k] != k)
            for (index_t j = 0; j < f.n; ++j) std::swap(pa.at(k, j), pa.at(f.piv[k], j));

    oracle::Dense lu{f.n, f.n, std::vector<double>(pa.a.size(), 0.0)};
    for (index_t i = 0; i < f.n; ++i)
        for (index_t j = 0; j < f.n; ++j) {
            double sum = 0.0;
            for (index_t k = 0; k <= std::min(i, j); ++k) {
                const double l = (k == i) ? 1.0 : f.lu[i * f.n + k];
                sum += l * f.lu[k * f.n + j];
            }
            lu.at(i, j) = sum;
        }
    const double rel = oracle::frobenius_diff(pa, lu) / oracle::frobenius(pa);
    CHECK(rel < 1e-10);
}

TEST_CASE("coarse_solve agrees with the Gauss-Jordan oracle") {
    for (std::uint64_t s = 0; s < 5; ++s) {
        const CsrMatrix A = oracle::random_csr(25, 25, 0.5, 600 + s, /*diag_dominant=*/true);
        const auto rhs = oracle::random_vector(25, 700 + s);
        const auto x = coarse_solve(coarse_factorize(A), rhs);
        const auto expect = oracle::dense_solve(oracle::densify(A), rhs);
        for (std::size_t i = 0; i < x.size(); ++i)
            CHECK(x[i] == doctest::Approx(expect[i]).epsilon(1e-10));
    }
}

TEST_CASE("coarse_solve rejects a dimension mismatch") {
    const DenseFactorization f = coarse_factorize(oracle::identity(4));
    CHECK_THROWS_AS(coarse_solve(f, std::vector<double>{1.0}), std::invalid_argument);
}
