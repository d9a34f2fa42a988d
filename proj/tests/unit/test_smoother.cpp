#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "amgreuse/smoother.hpp"
#include "oracles.hpp"

using namespace amgreuse;

namespace {

double residual_norm(const CsrMatrix& A, const std::vector<double>& f,
                     const std::vector<double>& u) {
    const auto au = oracle::matvec(oracle::densify(A), u);
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += (f[i] - au[i]) * (f[i] - au[i]);
    return std::sqrt(s);
}

} // namespace

TEST_CASE("build_smoother inverts the diagonal") {
    const CsrMatrix A = csr_from_triplets(2, 2, std::vector<Triplet>{{0, 0, 2.0}, {1, 1, 4.0}});
    const JacobiSmoother s = build_smoother(A, 1.0);
    CHECK(s.inv_diag == std::vector<double>{0.5, 0.25});
    CHECK(s.omega == 1.0);
}

TEST_CASE("build_smoother on tridiag gives constant inverse diagonal") {
    const JacobiSmoother s = build_smoother(oracle::poisson1d(5), 0.72);
    for (double v : s.inv_diag) CHECK(v == 0.5);
}

TEST_CASE("build_smoother rejects a zero diagonal with the row index") {
    const CsrMatrix A =
        csr_from_triplets(2, 2, std::vector<Triplet>{{0, 0, 1.0}, {1, 0, 1.0}});
    CHECK_THROWS_WITH_AS(build_smoother(A, 0.72), doctest::Contains("zero diagonal at row 1"),
                         std::invalid_argument);
}

TEST_CASE("the damping factor round-trips into smoothing") {
    const CsrMatrix A = oracle::poisson1d(4);
    const JacobiSmoother s = build_smoother(A, 0.72);
    CHECK(s.omega == 0.72);
    // one sweep from zero: u = omega * D^-1 * f
    std::vector<double> u(4, 0.0);
    const std::vector<double> f{1.0, 1.0, 1.0, 1.0};
    smooth(s, A, f, u, 1);
    for (double v : u) CHECK(v == doctest::Approx(0.72 * 0.5));
}

TEST_CASE("one undamped sweep solves a diagonal system exactly") {
    const CsrMatrix A = csr_from_triplets(3, 3, std::vector<Triplet>{{0, 0, 2.0}, {1, 1, 5.0}, {2, 2, 10.0}});
    const JacobiSmoother s = build_smoother(A, 1.0);
    const std::vector<double> f{2.0, 10.0, 5.0};
    const auto u = smooth(s, A, f, std::vector<double>(3, 0.0), 1);
    CHECK(u == std::vector<double>{1.0, 2.0, 0.5});
}

TEST_CASE("smoothing is a fixed point at the exact solution") {
    const CsrMatrix A = oracle::poisson1d(6);
    const auto ustar = oracle::random_vector(6, 3);
    const auto f = spmv(A, ustar);
    const JacobiSmoother s = build_smoother(A, 0.72);
    const auto u = smooth(s, A, f, ustar, 3);
    CHECK(u == ustar);
}

TEST_CASE("damped Jacobi reduces the residual monotonically on an SPD tridiag") {
    const CsrMatrix A = oracle::poisson1d(32);
    const auto f = oracle::random_vector(32, 13);
    const JacobiSmoother s = build_smoother(A, 0.72);
    std::vector<double> u(32, 0.0);
    double prev = residual_norm(A, f, u);
    for (int sweep = 0; sweep < 5; ++sweep) {
        smooth(s, A, f, u, 1);
        const double cur = residual_norm(A, f, u);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("smooth rejects mismatched dimensions") {
    const CsrMatrix A = oracle::poisson1d(4);
    const JacobiSmoother s = build_smoother(A, 0.72);
    std::vector<double> u(3, 0.0);
    const std::vector<double> f{1.0, 1.0, 1.0, 1.0};
    CHECK_THROWS_AS(smooth(s, A, f, u, 1), std::invalid_argument);
}
