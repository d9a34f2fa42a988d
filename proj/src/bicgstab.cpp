#include "amgreuse/bicgstab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace amgreuse {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

} // namespace

std::pair<std::vector<double>, SolveStats>
bicgstab(const LinearOperator& A, const LinearOperator& M, std::span<const double> f,
         std::span<const double> u0, const SolveParams& prm) {
    if (f.size() != u0.size()) throw std::invalid_argument("bicgstab: dimension mismatch");
    if (prm.tol <= 0.0) throw std::invalid_argument("bicgstab: tol must be positive");
    if (prm.max_iter < 1) throw std::invalid_argument("bicgstab: max_iter must be >= 1");

    const std::size_t n = f.size();
    SolveStats stats;

    const double norm_f = norm2(f);
    if (norm_f == 0.0) {
        stats.converged = true;
        return {std::vector<double>(n, 0.0), stats};
    }

    std::vector<double> u(u0.begin(), u0.end());
    std::vector<double> r(n), rtilde(n), p(n), v(n, 0.0), s(n), t(n);
    std::vector<double> phat(n), shat(n), tmp(n);

    A(u, r);
    for (std::size_t i = 0; i < n; ++i) r[i] = f[i] - r[i];
    rtilde = r; // deterministic shadow residual

    auto true_residual = [&]() {
        A(u, tmp);
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = f[i] - tmp[i];
            sum += d * d;
        }
        return std::sqrt(sum) / norm_f;
    };

    stats.relative_residual = norm2(r) / norm_f;
    if (stats.relative_residual <= prm.tol) {
        stats.relative_residual = true_residual();
        if (stats.relative_residual <= prm.tol) {
            stats.converged = true;
            return {u, stats};
        }
    }

    const double rho_floor = 1e-30 * norm_f * norm_f;
    double rho_old = 1.0, alpha = 1.0, omega = 1.0;

    for (index_t it = 1; it <= prm.max_iter; ++it) {
        stats.iterations = it;
        const double rho = dot(rtilde, r);
        if (std::fabs(rho) < rho_floor) {
            stats.breakdown = true;
            break;
        }
        if (it == 1) {
            p = r;
        } else {
            const double beta = (rho / rho_old) * (alpha / omega);
            for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * (p[i] - omega * v[i]);
        }

        M(p, phat);
        A(phat, v);
        const double rtv = dot(rtilde, v);
        if (std::fabs(rtv) < rho_floor) {
            stats.breakdown = true;
            break;
        }
        alpha = rho / rtv;
        for (std::size_t i = 0; i < n; ++i) s[i] = r[i] - alpha * v[i];

        if (norm2(s) / norm_f <= prm.tol) {
            for (std::size_t i = 0; i < n; ++i) u[i] += alpha * phat[i];
            const double res = true_residual();
            if (res <= prm.tol) {
                stats.converged = true;
                stats.relative_residual = res;
                return {u, stats};
            }
            r = s;
            rho_old = rho;
            continue;
        }

        M(s, shat);
        A(shat, t);
        const double tt = dot(t, t);
        if (tt == 0.0) {
            stats.breakdown = true;
            break;
        }
        omega = dot(t, s) / tt;
        for (std::size_t i = 0; i < n; ++i) {
            u[i] += alpha * phat[i] + omega * shat[i];
            r[i] = s[i] - omega * t[i];
        }
        rho_old = rho;

        if (norm2(r) / norm_f <= prm.tol) {
            const double res = true_residual();
            if (res <= prm.tol) {
                stats.converged = true;
                stats.relative_residual = res;
                return {u, stats};
            }
        }
        if (std::fabs(omega) < 1e-30) {
            stats.breakdown = true;
            break;
        }
    }

    stats.relative_residual = true_residual();
    stats.converged = stats.relative_residual <= prm.tol && !stats.breakdown;
    return {u, stats};
}

LinearOperator make_operator(const CsrMatrix& A) {
    return [&A](std::span<const double> x, std::span<double> y) { spmv(A, x, y); };
}

LinearOperator make_preconditioner(const Hierarchy& h, const AmgParams& prm) {
    return [&h, prm](std::span<const double> x, std::span<double> y) {
        std::vector<double> z = vcycle(h, x, prm);
        std::copy(z.begin(), z.end(), y.begin());
    };
}

LinearOperator identity_operator() {
    return [](std::span<const double> x, std::span<double> y) {
        std::copy(x.begin(), x.end(), y.begin());
    };
}

} // namespace amgreuse
