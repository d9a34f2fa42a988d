#include "amgreuse/hierarchy.hpp"

#include <chrono>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "amgreuse/coarsening.hpp"

namespace amgreuse {

namespace {

using clock_type = std::chrono::steady_clock;

/// Adds the elapsed wall time to a phase accumulator on destruction.
class PhaseTimer {
  public:
    explicit PhaseTimer(double& acc) : acc_(acc), start_(clock_type::now()) {}
    ~PhaseTimer() {
        acc_ += std::chrono::duration<double>(clock_type::now() - start_).count();
    }
    PhaseTimer(const PhaseTimer&) = delete;
    PhaseTimer& operator=(const PhaseTimer&) = delete;

  private:
    double& acc_;
    clock_type::time_point start_;
};

[[noreturn]] void rethrow_with_level(const std::exception& e, std::size_t level) {
    std::ostringstream os;
    os << "level " << level << ": " << e.what();
    throw std::invalid_argument(os.str());
}

} // namespace

double Hierarchy::operator_complexity() const {
    double total = 0.0;
    for (const Level& l : levels) total += static_cast<double>(l.A.nnz());
    return total / static_cast<double>(levels.front().A.nnz());
}

Hierarchy setup(const CsrMatrix& A, const AmgParams& prm) {
    if (A.nrows != A.ncols) throw std::invalid_argument("setup: matrix is not square");
    if (A.nrows == 0) throw std::invalid_argument("setup: empty matrix");

    Hierarchy h;
    CsrMatrix A_cur = A;

    while (A_cur.nrows > prm.coarse_enough) {
        std::shared_ptr<CsrMatrix> P;
        std::shared_ptr<CsrMatrix> R;
        index_t n_coarse = 0;
        {
            PhaseTimer t(h.setup_timings.transfer_ops);
            Aggregates agg;
            try {
                agg = aggregate(strength_graph(A_cur, prm.eps));
            } catch (const std::invalid_argument& e) {
                rethrow_with_level(e, h.levels.size());
            }
            n_coarse = agg.n_coarse;
            if (n_coarse < agg.n_fine) {
                P = std::make_shared<CsrMatrix>(tentative_prolongation(agg));
                R = std::make_shared<CsrMatrix>(transpose(*P));
            }
        }
        if (n_coarse == A_cur.nrows) {
            // Coarsening stalled: truncate here if a dense solve is affordable.
            if (A_cur.nrows <= prm.max_direct_size) break;
            std::ostringstream os;
            os << "setup: coarsening stalled at level " << h.levels.size() << " with "
               << A_cur.nrows << " unknowns (> max_direct_size " << prm.max_direct_size << ")";
            throw std::runtime_error(os.str());
        }

        JacobiSmoother s;
        {
            PhaseTimer t(h.setup_timings.smoother);
            try {
                s = build_smoother(A_cur, prm.omega);
            } catch (const std::invalid_argument& e) {
                rethrow_with_level(e, h.levels.size());
            }
        }

        CsrMatrix A_next;
        {
            PhaseTimer t(h.setup_timings.galerkin);
            A_next = galerkin_product(*R, A_cur, *P);
        }

        h.levels.push_back(Level{std::move(A_cur), std::move(P), std::move(R), std::move(s)});
        A_cur = std::move(A_next);
    }

    {
        PhaseTimer t(h.setup_timings.coarse_solver);
        h.coarse_solver = coarse_factorize(A_cur);
    }
    h.levels.push_back(Level{std::move(A_cur), nullptr, nullptr, std::nullopt});
    return h;
}

Hierarchy partial_update(const Hierarchy& h, CsrMatrix A_new, const AmgParams& prm) {
    if (h.levels.empty()) throw std::invalid_argument("partial_update: empty hierarchy");
    const CsrMatrix& A_old = h.levels.front().A;
    if (A_new.nrows != A_old.nrows || A_new.ncols != A_old.ncols) {
        std::ostringstream os;
        os << "partial update impossible, full rebuild required: new matrix is "
           << A_new.nrows << "x" << A_new.ncols << ", hierarchy was built for "
           << A_old.nrows << "x" << A_old.ncols;
        throw std::invalid_argument(os.str());
    }

    Hierarchy out;
    CsrMatrix A_cur = std::move(A_new);

    for (std::size_t i = 0; i + 1 < h.levels.size(); ++i) {
        const Level& frozen = h.levels[i];

        JacobiSmoother s;
        {
            PhaseTimer t(out.setup_timings.smoother);
            try {
                s = build_smoother(A_cur, prm.omega);
            } catch (const std::invalid_argument& e) {
                rethrow_with_level(e, i);
            }
        }

        CsrMatrix A_next;
        {
            PhaseTimer t(out.setup_timings.galerkin);
            A_next = galerkin_product(*frozen.R, A_cur, *frozen.P);
        }

        out.levels.push_back(Level{std::move(A_cur), frozen.P, frozen.R, std::move(s)});
        A_cur = std::move(A_next);
    }

    {
        PhaseTimer t(out.setup_timings.coarse_solver);
        out.coarse_solver = coarse_factorize(A_cur);
    }
    out.levels.push_back(Level{std::move(A_cur), nullptr, nullptr, std::nullopt});
    return out;
}

std::vector<double> vcycle(const Hierarchy& h, std::span<const double> f, const AmgParams& prm) {
    if (h.levels.empty()) throw std::invalid_argument("vcycle: empty hierarchy");
    if (static_cast<index_t>(f.size()) != h.finest_size())
        throw std::invalid_argument("vcycle: dimension mismatch");

    const std::size_t L = h.levels.size();
    std::vector<std::vector<double>> us(L);
    std::vector<std::vector<double>> fs(L);
    fs[0].assign(f.begin(), f.end());

    std::vector<double> r;
    for (std::size_t i = 0; i + 1 < L; ++i) {
        const Level& lvl = h.levels[i];
        const std::size_t n = static_cast<std::size_t>(lvl.A.nrows);
        us[i].assign(n, 0.0);
        smooth(*lvl.smoother, lvl.A, fs[i], us[i], prm.pre_sweeps);
        r.resize(n);
        spmv(lvl.A, us[i], r);
        for (std::size_t k = 0; k < n; ++k) r[k] = fs[i][k] - r[k];
        fs[i + 1].resize(static_cast<std::size_t>(lvl.R->nrows));
        spmv(*lvl.R, r, fs[i + 1]);
    }

    us[L - 1] = coarse_solve(h.coarse_solver, fs[L - 1]);

    for (std::size_t i = L - 1; i-- > 0;) {
        const Level& lvl = h.levels[i];
        const std::size_t n = static_cast<std::size_t>(lvl.A.nrows);
        r.resize(n);
        spmv(*lvl.P, us[i + 1], r);
        for (std::size_t k = 0; k < n; ++k) us[i][k] += r[k];
        smooth(*lvl.smoother, lvl.A, fs[i], us[i], prm.post_sweeps);
    }
    return std::move(us[0]);
}

} // namespace amgreuse
