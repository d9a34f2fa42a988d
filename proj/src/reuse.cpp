#include "amgreuse/reuse.hpp"

#include <chrono>
#include <limits>
#include <stdexcept>
#include <utility>

namespace amgreuse {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

} // namespace

std::string to_string(StrategyKind k) {
    switch (k) {
        case StrategyKind::none: return "none";
        case StrategyKind::full: return "full";
        case StrategyKind::partial: return "partial";
    }
    return "?";
}

StrategyKind strategy_kind_from_string(std::string_view name) {
    if (name == "none") return StrategyKind::none;
    if (name == "full") return StrategyKind::full;
    if (name == "partial") return StrategyKind::partial;
    throw std::invalid_argument("unknown strategy '" + std::string(name) +
                                "' (expected none, full or partial)");
}

std::string to_string(StepAction a) {
    switch (a) {
        case StepAction::full_build: return "full_build";
        case StepAction::partial_update: return "partial_update";
        case StepAction::reused_unchanged: return "reused_unchanged";
    }
    return "?";
}

RunResult run_sequence(const ProblemSequence& systems, const StrategyConfig& strategy,
                       const AmgParams& amg, const SolveParams& solve) {
    if (systems.size() == 0) throw std::invalid_argument("run_sequence: empty sequence");

    const index_t iter_limit =
        strategy.reuse_iter_limit > 0 ? strategy.reuse_iter_limit : solve.max_iter;
    if (iter_limit > solve.max_iter)
        throw std::invalid_argument("run_sequence: reuse_iter_limit exceeds max_iter");
    if (strategy.rebuild_every && *strategy.rebuild_every < 1)
        throw std::invalid_argument("run_sequence: rebuild_every must be >= 1");

    RunResult result;
    result.report.strategy = strategy;
    Hierarchy hierarchy;
    bool have_hierarchy = false;
    bool rebuild_flag = false; // full reuse: previous solve was too slow
    std::vector<double> prev_solution;

    for (std::size_t k = 0; k < systems.size(); ++k) {
        TimeStep ts = systems.step(k); // ingestion excluded from timings
        StepMetrics m;
        m.step = static_cast<index_t>(k);

        const bool dims_changed =
            have_hierarchy && ts.A.nrows != hierarchy.finest_size();

        switch (strategy.kind) {
            case StrategyKind::none:
                m.action = StepAction::full_build;
                break;
            case StrategyKind::full:
                m.action = (!have_hierarchy || dims_changed || rebuild_flag)
                               ? StepAction::full_build
                               : StepAction::reused_unchanged;
                break;
            case StrategyKind::partial: {
                const bool periodic = strategy.rebuild_every && k > 0 &&
                                      static_cast<index_t>(k) % *strategy.rebuild_every == 0;
                m.action = (!have_hierarchy || dims_changed || periodic)
                               ? StepAction::full_build
                               : StepAction::partial_update;
                break;
            }
        }

        const auto t_setup = clock_type::now();
        if (m.action == StepAction::full_build) {
            hierarchy = setup(ts.A, amg);
            have_hierarchy = true;
            m.setup_time = seconds_since(t_setup);
            m.phase_timings = hierarchy.setup_timings;
        } else if (m.action == StepAction::partial_update) {
            hierarchy = partial_update(hierarchy, std::move(ts.A), amg);
            m.setup_time = seconds_since(t_setup);
            m.phase_timings = hierarchy.setup_timings;
        }
        // reused_unchanged: setup_time stays 0, phase timings stay zeroed.

        const CsrMatrix& A = hierarchy.levels.front().A;
        if (static_cast<index_t>(ts.rhs.size()) != A.nrows)
            throw std::invalid_argument("run_sequence: RHS length does not match matrix size");

        std::vector<double> u0(static_cast<std::size_t>(A.nrows), 0.0);
        if (prev_solution.size() == u0.size()) u0 = prev_solution;

        const auto t_solve = clock_type::now();
        auto [u, stats] =
            bicgstab(make_operator(A), make_preconditioner(hierarchy, amg), ts.rhs, u0, solve);
        m.solve_time = seconds_since(t_solve);

        m.iterations = stats.iterations;
        m.converged = stats.converged;
        if (strategy.kind == StrategyKind::full)
            rebuild_flag = !stats.converged || stats.iterations >= iter_limit;

        prev_solution = u;
        result.solutions.push_back(std::move(u));
        result.report.steps.push_back(m);
    }

    RunReport& rep = result.report;
    double iter_sum = 0.0;
    for (const StepMetrics& m : rep.steps) {
        rep.total_setup += m.setup_time;
        rep.total_solve += m.solve_time;
        if (m.action == StepAction::full_build) ++rep.full_rebuilds;
        iter_sum += static_cast<double>(m.iterations);
    }
    rep.avg_iterations = iter_sum / static_cast<double>(rep.steps.size());
    return result;
}

double speedup_percent(const RunReport& base, const RunReport& other, SpeedupBasis which) {
    if (base.steps.size() != other.steps.size())
        throw std::invalid_argument("speedup_percent: reports cover different step counts");
    const double t_base = which == SpeedupBasis::total ? base.total_setup + base.total_solve
                                                       : base.total_setup;
    const double t_other = which == SpeedupBasis::total ? other.total_setup + other.total_solve
                                                        : other.total_setup;
    if (t_other == 0.0) return std::numeric_limits<double>::infinity();
    return (t_base / t_other - 1.0) * 100.0;
}

SetupPhaseTimings full_build_phase_totals(const RunReport& report) {
    SetupPhaseTimings total;
    for (const StepMetrics& m : report.steps)
        if (m.action == StepAction::full_build) total += m.phase_timings;
    return total;
}

} // namespace amgreuse
