#pragma once

#include <optional>
#include <string>
#include <vector>

#include "amgreuse/bicgstab.hpp"
#include "amgreuse/hierarchy.hpp"
#include "amgreuse/sequence.hpp"

namespace amgreuse {

enum class StrategyKind { none, full, partial };

std::string to_string(StrategyKind k);
StrategyKind strategy_kind_from_string(std::string_view name);

struct StrategyConfig {
    StrategyKind kind = StrategyKind::none;
    /// Full reuse only: rebuild when the previous solve needed at least
    /// this many iterations. 0 selects the solver's max_iter (rebuild only
    /// on outright non-convergence).
    index_t reuse_iter_limit = 0;
    /// Partial reuse only: preventive full rebuild every m-th step; absent
    /// means never.
    std::optional<index_t> rebuild_every;
};

enum class StepAction { full_build, partial_update, reused_unchanged };

std::string to_string(StepAction a);

struct StepMetrics {
    index_t step = 0;
    double setup_time = 0.0;
    double solve_time = 0.0;
    index_t iterations = 0;
    bool converged = false;
    StepAction action = StepAction::full_build;
    SetupPhaseTimings phase_timings; // zeroed when reused_unchanged
};

struct RunReport {
    StrategyConfig strategy;
    std::vector<StepMetrics> steps;
    double total_setup = 0.0;
    double total_solve = 0.0;
    index_t full_rebuilds = 0;
    double avg_iterations = 0.0;
};

struct RunResult {
    std::vector<std::vector<double>> solutions;
    RunReport report;
};

/// Drive a time-step sequence under one amortization strategy:
///   none    - full AMG setup on every step (baseline);
///   full    - reuse the hierarchy unchanged until a solve fails to
///             converge or hits reuse_iter_limit; the rebuild happens at
///             the start of the NEXT step;
///   partial - keep the transfer operators, rebuild level matrices,
///             smoothers and the coarse factorization every step; a full
///             rebuild is forced when dimensions change or every
///             rebuild_every-th step.
/// Each step is solved with AMG-preconditioned BiCGStab, chaining the
/// previous solution as the initial guess. Solver non-convergence and
/// breakdown are recorded, not thrown. Setup timing covers
/// setup/partial_update only.
RunResult run_sequence(const ProblemSequence& systems, const StrategyConfig& strategy,
                       const AmgParams& amg, const SolveParams& solve);

enum class SpeedupBasis { total, setup };

/// speedup% = (t_base / t_other - 1) * 100 with t per `which`; both
/// reports must cover the same number of steps. t_other == 0 yields an
/// infinite sentinel.
double speedup_percent(const RunReport& base, const RunReport& other, SpeedupBasis which);

/// Phase timings accumulated over the steps that performed a full build.
SetupPhaseTimings full_build_phase_totals(const RunReport& report);

} // namespace amgreuse
