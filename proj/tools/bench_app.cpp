#include "bench_app.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "amgreuse/matrix_market.hpp"

namespace amgreuse::bench {

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

RunReport median_report(const std::vector<RunReport>& runs) {
    RunReport out = runs.front();
    if (runs.size() == 1) return out;
    std::vector<double> cell(runs.size());
    for (std::size_t s = 0; s < out.steps.size(); ++s) {
        for (std::size_t r = 0; r < runs.size(); ++r) cell[r] = runs[r].steps[s].setup_time;
        out.steps[s].setup_time = median(cell);
        for (std::size_t r = 0; r < runs.size(); ++r) cell[r] = runs[r].steps[s].solve_time;
        out.steps[s].solve_time = median(cell);
    }
    for (std::size_t r = 0; r < runs.size(); ++r) cell[r] = runs[r].total_setup;
    out.total_setup = median(cell);
    for (std::size_t r = 0; r < runs.size(); ++r) cell[r] = runs[r].total_solve;
    out.total_solve = median(cell);
    return out;
}

std::string display_name(StrategyKind k) {
    switch (k) {
        case StrategyKind::none: return "No reuse";
        case StrategyKind::full: return "Full reuse";
        case StrategyKind::partial: return "Partial reuse";
    }
    return "?";
}

std::string fmt_seconds(double s) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3) << s;
    return os.str();
}

std::string fmt_speedup(double pct) {
    if (std::isinf(pct)) return pct > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << std::fixed << std::setprecision(0) << pct;
    return os.str();
}

std::string fmt1(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(1) << v;
    return os.str();
}

void validate(const BenchConfig& config) {
    if (!config.generated && !config.sequence_dir)
        throw std::invalid_argument("no problem source: pass --generate or --sequence");
    if (config.generated && config.sequence_dir)
        throw std::invalid_argument("--generate and --sequence are mutually exclusive");
    if (config.strategies.empty())
        throw std::invalid_argument("at least one strategy is required");
    if (config.repeat < 1) throw std::invalid_argument("--repeat must be >= 1");
}

/// `none` is the speedup baseline; add it implicitly when a reuse strategy
/// asks for speedup columns, and deduplicate while keeping user order.
std::vector<StrategyKind> effective_strategies(const BenchConfig& config) {
    std::vector<StrategyKind> out;
    const bool wants_speedups = std::any_of(
        config.strategies.begin(), config.strategies.end(),
        [](StrategyKind k) { return k != StrategyKind::none; });
    if (wants_speedups) out.push_back(StrategyKind::none);
    for (StrategyKind k : config.strategies)
        if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
    return out;
}

const RunReport* baseline(const std::vector<StrategyOutcome>& outcomes) {
    for (const StrategyOutcome& o : outcomes)
        if (o.kind == StrategyKind::none) return &o.median;
    return nullptr;
}

void render_header(std::ostream& out, const BenchConfig& config, const char* comment_prefix) {
    const std::string p = comment_prefix;
    if (config.generated) {
        const DiffusionSequenceSpec& s = *config.generated;
        out << p << "source: generated diffusion sequence, grid " << s.grid_n << "x" << s.grid_n
            << ", steps " << s.steps << ", contrast " << s.contrast << ", path_speed "
            << s.path_speed << ", blob_sigma "
            << (s.blob_sigma > 0 ? s.blob_sigma : 0.2 * static_cast<double>(s.grid_n))
            << ", seed " << s.seed << "\n";
    } else {
        out << p << "source: sequence directory " << config.sequence_dir->string() << "\n";
    }
    out << p << "amg: eps " << config.amg.eps << ", omega " << config.amg.omega << ", sweeps "
        << config.amg.pre_sweeps << "+" << config.amg.post_sweeps << ", coarse_enough "
        << config.amg.coarse_enough << "\n";
    out << p << "solver: bicgstab, tol " << config.solve.tol << ", max_iter "
        << config.solve.max_iter;
    if (config.reuse_iter_limit > 0) out << ", reuse_iter_limit " << config.reuse_iter_limit;
    if (config.rebuild_every) out << ", rebuild_every " << *config.rebuild_every;
    out << "\n";
    if (config.repeat > 1) out << p << "repeat: " << config.repeat << " (per-cell medians)\n";
    if (config.parallel_strategies)
        out << p << "timings: contended (strategies ran in parallel)\n";
    if (!config.config_echo.empty()) {
        out << p << "config file:\n";
        std::istringstream is(config.config_echo);
        std::string line;
        while (std::getline(is, line)) out << p << "  " << line << "\n";
    }
}

void render_comparison_markdown(std::ostream& out, const std::vector<StrategyOutcome>& outcomes) {
    const RunReport* base = baseline(outcomes);
    const bool speedups = base != nullptr && outcomes.size() > 1;

    out << "| Strategy | Setup (s) | Solve (s) | Rebuilds | Average iterations |";
    if (speedups) out << " Total speedup (%) | Setup speedup (%) |";
    out << "\n|---|---|---|---|---|";
    if (speedups) out << "---|---|";
    out << "\n";
    for (const StrategyOutcome& o : outcomes) {
        const RunReport& r = o.median;
        out << "| " << display_name(o.kind) << " | " << fmt_seconds(r.total_setup) << " | "
            << fmt_seconds(r.total_solve) << " | " << r.full_rebuilds << " | "
            << fmt1(r.avg_iterations) << " |";
        if (speedups) {
            if (o.kind == StrategyKind::none) {
                out << "  |  |";
            } else {
                out << " " << fmt_speedup(speedup_percent(*base, r, SpeedupBasis::total)) << " | "
                    << fmt_speedup(speedup_percent(*base, r, SpeedupBasis::setup)) << " |";
            }
        }
        out << "\n";
    }
}

void render_comparison_csv(std::ostream& out, const std::vector<StrategyOutcome>& outcomes) {
    const RunReport* base = baseline(outcomes);
    const bool speedups = base != nullptr && outcomes.size() > 1;

    out << "strategy,setup_s,solve_s,rebuilds,avg_iterations";
    if (speedups) out << ",total_speedup_pct,setup_speedup_pct";
    out << "\n";
    for (const StrategyOutcome& o : outcomes) {
        const RunReport& r = o.median;
        out << to_string(o.kind) << "," << fmt_seconds(r.total_setup) << ","
            << fmt_seconds(r.total_solve) << "," << r.full_rebuilds << ","
            << fmt1(r.avg_iterations);
        if (speedups) {
            if (o.kind == StrategyKind::none) {
                out << ",,";
            } else {
                out << "," << fmt_speedup(speedup_percent(*base, r, SpeedupBasis::total)) << ","
                    << fmt_speedup(speedup_percent(*base, r, SpeedupBasis::setup));
            }
        }
        out << "\n";
    }
}

struct BreakdownRow {
    const char* label;
    double seconds;
};

std::vector<BreakdownRow> breakdown_rows(const std::vector<StrategyOutcome>& outcomes) {
    // Phase shares come from full builds: the baseline run when present,
    // otherwise the first strategy that did any.
    const StrategyOutcome* pick = nullptr;
    for (const StrategyOutcome& o : outcomes)
        if (o.kind == StrategyKind::none) pick = &o;
    if (!pick) pick = &outcomes.front();
    const SetupPhaseTimings t = full_build_phase_totals(pick->median);
    return {{"Transfer operators", t.transfer_ops},
            {"Galerkin operator", t.galerkin},
            {"Smoother", t.smoother},
            {"Direct solver for the coarsest system", t.coarse_solver}};
}

void render_breakdown(std::ostream& out, const std::vector<StrategyOutcome>& outcomes,
                      OutputFormat format) {
    const auto rows = breakdown_rows(outcomes);
    double total = 0.0;
    for (const BreakdownRow& r : rows) total += r.seconds;
    if (total == 0.0) total = 1.0;

    if (format == OutputFormat::markdown) {
        out << "| Setup phase | Share (%) |\n|---|---|\n";
        for (const BreakdownRow& r : rows)
            out << "| " << r.label << " | " << fmt1(100.0 * r.seconds / total) << " |\n";
    } else {
        out << "setup_phase,share_pct\n";
        for (const BreakdownRow& r : rows)
            out << "\"" << r.label << "\"," << fmt1(100.0 * r.seconds / total) << "\n";
    }
}

} // namespace

std::vector<StrategyOutcome> run_benchmark(const BenchConfig& config) {
    validate(config);

    std::unique_ptr<ProblemSequence> source;
    if (config.generated)
        source = std::make_unique<DiffusionSequence>(*config.generated);
    else
        source = std::make_unique<FileSequence>(read_sequence(*config.sequence_dir));

    const std::vector<StrategyKind> kinds = effective_strategies(config);
    std::vector<StrategyOutcome> outcomes(kinds.size());

    auto run_one = [&](std::size_t idx) {
        StrategyConfig strat;
        strat.kind = kinds[idx];
        strat.reuse_iter_limit = config.reuse_iter_limit;
        if (strat.kind == StrategyKind::partial) strat.rebuild_every = config.rebuild_every;
        StrategyOutcome& o = outcomes[idx];
        o.kind = strat.kind;
        for (int r = 0; r < config.repeat; ++r)
            o.runs.push_back(run_sequence(*source, strat, config.amg, config.solve).report);
        o.median = median_report(o.runs);
    };

    if (config.parallel_strategies) {
        std::vector<std::thread> threads;
        threads.reserve(kinds.size());
        for (std::size_t i = 0; i < kinds.size(); ++i) threads.emplace_back(run_one, i);
        for (std::thread& t : threads) t.join();
    } else {
        for (std::size_t i = 0; i < kinds.size(); ++i) run_one(i);
    }
    return outcomes;
}

void render_report(std::ostream& out, const BenchConfig& config,
                   const std::vector<StrategyOutcome>& outcomes) {
    if (config.format == OutputFormat::markdown) {
        out << "# AMG setup reuse benchmark\n\n";
        render_header(out, config, "- ");
        out << "\n## Strategy comparison\n\n";
        render_comparison_markdown(out, outcomes);
        out << "\n## Setup phase breakdown (full builds)\n\n";
        render_breakdown(out, outcomes, config.format);
    } else {
        render_header(out, config, "# ");
        render_comparison_csv(out, outcomes);
        out << "\n";
        render_breakdown(out, outcomes, config.format);
    }
}

void write_per_step_csv(std::ostream& out, const std::vector<StrategyOutcome>& outcomes) {
    out << "strategy,step,action,setup_s,solve_s,iterations,converged,"
           "transfer_ops_s,galerkin_s,smoother_s,coarse_solver_s\n";
    for (const StrategyOutcome& o : outcomes) {
        for (const StepMetrics& m : o.median.steps) {
            out << to_string(o.kind) << "," << m.step << "," << to_string(m.action) << ","
                << std::setprecision(9) << m.setup_time << "," << m.solve_time << ","
                << m.iterations << "," << (m.converged ? 1 : 0) << ","
                << m.phase_timings.transfer_ops << "," << m.phase_timings.galerkin << ","
                << m.phase_timings.smoother << "," << m.phase_timings.coarse_solver << "\n";
        }
    }
}

void apply_config_entry(BenchConfig& config, const std::string& key, const std::string& value) {
    auto as_index = [&](const std::string& v) -> index_t {
        std::size_t pos = 0;
        const long long out = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("bad integer '" + v + "' for " + key);
        return static_cast<index_t>(out);
    };
    auto as_double = [&](const std::string& v) -> double {
        std::size_t pos = 0;
        const double out = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("bad number '" + v + "' for " + key);
        return out;
    };
    auto ensure_generated = [&]() -> DiffusionSequenceSpec& {
        if (!config.generated) config.generated = DiffusionSequenceSpec{};
        return *config.generated;
    };

    if (key == "generate") {
        DiffusionSequenceSpec cur = config.generated.value_or(DiffusionSequenceSpec{});
        DiffusionSequenceSpec preset = preset_spec(value, cur.grid_n, cur.steps, cur.seed);
        preset.blob_sigma = cur.blob_sigma;
        config.generated = preset;
    } else if (key == "sequence") {
        config.sequence_dir = value;
    } else if (key == "grid") {
        ensure_generated().grid_n = as_index(value);
    } else if (key == "steps") {
        ensure_generated().steps = as_index(value);
    } else if (key == "contrast") {
        ensure_generated().contrast = as_double(value);
    } else if (key == "path-speed") {
        ensure_generated().path_speed = as_double(value);
    } else if (key == "blob-sigma") {
        ensure_generated().blob_sigma = as_double(value);
    } else if (key == "seed") {
        ensure_generated().seed = static_cast<std::uint64_t>(as_index(value));
    } else if (key == "strategies") {
        config.strategies.clear();
        std::istringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ','))
            config.strategies.push_back(strategy_kind_from_string(item));
    } else if (key == "eps") {
        config.amg.eps = as_double(value);
    } else if (key == "omega") {
        config.amg.omega = as_double(value);
    } else if (key == "pre-sweeps") {
        config.amg.pre_sweeps = static_cast<int>(as_index(value));
    } else if (key == "post-sweeps") {
        config.amg.post_sweeps = static_cast<int>(as_index(value));
    } else if (key == "coarse-enough") {
        config.amg.coarse_enough = as_index(value);
    } else if (key == "max-direct-size") {
        config.amg.max_direct_size = as_index(value);
    } else if (key == "tol") {
        config.solve.tol = as_double(value);
    } else if (key == "max-iter") {
        config.solve.max_iter = as_index(value);
    } else if (key == "reuse-iter-limit") {
        config.reuse_iter_limit = as_index(value);
    } else if (key == "rebuild-every") {
        config.rebuild_every = as_index(value);
    } else if (key == "format") {
        if (value == "markdown")
            config.format = OutputFormat::markdown;
        else if (value == "csv")
            config.format = OutputFormat::csv;
        else
            throw std::invalid_argument("bad format '" + value + "' (markdown or csv)");
    } else if (key == "output") {
        config.output_path = value;
    } else if (key == "per-step") {
        config.per_step_path = value;
    } else if (key == "repeat") {
        config.repeat = static_cast<int>(as_index(value));
    } else if (key == "parallel-strategies") {
        config.parallel_strategies = (value == "true" || value == "1" || value == "yes");
    } else {
        throw std::invalid_argument("unknown config key '" + key + "'");
    }
}

void apply_config_file(BenchConfig& config, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path.string());
    std::ostringstream echo;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        echo << line << "\n";
        std::string body = line.substr(0, line.find('#'));
        const auto first = body.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            std::ostringstream os;
            os << path.string() << ":" << line_no << ": expected key = value";
            throw std::runtime_error(os.str());
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        apply_config_entry(config, trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
    }
    config.config_echo = echo.str();
}

} // namespace amgreuse::bench
