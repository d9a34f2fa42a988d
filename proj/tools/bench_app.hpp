#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "amgreuse/diffusion.hpp"
#include "amgreuse/reuse.hpp"

namespace amgreuse::bench {

enum class OutputFormat { markdown, csv };

struct BenchConfig {
    std::optional<DiffusionSequenceSpec> generated;
    std::optional<std::filesystem::path> sequence_dir;

    std::vector<StrategyKind> strategies{StrategyKind::none, StrategyKind::full,
                                         StrategyKind::partial};
    AmgParams amg;
    SolveParams solve;
    index_t reuse_iter_limit = 0;
    std::optional<index_t> rebuild_every;

    OutputFormat format = OutputFormat::markdown;
    std::optional<std::filesystem::path> output_path;   // default: stdout
    std::optional<std::filesystem::path> per_step_path; // optional CSV dump
    int repeat = 1;
    bool parallel_strategies = false;

    std::string config_echo; // config-file text echoed in the report header
};

/// All runs of one strategy plus the per-cell median view used for the
/// report tables (identical to runs[0] when repeat == 1).
struct StrategyOutcome {
    StrategyKind kind;
    std::vector<RunReport> runs;
    RunReport median;
};

/// Validates, builds the problem source, and executes every strategy
/// `repeat` times over the same sequence. Throws std::invalid_argument /
/// std::runtime_error on configuration or IO problems.
std::vector<StrategyOutcome> run_benchmark(const BenchConfig& config);

void render_report(std::ostream& out, const BenchConfig& config,
                   const std::vector<StrategyOutcome>& outcomes);

void write_per_step_csv(std::ostream& out, const std::vector<StrategyOutcome>& outcomes);

/// Applies one `key = value` config-file assignment. Throws on unknown
/// keys or bad values.
void apply_config_entry(BenchConfig& config, const std::string& key, const std::string& value);

/// Parses a whole config file (key = value lines, # comments) over the
/// current config; file values win.
void apply_config_file(BenchConfig& config, const std::filesystem::path& path);

} // namespace amgreuse::bench
