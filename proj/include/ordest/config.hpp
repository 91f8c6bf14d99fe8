#pragma once

#include "ordest/estimators.hpp"
#include "ordest/montecarlo.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ordest {

enum class Command { Constants, Estimate, Simulate, Gpn, Table };

std::string_view to_string(Command command) noexcept;
Command parse_command(std::string_view text);

/// One `[block]` of a table grid: a design and location pair crossed with a
/// list of (sigma1, sigma2) cells.
struct GridBlock {
    int n1 = 4;
    int n2 = 5;
    double mu1 = 0.0;
    double mu2 = 0.0;
    std::vector<std::pair<double, double>> sigmas;
};

/// Summary statistics given directly instead of a data file.
struct InlineStats {
    double x1_min = 0.0;
    double x2_min = 0.0;
    double t1 = 0.0;
    double t2 = 0.0;
};

enum class OutputFormat { Csv, Markdown, Text };

struct CliConfig {
    Command command = Command::Constants;
    /// Global settings and the single cell used by constants/estimate/simulate/gpn.
    SimConfig sim;
    std::vector<GridBlock> blocks;

    EstimatorKind kind = EstimatorKind::BAEE;  // estimate
    EstimatorKind estimator_a = EstimatorKind::PitmanImproved;  // gpn
    EstimatorKind estimator_b = EstimatorKind::PitmanPNAEE;
    std::optional<InlineStats> stats;

    std::string data_path;
    std::string output_path;
    OutputFormat format = OutputFormat::Text;

    /// The table grid: one SimConfig per block cell, or the single cell when
    /// there are no blocks.
    std::vector<SimConfig> grid() const;
};

/// Parses `key = value` settings. Whitespace around `=` and `,` is ignored;
/// several settings may share a line. `#` starts a comment. A `[block]` line
/// opens a grid block taking n1, n2, mu1, mu2 and `sigmas = s1:s2, ...`.
/// Missing keys take defaults (reps 20000, squared loss, complete scheme).
/// Throws ConfigError naming the line and key.
CliConfig parse_config(std::string_view text);

/// Applies one global setting, as if it appeared before any block.
void apply_setting(CliConfig& config, std::string_view key, std::string_view value);

/// Text that parse_config maps back to an identical config.
std::string emit_config(const CliConfig& config);
std::string emit_sim_config(const SimConfig& config);
SimConfig parse_sim_config(std::string_view text);

}  // namespace ordest
