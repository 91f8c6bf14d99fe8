#pragma once

#include "ordest/config.hpp"
#include "ordest/model.hpp"

#include <exception>
#include <iosfwd>
#include <string>
#include <string_view>

namespace ordest {

/// Reads and parses a config file; IoError if it cannot be read.
CliConfig load_config_file(const std::string& path);

/// Applies ORDEST_SEED when set.
void apply_environment(CliConfig& config);

/// Parses a data file with header `population,scheme,value[,removals]`.
/// Rows for population 1 and 2 may be interleaved; each population uses a
/// single scheme. Type-II totals come from config n1 / n2.
SufficientStats parse_data_csv(std::string_view text, const SimConfig& config);

/// Runs the configured command. Results go to config.output_path when set,
/// otherwise to `out`. Returns 0 on success; on failure writes a one-line
/// JSON error record to `err` and returns a non-zero code.
int execute(const CliConfig& config, std::ostream& out, std::ostream& err);

/// {"error": "<code>", "message": "..."}
std::string error_record(const std::exception& e);

}  // namespace ordest
