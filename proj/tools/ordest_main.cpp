#include "ordest/cli.hpp"
#include "ordest/error.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    CLI::App app{"Estimation of ordered exponential location parameters"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> settings;
    std::string seed, reps, loss, workers, output, format, data, kind, target;
    std::string estimator_a, estimator_b, estimators, baseline;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("-c,--config", config_path, "config file (key = value)");
        cmd->add_option("-s,--set", settings, "extra key=value settings, applied last");
        cmd->add_option("--loss", loss, "squared | linex:<a>");
        cmd->add_option("-o,--output", output, "write results here instead of stdout");
        cmd->add_option("--format", format, "csv | markdown | text");
        cmd->add_option("--target", target, "mu1 | mu2");
    };
    auto add_sim = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "random seed (overrides ORDEST_SEED)");
        cmd->add_option("--reps", reps, "replications per cell");
        cmd->add_option("--workers", workers, "worker threads");
    };

    auto* constants = app.add_subcommand("constants", "print the equivariant constants");
    add_common(constants);
    auto* estimate = app.add_subcommand("estimate", "estimate mu1 or mu2 from one dataset");
    add_common(estimate);
    estimate->add_option("--data", data, "CSV with population,scheme,value[,removals]");
    estimate->add_option("--kind", kind, "estimator, e.g. Stein");
    auto* simulate = app.add_subcommand("simulate", "risks and PRI for one parameter cell");
    add_common(simulate);
    add_sim(simulate);
    simulate->add_option("--baseline", baseline, "baseline estimator");
    simulate->add_option("--estimators", estimators, "comma-separated candidates");
    auto* gpn = app.add_subcommand("gpn", "generalized Pitman nearness of two estimators");
    add_common(gpn);
    add_sim(gpn);
    gpn->add_option("--a", estimator_a, "first estimator");
    gpn->add_option("--b", estimator_b, "second estimator");
    auto* table = app.add_subcommand("table", "PRI table over a grid");
    add_common(table);
    add_sim(table);
    table->add_option("--baseline", baseline, "baseline estimator");
    table->add_option("--estimators", estimators, "comma-separated candidates");

    CLI11_PARSE(app, argc, argv);

    ordest::CliConfig config;
    try {
        if (!config_path.empty()) config = ordest::load_config_file(config_path);
        config.command = ordest::parse_command(app.get_subcommands().front()->get_name());
        if (config.command == ordest::Command::Table && config.format == ordest::OutputFormat::Text) {
            config.format = ordest::OutputFormat::Csv;
        }
        ordest::apply_environment(config);
        const std::vector<std::pair<const char*, const std::string*>> flags{
            {"seed", &seed},         {"reps", &reps},         {"loss", &loss},
            {"workers", &workers},   {"output", &output},     {"format", &format},
            {"data", &data},         {"kind", &kind},         {"target", &target},
            {"estimator_a", &estimator_a}, {"estimator_b", &estimator_b},
            {"estimators", &estimators},   {"baseline", &baseline},
        };
        for (const auto& [key, value] : flags) {
            if (!value->empty()) ordest::apply_setting(config, key, *value);
        }
        for (const std::string& s : settings) {
            const auto eq = s.find('=');
            if (eq == std::string::npos) {
                throw ordest::Error(ordest::ErrorCode::ConfigError,
                                    "--set expects key=value, got '" + s + "'");
            }
            ordest::apply_setting(config, s.substr(0, eq), s.substr(eq + 1));
        }
    } catch (const ordest::Error& e) {
        std::cerr << ordest::error_record(e) << '\n';
        return e.code() == ordest::ErrorCode::IoError ? 3 : 2;
    }
    return ordest::execute(config, std::cout, std::cerr);
}
