#include "ordest/cli.hpp"

#include "ordest/constants.hpp"
#include "ordest/error.hpp"
#include "ordest/estimators.hpp"
#include "ordest/pitman.hpp"
#include "ordest/report.hpp"
#include "ordest/schemes.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace ordest {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::string short_num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

[[noreturn]] void data_error(int line, const std::string& what) {
    throw Error(ErrorCode::ConfigError, "data line " + std::to_string(line) + ": " + what);
}

struct PopulationRows {
    std::string scheme;
    std::vector<double> values;
    std::vector<int> removals;
};

ReducedPopulation reduce_rows(const PopulationRows& rows, int n_total) {
    if (rows.values.empty()) throw Error(ErrorCode::SampleTooSmall, "population has no rows");
    SchemeSample sample;
    sample.observations = rows.values;
    const SchemeKind kind = parse_scheme_kind(rows.scheme);
    switch (kind) {
        case SchemeKind::Complete: sample.scheme = CompleteScheme{0}; break;
        case SchemeKind::TypeII:
            sample.scheme = TypeIIScheme{n_total, static_cast<int>(rows.values.size())};
            break;
        case SchemeKind::Progressive: sample.scheme = ProgressiveScheme{rows.removals, 0}; break;
        case SchemeKind::Records: sample.scheme = RecordsScheme{0}; break;
    }
    return reduce(sample);
}

void write_constants(const CliConfig& config, std::ostream& os) {
    const Design design = config.sim.design();
    const EquivariantConstants k = solve_constants(config.sim.loss, design);
    const std::vector<std::pair<std::string, double>> items{
        {"c01", k.c01},
        {"b01", k.b01},
        {"b01*", k.b01_star},
        {"c02", k.c02},
        {"b02", k.b02},
        {"b02*", k.b02_star},
        {"umvue1", k.umvue1},
        {"umvue2", k.umvue2},
        {"pnaee1", pnaee_constant(design.pop1)},
        {"pnaee2", pnaee_constant(design.pop2)},
    };
    if (config.format == OutputFormat::Csv) {
        os << "name,value\n";
        for (const auto& [name, v] : items) os << name << ',' << format_full(v) << '\n';
    } else {
        for (const auto& [name, v] : items) os << name << '=' << short_num(v) << '\n';
    }
}

SufficientStats stats_for(const CliConfig& config) {
    if (!config.data_path.empty()) {
        std::ifstream in(config.data_path);
        if (!in) throw Error(ErrorCode::IoError, "cannot read data file " + config.data_path);
        std::stringstream buf;
        buf << in.rdbuf();
        return parse_data_csv(buf.str(), config.sim);
    }
    if (!config.stats) {
        throw Error(ErrorCode::ConfigError,
                    "estimate needs a data file (data = ...) or x1_min, x2_min, t1, t2");
    }
    SufficientStats s;
    s.x1_min = config.stats->x1_min;
    s.x2_min = config.stats->x2_min;
    s.t1 = config.stats->t1;
    s.t2 = config.stats->t2;
    const Design d = config.sim.design();
    s.n1 = d.pop1.n;
    s.n2 = d.pop2.n;
    s.rate1 = d.pop1.rate;
    s.rate2 = d.pop2.rate;
    return s;
}

void write_estimate(const CliConfig& config, std::ostream& os) {
    const SufficientStats s = stats_for(config);
    const Estimate e = estimate(config.sim.target, config.kind, s, config.sim.loss);
    if (config.format == OutputFormat::Csv) {
        os << "target,kind,value,phi_used\n"
           << to_string(e.target) << ',' << to_string(e.kind) << ',' << format_full(e.value) << ','
           << format_full(e.phi_used) << '\n';
    } else {
        os << "target=" << to_string(e.target) << '\n'
           << "kind=" << to_string(e.kind) << '\n'
           << "value=" << short_num(e.value) << '\n'
           << "phi_used=" << short_num(e.phi_used) << '\n';
    }
}

void write_simulation(const CliConfig& config, std::ostream& os) {
    const CellResult cell = simulate(config.sim);
    os << "estimator,risk,risk_std_error,pri,pri_std_error\n";
    os << to_string(config.sim.baseline) << ',' << format_full(cell.baseline.mean) << ','
       << format_full(cell.baseline.std_error) << ",0,0\n";
    for (const auto& c : cell.candidates) {
        os << to_string(c.kind) << ',' << format_full(c.risk.mean) << ','
           << format_full(c.risk.std_error) << ',' << format_full(c.pri.pri) << ','
           << format_full(c.pri.std_error) << '\n';
    }
}

void write_gpn(const CliConfig& config, std::ostream& os) {
    const Design design = config.sim.design();
    const Target t = config.sim.target;
    const GpnResult g =
        gpn_mc(make_estimator(config.estimator_a, t, config.sim.loss, design),
               make_estimator(config.estimator_b, t, config.sim.loss, design), config.sim);
    os << "estimator_a=" << to_string(config.estimator_a) << '\n'
       << "estimator_b=" << to_string(config.estimator_b) << '\n'
       << "gpn=" << format_full(g.gpn) << '\n'
       << "std_error=" << format_full(g.std_error) << '\n'
       << "reps=" << g.reps << '\n';
}

void write_table(const CliConfig& config, std::ostream& os, std::ostream& err) {
    const PriTable table = run_table(config.grid());
    for (const PriRow& r : table.rows) {
        if (!r.error.empty()) {
            err << "cell (" << r.sigma1 << ", " << r.sigma2 << ") " << to_string(r.estimator)
                << " failed: " << r.error << '\n';
        }
    }
    os << (config.format == OutputFormat::Markdown ? table_to_markdown(table)
                                                   : table_to_csv(table));
}

int exit_code(ErrorCode code) {
    switch (code) {
        case ErrorCode::ConfigError:
        case ErrorCode::InvalidArgument: return 2;
        case ErrorCode::IoError: return 3;
        default: return 1;
    }
}

}  // namespace

CliConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot read config file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void apply_environment(CliConfig& config) {
    if (const char* seed = std::getenv("ORDEST_SEED"); seed && *seed) {
        apply_setting(config, "seed", seed);
    }
}

SufficientStats parse_data_csv(std::string_view text, const SimConfig& config) {
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    bool has_removals = false;
    std::map<int, PopulationRows> pops;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty() || trim(line).front() == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(trim(cell));
        if (!header_seen) {
            if (cells.size() < 3 || cells[0] != "population" || cells[1] != "scheme" ||
                cells[2] != "value" || (cells.size() == 4 && cells[3] != "removals") ||
                cells.size() > 4) {
                data_error(line_no, "expected header population,scheme,value[,removals]");
            }
            has_removals = cells.size() == 4;
            header_seen = true;
            continue;
        }
        if (cells.size() < 3 || cells.size() > (has_removals ? 4u : 3u)) {
            data_error(line_no, "wrong number of fields");
        }
        int pop = 0;
        if (cells[0] == "1") pop = 1;
        else if (cells[0] == "2") pop = 2;
        else data_error(line_no, "population must be 1 or 2");
        PopulationRows& rows = pops[pop];
        if (rows.scheme.empty()) {
            try {
                parse_scheme_kind(cells[1]);
            } catch (const Error& e) {
                data_error(line_no, e.what());
            }
            rows.scheme = cells[1];
        } else if (rows.scheme != cells[1]) {
            data_error(line_no, "population " + cells[0] + " mixes schemes");
        }
        char* end = nullptr;
        const double v = std::strtod(cells[2].c_str(), &end);
        if (cells[2].empty() || *end != '\0') data_error(line_no, "value is not a number");
        rows.values.push_back(v);
        if (rows.scheme == "progressive") {
            if (cells.size() < 4 || cells[3].empty()) {
                data_error(line_no, "progressive rows need a removals count");
            }
            const long r = std::strtol(cells[3].c_str(), &end, 10);
            if (*end != '\0') data_error(line_no, "removals is not an integer");
            rows.removals.push_back(static_cast<int>(r));
        }
    }
    if (!header_seen) throw Error(ErrorCode::ConfigError, "data file is empty");
    if (!pops.count(1) || !pops.count(2)) {
        throw Error(ErrorCode::ConfigError, "data file needs rows for populations 1 and 2");
    }
    return make_stats(reduce_rows(pops[1], config.n1), reduce_rows(pops[2], config.n2));
}

std::string error_record(const std::exception& e) {
    nlohmann::json j;
    if (const auto* oe = dynamic_cast<const Error*>(&e)) {
        j["error"] = std::string(to_string(oe->code()));
    } else {
        j["error"] = "InternalError";
    }
    j["message"] = e.what();
    return j.dump();
}

int execute(const CliConfig& config, std::ostream& out, std::ostream& err) {
    try {
        std::ostringstream buffer;
        switch (config.command) {
            case Command::Constants: write_constants(config, buffer); break;
            case Command::Estimate: write_estimate(config, buffer); break;
            case Command::Simulate: write_simulation(config, buffer); break;
            case Command::Gpn: write_gpn(config, buffer); break;
            case Command::Table: write_table(config, buffer, err); break;
        }
        if (config.output_path.empty()) {
            out << buffer.str();
        } else {
            std::ofstream file(config.output_path, std::ios::binary);
            if (!file) throw Error(ErrorCode::IoError, "cannot write " + config.output_path);
            file << buffer.str();
            if (!file) throw Error(ErrorCode::IoError, "write failed: " + config.output_path);
        }
        return 0;
    } catch (const Error& e) {
        err << error_record(e) << '\n';
        return exit_code(e.code());
    } catch (const std::exception& e) {
        err << error_record(e) << '\n';
        return 1;
    }
}

}  // namespace ordest
