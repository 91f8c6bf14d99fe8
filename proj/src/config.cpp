#include "ordest/config.hpp"

#include "ordest/error.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <regex>
#include <sstream>

namespace ordest {

namespace {

[[noreturn]] void config_error(int line, std::string_view key, const std::string& what) {
    std::ostringstream os;
    if (line > 0) os << "line " << line << ": ";
    if (!key.empty()) os << "key '" << key << "': ";
    os << what;
    throw Error(ErrorCode::ConfigError, os.str());
}

struct Ctx {
    int line = 0;
    std::string_view key;
};

double to_double(const Ctx& c, std::string_view v) {
    const std::string s(v);
    char* end = nullptr;
    errno = 0;
    const double x = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
        config_error(c.line, c.key, "expected a number, got '" + s + "'");
    }
    return x;
}

long long to_integer(const Ctx& c, std::string_view v) {
    const std::string s(v);
    char* end = nullptr;
    errno = 0;
    const long long x = std::strtoll(s.c_str(), &end, 10);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
        config_error(c.line, c.key, "expected an integer, got '" + s + "'");
    }
    return x;
}

int to_int(const Ctx& c, std::string_view v) {
    const long long x = to_integer(c, v);
    if (x < -2147483647LL || x > 2147483647LL) config_error(c.line, c.key, "integer out of range");
    return static_cast<int>(x);
}

std::uint64_t to_u64(const Ctx& c, std::string_view v) {
    const std::string s(v);
    char* end = nullptr;
    errno = 0;
    if (s.empty() || s.front() == '-') config_error(c.line, c.key, "expected a seed, got '" + s + "'");
    const unsigned long long x = std::strtoull(s.c_str(), &end, 0);
    if (end != s.c_str() + s.size() || errno == ERANGE) {
        config_error(c.line, c.key, "expected a seed, got '" + s + "'");
    }
    return x;
}

bool to_bool(const Ctx& c, std::string_view v) {
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    config_error(c.line, c.key, "expected true or false, got '" + std::string(v) + "'");
}

std::vector<std::string_view> split(std::string_view v, char sep) {
    std::vector<std::string_view> out;
    if (v.empty()) return out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = v.find(sep, start);
        out.push_back(v.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

// Wraps library parse errors as config errors with position information.
template <class F>
auto wrap(const Ctx& c, F f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ConfigError && c.line == 0) throw;
        config_error(c.line, c.key, e.what());
    }
}

std::vector<EstimatorKind> to_kinds(const Ctx& c, std::string_view v) {
    std::vector<EstimatorKind> out;
    for (auto part : split(v, ',')) {
        if (part.empty()) config_error(c.line, c.key, "empty estimator name");
        out.push_back(wrap(c, [&] { return parse_estimator_kind(part); }));
    }
    return out;
}

std::vector<int> to_ints(const Ctx& c, std::string_view v) {
    std::vector<int> out;
    for (auto part : split(v, ',')) out.push_back(to_int(c, part));
    return out;
}

OutputFormat to_format(const Ctx& c, std::string_view v) {
    if (v == "csv") return OutputFormat::Csv;
    if (v == "markdown" || v == "md") return OutputFormat::Markdown;
    if (v == "text") return OutputFormat::Text;
    config_error(c.line, c.key, "format must be csv, markdown or text");
}

std::string_view format_name(OutputFormat f) {
    switch (f) {
        case OutputFormat::Csv: return "csv";
        case OutputFormat::Markdown: return "markdown";
        case OutputFormat::Text: return "text";
    }
    return "text";
}

InlineStats& stats_of(CliConfig& config) {
    if (!config.stats) config.stats = InlineStats{};
    return *config.stats;
}

void apply_global(CliConfig& config, const Ctx& c, std::string_view value) {
    SimConfig& s = config.sim;
    const std::string_view key = c.key;
    if (key == "command") config.command = wrap(c, [&] { return parse_command(value); });
    else if (key == "n1") s.n1 = to_int(c, value);
    else if (key == "n2") s.n2 = to_int(c, value);
    else if (key == "mu1") s.mu1 = to_double(c, value);
    else if (key == "mu2") s.mu2 = to_double(c, value);
    else if (key == "sigma1") s.sigma1 = to_double(c, value);
    else if (key == "sigma2") s.sigma2 = to_double(c, value);
    else if (key == "reps") s.reps = to_int(c, value);
    else if (key == "seed") s.seed = to_u64(c, value);
    else if (key == "loss") s.loss = wrap(c, [&] { return LossSpec::parse(value); });
    else if (key == "target") s.target = wrap(c, [&] { return parse_target(value); });
    else if (key == "baseline") s.baseline = wrap(c, [&] { return parse_estimator_kind(value); });
    else if (key == "estimators" || key == "candidates") s.candidates = to_kinds(c, value);
    else if (key == "order_restricted") s.order_restricted = to_bool(c, value);
    else if (key == "scheme") s.scheme = wrap(c, [&] { return parse_scheme_kind(value); });
    else if (key == "r1") s.r1 = to_int(c, value);
    else if (key == "r2") s.r2 = to_int(c, value);
    else if (key == "removals1") s.removals1 = to_ints(c, value);
    else if (key == "removals2") s.removals2 = to_ints(c, value);
    else if (key == "workers") s.workers = to_int(c, value);
    else if (key == "kind") config.kind = wrap(c, [&] { return parse_estimator_kind(value); });
    else if (key == "estimator_a") config.estimator_a = wrap(c, [&] { return parse_estimator_kind(value); });
    else if (key == "estimator_b") config.estimator_b = wrap(c, [&] { return parse_estimator_kind(value); });
    else if (key == "x1_min") stats_of(config).x1_min = to_double(c, value);
    else if (key == "x2_min") stats_of(config).x2_min = to_double(c, value);
    else if (key == "t1") stats_of(config).t1 = to_double(c, value);
    else if (key == "t2") stats_of(config).t2 = to_double(c, value);
    else if (key == "data") config.data_path = std::string(value);
    else if (key == "output") config.output_path = std::string(value);
    else if (key == "format") config.format = to_format(c, value);
    else config_error(c.line, key, "unknown setting");
}

void apply_block(GridBlock& b, const Ctx& c, std::string_view value) {
    const std::string_view key = c.key;
    if (key == "n1") b.n1 = to_int(c, value);
    else if (key == "n2") b.n2 = to_int(c, value);
    else if (key == "mu1") b.mu1 = to_double(c, value);
    else if (key == "mu2") b.mu2 = to_double(c, value);
    else if (key == "sigmas") {
        b.sigmas.clear();
        for (auto pair : split(value, ',')) {
            const auto parts = split(pair, ':');
            if (parts.size() != 2) config_error(c.line, key, "expected sigma1:sigma2 pairs");
            b.sigmas.emplace_back(to_double(c, parts[0]), to_double(c, parts[1]));
        }
    } else {
        config_error(c.line, key, "unknown block setting (expected n1, n2, mu1, mu2, sigmas)");
    }
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

template <class T, class F>
std::string join(const std::vector<T>& v, F f) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += f(v[i]);
    }
    return out;
}

}  // namespace

std::string_view to_string(Command command) noexcept {
    switch (command) {
        case Command::Constants: return "constants";
        case Command::Estimate: return "estimate";
        case Command::Simulate: return "simulate";
        case Command::Gpn: return "gpn";
        case Command::Table: return "table";
    }
    return "constants";
}

Command parse_command(std::string_view text) {
    for (Command c : {Command::Constants, Command::Estimate, Command::Simulate, Command::Gpn,
                      Command::Table}) {
        if (to_string(c) == text) return c;
    }
    throw Error(ErrorCode::ConfigError, "unknown command '" + std::string(text) + "'");
}

std::vector<SimConfig> CliConfig::grid() const {
    if (blocks.empty()) return {sim};
    std::vector<SimConfig> out;
    for (const GridBlock& b : blocks) {
        for (const auto& [s1, s2] : b.sigmas) {
            SimConfig c = sim;
            c.n1 = b.n1;
            c.n2 = b.n2;
            c.mu1 = b.mu1;
            c.mu2 = b.mu2;
            c.sigma1 = s1;
            c.sigma2 = s2;
            out.push_back(std::move(c));
        }
    }
    return out;
}

void apply_setting(CliConfig& config, std::string_view key, std::string_view value) {
    apply_global(config, Ctx{0, key}, value);
}

CliConfig parse_config(std::string_view text) {
    static const std::regex around_eq(R"(\s*=\s*)");
    static const std::regex around_comma(R"(\s*,\s*)");
    static const std::regex around_colon(R"(\s*:\s*)");

    CliConfig config;
    GridBlock* block = nullptr;
    int line_no = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = std::regex_replace(line, around_eq, "=");
        line = std::regex_replace(line, around_comma, ",");
        line = std::regex_replace(line, around_colon, ":");
        std::istringstream tokens(line);
        std::string token;
        while (tokens >> token) {
            if (token.front() == '[') {
                if (token != "[block]") config_error(line_no, "", "unknown section " + token);
                config.blocks.emplace_back();
                block = &config.blocks.back();
                continue;
            }
            const auto eq = token.find('=');
            if (eq == std::string::npos || eq == 0) {
                config_error(line_no, "", "expected key = value, got '" + token + "'");
            }
            const std::string key = token.substr(0, eq);
            const std::string value = token.substr(eq + 1);
            const Ctx ctx{line_no, key};
            if (block) {
                apply_block(*block, ctx, value);
            } else {
                apply_global(config, ctx, value);
            }
        }
    }
    for (std::size_t i = 0; i < config.blocks.size(); ++i) {
        if (config.blocks[i].sigmas.empty()) {
            config_error(0, "sigmas", "block " + std::to_string(i + 1) + " lists no cells");
        }
    }
    return config;
}

std::string emit_sim_config(const SimConfig& s) {
    std::ostringstream os;
    os << "n1 = " << s.n1 << "\n"
       << "n2 = " << s.n2 << "\n"
       << "mu1 = " << num(s.mu1) << "\n"
       << "mu2 = " << num(s.mu2) << "\n"
       << "sigma1 = " << num(s.sigma1) << "\n"
       << "sigma2 = " << num(s.sigma2) << "\n"
       << "reps = " << s.reps << "\n"
       << "seed = " << s.seed << "\n"
       << "loss = " << s.loss.to_string() << "\n"
       << "target = " << to_string(s.target) << "\n"
       << "baseline = " << to_string(s.baseline) << "\n"
       << "estimators = "
       << join(s.candidates, [](EstimatorKind k) { return std::string(to_string(k)); }) << "\n"
       << "order_restricted = " << (s.order_restricted ? "true" : "false") << "\n"
       << "scheme = " << to_string(s.scheme) << "\n"
       << "r1 = " << s.r1 << "\n"
       << "r2 = " << s.r2 << "\n"
       << "removals1 = " << join(s.removals1, [](int r) { return std::to_string(r); }) << "\n"
       << "removals2 = " << join(s.removals2, [](int r) { return std::to_string(r); }) << "\n"
       << "workers = " << s.workers << "\n";
    return os.str();
}

SimConfig parse_sim_config(std::string_view text) { return parse_config(text).sim; }

std::string emit_config(const CliConfig& config) {
    std::ostringstream os;
    os << "command = " << to_string(config.command) << "\n" << emit_sim_config(config.sim);
    os << "kind = " << to_string(config.kind) << "\n"
       << "estimator_a = " << to_string(config.estimator_a) << "\n"
       << "estimator_b = " << to_string(config.estimator_b) << "\n";
    if (config.stats) {
        os << "x1_min = " << num(config.stats->x1_min) << "\n"
           << "x2_min = " << num(config.stats->x2_min) << "\n"
           << "t1 = " << num(config.stats->t1) << "\n"
           << "t2 = " << num(config.stats->t2) << "\n";
    }
    if (!config.data_path.empty()) os << "data = " << config.data_path << "\n";
    if (!config.output_path.empty()) os << "output = " << config.output_path << "\n";
    os << "format = " << format_name(config.format) << "\n";
    for (const GridBlock& b : config.blocks) {
        os << "\n[block]\n"
           << "n1 = " << b.n1 << "\n"
           << "n2 = " << b.n2 << "\n"
           << "mu1 = " << num(b.mu1) << "\n"
           << "mu2 = " << num(b.mu2) << "\n"
           << "sigmas = "
           << join(b.sigmas, [](const std::pair<double, double>& p) {
                  return num(p.first) + ":" + num(p.second);
              })
           << "\n";
    }
    return os.str();
}

}  // namespace ordest
