#include "ordest/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <tuple>
#include <vector>

namespace ordest {

std::string format_full(double x) {
    if (std::isnan(x)) return "NaN";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string table_to_csv(const PriTable& table) {
    std::ostringstream os;
    os << "sigma1,sigma2,n1,n2,mu1,mu2,estimator,pri,std_error\n";
    for (const PriRow& r : table.rows) {
        os << format_full(r.sigma1) << ',' << format_full(r.sigma2) << ',' << r.n1 << ',' << r.n2
           << ',' << format_full(r.mu1) << ',' << format_full(r.mu2) << ',' << to_string(r.estimator)
           << ',' << format_full(r.pri) << ',' << format_full(r.std_error) << '\n';
    }
    return os.str();
}

namespace {

std::string two_decimals(double x) {
    if (std::isnan(x)) return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    // Avoid printing "-0.00".
    if (std::string(buf) == "-0.00") return "0.00";
    return buf;
}

std::string short_num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

}  // namespace

std::string table_to_markdown(const PriTable& table) {
    using BlockKey = std::tuple<int, int, double, double, int, int>;
    struct Block {
        BlockKey key;
        std::vector<EstimatorKind> columns;
        std::vector<std::pair<double, double>> cells;
        std::map<std::tuple<double, double, int>, double> values;
    };
    std::vector<Block> blocks;
    for (const PriRow& r : table.rows) {
        const BlockKey key{r.n1, r.n2, r.mu1, r.mu2, static_cast<int>(r.target),
                           static_cast<int>(r.baseline)};
        if (blocks.empty() || blocks.back().key != key) blocks.push_back({key, {}, {}, {}});
        Block& b = blocks.back();
        if (std::find(b.columns.begin(), b.columns.end(), r.estimator) == b.columns.end()) {
            b.columns.push_back(r.estimator);
        }
        const std::pair<double, double> cell{r.sigma1, r.sigma2};
        if (b.cells.empty() || b.cells.back() != cell) b.cells.push_back(cell);
        b.values[{r.sigma1, r.sigma2, static_cast<int>(r.estimator)}] = r.pri;
    }

    std::ostringstream os;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const Block& b = blocks[i];
        const auto& [n1, n2, mu1, mu2, target, baseline] = b.key;
        if (i) os << '\n';
        os << "### (n1, n2) = (" << n1 << ", " << n2 << "), (mu1, mu2) = (" << short_num(mu1)
           << ", " << short_num(mu2) << "), target " << to_string(static_cast<Target>(target))
           << ", PRI over " << to_string(static_cast<EstimatorKind>(baseline)) << "\n\n";
        os << "| sigma1 | sigma2 |";
        for (EstimatorKind k : b.columns) os << ' ' << to_string(k) << " |";
        os << "\n|---|---|";
        for (std::size_t c = 0; c < b.columns.size(); ++c) os << "---|";
        os << '\n';
        for (const auto& [s1, s2] : b.cells) {
            os << "| " << short_num(s1) << " | " << short_num(s2) << " |";
            for (EstimatorKind k : b.columns) {
                const auto it = b.values.find({s1, s2, static_cast<int>(k)});
                os << ' ' << (it == b.values.end() ? std::string("n/a") : two_decimals(it->second))
                   << " |";
            }
            os << '\n';
        }
    }
    return os.str();
}

}  // namespace ordest
