#include "ordest/montecarlo.hpp"

#include "ordest/error.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <string>
#include <thread>

namespace ordest {

namespace {

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) noexcept
    : state_(mix64(seed + kGolden) ^ mix64((stream + 1) * kGolden)) {}

std::uint64_t RngStream::next() noexcept {
    state_ += kGolden;
    return mix64(state_);
}

double RngStream::uniform() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double RngStream::exponential() noexcept { return -std::log1p(-uniform()); }

std::string_view to_string(SchemeKind kind) noexcept {
    switch (kind) {
        case SchemeKind::Complete: return "complete";
        case SchemeKind::TypeII: return "type2";
        case SchemeKind::Progressive: return "progressive";
        case SchemeKind::Records: return "records";
    }
    return "complete";
}

SchemeKind parse_scheme_kind(std::string_view text) {
    if (text == "complete") return SchemeKind::Complete;
    if (text == "type2" || text == "typeII" || text == "type-ii") return SchemeKind::TypeII;
    if (text == "progressive") return SchemeKind::Progressive;
    if (text == "records") return SchemeKind::Records;
    throw Error(ErrorCode::InvalidArgument, "unknown scheme '" + std::string(text) + "'");
}

PopulationParams SimConfig::params() const {
    return {mu1, mu2, sigma1, sigma2, order_restricted};
}

Scheme SimConfig::scheme_of(Target population) const {
    const bool first = population == Target::Mu1;
    const int n = first ? n1 : n2;
    switch (scheme) {
        case SchemeKind::Complete: return CompleteScheme{n};
        case SchemeKind::TypeII: {
            const int r = first ? r1 : r2;
            return TypeIIScheme{n, r == 0 ? n : r};
        }
        case SchemeKind::Progressive: {
            const auto& rm = first ? removals1 : removals2;
            if (rm.empty()) return ProgressiveScheme{std::vector<int>(n, 0), n};
            return ProgressiveScheme{rm, n};
        }
        case SchemeKind::Records: return RecordsScheme{n};
    }
    return CompleteScheme{n};
}

Design SimConfig::design() const {
    return {scheme_design(scheme_of(Target::Mu1)), scheme_design(scheme_of(Target::Mu2))};
}

void SimConfig::validate() const {
    params().validate();
    if (reps < 100) throw Error(ErrorCode::InvalidArgument, "reps must be at least 100");
    if (workers < 1) throw Error(ErrorCode::InvalidArgument, "workers must be positive");
    validate_scheme(scheme_of(Target::Mu1));
    validate_scheme(scheme_of(Target::Mu2));
}

bool same_config(const SimConfig& a, const SimConfig& b) {
    return a.n1 == b.n1 && a.n2 == b.n2 && a.mu1 == b.mu1 && a.mu2 == b.mu2 &&
           a.sigma1 == b.sigma1 && a.sigma2 == b.sigma2 && a.reps == b.reps && a.seed == b.seed &&
           a.loss.to_string() == b.loss.to_string() && a.target == b.target &&
           a.baseline == b.baseline && a.candidates == b.candidates &&
           a.order_restricted == b.order_restricted && a.scheme == b.scheme && a.r1 == b.r1 &&
           a.r2 == b.r2 && a.removals1 == b.removals1 && a.removals2 == b.removals2 &&
           a.workers == b.workers;
}

ReducedPopulation draw_population(double mu, double sigma, const Scheme& scheme, RngStream& rng) {
    SchemeSample sample{scheme, {}};
    auto& x = sample.observations;
    auto draw = [&] { return sigma * rng.exponential(); };

    if (const auto* s = std::get_if<CompleteScheme>(&scheme)) {
        x.resize(static_cast<std::size_t>(s->n));
        for (auto& v : x) v = mu + draw();
        return reduce_complete(sample);
    }
    if (const auto* s = std::get_if<TypeIIScheme>(&scheme)) {
        std::vector<double> all(static_cast<std::size_t>(s->n));
        for (auto& v : all) v = mu + draw();
        std::partial_sort(all.begin(), all.begin() + s->r, all.end());
        x.assign(all.begin(), all.begin() + s->r);
        return reduce_type2(sample);
    }
    if (const auto* s = std::get_if<ProgressiveScheme>(&scheme)) {
        // Normalised spacings: the j-th gap is Exp scaled by 1 / (units still on test).
        int at_risk = s->total();
        double current = mu;
        for (int j = 0; j < s->observed(); ++j) {
            current += draw() / at_risk;
            x.push_back(current);
            at_risk -= s->removals[static_cast<std::size_t>(j)] + 1;
        }
        return reduce_progressive(sample);
    }
    const auto& rec = std::get<RecordsScheme>(scheme);
    // Memoryless: each new record exceeds the previous one by a fresh Exp(sigma).
    double current = mu + draw();
    x.push_back(current);
    for (int j = 1; j < rec.count; ++j) {
        current += draw();
        x.push_back(current);
    }
    return reduce_records(sample);
}

SufficientStats draw_replication(const PopulationParams& params, const Scheme& scheme1,
                                 const Scheme& scheme2, RngStream& rng) {
    const ReducedPopulation p1 = draw_population(params.mu1, params.sigma1, scheme1, rng);
    const ReducedPopulation p2 = draw_population(params.mu2, params.sigma2, scheme2, rng);
    return make_stats(p1, p2);
}

SufficientStats draw_replication(const SimConfig& config, std::uint64_t rep) {
    RngStream rng(config.seed, rep);
    return draw_replication(config.params(), config.scheme_of(Target::Mu1),
                            config.scheme_of(Target::Mu2), rng);
}

double pairwise_sum(const double* x, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += x[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

namespace {

double mean_of(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()) / v.size(); }

RiskEstimate summarize(const std::vector<double>& losses) {
    RiskEstimate r;
    r.reps = static_cast<int>(losses.size());
    r.mean = mean_of(losses);
    if (losses.size() > 1) {
        std::vector<double> sq(losses.size());
        for (std::size_t i = 0; i < losses.size(); ++i) {
            const double d = losses[i] - r.mean;
            sq[i] = d * d;
        }
        const double var = pairwise_sum(sq.data(), sq.size()) / (losses.size() - 1.0);
        r.std_error = std::sqrt(var / losses.size());
    }
    return r;
}

PriEstimate pri_of(const std::vector<double>& base, const RiskEstimate& rb,
                   const std::vector<double>& cand, const RiskEstimate& rc) {
    PriEstimate p;
    p.pri = (rb.mean - rc.mean) / rb.mean * 100.0;
    const double ratio = rc.mean / rb.mean;
    const std::size_t n = base.size();
    if (n > 1) {
        // Delta method on the ratio of paired means.
        std::vector<double> sq(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double d = cand[i] - rc.mean - ratio * (base[i] - rb.mean);
            sq[i] = d * d;
        }
        const double var = pairwise_sum(sq.data(), n) / (n - 1.0);
        p.std_error = 100.0 * std::sqrt(var / n) / rb.mean;
    }
    return p;
}

}  // namespace

void for_each_replication(int reps, int workers, const std::function<void(int)>& body) {
    workers = std::max(1, std::min(workers, reps));
    if (workers == 1) {
        for (int r = 0; r < reps; ++r) body(r);
        return;
    }
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    for (int k = 0; k < workers; ++k) {
        const int begin = static_cast<int>(static_cast<long long>(reps) * k / workers);
        const int end = static_cast<int>(static_cast<long long>(reps) * (k + 1) / workers);
        threads.emplace_back([&, k, begin, end] {
            try {
                for (int r = begin; r < end; ++r) body(r);
            } catch (...) {
                errors[static_cast<std::size_t>(k)] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

CellResult simulate(const SimConfig& config) {
    config.validate();
    const Design design = config.design();
    const Target target = config.target;
    const double mu = target == Target::Mu1 ? config.mu1 : config.mu2;
    const double sigma = target == Target::Mu1 ? config.sigma1 : config.sigma2;

    std::vector<PreparedEstimator> estimators;
    estimators.emplace_back(target, config.baseline, config.loss, design);
    for (EstimatorKind k : config.candidates) estimators.emplace_back(target, k, config.loss, design);

    const auto reps = static_cast<std::size_t>(config.reps);
    std::vector<std::vector<double>> losses(estimators.size(), std::vector<double>(reps));
    const PopulationParams params = config.params();
    const Scheme s1 = config.scheme_of(Target::Mu1);
    const Scheme s2 = config.scheme_of(Target::Mu2);

    for_each_replication(config.reps, config.workers, [&](int r) {
        RngStream rng(config.seed, static_cast<std::uint64_t>(r));
        const SufficientStats stats = draw_replication(params, s1, s2, rng);
        for (std::size_t e = 0; e < estimators.size(); ++e) {
            const double value = estimators[e](stats).value;
            losses[e][static_cast<std::size_t>(r)] = config.loss.value((value - mu) / sigma);
        }
    });

    CellResult cell;
    cell.config = config;
    cell.baseline = summarize(losses[0]);
    for (std::size_t e = 1; e < estimators.size(); ++e) {
        CandidateResult c;
        c.kind = estimators[e].kind();
        c.risk = summarize(losses[e]);
        c.pri = pri_of(losses[0], cell.baseline, losses[e], c.risk);
        cell.candidates.push_back(c);
    }
    return cell;
}

RiskEstimate risk_mc(EstimatorKind kind, const SimConfig& config) {
    SimConfig c = config;
    c.baseline = kind;
    c.candidates.clear();
    return simulate(c).baseline;
}

PriEstimate pri_mc(EstimatorKind baseline, EstimatorKind candidate, const SimConfig& config) {
    SimConfig c = config;
    c.baseline = baseline;
    c.candidates = {candidate};
    return simulate(c).candidates.front().pri;
}

PriTable run_table(const std::vector<SimConfig>& grid) {
    if (grid.empty()) throw Error(ErrorCode::InvalidArgument, "table grid is empty");
    PriTable table;
    for (const SimConfig& config : grid) {
        PriRow base;
        base.sigma1 = config.sigma1;
        base.sigma2 = config.sigma2;
        base.n1 = config.n1;
        base.n2 = config.n2;
        base.mu1 = config.mu1;
        base.mu2 = config.mu2;
        base.target = config.target;
        base.baseline = config.baseline;
        try {
            const CellResult cell = simulate(config);
            for (const auto& c : cell.candidates) {
                PriRow row = base;
                row.estimator = c.kind;
                row.pri = c.pri.pri;
                row.std_error = c.pri.std_error;
                table.rows.push_back(row);
            }
        } catch (const std::exception& e) {
            for (EstimatorKind k : config.candidates) {
                PriRow row = base;
                row.estimator = k;
                row.pri = std::numeric_limits<double>::quiet_NaN();
                row.std_error = std::numeric_limits<double>::quiet_NaN();
                row.error = e.what();
                table.rows.push_back(row);
            }
        }
    }
    return table;
}

}  // namespace ordest
